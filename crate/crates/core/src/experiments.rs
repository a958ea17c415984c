//! Deterministic experiment drivers behind the `svderiv` CLI.
//!
//! Each command consumes an [`ExperimentConfig`], processes its points (in
//! parallel, capped by the `SVDERIV_THREADS` environment variable), and
//! writes a per-point CSV table plus an aggregate JSON report into the
//! output directory. Runs are bit-reproducible: all sampling is keyed on
//! `(seed, point index)`, rows are emitted in index order, and files are
//! written atomically (temp file + rename).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derivative::{
    classify_differentiability, compatibility_check, intersection_witness, sample_derivative_graph,
    ClassifierVerdict, LimitSchedule,
};
use crate::error::Error;
use crate::geometry::directions::{sample_unit, substream};
use crate::geometry::DEFAULT_DIRECTION_GRID;
use crate::lipschitz::{calmness_constant, isotropic_implies_lipschitz_report, RegionSpec};
use crate::maps::{build_map, sample_graph_point, MapKind, MapSpec, SetValuedMap};
use crate::{Result, Vector};

/// Direction-grid size for the isotropic estimator suites.
const ISO_DIRECTIONS: usize = 64;

/// Counterexample table abscissae.
const COUNTEREXAMPLE_TAUS: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];
/// Relative tolerance on the `tau^(-1/2)` ratio column.
const COUNTEREXAMPLE_RATIO_RTOL: f64 = 0.01;
/// Bound on the Hausdorff ratio columns.
const COUNTEREXAMPLE_HD_BOUND: f64 = 3.0;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RegionConfig {
    pub center: Vec<f64>,
    pub radius: f64,
    #[serde(default = "default_sample_count")]
    pub sample_count: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_sample_count() -> usize {
    100
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct ScheduleConfig {
    pub h0: f64,
    pub gamma: f64,
    pub count: usize,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self {
            h0: 0.1,
            gamma: 0.5,
            count: 20,
        }
    }
}

fn default_tol() -> f64 {
    1e-4
}

fn default_points() -> usize {
    100
}

fn default_budget() -> usize {
    6
}

/// A fully deterministic experiment description.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ExperimentConfig {
    /// Optional experiment name; must match the subcommand when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MapSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<RegionConfig>,
    #[serde(default)]
    pub schedule: ScheduleConfig,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_points")]
    pub points: usize,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Property suites for `verify`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<String>,
    /// Lipschitz constant for the witness suite (falls back to the map's
    /// hint).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: None,
            map: None,
            region: None,
            schedule: ScheduleConfig::default(),
            tol: default_tol(),
            seed: 0,
            points: default_points(),
            budget: default_budget(),
            suites: Vec::new(),
            k: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Config(format!("experiment config: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn build_map(&self) -> Result<SetValuedMap<f64>> {
        let spec = self.map.as_ref().ok_or(Error::Config(
            "this experiment needs a \"map\" entry".into(),
        ))?;
        build_map::<f64>(spec)
    }

    pub fn region_spec(&self) -> Result<RegionSpec<f64>> {
        let r = self.region.as_ref().ok_or(Error::Config(
            "this experiment needs a \"region\" entry".into(),
        ))?;
        RegionSpec::new(
            Vector::from_vec(r.center.clone()),
            r.radius,
            r.sample_count,
            r.seed,
        )
    }

    pub fn limit_schedule(&self) -> Result<LimitSchedule<f64>> {
        LimitSchedule::new(self.schedule.h0, self.schedule.gamma, self.schedule.count)
    }

    pub fn check_experiment(&self, name: &str) -> Result<()> {
        match &self.experiment {
            Some(e) if e != name => Err(Error::Config(format!(
                "config is for experiment '{e}', but '{name}' was requested"
            ))),
            _ => Ok(()),
        }
    }
}

/// Aggregate result of one experiment run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: String,
    pub experiment: String,
    pub passed: bool,
    pub counters: BTreeMap<String, usize>,
    pub summary: serde_json::Value,
    pub config: ExperimentConfig,
}

impl RunReport {
    fn new(experiment: &str, config: &ExperimentConfig) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            experiment: experiment.to_string(),
            passed: true,
            counters: BTreeMap::new(),
            summary: serde_json::Value::Null,
            config: config.clone(),
        }
    }
}

/// Atomic file write: temp file in the same directory, then rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn write_outputs(out_dir: &Path, name: &str, csv: &str, report: &RunReport) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    write_atomic(&out_dir.join(format!("{name}.csv")), csv.as_bytes())?;
    let json = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Config(format!("report serialization: {e}")))?;
    write_atomic(&out_dir.join(format!("{name}.json")), json.as_bytes())?;
    Ok(())
}

/// Thread pool capped by `SVDERIV_THREADS`; results never depend on the
/// thread count because rows are keyed by index.
fn pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var("SVDERIV_THREADS") {
        if let Ok(n) = text.parse::<usize>() {
            if n > 0 {
                builder = builder.num_threads(n);
            }
        }
    }
    builder.build().expect("thread pool")
}

/// Per-point seed: decorrelates point indices under one base seed.
fn mix(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64)
        .wrapping_add(1)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn fmt_coords(v: &Vector<f64>) -> String {
    v.iter()
        .map(|c| format!("{c}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// CSV fields must stay comma- and newline-free.
fn sanitize(text: &str) -> String {
    text.replace([',', '\n'], ";")
}

struct ScheduleCols {
    h0: f64,
    gamma: f64,
    count: usize,
    tol: f64,
}

impl ScheduleCols {
    fn of(cfg: &ExperimentConfig) -> Self {
        Self {
            h0: cfg.schedule.h0,
            gamma: cfg.schedule.gamma,
            count: cfg.schedule.count,
            tol: cfg.tol,
        }
    }

    fn cells(&self) -> String {
        format!("{},{},{},{}", self.h0, self.gamma, self.count, self.tol)
    }
}

/// Classify differentiability at sampled graph points.
///
/// CSV rows: one per point with the verdict and the attached cone summary.
/// Evaluation errors are recorded per point and never abort the run.
pub fn cmd_derivative(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunReport> {
    cfg.check_experiment("derivative")?;
    let map = cfg.build_map()?;
    let region = cfg.region_spec()?;
    let schedule = cfg.limit_schedule()?;
    let cols = ScheduleCols::of(cfg);

    struct Row {
        index: usize,
        x: String,
        y: String,
        verdict: String,
        cone: String,
        detail: String,
        witness_residual: String,
        error: String,
    }

    let rows: Vec<Row> = pool().install(|| {
        (0..cfg.points)
            .into_par_iter()
            .map(|i| {
                let x = region.sample_point(i);
                let mut row = Row {
                    index: i,
                    x: fmt_coords(&x),
                    y: String::new(),
                    verdict: "error".into(),
                    cone: "-".into(),
                    detail: String::new(),
                    witness_residual: String::new(),
                    error: String::new(),
                };
                let gp = match sample_graph_point(&map, &x, i, cfg.seed) {
                    Ok(gp) => gp,
                    Err(e) => {
                        row.error = sanitize(&e.to_string());
                        return row;
                    }
                };
                row.y = fmt_coords(gp.y());
                match classify_differentiability(
                    &map,
                    &gp,
                    cfg.budget,
                    &schedule,
                    cfg.tol,
                    mix(cfg.seed, i),
                ) {
                    Ok(verdict) => {
                        row.verdict = verdict.label().to_string();
                        match verdict {
                            ClassifierVerdict::Differentiable(cone) => {
                                row.cone = cone.kind_label().into();
                                row.detail = sanitize(&cone.summary());
                            }
                            ClassifierVerdict::NotDifferentiable(w) => {
                                row.witness_residual = format!("{}", w.midpoint.tail_min());
                                row.detail = sanitize(&format!(
                                    "midpoint of u={:?} and u={:?} rejected",
                                    w.a.u.as_slice(),
                                    w.b.u.as_slice()
                                ));
                            }
                            ClassifierVerdict::Inconclusive(reason) => {
                                row.detail = sanitize(&reason);
                            }
                        }
                    }
                    Err(e) => row.error = sanitize(&e.to_string()),
                }
                row
            })
            .collect()
    });

    let mut csv = String::new();
    let _ = writeln!(
        csv,
        "# svderiv derivative: differentiability classification per graph point"
    );
    let _ = writeln!(
        csv,
        "# columns: index,x,y,verdict,cone,detail,witness_residual,h0,gamma,steps,tol,error"
    );
    let _ = writeln!(
        csv,
        "index,x,y,verdict,cone,detail,witness_residual,h0,gamma,steps,tol,error"
    );
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{}",
            r.index,
            r.x,
            r.y,
            r.verdict,
            r.cone,
            r.detail,
            r.witness_residual,
            cols.cells(),
            r.error
        );
    }

    let mut report = RunReport::new("derivative", cfg);
    for key in [
        "differentiable",
        "not_differentiable",
        "inconclusive",
        "error",
    ] {
        report
            .counters
            .insert(key.into(), rows.iter().filter(|r| r.verdict == key).count());
    }
    report.summary = serde_json::json!({
        "points": cfg.points,
        "cones": {
            "affine_plus_cone": rows.iter().filter(|r| r.cone == "affine_plus_cone").count(),
            "half_space": rows.iter().filter(|r| r.cone == "half_space").count(),
            "empirical": rows.iter().filter(|r| r.cone == "empirical").count(),
        }
    });
    write_outputs(out_dir, "derivative", &csv, &report)?;
    Ok(report)
}

/// Monte-Carlo differentiability sweep for generated and singleton maps.
///
/// Samples `points` base points uniformly in the region and reports the
/// fraction of non-differentiable verdicts (almost-everywhere statements
/// expect isolated bad points, so hits are data, not run failures).
pub fn cmd_montecarlo(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunReport> {
    cfg.check_experiment("montecarlo")?;
    let map = cfg.build_map()?;
    if map.kind() == MapKind::SupportParametrized {
        return Err(Error::Config(
            "montecarlo needs a generated or singleton map".into(),
        ));
    }
    let region = cfg.region_spec()?;
    let schedule = cfg.limit_schedule()?;
    let cols = ScheduleCols::of(cfg);

    struct Row {
        index: usize,
        x: String,
        y: String,
        verdict: String,
        error: String,
    }

    let rows: Vec<Row> = pool().install(|| {
        (0..cfg.points)
            .into_par_iter()
            .map(|i| {
                let x = region.sample_point(i);
                let mut row = Row {
                    index: i,
                    x: fmt_coords(&x),
                    y: String::new(),
                    verdict: "error".into(),
                    error: String::new(),
                };
                let gp = match sample_graph_point(&map, &x, i, cfg.seed) {
                    Ok(gp) => gp,
                    Err(e) => {
                        row.error = sanitize(&e.to_string());
                        return row;
                    }
                };
                row.y = fmt_coords(gp.y());
                match classify_differentiability(
                    &map,
                    &gp,
                    cfg.budget,
                    &schedule,
                    cfg.tol,
                    mix(cfg.seed, i),
                ) {
                    Ok(v) => row.verdict = v.label().to_string(),
                    Err(e) => row.error = sanitize(&e.to_string()),
                }
                row
            })
            .collect()
    });

    let mut csv = String::new();
    let _ = writeln!(csv, "# svderiv montecarlo: differentiability sweep");
    let _ = writeln!(csv, "# columns: index,x,y,verdict,h0,gamma,steps,tol,error");
    let _ = writeln!(csv, "index,x,y,verdict,h0,gamma,steps,tol,error");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{}",
            r.index,
            r.x,
            r.y,
            r.verdict,
            cols.cells(),
            r.error
        );
    }

    let failures: Vec<serde_json::Value> = rows
        .iter()
        .filter(|r| r.verdict == "not_differentiable")
        .map(|r| serde_json::json!({ "index": r.index, "x": r.x }))
        .collect();
    let mut report = RunReport::new("montecarlo", cfg);
    for key in [
        "differentiable",
        "not_differentiable",
        "inconclusive",
        "error",
    ] {
        report
            .counters
            .insert(key.into(), rows.iter().filter(|r| r.verdict == key).count());
    }
    let fail_count = failures.len();
    report.summary = serde_json::json!({
        "points": cfg.points,
        "failure_fraction": if cfg.points == 0 { 0.0 } else { fail_count as f64 / cfg.points as f64 },
        "failures": failures,
    });
    write_outputs(out_dir, "montecarlo", &csv, &report)?;
    Ok(report)
}

/// The Lipschitz-but-not-isotropically-Lipschitz table.
///
/// For each `tau` the row reports the exposed point `Y(tau, (0,-1))`, the
/// ratio `|Y(tau) - Y(0)| / tau` (which tracks `tau^(-1/2)`), and both
/// one-sided Hausdorff ratios of the set values (which stay bounded).
pub fn cmd_counterexample(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunReport> {
    cfg.check_experiment("counterexample")?;
    let map = crate::maps::counterexample_map::<f64>();
    let p = Vector::from_vec(vec![0.0, -1.0]);
    let cols = ScheduleCols::of(cfg);

    let base_body = map.eval(&Vector::from_element(1, 0.0))?;
    let y0 = base_body.exposed_point(&p)?;

    struct Row {
        tau: f64,
        y: Vector<f64>,
        ratio: f64,
        expected: f64,
        hd_forward: f64,
        hd_backward: f64,
    }

    let mut rows = Vec::new();
    for tau in COUNTEREXAMPLE_TAUS {
        let x = Vector::from_element(1, tau);
        let body = map.eval(&x)?;
        let y = body.exposed_point(&p)?;
        let ratio = (&y - &y0).norm() / tau;
        let hd_forward = body.one_sided_hausdorff(&base_body, DEFAULT_DIRECTION_GRID)? / tau;
        let hd_backward = base_body.one_sided_hausdorff(&body, DEFAULT_DIRECTION_GRID)? / tau;
        rows.push(Row {
            tau,
            y,
            ratio,
            expected: tau.powf(-0.5),
            hd_forward,
            hd_backward,
        });
    }

    let ratio_ok = rows
        .iter()
        .all(|r| (r.ratio - r.expected).abs() <= COUNTEREXAMPLE_RATIO_RTOL * r.expected);
    let hd_ok = rows.iter().all(|r| {
        r.hd_forward <= COUNTEREXAMPLE_HD_BOUND && r.hd_backward <= COUNTEREXAMPLE_HD_BOUND
    });

    let mut csv = String::new();
    let _ = writeln!(
        csv,
        "# svderiv counterexample: Lipschitz map with non-Lipschitz exposed faces"
    );
    let _ = writeln!(
        csv,
        "# columns: tau,y1,y2,ratio,expected_ratio,hd_forward_ratio,hd_backward_ratio,h0,gamma,steps,tol"
    );
    let _ = writeln!(
        csv,
        "tau,y1,y2,ratio,expected_ratio,hd_forward_ratio,hd_backward_ratio,h0,gamma,steps,tol"
    );
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            r.tau,
            r.y[0],
            r.y[1],
            r.ratio,
            r.expected,
            r.hd_forward,
            r.hd_backward,
            cols.cells()
        );
    }

    let mut report = RunReport::new("counterexample", cfg);
    report.passed = ratio_ok && hd_ok;
    report.counters.insert("rows".into(), rows.len());
    report.summary = serde_json::json!({
        "ratio_matches_inverse_sqrt": ratio_ok,
        "hausdorff_ratio_bounded": hd_ok,
        "hd_bound": COUNTEREXAMPLE_HD_BOUND,
        "max_hd_ratio": rows.iter().map(|r| r.hd_forward.max(r.hd_backward)).fold(0.0f64, f64::max),
    });
    write_outputs(out_dir, "counterexample", &csv, &report)?;
    Ok(report)
}

/// Named property suites: `witness`, `calmness`, `compatibility`,
/// `iso-vs-lip`.
pub fn cmd_verify(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunReport> {
    cfg.check_experiment("verify")?;
    if cfg.suites.is_empty() {
        return Err(Error::Config(
            "verify needs a nonempty \"suites\" list (witness|calmness|compatibility|iso-vs-lip)"
                .into(),
        ));
    }
    let map = cfg.build_map()?;
    let region = cfg.region_spec()?;
    let schedule = cfg.limit_schedule()?;
    let cols = ScheduleCols::of(cfg);

    struct SuiteRow {
        suite: String,
        pass: bool,
        detail: String,
    }

    let mut rows: Vec<SuiteRow> = Vec::new();
    for suite in &cfg.suites {
        let (pass, detail) = match suite.as_str() {
            "witness" => suite_witness(cfg, &map, &region, &schedule)?,
            "calmness" => suite_calmness(cfg, &map, &region, &schedule)?,
            "compatibility" => suite_compatibility(cfg, &map, &region, &schedule)?,
            "iso-vs-lip" => suite_iso_vs_lip(&map, &region)?,
            other => {
                return Err(Error::Config(format!(
                    "unknown suite '{other}' (expected witness|calmness|compatibility|iso-vs-lip)"
                )))
            }
        };
        rows.push(SuiteRow {
            suite: suite.clone(),
            pass,
            detail,
        });
    }

    let mut csv = String::new();
    let _ = writeln!(csv, "# svderiv verify: property suites");
    let _ = writeln!(csv, "# columns: suite,pass,detail,h0,gamma,steps,tol");
    let _ = writeln!(csv, "suite,pass,detail,h0,gamma,steps,tol");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{}",
            r.suite,
            r.pass,
            sanitize(&r.detail),
            cols.cells()
        );
    }

    let mut report = RunReport::new("verify", cfg);
    report.passed = rows.iter().all(|r| r.pass);
    report.counters.insert("suites".into(), rows.len());
    report.counters.insert(
        "failed_suites".into(),
        rows.iter().filter(|r| !r.pass).count(),
    );
    report.summary = serde_json::json!(rows
        .iter()
        .map(|r| serde_json::json!({ "suite": r.suite, "pass": r.pass, "detail": r.detail }))
        .collect::<Vec<_>>());
    write_outputs(out_dir, "verify", &csv, &report)?;
    Ok(report)
}

/// Lemma-style witness suite: for sampled `(graph point, u)` the derivative
/// must intersect the ball `k |u| B`.
fn suite_witness(
    cfg: &ExperimentConfig,
    map: &SetValuedMap<f64>,
    region: &RegionSpec<f64>,
    schedule: &LimitSchedule<f64>,
) -> Result<(bool, String)> {
    let k = cfg.k.or_else(|| map.lipschitz_hint()).ok_or(Error::Config(
        "witness suite needs \"k\" or a map lipschitz hint".into(),
    ))?;
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    for i in 0..cfg.points {
        let x = region.sample_point(i);
        let gp = match sample_graph_point(map, &x, i, cfg.seed) {
            Ok(gp) => gp,
            Err(_) => continue,
        };
        let mut rng = substream(mix(cfg.seed, i), 0x717);
        let scale = [0.5, 1.0, 2.0][i % 3];
        let u = sample_unit::<f64, _>(map.domain_dim(), &mut rng) * scale;
        match intersection_witness(map, &gp, &u, k, schedule, cfg.tol) {
            Ok(v) => worst = worst.max(v.norm() / (k * u.norm())),
            Err(_) => failures += 1,
        }
    }
    Ok((
        failures == 0,
        format!("k={k}; max |v|/(k|u|) = {worst:.6}; {failures} missing witnesses"),
    ))
}

/// Calmness suite: accepted singleton-lift probes obey `|v| <= (k + tol)|u|`
/// with `k` estimated from shell ratios at the region center.
fn suite_calmness(
    cfg: &ExperimentConfig,
    map: &SetValuedMap<f64>,
    region: &RegionSpec<f64>,
    schedule: &LimitSchedule<f64>,
) -> Result<(bool, String)> {
    if map.kind() != MapKind::Singleton {
        return Err(Error::Config("calmness suite needs a singleton map".into()));
    }
    let f = map.generator(0).expect("singleton");
    let x0 = region.center.clone();
    let calm = calmness_constant(|x| f(x), &x0, region);
    let gp = sample_graph_point(map, &x0, 0, cfg.seed)?;
    let samples =
        sample_derivative_graph(map, &gp, cfg.budget.max(12), schedule, cfg.tol, cfg.seed)?;
    let bound = calm.k_hat + cfg.tol;
    let mut worst: f64 = 0.0;
    let mut violations = 0usize;
    for (u, v) in &samples {
        let ratio = v.norm() / u.norm();
        worst = worst.max(ratio);
        if v.norm() > bound * u.norm() {
            violations += 1;
        }
    }
    Ok((
        violations == 0 && !samples.is_empty(),
        format!(
            "k_hat={}; max |v|/|u| = {worst:.6}; {violations} violations over {} pairs",
            calm.k_hat,
            samples.len()
        ),
    ))
}

/// Compatibility suite: the sampled graphical derivative of a singleton
/// lift matches the classical derivative both ways.
fn suite_compatibility(
    cfg: &ExperimentConfig,
    map: &SetValuedMap<f64>,
    region: &RegionSpec<f64>,
    schedule: &LimitSchedule<f64>,
) -> Result<(bool, String)> {
    if map.kind() != MapKind::Singleton {
        return Err(Error::Config(
            "compatibility suite needs a singleton map".into(),
        ));
    }
    let f = map.generator(0).expect("singleton");
    let jac = map.generator_jacobian_fn(0);
    let points = cfg.points.clamp(1, 20);
    let mut max_forward: f64 = 0.0;
    let mut max_backward: f64 = 0.0;
    let mut all_pass = true;
    for i in 0..points {
        let x = region.sample_point(i);
        let report = compatibility_check(
            f.clone(),
            jac.clone(),
            &x,
            map.domain_dim(),
            map.codomain_dim(),
            schedule,
            cfg.tol,
            mix(cfg.seed, i),
        )?;
        max_forward = max_forward.max(report.forward_max_residual);
        max_backward = max_backward.max(report.backward_max_deviation);
        all_pass &= report.passes(cfg.tol);
    }
    Ok((
        all_pass,
        format!("max forward residual = {max_forward:.3e}; max |v - Ju| = {max_backward:.3e}"),
    ))
}

/// Isotropic-vs-plain estimator comparison.
fn suite_iso_vs_lip(map: &SetValuedMap<f64>, region: &RegionSpec<f64>) -> Result<(bool, String)> {
    let report = isotropic_implies_lipschitz_report(map, region, ISO_DIRECTIONS)?;
    Ok((
        report.pass,
        format!(
            "k_lip={:.6}, k_iso={:.6}, diverged={}",
            report.k_lip, report.k_iso, report.iso_diverged
        ),
    ))
}
