//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! Run with `cargo test -p svderiv-core --test acceptance -- --nocapture`
//! to see the per-criterion lines.

use std::sync::Arc;
use std::time::Instant;

use rand::Rng;

use svderiv_core::derivative::{
    classify_differentiability, closed_form_derivative, compatibility_check, derivative_membership,
    halfspace_derivative, intersection_witness, sample_derivative_graph, verify_convex_process,
    ClassifierVerdict, DerivativeCone, LimitSchedule,
};
use svderiv_core::experiments::{
    cmd_counterexample, cmd_derivative, cmd_montecarlo, cmd_verify, ExperimentConfig,
};
use svderiv_core::geometry::directions::{sample_unit, substream};
use svderiv_core::maps::{
    ball_valued_map, generated_map, singleton_lift, GraphPoint, JacFn, ScalarFn, SetValuedMap,
    VecFn,
};
use svderiv_core::{Matrix, Vector, Vector64};

// Criterion tolerances and budgets, pinned up front.
const C1_TOL: f64 = 1e-3;
const C1_POINTS: usize = 20;
const C1_TIME_LIMIT_S: f64 = 10.0;
const C2_TOL: f64 = 1e-3;
const C2_PROBES: usize = 200;
const C2_GRAPH_POINTS: usize = 20;
const C2_AGREEMENT: f64 = 0.99;
const C2_TIME_LIMIT_S: f64 = 60.0;
const C3_TRIALS: usize = 100;
const C4_PAIRS: usize = 50;
const C4_SLACK: f64 = 1e-3;
const C5_BOUND: f64 = 1.001;
const C6_INCLUSION_TOL: f64 = 1e-4;
const C6_MEMBERSHIP_TOL: f64 = 1e-3;
const C6_MARGIN: f64 = 0.1;
const C6_INTERIOR_PAIRS: usize = 50;
const C6_GRAPH_POINTS: usize = 10;
const C6_GRADIENT_TOL: f64 = 1e-6;
const C7_RATIO_RTOL: f64 = 0.01;
const C7_HD_BOUND: f64 = 3.0;
const C7_TIME_LIMIT_S: f64 = 30.0;
const C8_SAMPLES: usize = 10_000;

fn vec64(coords: &[f64]) -> Vector64 {
    Vector::from_vec(coords.to_vec())
}

fn schedule() -> LimitSchedule<f64> {
    LimitSchedule::default()
}

fn segment_map() -> SetValuedMap<f64> {
    let f1: VecFn<f64> = Arc::new(|x: &Vector64| x.clone());
    let f2: VecFn<f64> = Arc::new(|x: &Vector64| x.add_scalar(1.0));
    let j: JacFn<f64> = Arc::new(|_: &Vector64| Matrix::from_element(1, 1, 1.0));
    generated_map(1, 1, vec![f1, f2], Some(vec![j.clone(), j])).unwrap()
}

fn triangle_map() -> SetValuedMap<f64> {
    let f1: VecFn<f64> = Arc::new(|x: &Vector64| vec64(&[x[0], 0.0]));
    let f2: VecFn<f64> = Arc::new(|x: &Vector64| vec64(&[0.0, x[0]]));
    let f3: VecFn<f64> = Arc::new(|_: &Vector64| vec64(&[1.0, 1.0]));
    let j1: JacFn<f64> = Arc::new(|_: &Vector64| Matrix::from_column_slice(2, 1, &[1.0, 0.0]));
    let j2: JacFn<f64> = Arc::new(|_: &Vector64| Matrix::from_column_slice(2, 1, &[0.0, 1.0]));
    let j3: JacFn<f64> = Arc::new(|_: &Vector64| Matrix::zeros(2, 1));
    generated_map(1, 2, vec![f1, f2, f3], Some(vec![j1, j2, j3])).unwrap()
}

/// Criterion 1: the sampled graphical derivative of smooth lifts matches
/// the analytic derivative graph both ways within 1e-3.
#[test]
fn acceptance_1_compatibility() {
    let start = Instant::now();
    let cases: Vec<(&str, VecFn<f64>, JacFn<f64>, usize)> = vec![
        (
            "x^2",
            Arc::new(|x: &Vector64| Vector::from_element(1, x[0] * x[0])),
            Arc::new(|x: &Vector64| Matrix::from_element(1, 1, 2.0 * x[0])),
            1,
        ),
        (
            "(sin x, cos x)",
            Arc::new(|x: &Vector64| vec64(&[x[0].sin(), x[0].cos()])),
            Arc::new(|x: &Vector64| Matrix::from_column_slice(2, 1, &[x[0].cos(), -x[0].sin()])),
            2,
        ),
        (
            "x^3 - x",
            Arc::new(|x: &Vector64| Vector::from_element(1, x[0].powi(3) - x[0])),
            Arc::new(|x: &Vector64| Matrix::from_element(1, 1, 3.0 * x[0] * x[0] - 1.0)),
            1,
        ),
    ];
    let mut rng = substream(811, 1);
    for (name, f, jac, l) in cases {
        for i in 0..C1_POINTS {
            let x = vec64(&[rng.gen_range(-2.0..2.0)]);
            let report = compatibility_check(
                f.clone(),
                Some(jac.clone()),
                &x,
                1,
                l,
                &schedule(),
                C1_TOL,
                900 + i as u64,
            )
            .unwrap();
            assert!(report.passes(C1_TOL), "{name} at x={}: {report:?}", x[0]);
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < C1_TIME_LIMIT_S, "took {elapsed:.1}s");
    println!("ACCEPTANCE 1 compatibility (both inclusions <= {C1_TOL}): PASS ({elapsed:.2}s)");
}

/// One agreement round for criterion 2: closed form vs limit membership.
fn agreement_at(map: &SetValuedMap<f64>, gp: &GraphPoint<f64>, seed: u64) -> (usize, usize) {
    let cone = closed_form_derivative(map, gp).unwrap();
    let linear = match &cone {
        DerivativeCone::AffinePlusCone { linear, .. } => linear.clone(),
        _ => unreachable!("generated maps give affine-plus-cone"),
    };
    let sched = schedule();
    let mut rng = substream(seed, 0x2222);
    let mut agree = 0;
    for _ in 0..C2_PROBES {
        let u = vec64(&[rng.gen_range(-2.0..2.0)]);
        let mut v = &linear * &u;
        for c in 0..v.len() {
            v[c] += 1.5 * rng.sample::<f64, _>(rand_distr_standard());
        }
        let by_cone = cone.contains(&u, &v, C2_TOL).unwrap();
        let by_limit = derivative_membership(map, gp, &u, &v, &sched, C2_TOL).unwrap();
        if by_cone == by_limit {
            agree += 1;
        }
    }
    (agree, C2_PROBES)
}

/// Inverse-CDF-free standard normal via Box-Muller on demand.
fn rand_distr_standard() -> impl rand::distributions::Distribution<f64> {
    struct BoxMuller;
    impl rand::distributions::Distribution<f64> for BoxMuller {
        fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
        }
    }
    BoxMuller
}

/// Criterion 2: the closed-form derivative agrees with the limit-definition
/// membership on random probes.
#[test]
fn acceptance_2_closed_form_agreement() {
    let start = Instant::now();

    // segment map: vertices and interior points
    let seg = segment_map();
    let mut rng = substream(812, 0);
    for i in 0..C2_GRAPH_POINTS {
        let x = vec64(&[rng.gen_range(-1.0..1.0)]);
        let y = match i % 3 {
            0 => x.clone(),
            1 => x.add_scalar(1.0),
            _ => x.add_scalar(rng.gen_range(0.05..0.95)),
        };
        let gp = GraphPoint::new(&seg, x, y).unwrap();
        let (agree, total) = agreement_at(&seg, &gp, 5000 + i as u64);
        assert!(
            agree as f64 >= C2_AGREEMENT * total as f64,
            "segment gp {i}: {agree}/{total}"
        );
    }

    // planar triangle map away from its collinearity points {0, 2}
    let tri = triangle_map();
    for i in 0..C2_GRAPH_POINTS {
        let x = vec64(&[rng.gen_range(0.3..1.7)]);
        let vs = tri.eval(&x).unwrap().vertices().unwrap().to_vec();
        let y = if i % 4 == 0 {
            vs[i % 3].clone()
        } else {
            let w = [
                rng.gen_range(0.05..1.0),
                rng.gen_range(0.05..1.0),
                rng.gen_range(0.05..1.0),
            ];
            let total: f64 = w.iter().sum();
            &vs[0] * (w[0] / total) + &vs[1] * (w[1] / total) + &vs[2] * (w[2] / total)
        };
        let gp = GraphPoint::new(&tri, x, y).unwrap();
        let (agree, total) = agreement_at(&tri, &gp, 6000 + i as u64);
        assert!(
            agree as f64 >= C2_AGREEMENT * total as f64,
            "triangle gp {i}: {agree}/{total}"
        );
    }

    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < C2_TIME_LIMIT_S, "took {elapsed:.1}s");
    println!(
        "ACCEPTANCE 2 closed-form vs membership agreement >= {:.0}%: PASS ({elapsed:.2}s)",
        C2_AGREEMENT * 100.0
    );
}

/// Criterion 3: every emitted derivative cone satisfies the convex-process
/// axioms with zero failures.
#[test]
fn acceptance_3_convex_process_axioms() {
    let mut cones: Vec<(String, DerivativeCone<f64>)> = Vec::new();

    let seg = segment_map();
    for (tag, y) in [("lower", 0.0), ("upper", 1.0), ("interior", 0.4)] {
        let gp = GraphPoint::new(&seg, vec64(&[0.0]), vec64(&[y])).unwrap();
        cones.push((
            format!("segment/{tag}"),
            closed_form_derivative(&seg, &gp).unwrap(),
        ));
    }
    let tri = triangle_map();
    for (tag, y) in [
        ("vertex", vec64(&[1.0, 0.0])),
        ("interior", vec64(&[0.65, 0.7])),
    ] {
        let gp = GraphPoint::new(&tri, vec64(&[1.0]), y).unwrap();
        cones.push((
            format!("triangle/{tag}"),
            closed_form_derivative(&tri, &gp).unwrap(),
        ));
    }
    let ball = {
        let center: VecFn<f64> = Arc::new(|x: &Vector64| vec64(&[x[0], 0.0]));
        let radius: ScalarFn<f64> = Arc::new(|_: &Vector64| 1.0);
        ball_valued_map(1, 2, center, radius)
    };
    for (tag, y) in [("east", vec64(&[1.0, 0.0])), ("north", vec64(&[0.0, 1.0]))] {
        let gp = GraphPoint::new(&ball, vec64(&[0.0]), y).unwrap();
        cones.push((
            format!("ball/{tag}"),
            DerivativeCone::HalfSpace(halfspace_derivative(&ball, &gp, 1e-6).unwrap()),
        ));
    }

    for (i, (name, cone)) in cones.iter().enumerate() {
        let mut rng = substream(813, i as u64);
        // samples drawn from the cone itself
        let samples: Vec<(Vector64, Vector64)> = (0..24)
            .map(|_| match cone {
                DerivativeCone::AffinePlusCone { linear, cone } => {
                    let u = vec64(&[rng.gen_range(-2.0..2.0)]);
                    let mut v = linear * &u;
                    for g in cone.generators() {
                        v += g * rng.gen_range(0.0..2.0);
                    }
                    (u, v)
                }
                DerivativeCone::HalfSpace(h) => {
                    let u = vec64(&[rng.gen_range(-2.0..2.0)]);
                    let mut w = sample_unit::<f64, _>(h.codomain_dim(), &mut rng) * 2.0;
                    let slack = h.slack(&u, &w);
                    let margin = rng.gen_range(0.0..1.0);
                    w += &h.normal * (slack - margin);
                    (u, w)
                }
                DerivativeCone::Empirical(_) => unreachable!(),
            })
            .collect();
        let membership = |u: &Vector64, v: &Vector64| cone.contains(u, v, 1e-9).unwrap_or(false);
        let report = verify_convex_process(&samples, membership, C3_TRIALS, 814 + i as u64, {
            match cone {
                DerivativeCone::HalfSpace(h) => (h.domain_dim(), h.codomain_dim()),
                DerivativeCone::AffinePlusCone { linear, .. } => (linear.ncols(), linear.nrows()),
                DerivativeCone::Empirical(_) => unreachable!(),
            }
        });
        assert!(report.passed() && !report.vacuous, "{name}: {report:?}");
        assert_eq!(
            report.scaling_failures + report.convexity_failures,
            0,
            "{name}"
        );
    }
    println!(
        "ACCEPTANCE 3 convex-process axioms, {} cones x {C3_TRIALS} trials, 0 failures: PASS",
        cones.len()
    );
}

/// Criterion 4: derivative values intersect the Lipschitz ball
/// `k |u| B` on the segment map with `k = 1`.
#[test]
fn acceptance_4_intersection_witness() {
    let map = segment_map();
    let sched = schedule();
    let mut rng = substream(815, 0);
    for i in 0..C4_PAIRS {
        let x = vec64(&[rng.gen_range(-1.0..1.0)]);
        let y = match i % 3 {
            0 => x.clone(),
            1 => x.add_scalar(1.0),
            _ => x.add_scalar(rng.gen_range(0.1..0.9)),
        };
        let gp = GraphPoint::new(&map, x, y).unwrap();
        let u = vec64(&[rng.gen_range(-2.0..2.0)]);
        let v = intersection_witness(&map, &gp, &u, 1.0, &sched, C4_SLACK).unwrap();
        assert!(
            v.norm() <= u.norm() * (1.0 + C4_SLACK),
            "pair {i}: |v| = {} vs k|u| = {}",
            v.norm(),
            u.norm()
        );
    }
    println!(
        "ACCEPTANCE 4 Lipschitz-ball witness, {C4_PAIRS} pairs, |v| <= k|u|(1+{C4_SLACK}): PASS"
    );
}

/// Criterion 5: accepted probes of the |x| lift at the kink obey the
/// calmness bound.
#[test]
fn acceptance_5_calmness_bound() {
    let f: VecFn<f64> = Arc::new(|x: &Vector64| Vector::from_element(1, x[0].abs()));
    let map = singleton_lift(1, 1, f, None);
    let gp = GraphPoint::new(&map, vec64(&[0.0]), vec64(&[0.0])).unwrap();
    let samples = sample_derivative_graph(&map, &gp, 18, &schedule(), 1e-4, 816).unwrap();
    assert!(!samples.is_empty());
    for (u, v) in &samples {
        assert!(
            v.norm() <= C5_BOUND * u.norm(),
            "|v| = {} exceeds {C5_BOUND} |u| = {}",
            v.norm(),
            C5_BOUND * u.norm()
        );
    }
    println!(
        "ACCEPTANCE 5 calmness bound |v| <= {C5_BOUND}|u| on {} accepted probes: PASS",
        samples.len()
    );
}

/// Criterion 6: half-space derivative on ball-valued maps: both inclusions
/// and the finite-difference gradient accuracy.
#[test]
fn acceptance_6_halfspace_derivative() {
    type Analytic = Box<dyn Fn(&Vector64, &Vector64) -> Vector64>;
    let families: Vec<(&str, SetValuedMap<f64>, Analytic)> = vec![
        (
            "translating ball",
            {
                let center: VecFn<f64> = Arc::new(|x: &Vector64| vec64(&[x[0], 0.0]));
                let radius: ScalarFn<f64> = Arc::new(|_: &Vector64| 1.0);
                ball_valued_map(1, 2, center, radius)
            },
            Box::new(|_x: &Vector64, p: &Vector64| vec64(&[p[0]])),
        ),
        (
            "breathing ball",
            {
                let center: VecFn<f64> = Arc::new(|_: &Vector64| vec64(&[0.0, 0.0]));
                let radius: ScalarFn<f64> = Arc::new(|x: &Vector64| 2.0 + x[0].sin());
                ball_valued_map(1, 2, center, radius)
            },
            Box::new(|x: &Vector64, _p: &Vector64| vec64(&[x[0].cos()])),
        ),
        (
            "planar translating ball",
            {
                let center: VecFn<f64> = Arc::new(|x: &Vector64| vec64(&[x[0], x[1]]));
                let radius: ScalarFn<f64> = Arc::new(|_: &Vector64| 1.0);
                ball_valued_map(2, 2, center, radius)
            },
            Box::new(|_x: &Vector64, p: &Vector64| p.clone()),
        ),
    ];

    let sched = schedule();
    let mut rng = substream(817, 0);
    let mut interior_checked = 0usize;
    let mut gp_count = 0usize;
    'families: for (name, map, analytic_grad) in &families {
        for _ in 0..4 {
            if gp_count >= C6_GRAPH_POINTS {
                break 'families;
            }
            gp_count += 1;
            let x = {
                let coords: Vec<f64> = (0..map.domain_dim())
                    .map(|_| rng.gen_range(-0.5..0.5))
                    .collect();
                vec64(&coords)
            };
            let p = sample_unit::<f64, _>(2, &mut rng);
            let gp = map.exposed_graph_point(&x, &p).unwrap();
            let h = halfspace_derivative(map, &gp, 1e-6).unwrap();

            // (c) finite-difference gradient matches the analytic one
            let expected = analytic_grad(&x, &h.normal);
            assert!(
                (&h.gradient - &expected).norm() <= C6_GRADIENT_TOL,
                "{name}: fd gradient {:?} vs analytic {:?}",
                h.gradient.as_slice(),
                expected.as_slice()
            );

            // (a) T subset C: accepted tangent pairs satisfy the inequality
            let samples = sample_derivative_graph(
                map,
                &gp,
                6,
                &sched,
                C6_MEMBERSHIP_TOL,
                818 + gp_count as u64,
            )
            .unwrap();
            assert!(!samples.is_empty(), "{name}: no accepted samples");
            for (u, w) in &samples {
                assert!(
                    h.slack(u, w) >= -C6_INCLUSION_TOL * (1.0 + u.norm() + w.norm()),
                    "{name}: tangent pair violates the half-space by {}",
                    -h.slack(u, w)
                );
            }

            // (b) int C subset T: strict-margin pairs pass membership
            for _ in 0..(C6_INTERIOR_PAIRS / C6_GRAPH_POINTS) {
                interior_checked += 1;
                let u = {
                    let coords: Vec<f64> = (0..map.domain_dim())
                        .map(|_| rng.gen_range(-1.0..1.0))
                        .collect();
                    vec64(&coords)
                };
                let margin = rng.gen_range(C6_MARGIN..0.5);
                let mut w = sample_unit::<f64, _>(2, &mut rng);
                let slack = h.slack(&u, &w);
                w += &h.normal * (slack - margin);
                assert!((h.slack(&u, &w) - margin).abs() < 1e-9);
                assert!(
                    derivative_membership(map, &gp, &u, &w, &sched, C6_MEMBERSHIP_TOL).unwrap(),
                    "{name}: interior pair with margin {margin} rejected"
                );
            }
        }
    }
    assert_eq!(gp_count, C6_GRAPH_POINTS);
    assert!(interior_checked >= C6_INTERIOR_PAIRS);
    println!(
        "ACCEPTANCE 6 half-space derivative on {gp_count} boundary points ({interior_checked} interior probes): PASS"
    );
}

/// Criterion 7: the counterexample table shows tau^(-1/2) face ratios while
/// the Hausdorff ratio of the map stays below 3.
#[test]
fn acceptance_7_counterexample_table() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::default();
    let report = cmd_counterexample(&cfg, dir.path()).unwrap();
    assert!(report.passed, "{:?}", report.summary);

    let csv = std::fs::read_to_string(dir.path().join("counterexample.csv")).unwrap();
    let mut checked = 0;
    for line in csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("tau"))
    {
        let cells: Vec<&str> = line.split(',').collect();
        let tau: f64 = cells[0].parse().unwrap();
        let ratio: f64 = cells[3].parse().unwrap();
        let expected = tau.powf(-0.5);
        assert!(
            (ratio - expected).abs() <= C7_RATIO_RTOL * expected,
            "tau={tau}: ratio {ratio} vs {expected}"
        );
        let hd_f: f64 = cells[5].parse().unwrap();
        let hd_b: f64 = cells[6].parse().unwrap();
        assert!(
            hd_f <= C7_HD_BOUND && hd_b <= C7_HD_BOUND,
            "tau={tau}: hd {hd_f}/{hd_b}"
        );
        checked += 1;
    }
    assert_eq!(checked, 4);
    let elapsed = start.elapsed().as_secs_f64();
    assert!(elapsed < C7_TIME_LIMIT_S, "took {elapsed:.1}s");
    println!(
        "ACCEPTANCE 7 counterexample ratios 10/100 within 1%, Hausdorff <= {C7_HD_BOUND}: PASS ({elapsed:.2}s)"
    );
}

/// Criterion 8: 10^4 uniform samples of the |x| lift find no
/// non-differentiable point, while the targeted kink probe does.
#[test]
fn acceptance_8_montecarlo_almost_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig::from_json(&format!(
        r#"{{
            "map": {{"kind": "singleton", "functions": ["abs(x1)"], "d": 1, "l": 1}},
            "region": {{"center": [0.0], "radius": 1.0, "sample_count": {C8_SAMPLES}, "seed": 20240810}},
            "points": {C8_SAMPLES},
            "seed": 20240810
        }}"#
    ))
    .unwrap();
    let report = cmd_montecarlo(&cfg, dir.path()).unwrap();
    assert_eq!(
        report.counters["not_differentiable"], 0,
        "{:?}",
        report.counters
    );
    assert_eq!(report.counters["error"], 0, "{:?}", report.counters);
    assert_eq!(
        report.counters["differentiable"], C8_SAMPLES,
        "{:?}",
        report.counters
    );

    // targeted probe at the kink
    let f: VecFn<f64> = Arc::new(|x: &Vector64| Vector::from_element(1, x[0].abs()));
    let map = singleton_lift(1, 1, f, None);
    let gp = GraphPoint::new(&map, vec64(&[0.0]), vec64(&[0.0])).unwrap();
    let verdict = classify_differentiability(&map, &gp, 9, &schedule(), 1e-4, 20240810).unwrap();
    assert!(
        matches!(verdict, ClassifierVerdict::NotDifferentiable(_)),
        "kink must be detected, got {}",
        verdict.label()
    );
    println!("ACCEPTANCE 8 monte-carlo a.e.: 0/{C8_SAMPLES} hits, kink detected: PASS");
}

/// Criterion 9: identical configs (seed included) reproduce byte-identical
/// outputs for every experiment.
#[test]
fn acceptance_9_byte_determinism() {
    let derivative_cfg = ExperimentConfig::from_json(
        r#"{
            "map": {"kind": "ball", "functions": ["x1", "0", "1"], "d": 1, "l": 2},
            "region": {"center": [0.0], "radius": 0.5, "sample_count": 32, "seed": 4},
            "points": 10,
            "seed": 42
        }"#,
    )
    .unwrap();
    let mc_cfg = ExperimentConfig::from_json(
        r#"{
            "map": {"kind": "singleton", "functions": ["abs(x1)"], "d": 1, "l": 1},
            "region": {"center": [0.0], "radius": 1.0, "sample_count": 64, "seed": 4},
            "points": 64,
            "seed": 42
        }"#,
    )
    .unwrap();
    let verify_cfg = ExperimentConfig::from_json(
        r#"{
            "map": {"kind": "generated", "functions": ["x1", "x1+1"], "d": 1, "l": 1},
            "region": {"center": [0.0], "radius": 1.0, "sample_count": 64, "seed": 4},
            "points": 15,
            "seed": 42,
            "tol": 1e-3,
            "k": 1.0,
            "suites": ["witness", "iso-vs-lip"]
        }"#,
    )
    .unwrap();
    let counter_cfg = ExperimentConfig::default();

    type Runner = Box<dyn Fn(&std::path::Path) -> (Vec<u8>, Vec<u8>)>;
    let runs: Vec<(&str, Runner)> = vec![
        ("derivative", {
            let cfg = derivative_cfg;
            Box::new(move |dir: &std::path::Path| {
                cmd_derivative(&cfg, dir).unwrap();
                (
                    std::fs::read(dir.join("derivative.csv")).unwrap(),
                    std::fs::read(dir.join("derivative.json")).unwrap(),
                )
            })
        }),
        ("montecarlo", {
            let cfg = mc_cfg;
            Box::new(move |dir: &std::path::Path| {
                cmd_montecarlo(&cfg, dir).unwrap();
                (
                    std::fs::read(dir.join("montecarlo.csv")).unwrap(),
                    std::fs::read(dir.join("montecarlo.json")).unwrap(),
                )
            })
        }),
        ("counterexample", {
            let cfg = counter_cfg;
            Box::new(move |dir: &std::path::Path| {
                cmd_counterexample(&cfg, dir).unwrap();
                (
                    std::fs::read(dir.join("counterexample.csv")).unwrap(),
                    std::fs::read(dir.join("counterexample.json")).unwrap(),
                )
            })
        }),
        ("verify", {
            let cfg = verify_cfg;
            Box::new(move |dir: &std::path::Path| {
                cmd_verify(&cfg, dir).unwrap();
                (
                    std::fs::read(dir.join("verify.csv")).unwrap(),
                    std::fs::read(dir.join("verify.json")).unwrap(),
                )
            })
        }),
    ];

    for (name, run) in &runs {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let (csv_a, json_a) = run(a.path());
        let (csv_b, json_b) = run(b.path());
        assert_eq!(csv_a, csv_b, "{name}: CSV bytes differ between reruns");
        assert_eq!(json_a, json_b, "{name}: JSON bytes differ between reruns");
    }
    println!("ACCEPTANCE 9 byte-identical reruns across all four experiments: PASS");
}
