//! Differentiability classification and the single-valued compatibility
//! check.

use crate::derivative::cones::{closed_form_derivative, halfspace_derivative, DerivativeCone};
use crate::derivative::membership::{
    derivative_membership, residual_curve, sample_derivative_graph,
};
use crate::derivative::process::{verify_convex_process, ProcessFailure};
use crate::derivative::schedule::{DerivativeProbe, LimitSchedule};
use crate::geometry::directions::{sample_unit, substream};
use crate::geometry::PolyhedralCone;
use crate::maps::{singleton_lift, GraphPoint, JacFn, MapKind, SetValuedMap, VecFn};
use crate::scalar::Real;
use crate::{Matrix, Result, Vector};

/// Trials used by the classifier's convex-process stage.
const CLASSIFIER_TRIALS: usize = 100;

/// Factor by which a failing check is retried before it counts as a genuine
/// counterexample; failures that pass at the relaxed tolerance are reported
/// as inconclusive instead of forcing a verdict.
const BORDERLINE_FACTOR: f64 = 3.0;

/// A failing midpoint: two accepted graph pairs whose average is rejected.
#[derive(Clone, Debug)]
pub struct MidpointWitness<T: Real> {
    pub a: DerivativeProbe<T>,
    pub b: DerivativeProbe<T>,
    pub midpoint: DerivativeProbe<T>,
}

/// Verdict of [`classify_differentiability`].
#[derive(Clone, Debug)]
pub enum ClassifierVerdict<T: Real> {
    Differentiable(DerivativeCone<T>),
    NotDifferentiable(MidpointWitness<T>),
    Inconclusive(String),
}

impl<T: Real> ClassifierVerdict<T> {
    pub fn label(&self) -> &'static str {
        match self {
            ClassifierVerdict::Differentiable(_) => "differentiable",
            ClassifierVerdict::NotDifferentiable(_) => "not_differentiable",
            ClassifierVerdict::Inconclusive(_) => "inconclusive",
        }
    }
}

/// Classify differentiability of `map` at `gp`: sample the derivative
/// graph, verify the convex-process axioms with the residual membership
/// test, and attach the best available cone representation.
///
/// Generated maps carry their closed-form cone, support-parametrized maps
/// the half-space cone at smooth boundary points; otherwise the verdict
/// falls back to an empirical hull of the accepted samples. Borderline
/// failures (passing at `3 * tol`) yield `Inconclusive` rather than a
/// forced boolean.
pub fn classify_differentiability<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    budget: usize,
    schedule: &LimitSchedule<T>,
    tol: T,
    seed: u64,
) -> Result<ClassifierVerdict<T>> {
    let samples = sample_derivative_graph(map, gp, budget, schedule, tol, seed)?;
    if samples.len() < 2 {
        return Ok(ClassifierVerdict::Inconclusive(format!(
            "only {} accepted graph samples (budget {budget})",
            samples.len()
        )));
    }

    let membership = |u: &Vector<T>, v: &Vector<T>| {
        derivative_membership(map, gp, u, v, schedule, tol).unwrap_or(false)
    };
    let report = verify_convex_process(
        &samples,
        membership,
        CLASSIFIER_TRIALS,
        seed ^ 0xA5A5,
        (map.domain_dim(), map.codomain_dim()),
    );

    if report.passed() {
        return Ok(ClassifierVerdict::Differentiable(best_cone(
            map, gp, &samples,
        )?));
    }

    let relaxed = tol * T::of(BORDERLINE_FACTOR);
    for failure in &report.failures {
        match failure {
            ProcessFailure::Midpoint { a, b } => {
                let mid_u = (&a.0 + &b.0) * T::of(0.5);
                let mid_v = (&a.1 + &b.1) * T::of(0.5);
                if derivative_membership(map, gp, &mid_u, &mid_v, schedule, relaxed)? {
                    continue; // borderline, not a genuine counterexample
                }
                return Ok(ClassifierVerdict::NotDifferentiable(MidpointWitness {
                    a: residual_curve(map, gp, &a.0, &a.1, schedule)?,
                    b: residual_curve(map, gp, &b.0, &b.1, schedule)?,
                    midpoint: residual_curve(map, gp, &mid_u, &mid_v, schedule)?,
                }));
            }
            ProcessFailure::Scaling { u, v, lambda } => {
                let su = u * *lambda;
                let sv = v * *lambda;
                if derivative_membership(map, gp, &su, &sv, schedule, relaxed)? {
                    continue;
                }
                return Ok(ClassifierVerdict::Inconclusive(format!(
                    "scaling check failed at lambda = {}",
                    lambda.as_f64()
                )));
            }
            ProcessFailure::Zero => {
                return Ok(ClassifierVerdict::Inconclusive(
                    "zero pair rejected by the membership test".into(),
                ))
            }
        }
    }
    Ok(ClassifierVerdict::Inconclusive(
        "only borderline failures within 3x tolerance".into(),
    ))
}

/// Preferred cone representation for a differentiable verdict.
fn best_cone<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    samples: &[(Vector<T>, Vector<T>)],
) -> Result<DerivativeCone<T>> {
    match map.kind() {
        MapKind::Singleton | MapKind::Generated => match closed_form_derivative(map, gp) {
            Ok(cone) => Ok(cone),
            Err(_) => Ok(empirical_cone(map, samples)),
        },
        MapKind::SupportParametrized => {
            match halfspace_derivative(map, gp, T::of(crate::maps::JACOBIAN_FD_STEP)) {
                Ok(h) => Ok(DerivativeCone::HalfSpace(h)),
                Err(_) => Ok(empirical_cone(map, samples)),
            }
        }
    }
}

fn empirical_cone<T: Real>(
    map: &SetValuedMap<T>,
    samples: &[(Vector<T>, Vector<T>)],
) -> DerivativeCone<T> {
    let d = map.domain_dim();
    let l = map.codomain_dim();
    let gens: Vec<Vector<T>> = samples
        .iter()
        .map(|(u, v)| {
            let mut z = Vector::<T>::zeros(d + l);
            z.rows_mut(0, d).copy_from(u);
            z.rows_mut(d, l).copy_from(v);
            z
        })
        .collect();
    DerivativeCone::Empirical(PolyhedralCone::new(d + l, gens).expect("dims consistent"))
}

/// Two-sided comparison of the graphical derivative of a singleton lift
/// with the (analytic or finite-difference) derivative of `f`.
#[derive(Clone, Debug)]
pub struct CompatibilityReport<T: Real> {
    /// Largest tail residual of `(u, J u)` over basis and random directions.
    pub forward_max_residual: T,
    /// Whether every forward pair passed the membership test.
    pub forward_all_member: bool,
    /// Largest deviation `|v - J u|` over sampled graph pairs.
    pub backward_max_deviation: T,
    /// Number of sampled pairs entering the backward bound.
    pub sampled_pairs: usize,
}

impl<T: Real> CompatibilityReport<T> {
    pub fn passes(&self, tol: T) -> bool {
        self.forward_all_member
            && self.forward_max_residual <= tol
            && self.backward_max_deviation <= tol
            && self.sampled_pairs > 0
    }
}

/// Compatibility of the graphical derivative with the classical derivative
/// at `x`: checks `(u, df(x) u)` by the limit definition for basis and
/// random directions, and bounds `|v - df(x) u|` over sampled graph pairs.
#[allow(clippy::too_many_arguments)]
pub fn compatibility_check<T: Real>(
    f: VecFn<T>,
    jacobian: Option<JacFn<T>>,
    x: &Vector<T>,
    domain_dim: usize,
    codomain_dim: usize,
    schedule: &LimitSchedule<T>,
    tol: T,
    seed: u64,
) -> Result<CompatibilityReport<T>> {
    let map = singleton_lift(domain_dim, codomain_dim, f, jacobian);
    let jac: Matrix<T> = map.generator_jacobian(0, x)?;
    let y = map.eval(x)?.vertices().expect("singleton")[0].clone();
    let gp = GraphPoint::new(&map, x.clone(), y)?;

    // Forward: (u, J u) must belong to the sampled derivative graph.
    let mut directions: Vec<Vector<T>> = Vec::new();
    for i in 0..domain_dim {
        let mut e = Vector::<T>::zeros(domain_dim);
        e[i] = T::one();
        directions.push(e.clone());
        directions.push(-e);
    }
    let mut rng = substream(seed, 0xC0);
    for _ in 0..8 {
        directions.push(sample_unit::<T, _>(domain_dim, &mut rng));
    }
    let mut forward_max = T::zero();
    let mut forward_all = true;
    for u in &directions {
        let v = &jac * u;
        let probe = residual_curve(&map, &gp, u, &v, schedule)?;
        forward_max = forward_max.max(probe.tail_min());
        forward_all &= probe.accepts(tol);
    }

    // Backward: sampled pairs must track the linear map.
    let samples = sample_derivative_graph(&map, &gp, 12, schedule, tol, seed ^ 0xB0)?;
    let mut backward_max = T::zero();
    for (u, v) in &samples {
        backward_max = backward_max.max((v - &jac * u).norm());
    }

    Ok(CompatibilityReport {
        forward_max_residual: forward_max,
        forward_all_member: forward_all,
        backward_max_deviation: backward_max,
        sampled_pairs: samples.len(),
    })
}
