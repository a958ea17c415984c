//! Convex-process verification on sampled graph pairs.
//!
//! A set-valued map is a convex process when its graph is a closed convex
//! cone: `0 in T(0)`, `T(lambda x) = lambda T(x)` and
//! `T(x + y) subset T(x) + T(y)`. On samples this reduces to membership of
//! the zero pair, of positive rescalings, and of midpoints of sample pairs.

use crate::geometry::directions::substream;
use crate::scalar::Real;
use crate::Vector;
use rand::Rng;

/// A single failed check, carrying the probed pair.
#[derive(Clone, Debug)]
pub enum ProcessFailure<T: Real> {
    Zero,
    Scaling {
        u: Vector<T>,
        v: Vector<T>,
        lambda: T,
    },
    Midpoint {
        a: (Vector<T>, Vector<T>),
        b: (Vector<T>, Vector<T>),
    },
}

/// Outcome counters of [`verify_convex_process`].
#[derive(Clone, Debug)]
pub struct ConvexProcessReport<T: Real> {
    pub zero_checked: bool,
    pub zero_ok: bool,
    pub scaling_checks: usize,
    pub scaling_failures: usize,
    pub convexity_checks: usize,
    pub convexity_failures: usize,
    /// Set when `trials == 0` or no samples were available.
    pub vacuous: bool,
    pub failures: Vec<ProcessFailure<T>>,
}

impl<T: Real> Default for ConvexProcessReport<T> {
    fn default() -> Self {
        Self {
            zero_checked: false,
            zero_ok: false,
            scaling_checks: 0,
            scaling_failures: 0,
            convexity_checks: 0,
            convexity_failures: 0,
            vacuous: false,
            failures: Vec::new(),
        }
    }
}

impl<T: Real> ConvexProcessReport<T> {
    pub fn passed(&self) -> bool {
        (!self.zero_checked || self.zero_ok)
            && self.scaling_failures == 0
            && self.convexity_failures == 0
    }
}

/// Check the convex-process axioms against a membership callable.
///
/// Runs `trials` rounds; each round rescales one random sample by
/// `lambda in {0.5, 2}` and tests the midpoint of a random sample pair.
/// Sampling is deterministic in `seed`.
pub fn verify_convex_process<T, M>(
    samples: &[(Vector<T>, Vector<T>)],
    mut membership: M,
    trials: usize,
    seed: u64,
    dims: (usize, usize),
) -> ConvexProcessReport<T>
where
    T: Real,
    M: FnMut(&Vector<T>, &Vector<T>) -> bool,
{
    let mut report = ConvexProcessReport::default();
    let (d, l) = dims;

    report.zero_checked = true;
    report.zero_ok = membership(&Vector::zeros(d), &Vector::zeros(l));
    if !report.zero_ok {
        report.failures.push(ProcessFailure::Zero);
    }

    if trials == 0 || samples.is_empty() {
        report.vacuous = true;
        return report;
    }

    let mut rng = substream(seed, 0xC0FE);
    for _ in 0..trials {
        let (u, v) = &samples[rng.gen_range(0..samples.len())];
        for lambda in [T::of(0.5), T::of(2.0)] {
            report.scaling_checks += 1;
            if !membership(&(u * lambda), &(v * lambda)) {
                report.scaling_failures += 1;
                report.failures.push(ProcessFailure::Scaling {
                    u: u.clone(),
                    v: v.clone(),
                    lambda,
                });
            }
        }

        let a = &samples[rng.gen_range(0..samples.len())];
        let b = &samples[rng.gen_range(0..samples.len())];
        let mid_u = (&a.0 + &b.0) * T::of(0.5);
        let mid_v = (&a.1 + &b.1) * T::of(0.5);
        report.convexity_checks += 1;
        if !membership(&mid_u, &mid_v) {
            report.convexity_failures += 1;
            report.failures.push(ProcessFailure::Midpoint {
                a: a.clone(),
                b: b.clone(),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_vec(c.to_vec())
    }

    #[test]
    fn halfspace_samples_pass() {
        // membership in {(u, w) : u >= w}
        let member = |u: &Vector<f64>, w: &Vector<f64>| u[0] >= w[0] - 1e-12;
        let samples: Vec<_> = (0..20)
            .map(|i| {
                let u = i as f64 / 5.0 - 2.0;
                (v(&[u]), v(&[u - 1.0]))
            })
            .collect();
        let report = verify_convex_process(&samples, member, 100, 7, (1, 1));
        assert!(report.passed());
        assert!(!report.vacuous);
        assert_eq!(report.scaling_checks, 200);
        assert_eq!(report.convexity_checks, 100);
    }

    #[test]
    fn absolute_value_graph_fails_on_midpoints() {
        // graph of u -> |u| with exact membership v = |u|
        let member = |u: &Vector<f64>, w: &Vector<f64>| (w[0] - u[0].abs()).abs() < 1e-12;
        let samples = vec![(v(&[1.0]), v(&[1.0])), (v(&[-1.0]), v(&[1.0]))];
        let report = verify_convex_process(&samples, member, 100, 7, (1, 1));
        assert!(!report.passed());
        assert!(report.convexity_failures > 0);
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f, ProcessFailure::Midpoint { .. })));
    }

    #[test]
    fn zero_trials_is_vacuous_pass() {
        let member = |_: &Vector<f64>, _: &Vector<f64>| true;
        let samples = vec![(v(&[1.0]), v(&[1.0]))];
        let report = verify_convex_process(&samples, member, 0, 7, (1, 1));
        assert!(report.passed());
        assert!(report.vacuous);
    }

    #[test]
    fn zero_membership_failure_is_reported() {
        let member = |u: &Vector<f64>, _: &Vector<f64>| u[0] > 0.5;
        let samples = vec![(v(&[1.0]), v(&[1.0]))];
        let report = verify_convex_process(&samples, member, 1, 7, (1, 1));
        assert!(!report.passed());
        assert!(!report.zero_ok);
    }

    #[test]
    fn deterministic_given_seed() {
        let member = |u: &Vector<f64>, w: &Vector<f64>| u[0] + 1e-9 >= w[0];
        let samples: Vec<_> = (0..5).map(|i| (v(&[i as f64]), v(&[i as f64]))).collect();
        let a = verify_convex_process(&samples, member, 50, 42, (1, 1));
        let b = verify_convex_process(&samples, member, 50, 42, (1, 1));
        assert_eq!(a.scaling_failures, b.scaling_failures);
        assert_eq!(a.convexity_failures, b.convexity_failures);
    }
}
