//! Truncated-epigraph map `F(t) = epi(phi_|t|) /\ (R x [-2, 2])` on `[-1, 1]`.
//!
//! `F` is Lipschitz with compact convex values, but its exposed-point map in
//! the downward direction moves like `sqrt(t)`, so it is not isotropically
//! Lipschitz: the ratio `|Y(t, p) - Y(0, p)| / t` blows up like `t^(-1/2)`.

use std::sync::Arc;

use crate::error::Error;
use crate::geometry::body::{ConvexBody, SupportOracle};
use crate::maps::{support_parametrized, SetValuedMap};
use crate::scalar::Real;
use crate::{Result, Vector};

/// Piecewise parabola with a sliding linear notch.
///
/// For `tau = 0`: `x^2 - x` on `x <= 0` and `x^2` on `x > 0`. For `tau > 0`
/// the branches are `x^2 - x + tau` (`x <= 0`), `-x sqrt(tau) + tau`
/// (`0 <= x <= sqrt(tau)`) and `x^2 - tau` (`x > sqrt(tau)`); the function is
/// convex and continuous at the branch points.
pub fn phi_tau<T: Real>(tau: T, x: T) -> Result<T> {
    if tau < T::zero() {
        return Err(Error::OutOfDomain(format!(
            "phi_tau needs tau >= 0, got {}",
            tau.as_f64()
        )));
    }
    if tau == T::zero() {
        return Ok(if x <= T::zero() { x * x - x } else { x * x });
    }
    let s = tau.sqrt();
    Ok(if x <= T::zero() {
        x * x - x + tau
    } else if x <= s {
        -x * s + tau
    } else {
        x * x - tau
    })
}

/// Height cap of the truncated epigraph.
const CAP: f64 = 2.0;

/// Support oracle for `epi(phi_tau) /\ (R x [-2, 2])`.
///
/// The feasible first coordinates form the interval `[x_lo, x_hi]` where
/// `phi_tau` crosses the cap; the body is bounded below by the graph of
/// `phi_tau` and above by the cap line.
pub struct Example51Oracle<T: Real> {
    tau: T,
    x_lo: T,
    x_hi: T,
}

impl<T: Real> Example51Oracle<T> {
    pub fn new(tau: T) -> Result<Self> {
        if tau < T::zero() {
            return Err(Error::OutOfDomain("tau must be nonnegative".into()));
        }
        let cap = T::of(CAP);
        let s = tau.sqrt();
        // phi is convex with minimum 0 at sqrt(tau); bisect the cap
        // crossings on both sides.
        let x_lo = bisect_crossing(|x| phi(tau, x) - cap, -T::of(2.0), s);
        let x_hi = bisect_crossing(|x| phi(tau, x) - cap, T::of(2.5), s);
        Ok(Self { tau, x_lo, x_hi })
    }

    pub fn x_range(&self) -> (T, T) {
        (self.x_lo, self.x_hi)
    }

    fn phi(&self, x: T) -> T {
        phi(self.tau, x)
    }

    /// Maximize the concave height function `p1 x + p2 phi(x)` (`p2 < 0`)
    /// with a coarse 64-cell scan plus golden-section refinement.
    fn maximize_lower(&self, p1: T, p2: T) -> T {
        let h = |x: T| p1 * x + p2 * self.phi(x);
        let cells = 64;
        let width = self.x_hi - self.x_lo;
        let mut best = (self.x_lo, h(self.x_lo));
        let mut best_idx = 0usize;
        for i in 1..=cells {
            let x = self.x_lo + width * T::of_usize(i) / T::of_usize(cells);
            let val = h(x);
            if val > best.1 {
                best = (x, val);
                best_idx = i;
            }
        }
        let lo = self.x_lo + width * T::of_usize(best_idx.saturating_sub(1)) / T::of_usize(cells);
        let hi = self.x_lo + width * T::of_usize((best_idx + 1).min(cells)) / T::of_usize(cells);
        golden_max(h, lo, hi)
    }
}

fn phi<T: Real>(tau: T, x: T) -> T {
    phi_tau(tau, x).expect("tau validated nonnegative")
}

/// Root of an increasing-at-`a`, decreasing-at-`b` style sign change:
/// `f(a) > 0 > f(b)` or vice versa; plain bisection, 90 iterations.
fn bisect_crossing<T: Real>(f: impl Fn(T) -> T, a: T, b: T) -> T {
    let (mut lo, mut hi) = (a, b);
    let (flo, _fhi) = (f(lo), f(hi));
    for _ in 0..90 {
        let mid = (lo + hi) * T::of(0.5);
        let fm = f(mid);
        if (fm > T::zero()) == (flo > T::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * T::of(0.5)
}

/// Golden-section maximization of a unimodal function on `[a, b]`.
fn golden_max<T: Real>(f: impl Fn(T) -> T, a: T, b: T) -> T {
    let invphi = T::of((5.0f64.sqrt() - 1.0) / 2.0);
    let (mut lo, mut hi) = (a, b);
    let mut c = hi - (hi - lo) * invphi;
    let mut d = lo + (hi - lo) * invphi;
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..120 {
        if hi - lo < T::of(1e-13) {
            break;
        }
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - (hi - lo) * invphi;
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + (hi - lo) * invphi;
            fd = f(d);
        }
    }
    (lo + hi) * T::of(0.5)
}

/// Golden-section minimization.
fn golden_min<T: Real>(f: impl Fn(T) -> T, a: T, b: T) -> T {
    golden_max(move |x| -f(x), a, b)
}

impl<T: Real> SupportOracle<T> for Example51Oracle<T> {
    fn support(&self, p: &Vector<T>) -> T {
        let (p1, p2) = (p[0], p[1]);
        if p2 >= T::zero() {
            // The cap line dominates; maximize the linear part over the
            // feasible interval (ties broken toward x_hi).
            let x = if p1 < T::zero() { self.x_lo } else { self.x_hi };
            p1 * x + p2 * T::of(CAP)
        } else {
            let x = self.maximize_lower(p1, p2);
            p1 * x + p2 * self.phi(x)
        }
    }

    fn argmax(&self, p: &Vector<T>) -> Vector<T> {
        let (p1, p2) = (p[0], p[1]);
        if p2 >= T::zero() {
            let x = if p1 < T::zero() { self.x_lo } else { self.x_hi };
            Vector::from_vec(vec![x, T::of(CAP)])
        } else {
            let x = self.maximize_lower(p1, p2);
            Vector::from_vec(vec![x, self.phi(x)])
        }
    }

    /// Sharp projection using the explicit body description
    /// `{(x, y) : x in [x_lo, x_hi], phi(x) <= y <= 2}`: the candidates are
    /// the cap segment and the lower graph curve.
    fn project(&self, z: &Vector<T>) -> Option<(T, Vector<T>)> {
        let (z1, z2) = (z[0], z[1]);
        let cap = T::of(CAP);
        if z1 >= self.x_lo && z1 <= self.x_hi && z2 <= cap && self.phi(z1) <= z2 {
            return Some((T::zero(), z.clone()));
        }
        let clamped = z1.clamp(self.x_lo, self.x_hi);
        let top = Vector::from_vec(vec![clamped, cap]);
        let mut best_d2 = (&top - z).norm_squared();
        let mut best = top;

        // Distance squared to the lower boundary curve, scanned on a coarse
        // grid with golden refinement around the three best separated cells.
        let d2 = |x: T| {
            let dy = self.phi(x) - z2;
            let dx = x - z1;
            dx * dx + dy * dy
        };
        let cells = 128usize;
        let width = self.x_hi - self.x_lo;
        let mut scored: Vec<(usize, T)> = (0..=cells)
            .map(|i| {
                let x = self.x_lo + width * T::of_usize(i) / T::of_usize(cells);
                (i, d2(x))
            })
            .collect();
        scored.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let mut picked: Vec<usize> = Vec::new();
        for (i, _) in scored {
            if picked.iter().all(|j| i.abs_diff(*j) > 2) {
                picked.push(i);
            }
            if picked.len() == 3 {
                break;
            }
        }
        for i in picked {
            let lo = self.x_lo + width * T::of_usize(i.saturating_sub(1)) / T::of_usize(cells);
            let hi = self.x_lo + width * T::of_usize((i + 1).min(cells)) / T::of_usize(cells);
            let x = golden_min(d2, lo, hi);
            let cand = Vector::from_vec(vec![x, self.phi(x)]);
            let cand_d2 = (&cand - z).norm_squared();
            if cand_d2 < best_d2 {
                best_d2 = cand_d2;
                best = cand;
            }
        }
        Some((best_d2.sqrt(), best))
    }
}

/// The map `F(t) = epi(phi_|t|) /\ (R x [-2, 2])` on `[-1, 1] => R^2`.
///
/// Carries the Lipschitz hint `k = 3` (the sampled Hausdorff ratios stay
/// below 3); evaluation outside `[-1, 1]` errors.
pub fn counterexample_map<T: Real>() -> SetValuedMap<T> {
    let eval = |x: &Vector<T>| -> Result<ConvexBody<T>> {
        let tau = x[0];
        if tau.abs() > T::one() {
            return Err(Error::OutOfDomain(format!(
                "counterexample map is defined on [-1, 1], got {}",
                tau.as_f64()
            )));
        }
        let oracle = Example51Oracle::new(tau.abs())?;
        Ok(ConvexBody::from_oracle(2, Arc::new(oracle)))
    };
    support_parametrized(1, 2, Arc::new(eval)).with_lipschitz_hint(T::of(3.0))
}
