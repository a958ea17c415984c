//! Step schedules and residual probes for the limit definition.

use crate::error::Error;
use crate::scalar::Real;
use crate::{Result, Vector};

/// Geometric step schedule `h_k = h0 * gamma^k`, `k = 1..=count`.
///
/// The default `(0.1, 0.5, 20)` bottoms out near `9.5e-8`, two decades above
/// the `1e-6` finite-difference steps used elsewhere so that rounding noise
/// does not dominate the smallest residuals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitSchedule<T: Real> {
    h0: T,
    gamma: T,
    count: usize,
}

impl<T: Real> LimitSchedule<T> {
    pub fn new(h0: T, gamma: T, count: usize) -> Result<Self> {
        if h0 <= T::zero() {
            return Err(Error::Config("schedule needs h0 > 0".into()));
        }
        if gamma <= T::zero() || gamma >= T::one() {
            return Err(Error::Config("schedule needs gamma in (0, 1)".into()));
        }
        if count == 0 {
            return Err(Error::Config("schedule needs at least one step".into()));
        }
        Ok(Self { h0, gamma, count })
    }

    pub fn h0(&self) -> T {
        self.h0
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Strictly decreasing steps `h0 * gamma, ..., h0 * gamma^count`.
    pub fn steps(&self) -> impl Iterator<Item = T> + '_ {
        let mut h = self.h0;
        (0..self.count).map(move |_| {
            h *= self.gamma;
            h
        })
    }

    pub fn smallest(&self) -> T {
        self.h0 * self.gamma.powi(self.count as i32)
    }
}

impl<T: Real> Default for LimitSchedule<T> {
    fn default() -> Self {
        Self {
            h0: T::of(0.1),
            gamma: T::of(0.5),
            count: 20,
        }
    }
}

/// Number of tail points entering the residual decision.
pub const TAIL_POINTS: usize = 5;

/// Rounding-noise factor: distances carry an absolute error around
/// `1000 eps (1 + |y|)`, which rescaled by `1/h` gives the per-step noise
/// level of the residual curve.
const NOISE_FACTOR: f64 = 1000.0;

/// A direction pair `(u, v)` with its rescaled residual curve along a
/// shrinking step schedule: `r_k = dist(y + h_k v, F(x + h_k u)) / h_k`.
#[derive(Clone, Debug)]
pub struct DerivativeProbe<T: Real> {
    pub u: Vector<T>,
    pub v: Vector<T>,
    /// `(h_k, r_k)` in schedule order (decreasing `h`).
    pub residuals: Vec<(T, T)>,
    /// Absolute distance-noise scale; residual noise at step `h` is
    /// `noise / h`.
    pub noise: T,
}

impl<T: Real> DerivativeProbe<T> {
    /// Noise scale for distances around a point of magnitude `|y|`.
    pub fn noise_scale(y_norm: T) -> T {
        T::eps() * T::of(NOISE_FACTOR) * (T::one() + y_norm)
    }

    fn noise_at(&self, h: T) -> T {
        self.noise / h
    }

    /// Minimum residual over the last [`TAIL_POINTS`] schedule points.
    pub fn tail_min(&self) -> T {
        self.residuals
            .iter()
            .rev()
            .take(TAIL_POINTS)
            .map(|(_, r)| *r)
            .fold(T::of(f64::INFINITY), |a, b| a.min(b))
    }

    pub fn max_residual(&self) -> T {
        self.residuals
            .iter()
            .map(|(_, r)| *r)
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// True when every tail residual sits at the rounding floor: the
    /// distance genuinely vanished along the tail.
    pub fn tail_at_noise(&self) -> bool {
        self.residuals
            .iter()
            .rev()
            .take(TAIL_POINTS)
            .all(|(h, r)| *r <= self.noise_at(*h))
    }

    /// Least-squares slope of `log r` against `log h` over numerically
    /// significant residuals (those above the noise level for their step).
    ///
    /// Positive slopes mean the residual decays with the step; a residual
    /// converging to a positive constant fits slope zero, and residuals that
    /// blow up as `h` shrinks fit negative slopes. Fewer than two
    /// significant points carry no trend and fit slope zero.
    pub fn loglog_slope(&self) -> T {
        let pts: Vec<(T, T)> = self
            .residuals
            .iter()
            .filter(|(h, r)| *r > self.noise_at(*h))
            .map(|(h, r)| (h.ln(), r.ln()))
            .collect();
        if pts.len() < 2 {
            return T::zero();
        }
        let n = T::of_usize(pts.len());
        let mean_h = pts.iter().map(|(h, _)| *h).fold(T::zero(), |a, b| a + b) / n;
        let mean_r = pts.iter().map(|(_, r)| *r).fold(T::zero(), |a, b| a + b) / n;
        let mut num = T::zero();
        let mut den = T::zero();
        for (h, r) in &pts {
            num += (*h - mean_h) * (*r - mean_r);
            den += (*h - mean_h) * (*h - mean_h);
        }
        if den == T::zero() {
            T::zero()
        } else {
            num / den
        }
    }

    /// Acceptance rule: the tail residual dips below `tol`, and the curve
    /// is not growing as `h` shrinks (nonnegative slope over significant
    /// residuals), or the whole curve sits below `tol`, or the tail has
    /// reached the rounding floor.
    pub fn accepts(&self, tol: T) -> bool {
        if self.residuals.is_empty() {
            return false;
        }
        self.tail_min() <= tol
            && (self.loglog_slope() >= T::zero()
                || self.max_residual() <= tol
                || self.tail_at_noise())
    }
}
