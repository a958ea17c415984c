//! Sampled estimators for set-valued Lipschitz constants, isotropic
//! (exposed-face) Lipschitz constants and single-valued calmness.
//!
//! Every estimate is a maximum over sampled ratios and therefore an
//! empirical lower bound of the true constant. Sample `i` is drawn from its
//! own ChaCha substream, so enlarging `sample_count` extends the sample set
//! and the estimates grow monotonically.

use rand::Rng;

use crate::error::Error;
use crate::geometry::directions::{
    clamp_to_ball, sample_in_ball, sample_unit, substream, unit_grid,
};
use crate::geometry::DEFAULT_DIRECTION_GRID;
use crate::maps::SetValuedMap;
use crate::scalar::Real;
use crate::{Result, Vector};

/// Smallest pair separation, as a fraction of the region radius.
const MIN_SEPARATION: f64 = 1e-4;

/// Ratio threshold and shell count for divergence detection: ratios along
/// the ladder `radius * 10^(-j/2)`, `j = 1..=12`, must grow monotonically
/// over the last 4 shells and exceed the threshold.
const DIVERGENCE_THRESHOLD: f64 = 1e3;
const DIVERGENCE_SHELLS: usize = 12;
const DIVERGENCE_MONOTONE: usize = 4;

/// A sampling region: ball around `center`, deterministic in `seed`.
#[derive(Clone, Debug)]
pub struct RegionSpec<T: Real> {
    pub center: Vector<T>,
    pub radius: T,
    pub sample_count: usize,
    pub seed: u64,
}

impl<T: Real> RegionSpec<T> {
    pub fn new(center: Vector<T>, radius: T, sample_count: usize, seed: u64) -> Result<Self> {
        if radius <= T::zero() {
            return Err(Error::NonpositiveRadius(radius.as_f64()));
        }
        Ok(Self {
            center,
            radius,
            sample_count,
            seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Deterministic point sample `i`, uniform in the region ball.
    pub fn sample_point(&self, i: usize) -> Vector<T> {
        let mut rng = substream(self.seed, 0x100_0000 + i as u64);
        sample_in_ball(&self.center, self.radius, &mut rng)
    }

    /// Deterministic pair sample `i` with log-uniform separation in
    /// `[MIN_SEPARATION * radius, radius]`; the second point is clamped into
    /// the region ball (Lipschitz violations concentrate at small
    /// separations, and clamping keeps restricted map domains reachable).
    pub fn sample_pair(&self, i: usize) -> (Vector<T>, Vector<T>) {
        let mut rng = substream(self.seed, 0x200_0000 + i as u64);
        let x = sample_in_ball(&self.center, self.radius, &mut rng);
        let dir = sample_unit::<T, _>(self.dim(), &mut rng);
        let exponent: f64 = rng.gen_range(0.0..=1.0) * MIN_SEPARATION.log10().abs();
        let sep = self.radius * T::of(10f64.powf(-exponent));
        let x2 = clamp_to_ball(&(&x + dir * sep), &self.center, self.radius);
        (x, x2)
    }
}

/// An empirical lower bound for a Lipschitz-type constant.
#[derive(Clone, Debug)]
pub struct LipschitzEstimate<T: Real> {
    /// Max over sampled ratios; a lower bound of the true constant.
    pub k_hat: T,
    /// The pair achieving the maximum.
    pub achieving_pair: (Vector<T>, Vector<T>),
    /// Set when ratios grow monotonically beyond the divergence threshold
    /// as the separation shrinks.
    pub diverged: bool,
}

/// Estimate the set-valued Lipschitz constant of `eq:Lip` type:
/// `k_hat = max dist_H+(F(x), F(x')) / |x - x'|` over sampled pairs.
pub fn estimate_lipschitz<T: Real>(
    map: &SetValuedMap<T>,
    region: &RegionSpec<T>,
) -> Result<LipschitzEstimate<T>> {
    let mut best = LipschitzEstimate {
        k_hat: T::zero(),
        achieving_pair: (region.center.clone(), region.center.clone()),
        diverged: false,
    };
    for i in 0..region.sample_count {
        let (x, x2) = region.sample_pair(i);
        let sep = (&x - &x2).norm();
        if sep <= T::of(1e-9) * region.radius {
            continue;
        }
        let excess = map
            .eval(&x)?
            .one_sided_hausdorff(&map.eval(&x2)?, DEFAULT_DIRECTION_GRID)?;
        let ratio = excess / sep;
        if ratio > best.k_hat {
            best.k_hat = ratio;
            best.achieving_pair = (x, x2);
        }
    }
    Ok(best)
}

/// Estimate the isotropic Lipschitz constant of the exposed-point maps
/// `x -> Y(x, p)` over a deterministic sphere grid of directions.
///
/// Requires single-valued exposed faces (strictly convex values, or
/// singletons/extreme vertices); a face with more than one vertex errors.
/// Divergence is probed along a shrinking separation ladder anchored at the
/// region center.
pub fn estimate_isotropic_lipschitz<T: Real>(
    map: &SetValuedMap<T>,
    region: &RegionSpec<T>,
    direction_count: usize,
) -> Result<LipschitzEstimate<T>> {
    let directions = unit_grid::<T>(map.codomain_dim(), direction_count.max(1));
    let exposed =
        |x: &Vector<T>, p: &Vector<T>| -> Result<Vector<T>> { map.eval(x)?.exposed_point(p) };

    let mut best = LipschitzEstimate {
        k_hat: T::zero(),
        achieving_pair: (region.center.clone(), region.center.clone()),
        diverged: false,
    };
    for i in 0..region.sample_count {
        let (x, x2) = region.sample_pair(i);
        let sep = (&x - &x2).norm();
        if sep <= T::of(1e-9) * region.radius {
            continue;
        }
        for p in &directions {
            let ratio = (exposed(&x, p)? - exposed(&x2, p)?).norm() / sep;
            if ratio > best.k_hat {
                best.k_hat = ratio;
                best.achieving_pair = (x.clone(), x2.clone());
            }
        }
    }

    // Divergence ladder from the region center.
    let base_dirs = unit_grid::<T>(region.dim(), 2 * region.dim());
    'outer: for p in &directions {
        for dir in &base_dirs {
            let y0 = exposed(&region.center, p)?;
            let mut ratios = Vec::with_capacity(DIVERGENCE_SHELLS);
            for j in 1..=DIVERGENCE_SHELLS {
                let sep = region.radius * T::of(10f64.powf(-(j as f64) / 2.0));
                let x = &region.center + dir * sep;
                let ratio = (exposed(&x, p)? - &y0).norm() / sep;
                ratios.push(ratio);
            }
            let tail = &ratios[DIVERGENCE_SHELLS - DIVERGENCE_MONOTONE..];
            let monotone = tail.windows(2).all(|w| w[1] > w[0]);
            if monotone && *tail.last().unwrap() > T::of(DIVERGENCE_THRESHOLD) {
                best.diverged = true;
                break 'outer;
            }
        }
    }
    Ok(best)
}

/// Calmness profile of a single-valued function at `x0`.
#[derive(Clone, Debug)]
pub struct CalmnessReport<T: Real> {
    /// Limsup surrogate: max ratio over the deepest shells.
    pub k_hat: T,
    /// `(shell radius, max ratio)` per shell, largest radius first.
    pub shells: Vec<(T, T)>,
}

/// Calmness constant `k = limsup |f(x) - f(x0)| / |x - x0|` of a function,
/// probed on geometric shells `radius / 2^j`, `j = 0..=15`.
///
/// The reported `k_hat` is the max over the deepest four shells (the limsup
/// lives at vanishing separations; outer shells only show the trend).
pub fn calmness_constant<T: Real>(
    f: impl Fn(&Vector<T>) -> Vector<T>,
    x0: &Vector<T>,
    region: &RegionSpec<T>,
) -> CalmnessReport<T> {
    let f0 = f(x0);
    let dirs = unit_grid::<T>(x0.len(), region.sample_count.clamp(2, 64));
    let mut shells = Vec::with_capacity(16);
    for j in 0..16 {
        let r = region.radius / T::of(2f64.powi(j));
        let mut worst = T::zero();
        for dir in &dirs {
            let x = x0 + dir * r;
            let ratio = (f(&x) - &f0).norm() / r;
            worst = worst.max(ratio);
        }
        shells.push((r, worst));
    }
    let k_hat = shells
        .iter()
        .rev()
        .take(4)
        .map(|(_, k)| *k)
        .fold(T::zero(), |a, b| a.max(b));
    CalmnessReport { k_hat, shells }
}

/// Comparison report for the "isotropically Lipschitz implies Lipschitz"
/// direction.
#[derive(Clone, Debug)]
pub struct IsoLipReport<T: Real> {
    pub k_lip: T,
    pub k_iso: T,
    pub iso_diverged: bool,
    pub pass: bool,
}

/// Compare the plain and isotropic estimates: passes when
/// `k_lip <= 1.05 * k_iso` (up to a rounding floor, so vanishing constants
/// compare as `0 <= 0`), or vacuously when the isotropic estimate diverges
/// (no bound is implied then).
pub fn isotropic_implies_lipschitz_report<T: Real>(
    map: &SetValuedMap<T>,
    region: &RegionSpec<T>,
    direction_count: usize,
) -> Result<IsoLipReport<T>> {
    let lip = estimate_lipschitz(map, region)?;
    let iso = estimate_isotropic_lipschitz(map, region, direction_count)?;
    let floor = T::of(1e-9).max(T::eps() * T::of(100.0));
    let pass = iso.diverged || lip.k_hat <= iso.k_hat * T::of(1.05) + floor;
    Ok(IsoLipReport {
        k_lip: lip.k_hat,
        k_iso: iso.k_hat,
        iso_diverged: iso.diverged,
        pass,
    })
}

/// Calmness-style probe for set-valued maps used by the witness suites: the
/// largest hint constant compatible with the samples.
pub fn effective_k<T: Real>(map: &SetValuedMap<T>, fallback: T) -> T {
    map.lipschitz_hint().unwrap_or(fallback)
}
