//! Deterministic direction grids and seeded samplers on spheres and balls.
//!
//! All randomized sampling in the crate goes through ChaCha8 substreams so
//! that sample `i` depends only on `(seed, stream, i)`. Enlarging a sample
//! count therefore extends a sample set instead of reshuffling it, and
//! parallel evaluation cannot change results.

use crate::scalar::Real;
use crate::Vector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fixed internal stream used for direction grids in dimension > 3.
const GRID_STREAM: u64 = 0x5eed_617d;

/// A deterministic ChaCha8 generator: stream `stream` of `seed`.
pub fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Deterministic grid of `count` unit directions in `R^dim`.
///
/// dim 1 uses `{+1, -1}`, dim 2 equally spaced angles, dim 3 a Fibonacci
/// sphere; higher dimensions fall back to a fixed seeded Gaussian grid.
pub fn unit_grid<T: Real>(dim: usize, count: usize) -> Vec<Vector<T>> {
    assert!(dim >= 1, "direction grid needs dim >= 1");
    match dim {
        1 => (0..count.max(2))
            .map(|i| Vector::from_element(1, if i % 2 == 0 { T::one() } else { -T::one() }))
            .collect(),
        2 => (0..count)
            .map(|i| {
                let theta = T::two_pi() * T::of_usize(i) / T::of_usize(count);
                Vector::from_vec(vec![theta.cos(), theta.sin()])
            })
            .collect(),
        3 => {
            // Fibonacci sphere.
            let golden = T::of(1.0 + 5.0f64.sqrt()) / T::of(2.0);
            (0..count)
                .map(|i| {
                    let fi = T::of_usize(i);
                    let z = T::one() - (T::of(2.0) * fi + T::one()) / T::of_usize(count);
                    let r = (T::one() - z * z).max(T::zero()).sqrt();
                    let phi = T::two_pi() * fi / golden;
                    Vector::from_vec(vec![r * phi.cos(), r * phi.sin(), z])
                })
                .collect()
        }
        _ => {
            let mut rng = substream(GRID_STREAM, 0);
            (0..count).map(|_| sample_unit(dim, &mut rng)).collect()
        }
    }
}

/// One uniformly distributed unit vector, via normalized Gaussians.
///
/// The Gaussian pair is produced by Box-Muller from `f64` uniforms so the
/// stream consumption is identical for every scalar type.
pub fn sample_unit<T: Real, R: Rng>(dim: usize, rng: &mut R) -> Vector<T> {
    loop {
        let mut coords = Vec::with_capacity(dim);
        let mut i = 0;
        while i < dim {
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen_range(0.0..1.0);
            let mag = (-2.0 * u1.ln()).sqrt();
            coords.push(T::of(mag * (2.0 * std::f64::consts::PI * u2).cos()));
            i += 1;
            if i < dim {
                coords.push(T::of(mag * (2.0 * std::f64::consts::PI * u2).sin()));
                i += 1;
            }
        }
        let v = Vector::from_vec(coords);
        let n = v.norm();
        if n > T::of(1e-12) {
            return v / n;
        }
    }
}

/// Uniform sample in the closed ball `center + radius * B`.
pub fn sample_in_ball<T: Real, R: Rng>(center: &Vector<T>, radius: T, rng: &mut R) -> Vector<T> {
    let dim = center.len();
    let dir = sample_unit::<T, R>(dim, rng);
    let u: f64 = rng.gen_range(0.0..=1.0);
    let r = radius * T::of(u.powf(1.0 / dim as f64));
    center + dir * r
}

/// Clamp `x` into the closed ball `center + radius * B`.
pub fn clamp_to_ball<T: Real>(x: &Vector<T>, center: &Vector<T>, radius: T) -> Vector<T> {
    let d = x - center;
    let n = d.norm();
    if n <= radius {
        x.clone()
    } else {
        center + d * (radius / n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_dimensions_and_norms() {
        for dim in 1..=5 {
            let grid = unit_grid::<f64>(dim, 16);
            assert!(!grid.is_empty());
            for p in &grid {
                assert_eq!(p.len(), dim);
                assert!((p.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn one_dimensional_grid_has_both_signs() {
        let grid = unit_grid::<f64>(1, 8);
        assert!(grid.iter().any(|p| p[0] > 0.0));
        assert!(grid.iter().any(|p| p[0] < 0.0));
    }

    #[test]
    fn substreams_are_reproducible() {
        let a: Vec<f64> = {
            let mut rng = substream(7, 3);
            (0..4).map(|_| rng.gen()).collect()
        };
        let b: Vec<f64> = {
            let mut rng = substream(7, 3);
            (0..4).map(|_| rng.gen()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn ball_samples_stay_inside() {
        let mut rng = substream(1, 0);
        let c = Vector::from_vec(vec![1.0, -2.0]);
        for _ in 0..100 {
            let x = sample_in_ball(&c, 0.5, &mut rng);
            assert!((x - &c).norm() <= 0.5 + 1e-12);
        }
    }
}
