//! Affine independence and barycentric coordinates.

use crate::error::Error;
use crate::scalar::Real;
use crate::{Matrix, Result, Vector};

/// Singular-value threshold for the affine-independence rank test.
pub const INDEPENDENCE_TOL: f64 = 1e-9;

/// Coefficients on the standard simplex: entries in `[0, 1]` summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplexCoefficients<T: Real> {
    lambda: Vec<T>,
}

impl<T: Real> SimplexCoefficients<T> {
    pub fn coefficients(&self) -> &[T] {
        &self.lambda
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    /// Recombine against the generating points: `sum_j lambda_j points_j`.
    pub fn combine(&self, points: &[Vector<T>]) -> Vector<T> {
        debug_assert_eq!(points.len(), self.lambda.len());
        let mut y = Vector::<T>::zeros(points[0].len());
        for (p, l) in points.iter().zip(self.lambda.iter()) {
            y += p * *l;
        }
        y
    }
}

/// True iff `{V_i - V_N}` is linearly independent (rank `N - 1` with
/// singular values above [`INDEPENDENCE_TOL`]); a single point is vacuously
/// independent.
pub fn affinely_independent<T: Real>(points: &[Vector<T>]) -> bool {
    let n = points.len();
    if n <= 1 {
        return n == 1;
    }
    let last = &points[n - 1];
    let diffs: Vec<Vector<T>> = points[..n - 1].iter().map(|p| p - last).collect();
    let m = Matrix::from_columns(&diffs);
    let rank = m
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|s| **s > T::of(INDEPENDENCE_TOL))
        .count();
    rank == n - 1
}

/// Unique barycentric coordinates of `y` over affinely independent points.
///
/// Solves the augmented system `[P; 1..1] lambda = [y; 1]` by least squares;
/// a residual above `1e-9 * (1 + |y|)` means `y` is not in the affine hull,
/// a coefficient below `-1e-6` means it is outside the simplex. Surviving
/// coefficients are clamped to `[0, 1]`.
pub fn barycentric_coordinates<T: Real>(
    points: &[Vector<T>],
    y: &Vector<T>,
) -> Result<SimplexCoefficients<T>> {
    if points.is_empty() {
        return Err(Error::Config("barycentric coordinates need points".into()));
    }
    let l = points[0].len();
    if y.len() != l {
        return Err(Error::DimensionMismatch {
            expected: l,
            got: y.len(),
        });
    }
    if !affinely_independent(points) {
        return Err(Error::DependentPoints);
    }
    let n = points.len();
    let mut a = Matrix::<T>::zeros(l + 1, n);
    for (c, p) in points.iter().enumerate() {
        for r in 0..l {
            a[(r, c)] = p[r];
        }
        a[(l, c)] = T::one();
    }
    let mut b = Vector::<T>::zeros(l + 1);
    for r in 0..l {
        b[r] = y[r];
    }
    b[l] = T::one();

    let lambda = a
        .clone()
        .svd(true, true)
        .solve(&b, T::of(1e-14))
        .map_err(|e| Error::Config(format!("least squares failed: {e}")))?;

    let residual = (&a * &lambda - &b).norm();
    if residual > T::of(1e-9) * (T::one() + y.norm()) {
        return Err(Error::OutsideBody {
            dist: residual.as_f64(),
        });
    }
    for lam in lambda.iter() {
        if *lam < T::of(-1e-6) {
            return Err(Error::OutsideHull {
                coeff: lam.as_f64(),
            });
        }
    }
    let clamped: Vec<T> = lambda
        .iter()
        .map(|lam| lam.clamp(T::zero(), T::one()))
        .collect();
    Ok(SimplexCoefficients { lambda: clamped })
}
