//! Projection onto convex bodies.
//!
//! Polytopes are handled by Wolfe's min-norm-point active-set method, which
//! terminates on exact faces. Support-oracle bodies fall back to Frank-Wolfe
//! with the oracle as linear-minimization oracle; with exact line search the
//! duality gap decays at least like O(1/k) and geometrically on smooth
//! strictly convex bodies.

use crate::geometry::body::SupportOracle;
use crate::scalar::Real;
use crate::{Matrix, Vector};

const WOLFE_MAX_MAJOR: usize = 200;
const WOLFE_MAX_MINOR: usize = 100;
const FW_MAX_ITERS: usize = 200;

/// Distance from `z` to `conv(vertices)` and the nearest point.
pub fn project_onto_hull<T: Real>(z: &Vector<T>, vertices: &[Vector<T>]) -> (T, Vector<T>) {
    debug_assert!(!vertices.is_empty());
    if vertices.len() == 1 {
        return ((&vertices[0] - z).norm(), vertices[0].clone());
    }
    let shifted: Vec<Vector<T>> = vertices.iter().map(|v| v - z).collect();
    let w = min_norm_point(&shifted);
    (w.norm(), w + z)
}

/// Wolfe's min-norm point over `conv(points)`.
fn min_norm_point<T: Real>(points: &[Vector<T>]) -> Vector<T> {
    let scale = points
        .iter()
        .map(|p| p.norm_squared())
        .fold(T::one(), |a, b| a.max(b));
    let eps = T::of(1e-14) * scale;
    let drop_tol = T::of(1e-12);

    // Start from the shortest point.
    let start = (0..points.len())
        .min_by(|&a, &b| {
            points[a]
                .norm_squared()
                .partial_cmp(&points[b].norm_squared())
                .unwrap()
        })
        .unwrap();
    let mut active: Vec<usize> = vec![start];
    let mut weights: Vec<T> = vec![T::one()];
    let mut x = points[start].clone();

    for _ in 0..WOLFE_MAX_MAJOR {
        // Most violating vertex of the optimality condition
        // <x, p_j> >= <x, x> for all j.
        let (j, inner) = (0..points.len())
            .map(|i| (i, x.dot(&points[i])))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if inner >= x.norm_squared() - eps || active.contains(&j) {
            break;
        }
        active.push(j);
        weights.push(T::zero());

        for _ in 0..WOLFE_MAX_MINOR {
            let alpha = affine_minimizer(points, &active);
            if alpha.iter().all(|a| *a > drop_tol) {
                weights = alpha;
                break;
            }
            // Move toward the affine minimizer until a weight vanishes.
            let mut theta = T::one();
            for (lam, a) in weights.iter().zip(alpha.iter()) {
                if *a <= drop_tol && *lam > *a {
                    theta = theta.min(*lam / (*lam - *a));
                }
            }
            for (lam, a) in weights.iter_mut().zip(alpha.iter()) {
                *lam = (T::one() - theta) * *lam + theta * *a;
            }
            let keep: Vec<bool> = weights.iter().map(|l| *l > drop_tol).collect();
            if keep.iter().all(|k| *k) {
                // No vertex left the corral; accept the boundary point.
                break;
            }
            let mut na = Vec::new();
            let mut nw = Vec::new();
            for (i, k) in keep.iter().enumerate() {
                if *k {
                    na.push(active[i]);
                    nw.push(weights[i]);
                }
            }
            let total: T = nw.iter().fold(T::zero(), |a, b| a + *b);
            active = na;
            weights = nw.iter().map(|l| *l / total).collect();
            if active.len() == 1 {
                break;
            }
        }

        x = combination(points, &active, &weights);
    }
    x
}

/// Minimizer of `|sum_i a_i p_i|` over the affine hull (`sum a_i = 1`).
fn affine_minimizer<T: Real>(points: &[Vector<T>], active: &[usize]) -> Vec<T> {
    let k = active.len();
    let mut m = Matrix::<T>::zeros(k + 1, k + 1);
    for (r, &i) in active.iter().enumerate() {
        for (c, &j) in active.iter().enumerate() {
            m[(r, c)] = points[i].dot(&points[j]);
        }
        m[(r, k)] = -T::one();
        m[(k, r)] = T::one();
    }
    let mut b = Vector::<T>::zeros(k + 1);
    b[k] = T::one();
    let sol = m.clone().lu().solve(&b).unwrap_or_else(|| {
        m.svd(true, true)
            .solve(&b, T::of(1e-13))
            .expect("svd solve on square system")
    });
    sol.iter().take(k).copied().collect()
}

fn combination<T: Real>(points: &[Vector<T>], active: &[usize], weights: &[T]) -> Vector<T> {
    let mut x = Vector::<T>::zeros(points[0].len());
    for (&i, &w) in active.iter().zip(weights.iter()) {
        x += &points[i] * w;
    }
    x
}

/// Frank-Wolfe projection of `z` onto a support-oracle body.
pub fn frank_wolfe_project<T: Real>(
    z: &Vector<T>,
    oracle: &dyn SupportOracle<T>,
) -> (T, Vector<T>) {
    let dim = z.len();
    let start_dir = if z.norm() > T::of(1e-14) {
        z.clone()
    } else {
        let mut e = Vector::<T>::zeros(dim);
        e[0] = T::one();
        e
    };
    let mut y = oracle.argmax(&start_dir);
    let gap_tol = T::of(1e-16) * (T::one() + z.norm_squared());

    for _ in 0..FW_MAX_ITERS {
        let g = &y - z;
        if g.norm() <= T::of(1e-15) {
            return (T::zero(), y);
        }
        let s = oracle.argmax(&(-&g));
        let d = &s - &y;
        let gap = -g.dot(&d);
        if gap <= gap_tol {
            break;
        }
        let dn2 = d.norm_squared();
        if dn2 <= T::of(1e-30) {
            break;
        }
        // Exact line search for the quadratic objective, clamped to [0, 1].
        let step = (gap / dn2).min(T::one());
        y += d * step;
    }
    ((&y - z).norm(), y)
}
