//! Polyhedral and half-space cones, tangent cones and outer normals.

use crate::error::Error;
use crate::geometry::body::ConvexBody;
use crate::geometry::directions::unit_grid;
use crate::scalar::Real;
use crate::{Matrix, Result, Vector};

/// Absolute singular-value threshold for rank decisions on unit vectors.
const RANK_TOL: f64 = 1e-9;

/// Finitely generated cone `{ sum_i mu_i g_i : mu_i >= 0 }` in `R^m`.
///
/// The empty generator list is the trivial cone `{0}`.
#[derive(Clone, Debug)]
pub struct PolyhedralCone<T: Real> {
    dim: usize,
    generators: Vec<Vector<T>>,
}

impl<T: Real> PolyhedralCone<T> {
    pub fn new(dim: usize, generators: Vec<Vector<T>>) -> Result<Self> {
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
        }
        Ok(Self { dim, generators })
    }

    /// The full space `R^dim`, generated by `{+-e_i}`.
    pub fn full_space(dim: usize) -> Self {
        let mut generators = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut e = Vector::<T>::zeros(dim);
            e[i] = T::one();
            generators.push(e.clone());
            generators.push(-e);
        }
        Self { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector<T>] {
        &self.generators
    }

    /// Distance from `z` to the cone (nonnegative least squares residual).
    pub fn distance(&self, z: &Vector<T>) -> Result<T> {
        if z.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        if self.generators.is_empty() {
            return Ok(z.norm());
        }
        let g = Matrix::from_columns(&self.generators);
        let (_, residual) = nnls(&g, z);
        Ok(residual.norm())
    }

    /// Membership within `tol`, relative to `1 + |z|`.
    pub fn contains(&self, z: &Vector<T>, tol: T) -> Result<bool> {
        Ok(self.distance(z)? <= tol * (T::one() + z.norm()))
    }
}

/// Closed half-space cone `{(u, w) : <gradient, u> >= <normal, w>}` in
/// `R^d x R^l`, with `|normal| = 1`.
#[derive(Clone, Debug)]
pub struct HalfSpaceCone<T: Real> {
    pub gradient: Vector<T>,
    pub normal: Vector<T>,
}

impl<T: Real> HalfSpaceCone<T> {
    pub fn new(gradient: Vector<T>, normal: Vector<T>) -> Result<Self> {
        let n = normal.norm();
        if n <= T::of(1e-14) {
            return Err(Error::ZeroDirection);
        }
        Ok(Self {
            gradient,
            normal: normal / n,
        })
    }

    pub fn domain_dim(&self) -> usize {
        self.gradient.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.normal.len()
    }

    /// Signed slack `<gradient, u> - <normal, w>`; nonnegative inside.
    pub fn slack(&self, u: &Vector<T>, w: &Vector<T>) -> T {
        self.gradient.dot(u) - self.normal.dot(w)
    }

    /// Membership within `tol`, relative to `1 + |u| + |w|`.
    pub fn contains(&self, u: &Vector<T>, w: &Vector<T>, tol: T) -> bool {
        self.slack(u, w) >= -tol * (T::one() + u.norm() + w.norm())
    }
}

/// Tangent cone to a convex body at a point of it.
#[derive(Clone, Debug)]
pub enum TangentCone<T: Real> {
    /// Finitely generated cone on `{v_j - y}` (polytope case, no closure
    /// post-processing; membership tests are tolerance based), also used for
    /// the full space at interior points.
    Polyhedral(PolyhedralCone<T>),
    /// `{w : <normal, w> <= 0}` at a smooth boundary point.
    HalfSpace { normal: Vector<T> },
}

impl<T: Real> TangentCone<T> {
    pub fn contains(&self, w: &Vector<T>, tol: T) -> Result<bool> {
        match self {
            TangentCone::Polyhedral(c) => c.contains(w, tol),
            TangentCone::HalfSpace { normal } => Ok(normal.dot(w) <= tol * (T::one() + w.norm())),
        }
    }
}

/// Graph-point tolerance: a point counts as lying on the body when its
/// distance is below `1e-7 * (1 + |y|)` (widened to machine precision for
/// narrower scalar types).
fn graph_tol<T: Real>(y: &Vector<T>) -> T {
    T::of(1e-7).max(T::eps() * T::of(100.0)) * (T::one() + y.norm())
}

/// Tolerance for cone-membership decisions inside the normal-cone analysis.
fn membership_tol<T: Real>() -> T {
    T::of(1e-9).max(T::eps() * T::of(100.0))
}

/// Tangent (contingent) cone `T_K(y)` of a convex body at `y in K`.
pub fn tangent_cone<T: Real>(body: &ConvexBody<T>, y: &Vector<T>) -> Result<TangentCone<T>> {
    let (dist, _) = body.distance_to(y)?;
    if dist > graph_tol(y) {
        return Err(Error::OutsideBody {
            dist: dist.as_f64(),
        });
    }
    if let Some(vs) = body.vertices() {
        let gens = vs.iter().map(|v| v - y).collect();
        return Ok(TangentCone::Polyhedral(PolyhedralCone::new(
            body.dim(),
            gens,
        )?));
    }
    match normal_direction(body, y) {
        Ok(Some(p)) => Ok(TangentCone::HalfSpace { normal: p }),
        Ok(None) => Err(Error::NotSmooth),
        Err(Error::InteriorPoint) => Ok(TangentCone::Polyhedral(PolyhedralCone::full_space(
            body.dim(),
        ))),
        Err(e) => Err(e),
    }
}

/// Unit outer normal at a boundary point `y`, when the normal cone there is
/// a ray (smooth point); `None` at non-smooth boundary points.
///
/// Errors with [`Error::InteriorPoint`] when `y` is interior.
pub fn normal_direction<T: Real>(body: &ConvexBody<T>, y: &Vector<T>) -> Result<Option<Vector<T>>> {
    let (dist, _) = body.distance_to(y)?;
    if dist > graph_tol(y) {
        return Err(Error::OutsideBody {
            dist: dist.as_f64(),
        });
    }
    match body.vertices() {
        Some(vs) => vertex_normal(body.dim(), vs, y),
        None => oracle_normal(body, y),
    }
}

/// Normal-cone analysis for a polytope.
///
/// With `D = {v_j - y}`, the normal cone is `N = cone(D)^polar`. Its
/// lineality is `span(D)^perp` and its dimension is `l - dim lin(cone D)`,
/// where a generator `d` belongs to the lineality of `cone(D)` exactly when
/// `-d` is again in the cone. `N` is a ray iff `span(D) = R^l` and
/// `dim lin(cone D) = l - 1`.
fn vertex_normal<T: Real>(
    dim: usize,
    vertices: &[Vector<T>],
    y: &Vector<T>,
) -> Result<Option<Vector<T>>> {
    let scale = T::one() + y.norm();
    let dirs: Vec<Vector<T>> = vertices
        .iter()
        .map(|v| v - y)
        .filter(|d| d.norm() > T::of(1e-12) * scale)
        .collect();
    if dirs.is_empty() {
        // Singleton body: the normal cone is all of R^l, never a ray here.
        return Ok(None);
    }
    let unit_dirs: Vec<Vector<T>> = dirs.iter().map(|d| d / d.norm()).collect();
    let cone = PolyhedralCone::new(dim, dirs.clone())?;
    let lin: Vec<Vector<T>> = unit_dirs
        .iter()
        .filter(|d| {
            cone.contains(&-(*d).clone(), membership_tol::<T>())
                .expect("dimension checked")
        })
        .cloned()
        .collect();
    let lin_rank = rank(&lin);
    if lin_rank == dim {
        return Err(Error::InteriorPoint);
    }
    if rank(&unit_dirs) < dim || dim - lin_rank != 1 {
        return Ok(None);
    }
    // The normal line is the orthogonal complement of the lineality span.
    let p = orthogonal_complement_line(dim, &lin);
    let fits = |q: &Vector<T>| {
        unit_dirs
            .iter()
            .all(|d| q.dot(d) <= T::of(10.0) * membership_tol::<T>())
    };
    if fits(&p) {
        Ok(Some(p))
    } else if fits(&(-&p)) {
        Ok(Some(-p))
    } else {
        Ok(None)
    }
}

/// Rank of a vector family via singular values above `RANK_TOL`.
fn rank<T: Real>(vectors: &[Vector<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = Matrix::from_columns(vectors);
    m.svd(false, false)
        .singular_values
        .iter()
        .filter(|s| **s > T::of(RANK_TOL))
        .count()
}

/// A unit vector spanning the 1-dimensional orthogonal complement of
/// `span(vectors)` in `R^dim`.
///
/// The row matrix is padded to square so the thin SVD keeps the kernel
/// directions among its right singular vectors.
fn orthogonal_complement_line<T: Real>(dim: usize, vectors: &[Vector<T>]) -> Vector<T> {
    if vectors.is_empty() {
        debug_assert_eq!(dim, 1);
        return Vector::from_element(1, T::one());
    }
    let rows = vectors.len().max(dim);
    let mut m = Matrix::<T>::zeros(rows, dim);
    for (r, v) in vectors.iter().enumerate() {
        m.row_mut(r).copy_from(&v.transpose());
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested v_t");
    let sing = &svd.singular_values;
    // Right singular vectors for vanishing singular values span the kernel.
    let mut best_row = vt.nrows() - 1;
    for r in 0..vt.nrows() {
        if r >= sing.len() || sing[r] <= T::of(RANK_TOL) {
            best_row = r;
            break;
        }
    }
    let p = vt.row(best_row).transpose();
    let n = p.norm();
    p / n
}

/// Sphere-restricted gap `g(p) = sigma(p) - <p, y>`; zero exactly on the
/// normal directions of `y`.
fn support_gap<T: Real>(body: &ConvexBody<T>, y: &Vector<T>, p: &Vector<T>) -> T {
    body.support(p).expect("dimension checked") - p.dot(y)
}

/// Outer normal for a support-oracle body: minimize the support gap over the
/// unit sphere (grid start + projected gradient), then classify smoothness
/// by probing the gap along nearby sphere directions.
fn oracle_normal<T: Real>(body: &ConvexBody<T>, y: &Vector<T>) -> Result<Option<Vector<T>>> {
    let dim = body.dim();
    let scale = T::one() + y.norm();
    let boundary_tol = T::of(1e-7) * scale;

    if dim == 1 {
        for s in [T::one(), -T::one()] {
            let p = Vector::from_element(1, s);
            if support_gap(body, y, &p) <= boundary_tol {
                return Ok(Some(p));
            }
        }
        return Err(Error::InteriorPoint);
    }

    let mut p = unit_grid::<T>(dim, 256)
        .into_iter()
        .min_by(|a, b| {
            support_gap(body, y, a)
                .partial_cmp(&support_gap(body, y, b))
                .unwrap()
        })
        .expect("grid nonempty");
    let mut gap = support_gap(body, y, &p);

    // Projected gradient descent on the sphere; grad sigma(p) = Y(p).
    for _ in 0..100 {
        let grad = body.exposed_point(&p)? - y;
        let tangential = &grad - &p * grad.dot(&p);
        if tangential.norm() <= T::of(1e-13) * scale {
            break;
        }
        let mut eta = T::one();
        let mut improved = false;
        for _ in 0..40 {
            let cand = &p - &tangential * eta;
            let cand = &cand / cand.norm();
            let cand_gap = support_gap(body, y, &cand);
            if cand_gap < gap {
                p = cand;
                gap = cand_gap;
                improved = true;
                break;
            }
            eta *= T::of(0.5);
        }
        if !improved {
            break;
        }
    }

    if gap > boundary_tol {
        return Err(Error::InteriorPoint);
    }

    // Smoothness: the normal cone is a ray iff the zero set of the gap is an
    // isolated direction. Probe along tangent rotations of size delta; a
    // vanishing gap there means a whole arc of normals (corner / flat face).
    let delta = T::of(1e-3);
    let flat_tol = T::of(1e-10) * scale;
    for t in tangent_basis(&p) {
        for s in [T::one(), -T::one()] {
            let q = &p + &t * (s * delta);
            let q = &q / q.norm();
            if support_gap(body, y, &q) <= flat_tol {
                return Ok(None);
            }
        }
    }
    Ok(Some(p))
}

/// Orthonormal basis of the tangent space of the unit sphere at `p`.
fn tangent_basis<T: Real>(p: &Vector<T>) -> Vec<Vector<T>> {
    let dim = p.len();
    let mut m = Matrix::<T>::zeros(dim, dim);
    m.row_mut(0).copy_from(&p.transpose());
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested v_t");
    let mut basis = Vec::new();
    for r in 0..vt.nrows() {
        let row = vt.row(r).transpose();
        if row.dot(p).abs() < T::of(0.5) {
            basis.push(row.clone() / row.norm());
        }
    }
    debug_assert_eq!(basis.len(), dim - 1);
    basis
}

/// Nonnegative least squares `min |G mu - z|, mu >= 0` via Lawson-Hanson.
///
/// Returns the coefficient vector and the residual `z - G mu`.
pub fn nnls<T: Real>(g: &Matrix<T>, z: &Vector<T>) -> (Vector<T>, Vector<T>) {
    let m = g.ncols();
    let mut mu = Vector::<T>::zeros(m);
    let mut passive = vec![false; m];
    let mut residual = z.clone();
    let scale = T::one() + z.norm();
    let tol = T::of(1e-12) * scale;

    for _ in 0..(3 * m + 10) {
        let w = g.transpose() * &residual;
        let mut best: Option<(usize, T)> = None;
        for i in 0..m {
            if !passive[i] {
                match best {
                    Some((_, bw)) if w[i] <= bw => {}
                    _ => best = Some((i, w[i])),
                }
            }
        }
        let (j, wj) = match best {
            Some(b) => b,
            None => break,
        };
        if wj <= tol {
            break;
        }
        passive[j] = true;

        for _ in 0..(m + 1) {
            let idx: Vec<usize> = (0..m).filter(|i| passive[*i]).collect();
            let cols: Vec<Vector<T>> = idx.iter().map(|i| g.column(*i).into_owned()).collect();
            let gp = Matrix::from_columns(&cols);
            let s = gp
                .clone()
                .svd(true, true)
                .solve(z, T::of(1e-13))
                .expect("least squares solve");
            if s.iter().all(|v| *v > T::zero()) {
                mu.fill(T::zero());
                for (k, &i) in idx.iter().enumerate() {
                    mu[i] = s[k];
                }
                break;
            }
            // Step from mu toward s until a coefficient hits zero.
            let mut alpha = T::one();
            for (k, &i) in idx.iter().enumerate() {
                if s[k] <= T::zero() && mu[i] > s[k] {
                    alpha = alpha.min(mu[i] / (mu[i] - s[k]));
                }
            }
            for (k, &i) in idx.iter().enumerate() {
                let step = alpha * (s[k] - mu[i]);
                mu[i] += step;
                if mu[i] <= T::of(1e-14) {
                    mu[i] = T::zero();
                    passive[i] = false;
                }
            }
        }
        residual = z - g * &mu;
    }
    (mu, residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector<f64> {
        Vector::from_vec(c.to_vec())
    }

    fn square() -> ConvexBody<f64> {
        ConvexBody::from_vertices(vec![
            v(&[1.0, 1.0]),
            v(&[1.0, -1.0]),
            v(&[-1.0, 1.0]),
            v(&[-1.0, -1.0]),
        ])
        .unwrap()
    }

    #[test]
    fn nnls_feasible_and_infeasible() {
        let cone = PolyhedralCone::new(2, vec![v(&[1.0, 0.0]), v(&[0.0, 1.0])]).unwrap();
        assert!(cone.contains(&v(&[2.0, 3.0]), 1e-9).unwrap());
        assert!(!cone.contains(&v(&[-1.0, 0.0]), 1e-6).unwrap());
        assert!(cone.contains(&v(&[0.0, 0.0]), 1e-9).unwrap());
    }

    #[test]
    fn trivial_cone_contains_only_zero() {
        let cone = PolyhedralCone::<f64>::new(2, vec![]).unwrap();
        assert!(cone.contains(&v(&[0.0, 0.0]), 1e-9).unwrap());
        assert!(!cone.contains(&v(&[0.5, 0.0]), 1e-6).unwrap());
    }

    #[test]
    fn tangent_cone_of_square_at_corner() {
        let b = square();
        let tc = tangent_cone(&b, &v(&[1.0, 1.0])).unwrap();
        match tc {
            TangentCone::Polyhedral(c) => {
                assert!(c.contains(&v(&[-1.0, 0.0]), 1e-9).unwrap());
                assert!(c.contains(&v(&[0.0, -1.0]), 1e-9).unwrap());
                assert!(c.contains(&v(&[-2.0, -2.0]), 1e-9).unwrap());
                assert!(!c.contains(&v(&[1.0, 0.0]), 1e-6).unwrap());
            }
            _ => panic!("expected polyhedral tangent cone"),
        }
    }

    #[test]
    fn tangent_cone_of_segment_interior_is_line() {
        let b = ConvexBody::from_vertices(vec![v(&[0.0]), v(&[1.0])]).unwrap();
        let tc = tangent_cone(&b, &v(&[0.5])).unwrap();
        match tc {
            TangentCone::Polyhedral(c) => {
                assert!(c.contains(&v(&[5.0]), 1e-9).unwrap());
                assert!(c.contains(&v(&[-5.0]), 1e-9).unwrap());
            }
            _ => panic!("expected polyhedral tangent cone"),
        }
    }

    #[test]
    fn tangent_cone_of_disk_is_halfspace() {
        let b = ConvexBody::ball(Vector::zeros(2), 1.0).unwrap();
        let tc = tangent_cone(&b, &v(&[0.0, 1.0])).unwrap();
        match tc {
            TangentCone::HalfSpace { normal } => {
                assert!((normal - v(&[0.0, 1.0])).norm() < 1e-6);
            }
            _ => panic!("expected half-space tangent cone"),
        }
        let tc = tangent_cone(&b, &v(&[0.0, 1.0])).unwrap();
        assert!(tc.contains(&v(&[3.0, -0.1]), 1e-9).unwrap());
        assert!(!tc.contains(&v(&[0.0, 0.5]), 1e-6).unwrap());
    }

    #[test]
    fn tangent_cone_rejects_outside_point() {
        let b = square();
        assert!(matches!(
            tangent_cone(&b, &v(&[3.0, 0.0])),
            Err(Error::OutsideBody { .. })
        ));
    }

    #[test]
    fn disk_normal_at_top() {
        let b = ConvexBody::ball(Vector::zeros(2), 1.0).unwrap();
        let n = normal_direction(&b, &v(&[0.0, 1.0])).unwrap().unwrap();
        assert!((n - v(&[0.0, 1.0])).norm() < 1e-6);
    }

    #[test]
    fn square_normal_at_edge_midpoint() {
        let b = square();
        let n = normal_direction(&b, &v(&[1.0, 0.0])).unwrap().unwrap();
        assert!((n - v(&[1.0, 0.0])).norm() < 1e-9);
    }

    #[test]
    fn square_normal_at_vertex_is_none() {
        let b = square();
        assert!(normal_direction(&b, &v(&[1.0, 1.0])).unwrap().is_none());
    }

    #[test]
    fn normal_errors_at_interior() {
        let b = square();
        assert!(matches!(
            normal_direction(&b, &v(&[0.0, 0.0])),
            Err(Error::InteriorPoint)
        ));
        let disk = ConvexBody::ball(Vector::zeros(2), 1.0).unwrap();
        assert!(matches!(
            normal_direction(&disk, &v(&[0.1, 0.0])),
            Err(Error::InteriorPoint)
        ));
    }

    #[test]
    fn segment_in_plane_midpoint_has_no_ray_normal() {
        let b = ConvexBody::from_vertices(vec![v(&[0.0, 0.0]), v(&[1.0, 1.0])]).unwrap();
        assert!(normal_direction(&b, &v(&[0.5, 0.5])).unwrap().is_none());
    }
}
