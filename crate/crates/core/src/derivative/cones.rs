//! Closed-form derivative cones.
//!
//! Generated maps with affinely independent generators have
//! `DF(x, y)(u) = sum_j lambda_j df_j(x) u + T_{F(x)}(y)` where `lambda` is
//! the barycentric representation of `y`. Support-parametrized maps with
//! smooth strictly convex values have a half-space graph
//! `{(u, w) : <grad_x sigma(., p), u> >= <p, w>}` at smooth boundary points.

use crate::error::Error;
use crate::geometry::cone::{normal_direction, tangent_cone, TangentCone};
use crate::geometry::simplex::barycentric_coordinates;
use crate::geometry::{HalfSpaceCone, PolyhedralCone};
use crate::maps::{GraphPoint, MapKind, SetValuedMap};
use crate::scalar::Real;
use crate::{Matrix, Result, Vector};

/// A representation of the graphical derivative as a convex cone in
/// `R^d x R^l`.
#[derive(Clone, Debug)]
pub enum DerivativeCone<T: Real> {
    /// Graph `{(u, L u + c) : c in cone}`.
    AffinePlusCone {
        linear: Matrix<T>,
        cone: PolyhedralCone<T>,
    },
    /// Closed half-space `{(u, w) : <gradient, u> >= <normal, w>}`.
    HalfSpace(HalfSpaceCone<T>),
    /// Cone spanned by accepted sample pairs when no closed form applies.
    /// A sampled summary, never an exact description.
    Empirical(PolyhedralCone<T>),
}

impl<T: Real> DerivativeCone<T> {
    /// Membership of the pair `(u, v)` within `tol`.
    pub fn contains(&self, u: &Vector<T>, v: &Vector<T>, tol: T) -> Result<bool> {
        match self {
            DerivativeCone::AffinePlusCone { linear, cone } => {
                let c = v - linear * u;
                cone.contains(&c, tol)
            }
            DerivativeCone::HalfSpace(h) => Ok(h.contains(u, v, tol)),
            DerivativeCone::Empirical(c) => {
                let mut z = Vector::<T>::zeros(u.len() + v.len());
                z.rows_mut(0, u.len()).copy_from(u);
                z.rows_mut(u.len(), v.len()).copy_from(v);
                c.contains(&z, tol)
            }
        }
    }

    pub fn kind_label(&self) -> &'static str {
        match self {
            DerivativeCone::AffinePlusCone { .. } => "affine_plus_cone",
            DerivativeCone::HalfSpace(_) => "half_space",
            DerivativeCone::Empirical(_) => "empirical",
        }
    }

    /// Compact human-readable summary for reports.
    pub fn summary(&self) -> String {
        match self {
            DerivativeCone::AffinePlusCone { linear, cone } => {
                let l: Vec<f64> = linear.iter().map(|c| c.as_f64()).collect();
                format!("L={l:?} + cone({} gens)", cone.generators().len())
            }
            DerivativeCone::HalfSpace(h) => {
                let g: Vec<f64> = h.gradient.iter().map(|c| c.as_f64()).collect();
                let p: Vec<f64> = h.normal.iter().map(|c| c.as_f64()).collect();
                format!("<{g:?},u> >= <{p:?},w>")
            }
            DerivativeCone::Empirical(c) => {
                format!("empirical hull of {} accepted pairs", c.generators().len())
            }
        }
    }
}

/// Closed-form derivative of a generated map at a graph point.
///
/// `lambda` comes from the barycentric representation of `y` over the
/// generator values; the linear part is `sum_j lambda_j df_j(x)` and the
/// cone part the tangent cone `T_{F(x)}(y)` on the generator differences.
pub fn closed_form_derivative<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
) -> Result<DerivativeCone<T>> {
    let n = match map.generator_count() {
        Some(n) => n,
        None => {
            return Err(Error::WrongMapKind {
                expected: "generated",
            })
        }
    };
    let body = map.eval(gp.x())?;
    let vertices = body.vertices().expect("generated maps produce vertex sets");
    let lambda = barycentric_coordinates(vertices, gp.y())?;

    let mut linear = Matrix::<T>::zeros(map.codomain_dim(), map.domain_dim());
    for (j, lam) in lambda.coefficients().iter().enumerate().take(n) {
        linear += map.generator_jacobian(j, gp.x())? * *lam;
    }
    let cone = match tangent_cone(&body, gp.y())? {
        TangentCone::Polyhedral(c) => c,
        TangentCone::HalfSpace { .. } => unreachable!("polytope tangent cones are polyhedral"),
    };
    Ok(DerivativeCone::AffinePlusCone { linear, cone })
}

/// Half-space derivative of a support-parametrized map at a smooth boundary
/// graph point.
///
/// The normal `p` is the outer normal at `y`; the gradient is the central
/// finite-difference derivative of `x -> sigma_{F(x)}(p)` with step
/// `fd_step`.
pub fn halfspace_derivative<T: Real>(
    map: &SetValuedMap<T>,
    gp: &GraphPoint<T>,
    fd_step: T,
) -> Result<HalfSpaceCone<T>> {
    if map.kind() != MapKind::SupportParametrized {
        return Err(Error::WrongMapKind {
            expected: "support-parametrized",
        });
    }
    let body = map.eval(gp.x())?;
    let normal = normal_direction(&body, gp.y())?.ok_or(Error::NotSmooth)?;

    let mut gradient = Vector::<T>::zeros(map.domain_dim());
    for i in 0..map.domain_dim() {
        let mut xp = gp.x().clone();
        let mut xm = gp.x().clone();
        xp[i] += fd_step;
        xm[i] -= fd_step;
        let sp = map.eval(&xp)?.support(&normal)?;
        let sm = map.eval(&xm)?.support(&normal)?;
        gradient[i] = (sp - sm) / (T::of(2.0) * fd_step);
    }
    HalfSpaceCone::new(gradient, normal)
}
