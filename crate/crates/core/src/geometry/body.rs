//! Convex bodies: vertex sets and support oracles.

use std::sync::Arc;

use crate::error::Error;
use crate::geometry::directions::unit_grid;
use crate::geometry::projection;
use crate::scalar::Real;
use crate::{Result, Vector};

/// Relative tolerance for collecting the vertices of an exposed face.
///
/// Applied relative to `|sigma(p)| + 1` so floating-point ties map to faces
/// instead of single vertices.
pub const FACE_TOL: f64 = 1e-9;

/// Number of grid directions used when a support-oracle body has to be
/// swept (one-sided Hausdorff distance).
pub const DEFAULT_DIRECTION_GRID: usize = 256;

/// Support oracle describing a nonempty compact convex set.
///
/// `support` must be positively homogeneous and subadditive; `argmax` must
/// return a point of the set attaining the support value (`p != 0`).
pub trait SupportOracle<T: Real>: Send + Sync {
    /// Support value `sigma(p) = max_{y in K} <p, y>`.
    fn support(&self, p: &Vector<T>) -> T;

    /// A maximizer `Y(p)` of `<p, .>` over the set; `p` is nonzero.
    fn argmax(&self, p: &Vector<T>) -> Vector<T>;

    /// Optional sharp projection `(distance, nearest point)`.
    ///
    /// Oracles with extra structure can override this; the default `None`
    /// routes projections through Frank-Wolfe on support evaluations.
    fn project(&self, _z: &Vector<T>) -> Option<(T, Vector<T>)> {
        None
    }
}

/// Euclidean ball `center + radius * B`, the canonical smooth strictly
/// convex support oracle.
pub struct BallOracle<T: Real> {
    pub center: Vector<T>,
    pub radius: T,
}

impl<T: Real> SupportOracle<T> for BallOracle<T> {
    fn support(&self, p: &Vector<T>) -> T {
        p.dot(&self.center) + self.radius * p.norm()
    }

    fn argmax(&self, p: &Vector<T>) -> Vector<T> {
        &self.center + p * (self.radius / p.norm())
    }

    fn project(&self, z: &Vector<T>) -> Option<(T, Vector<T>)> {
        let d = z - &self.center;
        let n = d.norm();
        if n <= self.radius {
            Some((T::zero(), z.clone()))
        } else {
            Some((n - self.radius, &self.center + d * (self.radius / n)))
        }
    }
}

enum Repr<T: Real> {
    Vertices(Vec<Vector<T>>),
    Oracle(Arc<dyn SupportOracle<T>>),
}

impl<T: Real> Clone for Repr<T> {
    fn clone(&self) -> Self {
        match self {
            Repr::Vertices(v) => Repr::Vertices(v.clone()),
            Repr::Oracle(o) => Repr::Oracle(Arc::clone(o)),
        }
    }
}

/// A nonempty compact convex subset of `R^l`.
///
/// Represented either by a finite vertex list (the set is their convex
/// hull) or by a support oracle.
#[derive(Clone)]
pub struct ConvexBody<T: Real> {
    dim: usize,
    repr: Repr<T>,
}

impl<T: Real> std::fmt::Debug for ConvexBody<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.repr {
            Repr::Vertices(vs) => f
                .debug_struct("ConvexBody")
                .field("dim", &self.dim)
                .field(
                    "vertices",
                    &vs.iter().map(|v| v.as_slice()).collect::<Vec<_>>(),
                )
                .finish(),
            Repr::Oracle(_) => f
                .debug_struct("ConvexBody")
                .field("dim", &self.dim)
                .field("repr", &"support oracle")
                .finish(),
        }
    }
}

impl<T: Real> ConvexBody<T> {
    /// Convex hull of a nonempty vertex list.
    pub fn from_vertices(vertices: Vec<Vector<T>>) -> Result<Self> {
        let dim = vertices
            .first()
            .ok_or(Error::Config("vertex list must be nonempty".into()))?
            .len();
        for v in &vertices {
            if v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                });
            }
        }
        Ok(Self {
            dim,
            repr: Repr::Vertices(vertices),
        })
    }

    /// Single-point body `{y}`.
    pub fn point(y: Vector<T>) -> Self {
        let dim = y.len();
        Self {
            dim,
            repr: Repr::Vertices(vec![y]),
        }
    }

    /// Body given by a support oracle.
    pub fn from_oracle(dim: usize, oracle: Arc<dyn SupportOracle<T>>) -> Self {
        Self {
            dim,
            repr: Repr::Oracle(oracle),
        }
    }

    /// Euclidean ball `center + radius * B`.
    pub fn ball(center: Vector<T>, radius: T) -> Result<Self> {
        if radius <= T::zero() {
            return Err(Error::NonpositiveRadius(radius.as_f64()));
        }
        let dim = center.len();
        Ok(Self::from_oracle(
            dim,
            Arc::new(BallOracle { center, radius }),
        ))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertex list, when the body is a polytope.
    pub fn vertices(&self) -> Option<&[Vector<T>]> {
        match &self.repr {
            Repr::Vertices(v) => Some(v),
            Repr::Oracle(_) => None,
        }
    }

    pub fn is_polytope(&self) -> bool {
        matches!(self.repr, Repr::Vertices(_))
    }

    fn check_dim(&self, p: &Vector<T>) -> Result<()> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: p.len(),
            });
        }
        Ok(())
    }

    /// Support value `sigma(p) = max_{y in K} <p, y>`; `sigma(0) = 0`.
    pub fn support(&self, p: &Vector<T>) -> Result<T> {
        self.check_dim(p)?;
        if p.norm() == T::zero() {
            return Ok(T::zero());
        }
        Ok(match &self.repr {
            Repr::Vertices(vs) => {
                let mut best = p.dot(&vs[0]);
                for v in &vs[1..] {
                    best = best.max(p.dot(v));
                }
                best
            }
            Repr::Oracle(o) => o.support(p),
        })
    }

    /// Exposed face `Y(p) = {y in K : <p, y> = sigma(p)}` in direction `p`.
    ///
    /// For a polytope this is the hull of all vertices within `FACE_TOL`
    /// (relative to `|sigma| + 1`) of the maximum; for an oracle body it is
    /// the singleton reported by the oracle.
    pub fn argmax_face(&self, p: &Vector<T>) -> Result<ConvexBody<T>> {
        self.check_dim(p)?;
        if p.norm() == T::zero() {
            return Err(Error::ZeroDirection);
        }
        match &self.repr {
            Repr::Vertices(vs) => {
                let sigma = self.support(p)?;
                let tol = T::of(FACE_TOL) * (sigma.abs() + T::one());
                let face: Vec<Vector<T>> = vs
                    .iter()
                    .filter(|v| sigma - p.dot(v) <= tol)
                    .cloned()
                    .collect();
                ConvexBody::from_vertices(face)
            }
            Repr::Oracle(o) => Ok(ConvexBody::point(o.argmax(p))),
        }
    }

    /// The single exposed point in direction `p`, erroring when the face is
    /// not a singleton (the body is not strictly convex in that direction).
    pub fn exposed_point(&self, p: &Vector<T>) -> Result<Vector<T>> {
        let face = self.argmax_face(p)?;
        let vs = face.vertices().expect("faces are vertex sets");
        if vs.len() != 1 {
            return Err(Error::NotStrictlyConvex {
                p: p.iter().map(|c| c.as_f64()).collect(),
            });
        }
        Ok(vs[0].clone())
    }

    /// Distance from `z` to the body together with the nearest point.
    ///
    /// Polytopes use Wolfe's min-norm-point active-set method; oracle
    /// bodies use the oracle's own projection when available and otherwise
    /// Frank-Wolfe with the support oracle as linear-minimization oracle.
    pub fn distance_to(&self, z: &Vector<T>) -> Result<(T, Vector<T>)> {
        self.check_dim(z)?;
        Ok(match &self.repr {
            Repr::Vertices(vs) => projection::project_onto_hull(z, vs),
            Repr::Oracle(o) => match o.project(z) {
                Some(res) => res,
                None => projection::frank_wolfe_project(z, o.as_ref()),
            },
        })
    }

    /// Membership test within an absolute tolerance on the distance.
    pub fn contains(&self, z: &Vector<T>, tol: T) -> Result<bool> {
        Ok(self.distance_to(z)?.0 <= tol)
    }

    /// One-sided Hausdorff excess `sup_{a in A} dist(a, B)` of `self` over
    /// `other`.
    ///
    /// Exact over vertices for polytopes (the distance function is convex);
    /// support-oracle bodies are swept with a fixed deterministic grid of
    /// `directions` exposed points, which makes the result a reproducible
    /// lower approximation.
    pub fn one_sided_hausdorff(&self, other: &ConvexBody<T>, directions: usize) -> Result<T> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut sup = T::zero();
        match &self.repr {
            Repr::Vertices(vs) => {
                for v in vs {
                    sup = sup.max(other.distance_to(v)?.0);
                }
            }
            Repr::Oracle(o) => {
                for p in unit_grid::<T>(self.dim, directions) {
                    sup = sup.max(other.distance_to(&o.argmax(&p))?.0);
                }
            }
        }
        Ok(sup)
    }
}
