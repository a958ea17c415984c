//! Set-valued maps `F : R^d => R^l` with nonempty compact convex values.
//!
//! Three families are provided: singleton lifts of functions, maps generated
//! by finitely many functions (`F(x) = conv{f_1(x), ..., f_N(x)}`), and
//! support-parametrized maps whose values are described by oracles (balls
//! with moving center and radius, and the truncated-epigraph example).
//!
//! Maps are immutable after construction and safe to evaluate concurrently.

pub mod config;
pub mod example51;
pub mod expr;

use std::sync::Arc;

use crate::error::Error;
use crate::geometry::directions::{sample_unit, substream};
use crate::geometry::simplex::affinely_independent;
use crate::geometry::ConvexBody;
use crate::scalar::Real;
use crate::{Matrix, Result, Vector};

pub use config::{build_map, MapSpec};
pub use example51::{counterexample_map, phi_tau};

/// Central finite-difference step for Jacobians of generator functions.
pub const JACOBIAN_FD_STEP: f64 = 1e-6;

/// Distance tolerance (relative to `1 + |y|`) for a pair `(x, y)` to count
/// as a graph point.
pub const GRAPH_POINT_TOL: f64 = 1e-8;

/// Structural kind of a set-valued map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapKind {
    Singleton,
    Generated,
    SupportParametrized,
}

/// Generator function `R^d -> R^l`.
pub type VecFn<T> = Arc<dyn Fn(&Vector<T>) -> Vector<T> + Send + Sync>;
/// Analytic Jacobian `R^d -> R^{l x d}`.
pub type JacFn<T> = Arc<dyn Fn(&Vector<T>) -> Matrix<T> + Send + Sync>;
/// Scalar field `R^d -> R`.
pub type ScalarFn<T> = Arc<dyn Fn(&Vector<T>) -> T + Send + Sync>;

type SupportEval<T> = Arc<dyn Fn(&Vector<T>) -> crate::Result<ConvexBody<T>> + Send + Sync>;

enum Evaluator<T: Real> {
    Generated {
        funcs: Vec<VecFn<T>>,
        jacobians: Option<Vec<JacFn<T>>>,
        check_independence: bool,
    },
    Support(SupportEval<T>),
}

impl<T: Real> Clone for Evaluator<T> {
    fn clone(&self) -> Self {
        match self {
            Evaluator::Generated {
                funcs,
                jacobians,
                check_independence,
            } => Evaluator::Generated {
                funcs: funcs.clone(),
                jacobians: jacobians.clone(),
                check_independence: *check_independence,
            },
            Evaluator::Support(f) => Evaluator::Support(Arc::clone(f)),
        }
    }
}

/// A set-valued map with deterministic evaluation.
#[derive(Clone)]
pub struct SetValuedMap<T: Real> {
    domain_dim: usize,
    codomain_dim: usize,
    kind: MapKind,
    lipschitz_hint: Option<T>,
    evaluator: Evaluator<T>,
}

impl<T: Real> SetValuedMap<T> {
    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    pub fn kind(&self) -> MapKind {
        self.kind
    }

    pub fn lipschitz_hint(&self) -> Option<T> {
        self.lipschitz_hint
    }

    pub fn with_lipschitz_hint(mut self, k: T) -> Self {
        self.lipschitz_hint = Some(k);
        self
    }

    /// Evaluate `F(x)`.
    ///
    /// Generated maps return the vertex set `{f_i(x)}` and, when the
    /// independence flag is set, error on inputs where the generators are
    /// affinely dependent.
    pub fn eval(&self, x: &Vector<T>) -> Result<ConvexBody<T>> {
        if x.len() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                got: x.len(),
            });
        }
        match &self.evaluator {
            Evaluator::Generated {
                funcs,
                check_independence,
                ..
            } => {
                let vertices: Vec<Vector<T>> = funcs.iter().map(|f| f(x)).collect();
                for v in &vertices {
                    if v.len() != self.codomain_dim {
                        return Err(Error::DimensionMismatch {
                            expected: self.codomain_dim,
                            got: v.len(),
                        });
                    }
                }
                if *check_independence && !affinely_independent(&vertices) {
                    return Err(Error::IndependenceViolation {
                        at: x.iter().map(|c| c.as_f64()).collect(),
                    });
                }
                ConvexBody::from_vertices(vertices)
            }
            Evaluator::Support(f) => f(x),
        }
    }

    /// Number of generator functions, for generated and singleton maps.
    pub fn generator_count(&self) -> Option<usize> {
        match &self.evaluator {
            Evaluator::Generated { funcs, .. } => Some(funcs.len()),
            Evaluator::Support(_) => None,
        }
    }

    /// Shared handle to generator `j`.
    pub fn generator(&self, j: usize) -> Option<VecFn<T>> {
        match &self.evaluator {
            Evaluator::Generated { funcs, .. } => funcs.get(j).cloned(),
            Evaluator::Support(_) => None,
        }
    }

    /// Shared handle to the analytic Jacobian of generator `j`, when given.
    pub fn generator_jacobian_fn(&self, j: usize) -> Option<JacFn<T>> {
        match &self.evaluator {
            Evaluator::Generated {
                jacobians: Some(jacs),
                ..
            } => jacs.get(j).cloned(),
            _ => None,
        }
    }

    /// Jacobian of generator `j` at `x`: analytic when available, central
    /// finite differences with step [`JACOBIAN_FD_STEP`] otherwise.
    pub fn generator_jacobian(&self, j: usize, x: &Vector<T>) -> Result<Matrix<T>> {
        let (funcs, jacobians) = match &self.evaluator {
            Evaluator::Generated {
                funcs, jacobians, ..
            } => (funcs, jacobians),
            Evaluator::Support(_) => {
                return Err(Error::WrongMapKind {
                    expected: "generated",
                })
            }
        };
        if j >= funcs.len() {
            return Err(Error::Config(format!("generator index {j} out of range")));
        }
        if let Some(jacs) = jacobians {
            return Ok(jacs[j](x));
        }
        let h = T::of(JACOBIAN_FD_STEP);
        let mut m = Matrix::<T>::zeros(self.codomain_dim, self.domain_dim);
        for c in 0..self.domain_dim {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[c] += h;
            xm[c] -= h;
            let col = (funcs[j](&xp) - funcs[j](&xm)) / (T::of(2.0) * h);
            m.column_mut(c).copy_from(&col);
        }
        Ok(m)
    }

    /// Graph point `(x, Y(x, p))` through the exposed point in direction `p`.
    pub fn exposed_graph_point(&self, x: &Vector<T>, p: &Vector<T>) -> Result<GraphPoint<T>> {
        let y = self.eval(x)?.exposed_point(p)?;
        Ok(GraphPoint { x: x.clone(), y })
    }
}

/// Lift a function `f` to the singleton-valued map `F(x) = {f(x)}`.
pub fn singleton_lift<T: Real>(
    domain_dim: usize,
    codomain_dim: usize,
    f: VecFn<T>,
    jacobian: Option<JacFn<T>>,
) -> SetValuedMap<T> {
    SetValuedMap {
        domain_dim,
        codomain_dim,
        kind: MapKind::Singleton,
        lipschitz_hint: None,
        evaluator: Evaluator::Generated {
            funcs: vec![f],
            jacobians: jacobian.map(|j| vec![j]),
            check_independence: false,
        },
    }
}

/// Map generated by functions `f_1, ..., f_N`: `F(x) = conv{f_i(x)}`.
///
/// Requires `N <= l + 1` (otherwise affine independence is impossible); the
/// independence of `{f_i(x)}` is checked lazily at every evaluation.
pub fn generated_map<T: Real>(
    domain_dim: usize,
    codomain_dim: usize,
    funcs: Vec<VecFn<T>>,
    jacobians: Option<Vec<JacFn<T>>>,
) -> Result<SetValuedMap<T>> {
    if funcs.is_empty() {
        return Err(Error::Config(
            "generated map needs at least one function".into(),
        ));
    }
    if funcs.len() > codomain_dim + 1 {
        return Err(Error::TooManyGenerators {
            n: funcs.len(),
            l: codomain_dim,
        });
    }
    if let Some(jacs) = &jacobians {
        if jacs.len() != funcs.len() {
            return Err(Error::Config("one jacobian per generator required".into()));
        }
    }
    let kind = if funcs.len() == 1 {
        MapKind::Singleton
    } else {
        MapKind::Generated
    };
    Ok(SetValuedMap {
        domain_dim,
        codomain_dim,
        kind,
        lipschitz_hint: None,
        evaluator: Evaluator::Generated {
            funcs,
            jacobians,
            check_independence: true,
        },
    })
}

/// Ball-valued map `F(x) = center(x) + radius(x) B` with support function
/// `sigma(p) = <p, center(x)> + radius(x) |p|`.
pub fn ball_valued_map<T: Real>(
    domain_dim: usize,
    codomain_dim: usize,
    center: VecFn<T>,
    radius: ScalarFn<T>,
) -> SetValuedMap<T> {
    let eval = move |x: &Vector<T>| -> Result<ConvexBody<T>> {
        let r = radius(x);
        if r <= T::zero() {
            return Err(Error::NonpositiveRadius(r.as_f64()));
        }
        ConvexBody::ball(center(x), r)
    };
    SetValuedMap {
        domain_dim,
        codomain_dim,
        kind: MapKind::SupportParametrized,
        lipschitz_hint: None,
        evaluator: Evaluator::Support(Arc::new(eval)),
    }
}

pub(crate) fn support_parametrized<T: Real>(
    domain_dim: usize,
    codomain_dim: usize,
    eval: SupportEval<T>,
) -> SetValuedMap<T> {
    SetValuedMap {
        domain_dim,
        codomain_dim,
        kind: MapKind::SupportParametrized,
        lipschitz_hint: None,
        evaluator: Evaluator::Support(eval),
    }
}

/// A point `(x, y)` of the graph of a map: `y in F(x)` within tolerance.
#[derive(Clone, Debug)]
pub struct GraphPoint<T: Real> {
    x: Vector<T>,
    y: Vector<T>,
}

impl<T: Real> GraphPoint<T> {
    /// Validated constructor: errors when `dist(y, F(x))` exceeds
    /// [`GRAPH_POINT_TOL`] relative to `1 + |y|`.
    pub fn new(map: &SetValuedMap<T>, x: Vector<T>, y: Vector<T>) -> Result<Self> {
        let (dist, _) = map.eval(&x)?.distance_to(&y)?;
        if dist > T::of(GRAPH_POINT_TOL) * (T::one() + y.norm()) {
            return Err(Error::OutsideBody {
                dist: dist.as_f64(),
            });
        }
        Ok(Self { x, y })
    }

    /// Unchecked constructor for points known to lie on the graph.
    pub fn new_unchecked(x: Vector<T>, y: Vector<T>) -> Self {
        Self { x, y }
    }

    pub fn x(&self) -> &Vector<T> {
        &self.x
    }

    pub fn y(&self) -> &Vector<T> {
        &self.y
    }
}

/// Deterministic graph point for a sample index.
///
/// Generated and singleton maps cycle through their vertices; support
/// parametrized maps take the exposed point of a seeded sphere direction,
/// which hits smooth boundary points almost surely on strictly convex
/// values.
pub fn sample_graph_point<T: Real>(
    map: &SetValuedMap<T>,
    x: &Vector<T>,
    index: usize,
    seed: u64,
) -> Result<GraphPoint<T>> {
    match map.kind() {
        MapKind::Singleton | MapKind::Generated => {
            let body = map.eval(x)?;
            let vs = body.vertices().expect("generated maps produce vertex sets");
            let y = vs[index % vs.len()].clone();
            Ok(GraphPoint { x: x.clone(), y })
        }
        MapKind::SupportParametrized => {
            let mut rng = substream(seed, 0x6000_0000 + index as u64);
            let p = sample_unit::<T, _>(map.codomain_dim(), &mut rng);
            map.exposed_graph_point(x, &p)
        }
    }
}
