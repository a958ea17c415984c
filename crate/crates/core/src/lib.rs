//! Numerical set-valued analysis.
//!
//! The crate works with set-valued maps `F` from `R^d` into the nonempty
//! compact convex subsets of `R^l` and provides:
//!
//! * [`geometry`] — convex bodies (vertex sets and support oracles), support
//!   functions, exposed faces, projections, tangent/normal cones and
//!   barycentric utilities;
//! * [`maps`] — concrete map families: singleton lifts, finitely generated
//!   maps `x -> conv{f_1(x), ..., f_N(x)}`, ball-valued maps, and a truncated
//!   epigraph family whose exposed-face map is not Lipschitz;
//! * [`derivative`] — graphical-derivative membership through the limit
//!   definition, closed-form derivative cones for generated maps, half-space
//!   derivatives for support-parametrized maps, convex-process verification
//!   and a differentiability classifier;
//! * [`lipschitz`] — sampled estimators for set-valued Lipschitz constants,
//!   isotropic (exposed-face) Lipschitz constants and single-valued calmness;
//! * [`experiments`] — deterministic, seedable experiment drivers emitting
//!   CSV tables and JSON reports (the engine behind the `svderiv` binary).
//!
//! All numerical kernels are generic over the scalar type through [`Real`];
//! `f64` aliases for the common types live at the crate root.

pub mod derivative;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod lipschitz;
pub mod maps;
pub mod scalar;

pub use error::Error;
pub use scalar::Real;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Dynamically sized vector over a generic scalar.
pub type Vector<T> = nalgebra::DVector<T>;
/// Dynamically sized matrix over a generic scalar.
pub type Matrix<T> = nalgebra::DMatrix<T>;

// Double-precision aliases for the main domain types.
pub type Vector64 = Vector<f64>;
pub type Matrix64 = Matrix<f64>;
pub type Body64 = geometry::ConvexBody<f64>;
pub type PolyhedralCone64 = geometry::PolyhedralCone<f64>;
pub type HalfSpaceCone64 = geometry::HalfSpaceCone<f64>;
pub type Map64 = maps::SetValuedMap<f64>;
pub type GraphPoint64 = maps::GraphPoint<f64>;
pub type Schedule64 = derivative::LimitSchedule<f64>;
pub type Probe64 = derivative::DerivativeProbe<f64>;
pub type DerivativeCone64 = derivative::DerivativeCone<f64>;
pub type Verdict64 = derivative::ClassifierVerdict<f64>;
pub type Region64 = lipschitz::RegionSpec<f64>;
