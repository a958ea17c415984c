//! Convex bodies in `R^l` with support functions, exposed faces, distances,
//! projections, tangent and normal cones, and simplex utilities.
//!
//! All operations are pure functions of immutable inputs.

pub mod body;
pub mod cone;
pub mod directions;
pub mod projection;
pub mod simplex;

pub use body::{BallOracle, ConvexBody, SupportOracle, DEFAULT_DIRECTION_GRID, FACE_TOL};
pub use cone::{normal_direction, tangent_cone, HalfSpaceCone, PolyhedralCone, TangentCone};
pub use simplex::{affinely_independent, barycentric_coordinates, SimplexCoefficients};
