//! Graphical derivatives: membership by the limit definition, closed-form
//! and half-space derivative cones, convex-process verification and the
//! differentiability classifier.

pub mod classify;
pub mod cones;
pub mod membership;
pub mod process;
pub mod schedule;

pub use classify::{
    classify_differentiability, compatibility_check, ClassifierVerdict, CompatibilityReport,
    MidpointWitness,
};
pub use cones::{closed_form_derivative, halfspace_derivative, DerivativeCone};
pub use membership::{
    derivative_membership, intersection_witness, residual_curve, sample_derivative_graph,
};
pub use process::{verify_convex_process, ConvexProcessReport, ProcessFailure};
pub use schedule::{DerivativeProbe, LimitSchedule};
