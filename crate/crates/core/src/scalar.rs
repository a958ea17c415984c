//! Generic scalar abstraction.

use num_traits::FromPrimitive;

/// Floating-point scalar the numerical kernels are generic over.
///
/// `nalgebra::RealField` supplies arithmetic, elementary functions and
/// ordering; `FromPrimitive` converts the crate's `f64` tolerance constants
/// into `T`.
pub trait Real: nalgebra::RealField + FromPrimitive + Copy {
    /// Lossy conversion of an `f64` constant into `Self`.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    /// Lossy conversion of a `usize` into `Self`.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize fits in scalar")
    }

    /// Lossy view of `Self` as `f64`, for reporting and error messages.
    fn as_f64(self) -> f64;

    /// Machine epsilon of the scalar type.
    fn eps() -> Self;
}

impl Real for f32 {
    fn as_f64(self) -> f64 {
        self as f64
    }

    fn eps() -> Self {
        f32::EPSILON
    }
}

impl Real for f64 {
    fn as_f64(self) -> f64 {
        self
    }

    fn eps() -> Self {
        f64::EPSILON
    }
}
