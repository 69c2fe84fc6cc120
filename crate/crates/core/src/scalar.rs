//! Scalar abstraction shared by every computation in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the toolkit can compute with.
///
/// The numeric thresholds are per-precision: the comparison tolerance is
/// `1e-9` for `f64`, which is below the resolution of `f32`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Inclusive comparison tolerance for rates (bits) and powers.
    fn tolerance() -> Self;

    /// Bases whose determinant falls below this magnitude are treated as singular.
    fn singular_threshold() -> Self;

    /// Smallest admissible `|eta|` in the genie objective.
    fn eta_floor() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Lossy conversion used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn tolerance() -> Self {
        1e-9
    }

    fn singular_threshold() -> Self {
        1e-12
    }

    fn eta_floor() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn tolerance() -> Self {
        1e-5
    }

    fn singular_threshold() -> Self {
        1e-6
    }

    fn eta_floor() -> Self {
        1e-4
    }
}

/// `½·log2(1 + snr)`: the rate of a real Gaussian channel, in bits per use.
#[inline]
pub fn half_log2_1p<T: Scalar>(snr: T) -> T {
    (T::one() + snr).log2() / T::lit(2.0)
}

/// `a <= b` with the scalar's inclusive tolerance.
#[inline]
pub fn le_tol<T: Scalar>(a: T, b: T) -> bool {
    a <= b + T::tolerance()
}
