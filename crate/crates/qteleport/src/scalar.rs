//! Floating point scalar underlying the complex amplitudes.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rand::Rng;

/// Real scalar type carried by every state and gate.
///
/// The two tolerance constants scale with the precision of the concrete
/// type; the contract tolerances quoted elsewhere in the crate docs are the
/// `f64` values.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + 'static
{
    /// Absolute tolerance for norm and unitarity checks.
    const NORM_TOL: Self;

    /// Outcome probabilities at or below this are dropped from enumerations.
    const PRUNE_TOL: Self;

    /// Uniform draw in [0, 1). Sampled at f64 precision for every scalar so
    /// a seeded run visits the same outcomes regardless of precision.
    fn uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::real(rng.gen::<f64>())
    }

    /// Conversion from f64, for constants known to fit.
    fn real(x: f64) -> Self {
        Self::from_f64(x).expect("finite constant representable in scalar type")
    }

    /// Widening view for error reports and serialization.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const NORM_TOL: Self = 1e-10;
    const PRUNE_TOL: Self = 1e-12;
}

impl Scalar for f32 {
    const NORM_TOL: Self = 1e-5;
    const PRUNE_TOL: Self = 1e-7;
}
