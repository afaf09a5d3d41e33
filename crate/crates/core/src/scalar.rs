use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar used throughout the crate.
///
/// Implemented for `f32` and `f64`. Everything in the crate is written
/// against this trait; the root module exports `f64` aliases.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the implemented types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Tolerance used for structural checks (unit norms, degeneracy).
    /// Loose enough for `f32`, tight for `f64`.
    fn structural_tol() -> Self;

    /// Below this `|sin κ|` a composed plane wave has no meaningful axis.
    fn axis_tol() -> Self;
}

impl Real for f32 {
    fn structural_tol() -> Self {
        1e-5
    }
    fn axis_tol() -> Self {
        1e-6
    }
}

impl Real for f64 {
    fn structural_tol() -> Self {
        1e-12
    }
    fn axis_tol() -> Self {
        1e-14
    }
}
