//! Scalar abstraction shared by every numerical kernel.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Default + Debug + Display + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal; exact for every constant used in this crate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    /// Tolerance floor used where a fixed absolute tolerance would be finer
    /// than the type's resolution.
    #[inline]
    fn tol(x: f64) -> Self {
        let eps = Self::epsilon() * Self::lit(64.0);
        Self::lit(x).max(eps)
    }
}

impl Real for f32 {}
impl Real for f64 {}
