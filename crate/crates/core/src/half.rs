//! Exact half-integers stored as twice their value.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// A value in ½ℤ, held as `2·value` so parity logic never sees rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    #[inline]
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    #[inline]
    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    #[inline]
    pub const fn twice(self) -> i64 {
        self.0
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    #[inline]
    pub const fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// Integer value when the half-integer is whole.
    pub const fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    #[inline]
    pub fn to_real<T: Real>(self) -> T {
        T::from_i64(self.0).expect("i64 representable") / T::lit(2.0)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Projections `-self, -self+1, …, self` of a spin `self`.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> + ExactSizeIterator {
        let top = self.0;
        let count = if top < 0 { 0 } else { top as usize + 1 };
        (0..count).map(move |k| HalfInt(-top + 2 * k as i64))
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
