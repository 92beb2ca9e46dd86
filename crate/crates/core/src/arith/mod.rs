//! Exact scalars, polynomials, and piecewise polynomials.
//!
//! Everything here is immutable after construction; no floating point is
//! used to decide a comparison.

pub mod piecewise;
pub mod poly;
pub mod quadratic;
pub mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

pub use piecewise::{Combine, PiecewisePoly};
pub use poly::UniPoly;
pub use quadratic::{quad_sign, QuadraticNumber};
pub use rational::Rational;

/// Serializes any exact value through its canonical `Display` string.
pub fn serialize_display<T: fmt::Display, S: serde::Serializer>(
    value: &T,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    ser.collect_str(value)
}

/// A general exact value: rational, or an element of one `Q[√n]`.
pub type ExactScalar = QuadraticNumber;

/// Ordered field operations shared by [`Rational`] and [`QuadraticNumber`].
///
/// Lets the evaluation code run unchanged at rational or quadratic points.
pub trait ExactField:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: Rational) -> Self;

    /// -1, 0 or +1.
    fn sign(&self) -> i8;

    fn cmp_rational(&self, r: &Rational) -> Ordering;

    fn floor(&self) -> BigInt;

    fn as_rational(&self) -> Option<Rational>;

    /// Lossy, for reporting only.
    fn approx(&self) -> f64;

    fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    fn to_scalar(&self) -> ExactScalar;
}

impl ExactField for Rational {
    fn from_rational(r: Rational) -> Self {
        r
    }

    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if num_traits::Signed::is_negative(self) {
            -1
        } else {
            1
        }
    }

    fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.cmp(r)
    }

    fn floor(&self) -> BigInt {
        rational::floor_int(self)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn approx(&self) -> f64 {
        rational::to_f64(self)
    }

    fn to_scalar(&self) -> ExactScalar {
        QuadraticNumber::from_rational(self.clone())
    }
}

impl ExactField for QuadraticNumber {
    fn from_rational(r: Rational) -> Self {
        QuadraticNumber::from_rational(r)
    }

    fn sign(&self) -> i8 {
        QuadraticNumber::sign(self)
    }

    fn cmp_rational(&self, r: &Rational) -> Ordering {
        QuadraticNumber::cmp_rational(self, r)
    }

    fn floor(&self) -> BigInt {
        QuadraticNumber::floor(self)
    }

    fn as_rational(&self) -> Option<Rational> {
        self.to_rational()
    }

    fn approx(&self) -> f64 {
        self.to_f64()
    }

    fn to_scalar(&self) -> ExactScalar {
        self.clone()
    }
}
