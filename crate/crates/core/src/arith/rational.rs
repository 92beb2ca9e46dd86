use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always gcd-reduced with a positive denominator.
///
/// Displays as `p/q`, or `p` when the denominator is one.
pub type Rational = BigRational;

/// `n/d` as a rational. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse(text.to_string()));
    }
    Rational::from_str(t).map_err(|_| Error::Parse(text.to_string()))
}

pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// `⌈s·q⌉` as a machine integer, clamped below at zero.
pub fn ceil_mul(s: &Rational, q: u64) -> u64 {
    let v = ceil_int(&(s * Rational::from_integer(BigInt::from(q))));
    if v.is_negative() {
        0
    } else {
        v.to_u64().expect("power exponent exceeds u64")
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Ratio::to_f64 gives up on huge operands; scale down first.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
        let (n, d) = if shift > 0 {
            (r.numer() >> shift as usize, r.denom() >> shift as usize)
        } else {
            (r.numer().clone(), r.denom().clone())
        };
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Integer square root check: `Some(k)` when `n = k²`.
pub fn perfect_square(n: u64) -> Option<u64> {
    let k = num_integer::Roots::sqrt(&n);
    (k * k == n).then_some(k)
}

/// Splits `n = k²·m` with `m` squarefree.
pub fn squarefree_part(mut n: u64) -> (u64, u64) {
    let mut k = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        while n % (p * p) == 0 {
            n /= p * p;
            k *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (k, n)
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
