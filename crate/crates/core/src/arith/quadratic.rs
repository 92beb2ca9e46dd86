//! Exact arithmetic in a single real quadratic field `Q[√n]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use super::rational::{self, floor_int, parse_rational, Rational};
use crate::error::{Error, Result};

/// `a + b·√n`.
///
/// Values are normalized so that `b = 0` exactly when the radicand is
/// reported as 0, and otherwise the radicand is squarefree and greater
/// than one. Rationals therefore embed with radicand 0 and combine freely
/// with any field; two irrational operands must share the radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: Rational,
    b: Rational,
    radicand: u64,
}

/// Sign of `a + b·√n`, decided without floating point.
pub fn quad_sign(a: &Rational, b: &Rational, n: u64) -> i8 {
    let sa = sign_of(a);
    let sb = if n == 0 { 0 } else { sign_of(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: compare a² with b²·n
    let lhs = a * a;
    let rhs = b * b * Rational::from_integer(BigInt::from(n));
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl QuadraticNumber {
    pub fn new(a: Rational, b: Rational, radicand: u64) -> Self {
        if b.is_zero() || radicand == 0 {
            return Self::from_rational(a);
        }
        let (k, m) = rational::squarefree_part(radicand);
        let b = b * Rational::from_integer(BigInt::from(k));
        if m == 1 {
            Self::from_rational(a + b)
        } else {
            QuadraticNumber { a, b, radicand: m }
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticNumber {
            a,
            b: Rational::zero(),
            radicand: 0,
        }
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        Self::new(Rational::zero(), Rational::one(), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_coeff(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn sign(&self) -> i8 {
        quad_sign(&self.a, &self.b, self.radicand)
    }

    pub fn conjugate(&self) -> Self {
        QuadraticNumber {
            a: self.a.clone(),
            b: -self.b.clone(),
            radicand: self.radicand,
        }
    }

    /// `a² − b²·n`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(self.radicand))
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.radicand, other.radicand) {
            (0, n) | (n, 0) => Ok(n),
            (m, n) if m == n => Ok(m),
            (m, n) => Err(Error::MixedRadicand(m, n)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let n = self.common_radicand(other)?;
        Ok(Self::new(&self.a + &other.a, &self.b + &other.b, n))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let n = self.common_radicand(other)?;
        Ok(Self::new(&self.a - &other.a, &self.b - &other.b, n))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let n = self.common_radicand(other)?;
        let nn = Rational::from_integer(BigInt::from(n));
        let a = &self.a * &other.a + &self.b * &other.b * nn;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::new(a, b, n))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        let norm = other.norm();
        if norm.is_zero() {
            return Err(Error::InvalidParameter("division by zero".into()));
        }
        let num = self.try_mul(&other.conjugate())?;
        Ok(Self::new(num.a / &norm, num.b / &norm, num.radicand))
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.try_sub(other)?.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        match quad_sign(&(&self.a - r), &self.b, self.radicand) {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Exact floor, found by integer bracketing around `⌊a⌋ + ⌊b√n⌋`.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return floor_int(&self.a);
        }
        // b√n = sign(b)·√(p²n)/q with b = p/q
        let p = self.b.numer().abs();
        let q = self.b.denom().clone();
        let root = (&p * &p * BigInt::from(self.radicand)).sqrt() / &q;
        let approx = if self.b.is_negative() { -root } else { root };
        let mut k = floor_int(&self.a) + approx;
        loop {
            let kr = Rational::from_integer(k.clone());
            if self.cmp_rational(&kr) == Ordering::Less {
                k -= 1;
                continue;
            }
            let next = Rational::from_integer(&k + 1);
            if self.cmp_rational(&next) != Ordering::Less {
                k += 1;
                continue;
            }
            return k;
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational::to_f64(&self.a) + rational::to_f64(&self.b) * (self.radicand as f64).sqrt()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::from_rational(Rational::one());
        for _ in 0..exp {
            acc = acc.try_mul(self).expect("same field");
        }
        acc
    }
}

impl From<Rational> for QuadraticNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl PartialOrd for QuadraticNumber {
    /// `None` when the operands live in different quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.radicand)
        }
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Accepts a rational string or `a+b*sqrt(n)`; `a-b*sqrt(n)` is also read.
    fn from_str(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(idx) = t.find("sqrt(") else {
            return parse_rational(&t).map(Self::from_rational);
        };
        let err = || Error::Parse(text.to_string());
        let inner = t[idx + 5..].strip_suffix(')').ok_or_else(err)?;
        let n: u64 = inner.parse().map_err(|_| err())?;
        let head = &t[..idx];
        let head = head.strip_suffix('*').unwrap_or(head);
        // split "A+B" / "A-B" / "B" at the last sign that is not leading
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .filter(|&(i, _)| !matches!(head.as_bytes()[i - 1], b'+' | b'-' | b'/'))
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b = b.strip_prefix('+').unwrap_or(b);
        let b = match b {
            "" => Rational::one(),
            "-" => -Rational::one(),
            _ => parse_rational(b)?,
        };
        Ok(Self::new(parse_rational(a)?, b, n))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: QuadraticNumber) -> QuadraticNumber {
                self.$checked(&rhs).expect(concat!("quadratic ", stringify!($method)))
            }
        }
        impl<'a> $trait<&'a QuadraticNumber> for &'a QuadraticNumber {
            type Output = QuadraticNumber;
            fn $method(self, rhs: &'a QuadraticNumber) -> QuadraticNumber {
                self.$checked(rhs).expect(concat!("quadratic ", stringify!($method)))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            a: -self.a,
            b: -self.b,
            radicand: self.radicand,
        }
    }
}
