//! The normalizing function `H_s(d)`, the difference profiles
//! `f_{d,r}(s) = H_s(d) − r·H_{s−1}(d)`, their peaks, and a lattice count
//! whose normalized limit is `H_s(d)`.
//!
//! `H_s(d)` is the volume of `{x ∈ [0,1]^d : Σ x_i < s}`; as a function of
//! `s` it is a degree-`d` spline with integer knots `0, …, d` that is 0 at
//! `s = 0` and identically 1 from `s = d` on.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::rational::{self, binomial, factorial, rat, Rational};
use crate::arith::{ExactField, PiecewisePoly, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        Ok(Dimension(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;
    fn try_from(d: u32) -> Result<Self> {
        Dimension::new(d)
    }
}

impl From<Dimension> for u32 {
    fn from(d: Dimension) -> u32 {
        d.0
    }
}

/// `H_s(d)` from the defining alternating sum
/// `Σ_{i=0}^{⌊s⌋} (−1)^i C(d,i) (s−i)^d / d!`.
///
/// `s` may be quadratic; `⌊s⌋` is then found by exact bracketing.
pub fn hs_value<T: ExactField>(d: Dimension, s: &T) -> Result<T> {
    if s.is_negative() {
        return Err(Error::NegativeArgument(s.to_string()));
    }
    Ok(hs_clamped(d, s))
}

/// `H_s(d)` extended by 0 to negative `s`, as every formula containing
/// `H_{s−1}` or `H_{sn−a}` needs.
pub fn hs_clamped<T: ExactField>(d: Dimension, s: &T) -> T {
    if s.sign() <= 0 {
        return T::from_rational(Rational::zero());
    }
    let dd = d.get();
    let top = s.floor().to_u64().unwrap_or(u64::MAX).min(dd as u64);
    let mut total = T::from_rational(Rational::zero());
    for i in 0..=top {
        let base = s.clone() - T::from_rational(Rational::from_integer(BigInt::from(i)));
        let mut p = T::from_rational(Rational::one());
        for _ in 0..dd {
            p = p * base.clone();
        }
        let mut c = Rational::from_integer(binomial(dd as u64, i));
        if i % 2 == 1 {
            c = -c;
        }
        total = total + T::from_rational(c) * p;
    }
    total / T::from_rational(Rational::from_integer(factorial(dd as u64)))
}

/// `s ↦ H_s(d)` as a piecewise polynomial with breakpoints `0, 1, …, d`.
pub fn hs_piecewise(d: Dimension) -> PiecewisePoly {
    let dd = d.get();
    let d_fact = Rational::from_integer(factorial(dd as u64));
    let mut breakpoints = Vec::with_capacity(dd as usize + 1);
    let mut pieces = Vec::with_capacity(dd as usize + 1);
    let mut acc = UniPoly::zero();
    for k in 0..dd {
        let mut c = Rational::from_integer(binomial(dd as u64, k as u64)) / &d_fact;
        if k % 2 == 1 {
            c = -c;
        }
        let term = UniPoly::linear(-rational::int(k as i64), Rational::one())
            .pow(dd)
            .scale(&c);
        acc = &acc + &term;
        breakpoints.push(rational::int(k as i64));
        pieces.push(acc.clone());
    }
    breakpoints.push(rational::int(dd as i64));
    pieces.push(UniPoly::constant(Rational::one()));
    PiecewisePoly::new(breakpoints, pieces).expect("integer knots are increasing")
}

/// `f_{d,r}(s) = H_s(d) − r·H_{s−1}(d)` together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferenceProfile {
    pub d: Dimension,
    pub r: u32,
    pub profile: PiecewisePoly,
}

pub fn f_profile(d: Dimension, r: u32) -> Result<DifferenceProfile> {
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    Ok(difference_profile(d, r))
}

fn difference_profile(d: Dimension, r: u32) -> DifferenceProfile {
    let h = hs_piecewise(d);
    let profile = h.sub(&h.shift_by_one().scale(&rational::int(r as i64)));
    DifferenceProfile { d, r, profile }
}

impl DifferenceProfile {
    /// `f'_{d,r}`. For `d ≥ 2` this is assembled as
    /// `f_{d−1,r}(s) − f_{d−1,r}(s−1)`; for `d = 1` it is the piecewise
    /// derivative (a step function).
    pub fn derivative(&self) -> PiecewisePoly {
        if self.d.get() == 1 {
            return self.profile.derivative();
        }
        let lower = difference_profile(Dimension(self.d.get() - 1), self.r).profile;
        lower.sub(&lower.shift_by_one())
    }

    pub fn eval<T: ExactField>(&self, s: &T) -> Result<T> {
        self.profile.eval(s)
    }
}

/// Bracket `[l, h]` of width at most `tol` around the unique maximizer of
/// `f_{d,r}` on `(0, d+1)`.
///
/// Bisects the sign change of `f'` on `[1/2, d + 1/2]`: `f'` is positive on
/// `(0, 1)`, and the maximizer lies in `[1, (d+1)/2]`.
pub fn find_peak(d: Dimension, r: u32, tol: &Rational) -> Result<(Rational, Rational)> {
    let profile = f_profile(d, r)?;
    let lo = rat(1, 2);
    let hi = rational::int(d.get() as i64) + rat(1, 2);
    profile.derivative().root_bracket(&lo, &hi, tol)
}

/// `#{a ∈ {0,…,q−1}^d : a_1 + … + a_d ≤ ⌈sq⌉ − 1}`, the colength of
/// `m^⌈sq⌉ + m^[q]` in a `d`-variable power series ring.
pub fn hs_lattice_count(d: Dimension, s: &Rational, q: u64) -> u64 {
    assert!(q >= 1, "q must be positive");
    let n = rational::ceil_mul(s, q);
    if n == 0 {
        return 0;
    }
    let budget = n as i64 - 1;
    let dd = d.get();
    if dd >= 3 {
        // partition the outermost coordinate; sums of u64 are order-free
        (0..q.min(budget as u64 + 1))
            .into_par_iter()
            .map(|a| count_box(dd - 1, q, budget - a as i64))
            .sum()
    } else {
        count_box(dd, q, budget)
    }
}

/// Points of `{0,…,q−1}^dims` with coordinate sum at most `budget`.
fn count_box(dims: u32, q: u64, budget: i64) -> u64 {
    if budget < 0 {
        return 0;
    }
    let budget_u = budget as u64;
    if budget_u >= dims as u64 * (q - 1) {
        return q.pow(dims);
    }
    if dims == 1 {
        return q.min(budget_u + 1);
    }
    (0..q.min(budget_u + 1))
        .map(|a| count_box(dims - 1, q, budget - a as i64))
        .sum()
}

/// `count / q^d` as an exact rational.
pub fn normalize_count(count: u64, q: u64, d: u32) -> Rational {
    Rational::new(
        BigInt::from(count),
        num_traits::pow(BigInt::from(q), d as usize),
    )
}
