//! Closed-form s-multiplicity profiles and lower bounds.
//!
//! Everything is generic over [`ExactField`] so that the same formulas run
//! at rational points and at the quadratic optimizer used in dimension 3.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::rational::{binomial, factorial, int, rat, Rational};
use crate::arith::{ExactField, ExactScalar, QuadraticNumber};
use crate::error::{Error, Result};
use crate::hs::{find_peak, hs_clamped, hs_value, Dimension};
use crate::monomial::MonomialIdeal;

/// Rings and ideal pairs with a known closed form or a brute-force oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    /// Regular local ring of dimension `d`, ideal `m`.
    Regular { d: Dimension },
    /// Regular local ring of dimension `d`, ideal `m^n`.
    RegularPower { d: Dimension, n: u32 },
    /// `R_d = k[[x_0,…,x_d]]/(x_0² + … + x_d²)`, `d ≤ 3`.
    Quadric { d: Dimension },
    /// `e`-th Veronese subring of `k[[x,y]]`.
    Veronese { e: u32 },
    /// Monomial ideals `I`, `J` in `k[[x_1,…,x_d]]`.
    MonomialPair {
        d: Dimension,
        #[serde(rename = "I")]
        i: MonomialIdeal,
        #[serde(rename = "J")]
        j: MonomialIdeal,
    },
    /// `k[[X,Y,Z,W]]/(XY − ZW)` as the affine semigroup ring of the cone
    /// `x, y, x+z, y+z ≥ 0`.
    ToricQuadric3,
}

impl RingSpec {
    pub fn dimension(&self) -> Dimension {
        let d = match self {
            RingSpec::Regular { d }
            | RingSpec::RegularPower { d, .. }
            | RingSpec::Quadric { d }
            | RingSpec::MonomialPair { d, .. } => return *d,
            RingSpec::Veronese { .. } => 2,
            RingSpec::ToricQuadric3 => 3,
        };
        Dimension::new(d).expect("nonzero")
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::RegularPower { n: 0, .. } => {
                Err(Error::InvalidParameter("power n must be at least 1".into()))
            }
            RingSpec::Quadric { d } if d.get() > 3 => Err(Error::UnsupportedDimension(d.get())),
            RingSpec::Veronese { e } if *e < 2 => {
                Err(Error::InvalidParameter("Veronese degree e must be at least 2".into()))
            }
            RingSpec::MonomialPair { d, i, j } => {
                if i.num_vars() != d.get() as usize || j.num_vars() != d.get() as usize {
                    return Err(Error::InvalidParameter(format!(
                        "ideals must live in {} variables",
                        d.get()
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Exact `e_s` where a closed form exists.
    pub fn es<T: ExactField>(&self, s: &T) -> Result<T> {
        self.validate()?;
        match self {
            RingSpec::Regular { d } => {
                require_positive(s)?;
                es_regular_power(*d, 1, s)
            }
            RingSpec::RegularPower { d, n } => es_regular_power(*d, *n, s),
            RingSpec::Quadric { d } => es_quadric(*d, s),
            RingSpec::Veronese { e } => es_veronese(*e, s),
            RingSpec::MonomialPair { .. } | RingSpec::ToricQuadric3 => {
                Err(Error::UnsupportedRing(
                    "no closed form for this ring; estimate it with `converge`".into(),
                ))
            }
        }
    }
}

fn require_positive<T: ExactField>(s: &T) -> Result<()> {
    if s.sign() <= 0 {
        return Err(Error::InvalidParameter(format!("s must be positive, got {s}")));
    }
    Ok(())
}

fn lift<T: ExactField>(r: Rational) -> T {
    T::from_rational(r)
}

fn compare<T: ExactField>(a: &T, b: &T) -> Ordering {
    match (a.clone() - b.clone()).sign() {
        -1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

/// `e_s(n^n)` in a regular ring:
/// `Σ_{a<n} C(a+d−1, d−1)·H_{sn−a}(d) / H_s(d)`.
pub fn es_regular_power<T: ExactField>(d: Dimension, n: u32, s: &T) -> Result<T> {
    require_positive(s)?;
    if n == 0 {
        return Err(Error::InvalidParameter("power n must be at least 1".into()));
    }
    let dd = d.get() as u64;
    let sn = s.clone() * lift::<T>(int(n as i64));
    let mut num = lift::<T>(Rational::zero());
    for a in 0..n as u64 {
        let c = Rational::from_integer(binomial(a + dd - 1, dd - 1));
        let arg = sn.clone() - lift::<T>(Rational::from_integer(BigInt::from(a)));
        num = num + lift::<T>(c) * hs_clamped(d, &arg);
    }
    Ok(num / hs_value(d, s)?)
}

/// `lim_n e_s(m^n)/n^d = 1/(d!·H_s(d))`, stated for `s > 1`.
pub fn es_regular_power_limit<T: ExactField>(d: Dimension, s: &T) -> Result<T> {
    if s.cmp_rational(&Rational::one()) != Ordering::Greater {
        return Err(Error::InvalidParameter(format!(
            "the limit is only established for s > 1, got {s}"
        )));
    }
    let d_fact = lift::<T>(Rational::from_integer(factorial(d.get() as u64)));
    Ok(lift::<T>(Rational::one()) / (d_fact * hs_value(d, s)?))
}

/// `e_s(J^n)` for a parameter ideal `J` with `e(J) = e_mult`.
pub fn es_parameter_power<T: ExactField>(d: Dimension, n: u32, s: &T, e_mult: u64) -> Result<T> {
    Ok(es_regular_power(d, n, s)? * lift::<T>(Rational::from_integer(BigInt::from(e_mult))))
}

/// `2 − 2·H_{s−1}(d)/H_s(d)`.
fn two_minus_ratio<T: ExactField>(d: Dimension, s: &T) -> T {
    let two = lift::<T>(int(2));
    let one = lift::<T>(Rational::one());
    two.clone() - two * hs_clamped(d, &(s.clone() - one)) / hs_clamped(d, s)
}

/// Breakpoint and tail numerator of `e_s(R_d)` for `d = 2, 3`.
fn quadric_shape(d: Dimension) -> Result<(Rational, Rational)> {
    match d.get() {
        2 => Ok((rat(3, 2), rat(3, 2))),
        3 => Ok((int(2), rat(4, 3))),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// `e_s(R_d)` for `d ∈ {2, 3}`: `2 − 2H_{s−1}/H_s` up to the breakpoint
/// (3/2 resp. 2), then `e_HK(R_d)/H_s` with `e_HK = 3/2` resp. `4/3`.
pub fn es_quadric<T: ExactField>(d: Dimension, s: &T) -> Result<T> {
    let (bp, tail) = quadric_shape(d)?;
    require_positive(s)?;
    if s.cmp_rational(&bp) != Ordering::Greater {
        Ok(two_minus_ratio(d, s))
    } else {
        Ok(lift::<T>(tail) / hs_clamped(d, s))
    }
}

/// `e_s(V_e)`: `(e·H_s − (e² − e)·H_{s−1})/H_s` for `s ≤ (e+1)/e`,
/// `(e+1)/(2H_s)` beyond.
pub fn es_veronese<T: ExactField>(e: u32, s: &T) -> Result<T> {
    if e < 2 {
        return Err(Error::InvalidParameter("Veronese degree e must be at least 2".into()));
    }
    require_positive(s)?;
    let d = Dimension::new(2)?;
    let e_i = e as i64;
    let bp = rat(e_i + 1, e_i);
    let hs = hs_clamped(d, s);
    if s.cmp_rational(&bp) != Ordering::Greater {
        let h1 = hs_clamped(d, &(s.clone() - lift::<T>(Rational::one())));
        Ok((lift::<T>(int(e_i)) * hs.clone() - lift::<T>(int(e_i * e_i - e_i)) * h1) / hs)
    } else {
        Ok(lift::<T>(rat(e_i + 1, 2)) / hs)
    }
}

/// `2H_{(d+1)/2}(d) − 2H_{(d−1)/2}(d)`, the peak value of `2f_{d,1}`.
pub fn phi_tail_constant(d: Dimension) -> Rational {
    let dd = d.get() as i64;
    let hi: Rational = hs_clamped(d, &rat(dd + 1, 2));
    let lo: Rational = hs_clamped(d, &rat(dd - 1, 2));
    (hi - lo) * int(2)
}

/// `φ(s, d)`: `2 − 2H_{s−1}(d)/H_s(d)` for `s ≤ (d+1)/2`, then the peak
/// value of `2f_{d,1}` over `H_s(d)`.
pub fn phi<T: ExactField>(s: &T, d: Dimension) -> Result<T> {
    require_positive(s)?;
    let dd = d.get() as i64;
    if s.cmp_rational(&rat(dd + 1, 2)) != Ordering::Greater {
        Ok(two_minus_ratio(d, s))
    } else {
        Ok(lift::<T>(phi_tail_constant(d)) / hs_clamped(d, s))
    }
}

/// Inputs of the general lower bound
/// `e_s(I) ≥ (H_t(d) − r·H_{t−1}(d))/H_s(d) · e(I)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundParams {
    pub e_mult: u64,
    pub d: Dimension,
    pub r: u64,
    pub t: ExactScalar,
    pub s: ExactScalar,
}

/// How `r ≥ μ(I/J*)` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RMode {
    /// `r = e − 1`, always valid for Cohen–Macaulay rings.
    FRational,
    /// `r = e − 2`, valid when the ring is not F-rational.
    NonFRational,
    Explicit(u64),
}

impl RMode {
    pub fn r_for(self, e_mult: u64) -> u64 {
        match self {
            RMode::FRational => e_mult.saturating_sub(1),
            RMode::NonFRational => e_mult.saturating_sub(2),
            RMode::Explicit(r) => r,
        }
    }
}

/// `(H_t(d) − r·H_{t−1}(d)) / H_s(d) · e`. The value may be negative.
pub fn lower_bound_main_at<T: ExactField>(
    e_mult: u64,
    d: Dimension,
    r: u64,
    t: &T,
    s: &T,
) -> Result<T> {
    if t.cmp_rational(&Rational::one()) == Ordering::Less {
        return Err(Error::InvalidParameter(format!("need t >= 1, got t = {t}")));
    }
    if compare(t, s) == Ordering::Greater {
        return Err(Error::InvalidParameter(format!("need t <= s, got t = {t}, s = {s}")));
    }
    Ok(main_numerator(e_mult, d, r, t) / hs_clamped(d, s))
}

/// `(H_t(d) − r·H_{t−1}(d))·e`, the `s`-free part of the main bound.
fn main_numerator<T: ExactField>(e_mult: u64, d: Dimension, r: u64, t: &T) -> T {
    let one = lift::<T>(Rational::one());
    let ht = hs_clamped(d, t);
    let ht1 = hs_clamped(d, &(t.clone() - one));
    (ht - lift::<T>(Rational::from_integer(BigInt::from(r))) * ht1)
        * lift::<T>(Rational::from_integer(BigInt::from(e_mult)))
}

pub fn lower_bound_main(p: &BoundParams) -> Result<ExactScalar> {
    lower_bound_main_at(p.e_mult, p.d, p.r, &p.t, &p.s)
}

/// Applicability of the small-`s` bound: `s ≤ 2` and either `s ≤ 1` or
/// `s^d ≥ (d+e+1)(s−1)^d`, the polynomial form of the radical threshold.
pub fn small_s_applies<T: ExactField>(d: Dimension, e_mult: u64, s: &T) -> bool {
    if s.cmp_rational(&int(2)) == Ordering::Greater {
        return false;
    }
    if s.cmp_rational(&Rational::one()) != Ordering::Greater {
        return true;
    }
    let dd = d.get();
    let mut lhs = lift::<T>(Rational::one());
    let mut rhs = lift::<T>(Rational::one());
    let sm1 = s.clone() - lift::<T>(Rational::one());
    for _ in 0..dd {
        lhs = lhs * s.clone();
        rhs = rhs * sm1.clone();
    }
    let coef = lift::<T>(int(dd as i64 + e_mult as i64 + 1));
    compare(&lhs, &(coef * rhs)) != Ordering::Less
}

/// `2 − 2H_{s−1}(d)/H_s(d)` when the small-`s` predicate holds for a
/// singular ring (`e ≥ 2`); `None` otherwise.
pub fn small_s_bound<T: ExactField>(d: Dimension, e_mult: u64, s: &T) -> Result<Option<T>> {
    require_positive(s)?;
    if e_mult < 2 || !small_s_applies(d, e_mult, s) {
        return Ok(None);
    }
    Ok(Some(two_minus_ratio(d, s)))
}

/// `√(e+2)/(√(e+2) − 1)`, the optimizer of the main bound in dimension 3.
pub fn dim3_optimal_t(e_mult: u64) -> ExactScalar {
    let root = QuadraticNumber::sqrt(e_mult + 2);
    let one = QuadraticNumber::from_rational(Rational::one());
    &root / &(&root - &one)
}

/// `e(e+2) / (6(√(e+2) − 1)²)`.
pub fn dim3_pivot(e_mult: u64) -> ExactScalar {
    let root = QuadraticNumber::sqrt(e_mult + 2);
    let one = QuadraticNumber::from_rational(Rational::one());
    let den = (&root - &one).pow(2);
    let num = QuadraticNumber::from_rational(int((e_mult * (e_mult + 2)) as i64) / int(6));
    &num / &den
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundSource {
    /// `e/d!`, unconditional.
    MultiplicityOverFactorial,
    /// `2 − 2H_{s−1}/H_s` under the small-`s` predicate.
    SmallS,
    /// The general bound at the recorded `t` and `r`.
    Main {
        #[serde(serialize_with = "crate::arith::serialize_display")]
        t: ExactScalar,
        r: u64,
    },
}

impl fmt::Display for BoundSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundSource::MultiplicityOverFactorial => write!(f, "e/d!"),
            BoundSource::SmallS => write!(f, "small-s"),
            BoundSource::Main { t, r } => write!(f, "main(t={t}, r={r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LowerBound {
    pub value: ExactScalar,
    pub source: BoundSource,
}

/// Precomputed candidate set for [`best_lower_bound`] at fixed `(d, e, r)`.
///
/// The `s`-independent parts (the peak of `f_{d,r}` and the numerators of
/// the fixed `t` candidates) are computed once.
#[derive(Clone, Debug)]
pub struct BoundPlan {
    d: Dimension,
    e_mult: u64,
    r: u64,
    /// `(d+1)/2` and the peak midpoint; used as `min(s, t)`.
    capped: Vec<ExactScalar>,
    /// Used only when `t ≤ s`, with precomputed numerators.
    fixed: Vec<(ExactScalar, ExactScalar)>,
}

pub const PEAK_TOL_LOG2: u32 = 20;

impl BoundPlan {
    pub fn new(d: Dimension, e_mult: u64, mode: RMode) -> Result<Self> {
        let r = mode.r_for(e_mult);
        let dd = d.get() as i64;
        let mut capped = vec![QuadraticNumber::from_rational(rat(dd + 1, 2))];
        if r >= 1 {
            let tol = Rational::new(BigInt::one(), BigInt::one() << PEAK_TOL_LOG2);
            let (l, h) = find_peak(d, r as u32, &tol)?;
            capped.push(QuadraticNumber::from_rational((l + h) / int(2)));
        }
        let mut fixed_t: Vec<ExactScalar> = vec![QuadraticNumber::from_rational(Rational::one())];
        match d.get() {
            2 => {
                fixed_t.push(QuadraticNumber::from_rational(rat(3, 2)));
                if mode == RMode::NonFRational {
                    let e = e_mult as i64;
                    fixed_t.push(QuadraticNumber::from_rational(rat(e + 1, e)));
                }
            }
            3 => capped.push(dim3_optimal_t(e_mult)),
            4 => {
                for t in [rat(3, 2), int(2), rat(5, 2)] {
                    fixed_t.push(QuadraticNumber::from_rational(t));
                }
            }
            _ => {}
        }
        let fixed = fixed_t
            .into_iter()
            .map(|t| {
                let num = main_numerator(e_mult, d, r, &t);
                (t, num)
            })
            .collect();
        Ok(BoundPlan {
            d,
            e_mult,
            r,
            capped,
            fixed,
        })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn evaluate(&self, s: &ExactScalar) -> Result<LowerBound> {
        require_positive(s)?;
        let d_fact = Rational::from_integer(factorial(self.d.get() as u64));
        let mut best = LowerBound {
            value: QuadraticNumber::from_rational(int(self.e_mult as i64) / d_fact),
            source: BoundSource::MultiplicityOverFactorial,
        };
        let mut consider = |value: ExactScalar, source: BoundSource| {
            if compare(&value, &best.value) == Ordering::Greater {
                best = LowerBound { value, source };
            }
        };
        if let Some(v) = small_s_bound(self.d, self.e_mult, s)? {
            consider(v, BoundSource::SmallS);
        }
        if s.cmp_rational(&Rational::one()) == Ordering::Less {
            return Ok(best);
        }
        let hs = hs_clamped(self.d, s);
        for t in &self.capped {
            let t = if compare(t, s) == Ordering::Greater { s } else { t };
            let v = main_numerator(self.e_mult, self.d, self.r, t) / hs.clone();
            consider(v, BoundSource::Main { t: t.clone(), r: self.r });
        }
        for (t, num) in &self.fixed {
            if compare(t, s) != Ordering::Greater {
                consider(num.clone() / hs.clone(), BoundSource::Main { t: t.clone(), r: self.r });
            }
        }
        Ok(best)
    }
}

/// Largest of `e/d!`, the small-`s` bound (when it applies), and the main
/// bound over a fixed candidate set of `t` values. Never below `e/d!`.
pub fn best_lower_bound(
    d: Dimension,
    e_mult: u64,
    s: &ExactScalar,
    mode: RMode,
) -> Result<LowerBound> {
    BoundPlan::new(d, e_mult, mode)?.evaluate(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn q(r: Rational) -> ExactScalar {
        QuadraticNumber::from_rational(r)
    }

    #[test]
    fn regular_power_examples() {
        for d in 1..=4 {
            assert_eq!(es_regular_power(dim(d), 1, &rat(5, 3)).unwrap(), int(1));
        }
        assert_eq!(es_regular_power(dim(2), 2, &int(2)).unwrap(), int(3));
        assert_eq!(es_regular_power(dim(1), 2, &int(1)).unwrap(), int(2));
        assert!(es_regular_power(dim(1), 2, &int(0)).is_err());
        assert!(es_regular_power(dim(1), 0, &int(1)).is_err());
    }

    #[test]
    fn regular_power_limit_examples() {
        assert_eq!(es_regular_power_limit(dim(1), &int(2)).unwrap(), int(1));
        assert_eq!(es_regular_power_limit(dim(2), &rat(3, 2)).unwrap(), rat(4, 7));
        assert_eq!(es_regular_power_limit(dim(3), &int(3)).unwrap(), rat(1, 6));
        assert!(es_regular_power_limit(dim(2), &int(1)).is_err());
    }

    #[test]
    fn parameter_power_examples() {
        assert_eq!(es_parameter_power(dim(2), 1, &rat(7, 3), 6).unwrap(), int(6));
        assert_eq!(es_parameter_power(dim(2), 2, &int(2), 2).unwrap(), int(6));
        assert_eq!(es_parameter_power(dim(1), 3, &int(1), 1).unwrap(), int(3));
    }

    #[test]
    fn quadric_examples() {
        assert_eq!(es_quadric(dim(3), &rat(1, 2)).unwrap(), int(2));
        assert_eq!(es_quadric(dim(3), &int(1)).unwrap(), int(2));
        assert_eq!(es_quadric(dim(2), &rat(3, 2)).unwrap(), rat(12, 7));
        let h = crate::hs::hs_clamped(dim(2), &rat(3, 2));
        assert_eq!(rat(3, 2) / h, rat(12, 7));
        assert_eq!(es_quadric(dim(3), &int(2)).unwrap(), rat(8, 5));
        assert_eq!(es_quadric(dim(2), &int(5)).unwrap(), rat(3, 2));
        assert_eq!(es_quadric(dim(3), &int(5)).unwrap(), rat(4, 3));
        assert_eq!(es_quadric(dim(4), &int(1)), Err(Error::UnsupportedDimension(4)));
        assert_eq!(es_quadric(dim(1), &int(1)), Err(Error::UnsupportedDimension(1)));
    }

    #[test]
    fn veronese_examples() {
        assert_eq!(es_veronese(2, &int(7)).unwrap(), rat(3, 2));
        for s in [rat(3, 2), rat(7, 4), int(3)] {
            assert_eq!(es_veronese(2, &s).unwrap(), es_quadric(dim(2), &s).unwrap());
        }
        assert_eq!(es_veronese(3, &rat(1, 2)).unwrap(), int(3));
        assert_eq!(es_veronese(3, &int(1)).unwrap(), int(3));
        assert!(es_veronese(1, &int(1)).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_tail_constant(dim(2)), rat(3, 2));
        assert_eq!(phi_tail_constant(dim(3)), rat(4, 3));
        assert_eq!(phi_tail_constant(dim(4)), rat(115, 96));
        let h4 = crate::hs::hs_clamped(dim(4), &int(3));
        assert_eq!(phi(&int(3), dim(4)).unwrap(), rat(115, 96) / h4);
        for k in 1..=64 {
            let s = rat(k, 16);
            assert_eq!(phi(&s, dim(2)).unwrap(), es_quadric(dim(2), &s).unwrap());
            assert_eq!(phi(&s, dim(3)).unwrap(), es_quadric(dim(3), &s).unwrap());
        }
    }

    #[test]
    fn main_bound_examples() {
        let d2 = dim(2);
        let hs = |s: &Rational| crate::hs::hs_clamped(d2, s);
        for s in [rat(3, 2), rat(7, 4), int(3)] {
            let v = lower_bound_main_at(2, d2, 1, &rat(3, 2), &s).unwrap();
            assert_eq!(v, rat(3, 2) / hs(&s));
            let v = lower_bound_main_at(3, d2, 2, &int(1), &s).unwrap();
            assert_eq!(v, rat(3, 2) / hs(&s));
        }
        for (e, d, r) in [(2u64, 1u32, 0u64), (5, 3, 4), (7, 4, 1)] {
            let v = lower_bound_main_at(e, dim(d), r, &int(1), &int(1)).unwrap();
            assert_eq!(v, int(e as i64));
        }
        assert!(lower_bound_main_at(2, d2, 1, &int(2), &rat(3, 2)).is_err());
        assert!(lower_bound_main_at(2, d2, 1, &rat(1, 2), &rat(3, 2)).is_err());
    }

    #[test]
    fn main_bound_at_quadratic_optimizer() {
        let d3 = dim(3);
        for e in [2u64, 3, 5, 7, 11] {
            let t = dim3_optimal_t(e);
            let s = q(int(2)) + q(rat(1, 3));
            let p = BoundParams {
                e_mult: e,
                d: d3,
                r: e - 1,
                t: t.clone(),
                s: s.clone(),
            };
            let v = lower_bound_main(&p).unwrap();
            let expected = dim3_pivot(e) / hs_value(d3, &s).unwrap();
            assert_eq!(v, expected, "e={e}");
        }
    }

    #[test]
    fn small_s_examples() {
        assert_eq!(small_s_bound(dim(2), 3, &rat(3, 2)).unwrap(), Some(rat(12, 7)));
        assert_eq!(small_s_bound(dim(5), 9, &rat(1, 2)).unwrap(), Some(int(2)));
        assert!(small_s_bound(dim(4), 10, &int(2)).unwrap().is_some());
        assert!(small_s_bound(dim(4), 12, &int(2)).unwrap().is_none());
        assert!(small_s_bound(dim(2), 3, &rat(5, 2)).unwrap().is_none());
        assert!(small_s_bound(dim(2), 1, &rat(1, 2)).unwrap().is_none());
    }

    #[test]
    fn best_bound_examples() {
        for k in 1..=48 {
            let s = q(rat(k, 16));
            let b = best_lower_bound(dim(2), 4, &s, RMode::FRational).unwrap();
            assert!(b.value >= q(int(2)));
            let b = best_lower_bound(dim(3), 12, &s, RMode::FRational).unwrap();
            assert!(b.value >= q(int(2)));
            let b = best_lower_bound(dim(1), 2, &s, RMode::FRational).unwrap();
            assert_eq!(b.value, q(int(2)));
        }
    }

    #[test]
    fn best_bound_never_below_multiplicity_floor() {
        for d in 1..=5u32 {
            for e in [2u64, 5, 40] {
                for k in [1i64, 8, 16, 24, 40, 80] {
                    let s = q(rat(k, 8));
                    let b = best_lower_bound(dim(d), e, &s, RMode::FRational).unwrap();
                    let floor = int(e as i64) / Rational::from_integer(factorial(d as u64));
                    assert!(b.value >= q(floor));
                }
            }
        }
    }

    #[test]
    fn ring_spec_json() {
        let r: RingSpec = serde_json::from_str(r#"{"kind": "quadric", "d": 3}"#).unwrap();
        assert_eq!(r, RingSpec::Quadric { d: dim(3) });
        assert_eq!(r.es(&int(2)).unwrap(), rat(8, 5));
        let r: RingSpec = serde_json::from_str(r#"{"kind": "toric_quadric3"}"#).unwrap();
        assert_eq!(r.dimension(), dim(3));
        assert!(r.es(&int(2)).is_err());
        let r: RingSpec = serde_json::from_str(r#"{"kind": "veronese", "e": 2}"#).unwrap();
        assert_eq!(r.es(&int(3)).unwrap(), rat(3, 2));
        let r: RingSpec = serde_json::from_str(r#"{"kind": "regular", "d": 5}"#).unwrap();
        assert_eq!(r.es(&rat(7, 3)).unwrap(), int(1));
        assert!(serde_json::from_str::<RingSpec>(r#"{"kind": "regular", "d": 0}"#).is_err());
        assert!(serde_json::from_str::<RingSpec>(r#"{"kind": "blob"}"#).is_err());
        let r: RingSpec = serde_json::from_str(
            r#"{"kind": "monomial_pair", "d": 2,
                "I": {"vars": 2, "gens": [[2,0],[0,2]]},
                "J": {"vars": 2, "gens": [[2,0],[1,1],[0,2]]}}"#,
        )
        .unwrap();
        assert!(r.validate().is_ok());
    }
}
