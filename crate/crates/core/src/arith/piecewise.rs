//! Breakpointed polynomial functions on `[0, ∞)`.
//!
//! Piece `i` lives on the half-open interval `[b_i, b_{i+1})`, the last piece
//! on `[b_last, ∞)`. Functions are right-continuous representations; every
//! profile built in this crate is continuous anyway, so the convention only
//! matters at jumps (which only appear for `d = 1` derivatives).

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::UniPoly;
use super::rational::Rational;
use super::ExactField;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewisePoly {
    breakpoints: Vec<Rational>,
    pieces: Vec<UniPoly>,
}

/// Operations accepted by [`PiecewisePoly::combine`].
#[derive(Clone, Copy, Debug)]
pub enum Combine<'a> {
    Add(&'a PiecewisePoly),
    Subtract(&'a PiecewisePoly),
    Multiply(&'a PiecewisePoly),
    Scale(&'a Rational),
    /// `s ↦ f(s − 1)`, taking the value 0 for `s < 1`.
    ShiftByOne,
}

impl PiecewisePoly {
    /// Builds and canonicalizes. Breakpoints must start at 0 and increase
    /// strictly; there is one piece per breakpoint.
    pub fn new(breakpoints: Vec<Rational>, pieces: Vec<UniPoly>) -> Result<Self> {
        if breakpoints.is_empty() || !breakpoints[0].is_zero() {
            return Err(Error::InvalidParameter(
                "breakpoints must start at 0".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if breakpoints.len() != pieces.len() {
            return Err(Error::InvalidParameter(format!(
                "{} breakpoints but {} pieces",
                breakpoints.len(),
                pieces.len()
            )));
        }
        Ok(Self::canonical(breakpoints, pieces))
    }

    fn canonical(breakpoints: Vec<Rational>, pieces: Vec<UniPoly>) -> Self {
        let mut bs: Vec<Rational> = Vec::with_capacity(breakpoints.len());
        let mut ps: Vec<UniPoly> = Vec::with_capacity(pieces.len());
        for (b, p) in breakpoints.into_iter().zip(pieces) {
            if ps.last() == Some(&p) {
                continue;
            }
            bs.push(b);
            ps.push(p);
        }
        PiecewisePoly {
            breakpoints: bs,
            pieces: ps,
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        PiecewisePoly {
            breakpoints: vec![Rational::zero()],
            pieces: vec![p],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[UniPoly] {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].is_zero()
    }

    /// Index of the piece whose interval contains `s`.
    pub fn piece_index<T: ExactField>(&self, s: &T) -> Result<usize> {
        if s.is_negative() {
            return Err(Error::NegativeArgument(s.to_string()));
        }
        // last breakpoint b with b <= s
        let idx = self
            .breakpoints
            .partition_point(|b| s.cmp_rational(b) != Ordering::Less);
        Ok(idx - 1)
    }

    fn piece_at_rational(&self, s: &Rational) -> &UniPoly {
        let idx = self.breakpoints.partition_point(|b| b <= s);
        &self.pieces[idx.max(1) - 1]
    }

    pub fn eval<T: ExactField>(&self, s: &T) -> Result<T> {
        let idx = self.piece_index(s)?;
        Ok(self.pieces[idx].eval(s))
    }

    pub fn combine(&self, op: Combine<'_>) -> PiecewisePoly {
        match op {
            Combine::Add(g) => self.zip_with(g, |a, b| a + b),
            Combine::Subtract(g) => self.zip_with(g, |a, b| a - b),
            Combine::Multiply(g) => self.zip_with(g, |a, b| a * b),
            Combine::Scale(c) => Self::canonical(
                self.breakpoints.clone(),
                self.pieces.iter().map(|p| p.scale(c)).collect(),
            ),
            Combine::ShiftByOne => {
                let one = Rational::one();
                let mut bs = vec![Rational::zero()];
                let mut ps = vec![UniPoly::zero()];
                for (b, p) in self.breakpoints.iter().zip(&self.pieces) {
                    bs.push(b + &one);
                    ps.push(p.shift(&-one.clone()));
                }
                Self::canonical(bs, ps)
            }
        }
    }

    pub fn add(&self, g: &PiecewisePoly) -> PiecewisePoly {
        self.combine(Combine::Add(g))
    }

    pub fn sub(&self, g: &PiecewisePoly) -> PiecewisePoly {
        self.combine(Combine::Subtract(g))
    }

    pub fn mul(&self, g: &PiecewisePoly) -> PiecewisePoly {
        self.combine(Combine::Multiply(g))
    }

    pub fn scale(&self, c: &Rational) -> PiecewisePoly {
        self.combine(Combine::Scale(c))
    }

    pub fn shift_by_one(&self) -> PiecewisePoly {
        self.combine(Combine::ShiftByOne)
    }

    fn zip_with(
        &self,
        g: &PiecewisePoly,
        op: impl Fn(&UniPoly, &UniPoly) -> UniPoly,
    ) -> PiecewisePoly {
        let mut bs: Vec<Rational> = self
            .breakpoints
            .iter()
            .chain(&g.breakpoints)
            .cloned()
            .collect();
        bs.sort();
        bs.dedup();
        let ps = bs
            .iter()
            .map(|b| op(self.piece_at_rational(b), g.piece_at_rational(b)))
            .collect();
        Self::canonical(bs, ps)
    }

    pub fn derivative(&self) -> PiecewisePoly {
        Self::canonical(
            self.breakpoints.clone(),
            self.pieces.iter().map(UniPoly::derivative).collect(),
        )
    }

    /// Exact `∫_lo^hi f`, oriented (swapping the limits flips the sign).
    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Result<Rational> {
        if lo > hi {
            return self.integrate(hi, lo).map(|v| -v);
        }
        if lo < &Rational::zero() {
            return Err(Error::NegativeArgument(lo.to_string()));
        }
        let mut total = Rational::zero();
        for (i, p) in self.pieces.iter().enumerate() {
            let start = &self.breakpoints[i];
            let a = if start > lo { start } else { lo };
            let b = match self.breakpoints.get(i + 1) {
                Some(end) if end < hi => end,
                _ => hi,
            };
            if a < b {
                total += p.integrate(a, b);
            }
        }
        Ok(total)
    }

    /// Bisection bracket `[l, h]` of a sign change of `f` in `[lo, hi]`,
    /// with `h − l ≤ tol`.
    ///
    /// Keeps `sign f(l) = sign f(lo) ≠ 0` and `sign f(h) ≠ sign f(lo)`; a zero
    /// at `hi` is allowed so that brackets may end where `f` goes flat.
    /// Returns a degenerate interval when a midpoint is an exact root.
    pub fn root_bracket(
        &self,
        lo: &Rational,
        hi: &Rational,
        tol: &Rational,
    ) -> Result<(Rational, Rational)> {
        if !(tol > &Rational::zero()) || lo > hi {
            return Err(Error::InvalidParameter(format!(
                "need lo <= hi and tol > 0, got [{lo}, {hi}] with tol {tol}"
            )));
        }
        let s_lo = self.eval(lo)?.sign();
        if s_lo == 0 {
            return Ok((lo.clone(), lo.clone()));
        }
        let s_hi = self.eval(hi)?.sign();
        if s_hi == s_lo {
            return Err(Error::NoSignChange {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let two = Rational::from_integer(2.into());
        let (mut l, mut h) = (lo.clone(), hi.clone());
        while &(&h - &l) > tol {
            let m = (&l + &h) / &two;
            match self.eval(&m)?.sign() {
                0 => return Ok((m.clone(), m)),
                s if s == s_lo => l = m,
                _ => h = m,
            }
        }
        Ok((l, h))
    }
}

impl fmt::Display for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (b, p)) in self.breakpoints.iter().zip(&self.pieces).enumerate() {
            match self.breakpoints.get(i + 1) {
                Some(next) => writeln!(f, "[{b}, {next}): {p}")?,
                None => writeln!(f, "[{b}, inf): {p}")?,
            }
        }
        Ok(())
    }
}
