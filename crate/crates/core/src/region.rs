//! The region `U ⊂ σ^∨` whose volume is `h_s` of the 3-dimensional quadric
//! for `1 ≤ s ≤ 2`: exact membership, exact volume by slicing in `z`, and a
//! deterministic Monte Carlo estimate.

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::rational::{int, rat, Rational};
use crate::arith::UniPoly;
use crate::error::{Error, Result};
use crate::hs::{hs_clamped, hs_piecewise, Dimension};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point3 {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Point3 {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        Point3 { x, y, z }
    }
}

/// `U` at a fixed `s ∈ [1, 2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionU {
    s: Rational,
}

fn check_range(s: &Rational) -> Result<()> {
    if s < &Rational::one() || s > &int(2) {
        return Err(Error::InvalidParameter(format!("s must lie in [1, 2], got {s}")));
    }
    Ok(())
}

impl RegionU {
    pub fn new(s: Rational) -> Result<Self> {
        check_range(&s)?;
        Ok(RegionU { s })
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    /// `x, y, x+z, y+z ≥ 0`, `x+y+z ≤ s`, and
    /// `(x < 1 ∧ y+z < 1) ∨ (y < 1 ∧ x+z < 1)`.
    pub fn contains(&self, p: &Point3) -> bool {
        let one = Rational::one();
        let xz = &p.x + &p.z;
        let yz = &p.y + &p.z;
        let in_cone = !p.x.is_negative() && !p.y.is_negative() && !xz.is_negative() && !yz.is_negative();
        in_cone
            && &p.x + &p.y + &p.z <= self.s
            && ((p.x < one && yz < one) || (p.y < one && xz < one))
    }
}

pub fn in_u(region: &RegionU, p: &Point3) -> bool {
    region.contains(p)
}

/// `½(z − (2−s))²` for `z ≥ 2−s`, else `0`, as a polynomial in `z`.
fn corner_poly(s: &Rational) -> UniPoly {
    let half_sq = UniPoly::new(vec![Rational::zero(), Rational::zero(), rat(1, 2)]);
    half_sq.compose_linear(&(s - int(2)), &Rational::one())
}

/// Area of the slice of `U` at height `z ∈ [0, 1]`:
/// `H_{s−z}(2)` minus the corner cut off by `x+z ≥ 1, y+z ≥ 1`.
pub fn slice_area(s: &Rational, z: &Rational) -> Result<Rational> {
    check_range(s)?;
    if z.is_negative() || z > &Rational::one() {
        return Err(Error::InvalidParameter(format!("slice height must lie in [0, 1], got {z}")));
    }
    let d2 = Dimension::new(2)?;
    let full: Rational = hs_clamped(d2, &(s - z));
    let corner = if z >= &(int(2) - s) {
        corner_poly(s).eval(z)
    } else {
        Rational::zero()
    };
    Ok(full - corner)
}

/// `vol(U) = 2∫_0^1 slice_area(s, z) dz`, integrated piece by piece between
/// the breakpoints `s − 1` (where `s − z` crosses 1) and `2 − s`.
pub fn vol_u_exact(s: &Rational) -> Result<Rational> {
    check_range(s)?;
    let one = Rational::one();
    let pieces = hs_piecewise(Dimension::new(2)?);
    // pieces of H_u(2) for u in [0,1) and [1,2), composed with u = s − z
    let low = pieces.pieces()[0].compose_linear(s, &-one.clone());
    let high = pieces.pieces()[1].compose_linear(s, &-one.clone());
    let corner = corner_poly(s);
    let flip = int(2) - s;
    let mut cuts = vec![Rational::zero(), s - &one, flip.clone(), one.clone()];
    cuts.sort();
    cuts.dedup();
    let mut total = Rational::zero();
    for w in cuts.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mid = (a + b) / int(2);
        let mut integrand = if s - &mid >= one { high.clone() } else { low.clone() };
        if mid >= flip {
            integrand = &integrand - &corner;
        }
        total += integrand.integrate(a, b);
    }
    Ok(total * int(2))
}

/// `2H_s(3) − 2H_{s−1}(3)`.
pub fn vol_u_closed_form(s: &Rational) -> Result<Rational> {
    check_range(s)?;
    let d3 = Dimension::new(3)?;
    let a: Rational = hs_clamped(d3, s);
    let b: Rational = hs_clamped(d3, &(s - Rational::one()));
    Ok((a - b) * int(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZRange {
    /// `z ∈ [−2, 2]`, the whole bounding box.
    Full,
    /// `z ∈ [−2, 0)`.
    Negative,
    /// `z ∈ [0, 2)`.
    Positive,
}

impl ZRange {
    /// Volume of `[0,2] × [0,2] × z-range`.
    pub fn box_volume(self) -> f64 {
        match self {
            ZRange::Full => 16.0,
            ZRange::Negative | ZRange::Positive => 8.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
    pub z_range: ZRange,
}

const FRACTION_BITS: u32 = 53;
/// Random words consumed per sample: three `u64` draws.
const WORDS_PER_SAMPLE: u128 = 6;
const CHUNK: u64 = 1 << 14;

/// Monte Carlo estimate of `vol(U)` over the box `[0,2]² × [−2,2]`.
///
/// Sample `i` is read from the ChaCha8 stream of `seed` at word offset
/// `6i`, so the result does not depend on how the index range is split.
pub fn vol_u_mc(s: &Rational, samples: u64, seed: u64) -> Result<McEstimate> {
    vol_u_mc_in(s, samples, seed, ZRange::Full)
}

pub fn vol_u_mc_in(s: &Rational, samples: u64, seed: u64, z_range: ZRange) -> Result<McEstimate> {
    check_range(s)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let num = s.numer().to_i128();
    let den = s.denom().to_i128();
    let (num, den) = match (num, den) {
        (Some(n), Some(d)) if d < (1i128 << 64) => (n, d),
        _ => {
            return Err(Error::InvalidParameter(format!(
                "denominator of s = {s} is too large for the sampler"
            )))
        }
    };
    let unit: i128 = 1 << FRACTION_BITS;
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(samples);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_word_pos(start as u128 * WORDS_PER_SAMPLE);
            let mut draw = || (rng.next_u64() >> (64 - FRACTION_BITS)) as i128;
            let mut hits = 0u64;
            for _ in start..end {
                // coordinates in units of 2^-53
                let x = 2 * draw();
                let y = 2 * draw();
                let k = draw();
                let z = match z_range {
                    ZRange::Full => 4 * k - 2 * unit,
                    ZRange::Negative => 2 * k - 2 * unit,
                    ZRange::Positive => 2 * k,
                };
                let xz = x + z;
                let yz = y + z;
                let inside = xz >= 0
                    && yz >= 0
                    && den * (x + y + z) <= num * unit
                    && ((x < unit && yz < unit) || (y < unit && xz < unit));
                hits += inside as u64;
            }
            hits
        })
        .sum();
    let vol = z_range.box_volume();
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        estimate: vol * p,
        stderr: vol * (p * (1.0 - p) / samples as f64).sqrt(),
        hits,
        samples,
        z_range,
    })
}
