//! Exact certification of lower-bound inequality chains on rational grids.
//!
//! Every comparison is an exact sign computation in `Q` or `Q[√n]`; a grid
//! certifies the inequality at its sample points only.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::rational::{int, rat, Rational};
use crate::arith::{serialize_display, ExactScalar, QuadraticNumber};
use crate::closed_forms::{
    dim3_pivot, es_quadric, es_veronese, phi, phi_tail_constant, BoundPlan, BoundSource, RMode,
};
use crate::error::{Error, Result};
use crate::hs::{hs_clamped, Dimension};

/// `s = start + k/den` for `k = 1..=count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SGrid {
    #[serde(serialize_with = "serialize_display")]
    pub start: Rational,
    pub den: u64,
    pub count: u64,
}

impl SGrid {
    pub fn new(start: Rational, den: u64, count: u64) -> Result<Self> {
        if den == 0 || count == 0 {
            return Err(Error::InvalidParameter(
                "grid needs a positive denominator and at least one point".into(),
            ));
        }
        Ok(SGrid { start, den, count })
    }

    /// `{k/16 : 1 ≤ k ≤ 64}`.
    pub fn sixteenths() -> Self {
        SGrid {
            start: int(0),
            den: 16,
            count: 64,
        }
    }

    pub fn points(&self) -> Vec<Rational> {
        (1..=self.count)
            .map(|k| &self.start + Rational::new(k.into(), self.den.into()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointRecord {
    pub e: u64,
    #[serde(serialize_with = "serialize_display")]
    pub s: Rational,
    pub bound_source: BoundSource,
    #[serde(serialize_with = "serialize_display")]
    pub bound: ExactScalar,
    #[serde(serialize_with = "serialize_display")]
    pub target: ExactScalar,
    pub pass: bool,
}

/// A per-`e` inequality the proof pivots on, checked exactly.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PivotRecord {
    pub e: u64,
    pub relation: String,
    #[serde(serialize_with = "serialize_display")]
    pub lhs: ExactScalar,
    #[serde(serialize_with = "serialize_display")]
    pub rhs: ExactScalar,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub d: u32,
    pub e_min: u64,
    pub e_max: u64,
    pub grid: SGrid,
    pub r_mode: RMode,
    pub strict: bool,
    /// No pass/fail meaning is attached; the comparison is informational.
    pub exploratory: bool,
    pub points: Vec<PointRecord>,
    pub pivots: Vec<PivotRecord>,
    pub failures: usize,
    pub pass: bool,
}

impl VerificationReport {
    fn assemble(
        check: &str,
        d: u32,
        es: &RangeInclusive<u64>,
        grid: &SGrid,
        r_mode: RMode,
        strict: bool,
        points: Vec<PointRecord>,
        pivots: Vec<PivotRecord>,
    ) -> Self {
        let failures = points.iter().filter(|p| !p.pass).count()
            + pivots.iter().filter(|p| !p.pass).count();
        VerificationReport {
            check: check.into(),
            d,
            e_min: *es.start(),
            e_max: *es.end(),
            grid: grid.clone(),
            r_mode,
            strict,
            exploratory: false,
            points,
            pivots,
            failures,
            pass: failures == 0,
        }
    }

    /// Canonical JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value prints")
    }
}

fn q(r: Rational) -> ExactScalar {
    QuadraticNumber::from_rational(r)
}

fn holds(lhs: &ExactScalar, rhs: &ExactScalar, strict: bool) -> bool {
    let sign = (lhs - rhs).sign();
    if strict {
        sign > 0
    } else {
        sign >= 0
    }
}

fn check_e_range(es: &RangeInclusive<u64>) -> Result<()> {
    if *es.start() < 2 || es.start() > es.end() {
        return Err(Error::InvalidParameter(format!(
            "multiplicity range must be nonempty with e >= 2, got {}..={}",
            es.start(),
            es.end()
        )));
    }
    Ok(())
}

fn check_grid_positive(grid: &SGrid) -> Result<Vec<Rational>> {
    let pts = grid.points();
    if pts.iter().any(|s| s <= &int(0)) {
        return Err(Error::InvalidParameter("grid points must be positive".into()));
    }
    Ok(pts)
}

/// Compares the best lower bound against `target(s)` at every grid point.
fn sweep<F>(
    d: Dimension,
    es: &RangeInclusive<u64>,
    pts: &[Rational],
    mode: RMode,
    strict: bool,
    target: F,
) -> Result<Vec<PointRecord>>
where
    F: Fn(u64, &Rational) -> Result<ExactScalar> + Sync,
{
    let per_e: Vec<Vec<PointRecord>> = es
        .clone()
        .into_par_iter()
        .map(|e| {
            let plan = BoundPlan::new(d, e, mode)?;
            pts.iter()
                .map(|s| {
                    let lb = plan.evaluate(&q(s.clone()))?;
                    let target = target(e, s)?;
                    let pass = holds(&lb.value, &target, strict);
                    Ok(PointRecord {
                        e,
                        s: s.clone(),
                        bound_source: lb.source,
                        bound: lb.value,
                        target,
                        pass,
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_e.into_iter().flatten().collect())
}

/// `e_s(R) ≥ e_s(R_d)` for `d ∈ {1, 2, 3}`, using `e_s(R_1) = 2`.
pub fn verify_wy(d: u32, es: RangeInclusive<u64>, grid: &SGrid) -> Result<VerificationReport> {
    check_e_range(&es)?;
    let pts = check_grid_positive(grid)?;
    if !(1..=3).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    let dim = Dimension::new(d)?;
    let points = sweep(dim, &es, &pts, RMode::FRational, false, |_, s| {
        if d == 1 {
            Ok(q(int(2)))
        } else {
            es_quadric(dim, &q(s.clone()))
        }
    })?;
    let pivots = if d == 3 {
        es.clone()
            .map(|e| {
                let lhs = dim3_pivot(e);
                let rhs = q(rat(4, 3));
                PivotRecord {
                    e,
                    relation: "e(e+2)/(6(sqrt(e+2)-1)^2) >= 4/3".into(),
                    pass: holds(&lhs, &rhs, false),
                    lhs,
                    rhs,
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(VerificationReport::assemble(
        &format!("wy_d{d}"),
        d,
        &es,
        grid,
        RMode::FRational,
        false,
        points,
        pivots,
    ))
}

/// `e·H_t(4) − e(e−1)·H_{t−1}(4)` and its claimed closed form, per range.
fn phi4_pivot(e: u64) -> Option<PivotRecord> {
    let d4 = Dimension::new(4).expect("nonzero");
    let ei = e as i64;
    let (t, formula, label) = match e {
        3..=10 => (int(2), rat(13 * ei - ei * ei, 24), "(13e-e^2)/24 >= 115/96"),
        11..=28 => (rat(3, 2), rat(78 * ei - ei * ei, 384), "(78e-e^2)/384 >= 115/96"),
        29.. => (int(1), rat(ei, 24), "e/24 >= 115/96"),
        _ => return None,
    };
    let ht: Rational = hs_clamped(d4, &t);
    let ht1: Rational = hs_clamped(d4, &(&t - int(1)));
    let numerator = int(ei) * ht - int(ei * (ei - 1)) * ht1;
    let rhs = phi_tail_constant(d4);
    Some(PivotRecord {
        e,
        relation: label.into(),
        pass: numerator == formula && numerator >= rhs,
        lhs: q(numerator),
        rhs: q(rhs),
    })
}

/// `e_s(R) ≥ φ(s, 4)` in dimension 4.
pub fn verify_phi4(es: RangeInclusive<u64>, grid: &SGrid) -> Result<VerificationReport> {
    check_e_range(&es)?;
    let pts = check_grid_positive(grid)?;
    let d4 = Dimension::new(4)?;
    let points = sweep(d4, &es, &pts, RMode::FRational, false, |_, s| phi(&q(s.clone()), d4))?;
    let pivots = es.clone().filter_map(phi4_pivot).collect();
    Ok(VerificationReport::assemble(
        "phi4",
        4,
        &es,
        grid,
        RMode::FRational,
        false,
        points,
        pivots,
    ))
}

/// Best lower bound against `φ(s, d)` for `d ≥ 5`; reported without
/// pass/fail meaning.
pub fn explore_phi(d: u32, es: RangeInclusive<u64>, grid: &SGrid) -> Result<VerificationReport> {
    if d == 4 {
        return verify_phi4(es, grid);
    }
    check_e_range(&es)?;
    let pts = check_grid_positive(grid)?;
    let dim = Dimension::new(d)?;
    let points = sweep(dim, &es, &pts, RMode::FRational, false, |_, s| phi(&q(s.clone()), dim))?;
    let mut report = VerificationReport::assemble(
        &format!("phi_d{d}"),
        d,
        &es,
        grid,
        RMode::FRational,
        false,
        points,
        Vec::new(),
    );
    report.exploratory = true;
    Ok(report)
}

/// `e_s(R) > e_s(V_e)` for `s > 1` with `r = e − 2`.
pub fn verify_veronese(es: RangeInclusive<u64>, grid: &SGrid) -> Result<VerificationReport> {
    check_e_range(&es)?;
    let pts = grid.points();
    if let Some(bad) = pts.iter().find(|s| *s <= &int(1)) {
        return Err(Error::InvalidParameter(format!(
            "the Veronese comparison needs s > 1, grid contains {bad}"
        )));
    }
    let d2 = Dimension::new(2)?;
    let points = sweep(d2, &es, &pts, RMode::NonFRational, true, |e, s| {
        let e = u32::try_from(e).map_err(|_| Error::InvalidParameter("e too large".into()))?;
        es_veronese(e, &q(s.clone()))
    })?;
    let pivots = es
        .clone()
        .map(|e| {
            let ei = e as i64;
            let a: Rational = hs_clamped(d2, &rat(ei + 1, ei));
            let b: Rational = hs_clamped(d2, &rat(1, ei));
            let lhs = a - int(ei - 2) * b;
            let rhs = rat(ei * ei + ei + 1, 2 * ei * ei);
            PivotRecord {
                e,
                relation: "H_{(e+1)/e}(2) - (e-2)H_{1/e}(2) = (e^2+e+1)/(2e^2)".into(),
                pass: lhs == rhs,
                lhs: q(lhs),
                rhs: q(rhs),
            }
        })
        .collect();
    Ok(VerificationReport::assemble(
        "veronese",
        2,
        &es,
        grid,
        RMode::NonFRational,
        true,
        points,
        pivots,
    ))
}
