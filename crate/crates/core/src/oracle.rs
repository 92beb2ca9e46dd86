//! Finite-`q` colengths `λ(R/(I^⌈sq⌉ + J^[q]))` by lattice enumeration,
//! convergence tables in `q`, and a finite-`q` probe of the enlargement
//! inequality `e_s(I) ≤ e_s(J) + λ(J/I)·e_s(I, m)`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::rational::{binomial, ceil_mul, int, to_f64, Rational};
use crate::arith::serialize_display;
use crate::closed_forms::{es_quadric, RingSpec};
use crate::error::{Error, Result};
use crate::hs::{hs_clamped, hs_lattice_count, normalize_count, Dimension};
use crate::monomial::{member_frobenius, member_power, MonomialIdeal};

/// Default cap on membership tests, overridable through `SMULT_MAX_POINTS`.
pub const DEFAULT_MAX_POINTS: u64 = 100_000_000;

/// Largest exponent `emax` accepted for the toric quadric.
pub const MAX_EMAX_TORIC: u32 = 8;
/// Largest exponent `emax` accepted for every other ring.
pub const MAX_EMAX: u32 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColengthResult {
    pub count: u64,
    /// `count / q^d`.
    #[serde(serialize_with = "serialize_display")]
    pub normalized: Rational,
    pub q: u64,
}

impl ColengthResult {
    fn new(count: u64, q: u64, d: u32) -> Self {
        ColengthResult {
            count,
            normalized: normalize_count(count, q, d),
            q,
        }
    }
}

/// One colength computation: a ring (with its ideal pair), `s > 0`, `q ≥ 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ColengthQuery {
    pub ring: RingSpec,
    pub s: Rational,
    pub q: u64,
}

enum Plan {
    Lattice(Dimension),
    Pair(MonomialIdeal, MonomialIdeal),
    Toric,
}

fn plan_for(ring: &RingSpec) -> Result<Plan> {
    ring.validate()?;
    match ring {
        RingSpec::Regular { d } => Ok(Plan::Lattice(*d)),
        RingSpec::RegularPower { d, n } => {
            let k = d.get() as usize;
            Ok(Plan::Pair(
                MonomialIdeal::power_of_maximal(k, *n)?,
                MonomialIdeal::maximal(k)?,
            ))
        }
        RingSpec::MonomialPair { i, j, .. } => Ok(Plan::Pair(i.clone(), j.clone())),
        RingSpec::ToricQuadric3 => Ok(Plan::Toric),
        RingSpec::Quadric { d } if d.get() == 3 => Ok(Plan::Toric),
        other => Err(Error::UnsupportedRing(format!(
            "no lattice model for {other:?}; supported: regular, regular_power, \
             monomial_pair, toric_quadric3, quadric with d = 3"
        ))),
    }
}

impl ColengthQuery {
    pub fn new(ring: RingSpec, s: Rational, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidParameter("q must be at least 1".into()));
        }
        if !s.is_positive() {
            return Err(Error::InvalidParameter(format!("s must be positive, got {s}")));
        }
        plan_for(&ring)?;
        Ok(ColengthQuery { ring, s, q })
    }

    /// Approximate number of membership tests the enumeration performs.
    pub fn estimated_work(&self) -> Result<u128> {
        let q = self.q as u128;
        Ok(match plan_for(&self.ring)? {
            Plan::Lattice(d) => q.saturating_pow(d.get().saturating_sub(1)).max(1),
            Plan::Pair(_, j) => {
                let b = j.require_m_primary()?;
                pair_work(&b, self.q)
            }
            Plan::Toric => {
                let n = ceil_mul(&self.s, self.q) as u128;
                n * n
            }
        })
    }

    pub fn run(&self) -> Result<ColengthResult> {
        match plan_for(&self.ring)? {
            Plan::Lattice(d) => Ok(ColengthResult::new(
                hs_lattice_count(d, &self.s, self.q),
                self.q,
                d.get(),
            )),
            Plan::Pair(i, j) => colength_pair(&i, &j, &self.s, self.q),
            Plan::Toric => Ok(colength_quadric3(&self.s, self.q)),
        }
    }

    /// Runs only if [`Self::estimated_work`] is within `cap`.
    pub fn run_capped(&self, cap: u64) -> Result<ColengthResult> {
        let needed = self.estimated_work()?;
        if needed > cap as u128 {
            return Err(Error::CapExceeded { needed, cap });
        }
        self.run()
    }
}

fn pair_work(b: &[u32], q: u64) -> u128 {
    let (last, prefix) = b.split_last().expect("at least one variable");
    let columns: u128 = prefix.iter().map(|&x| x as u128 * q as u128).product();
    let len = *last as u128 * q as u128;
    columns * (128 - len.leading_zeros() as u128 + 1)
}

/// `λ(R/(I^⌈sq⌉ + J^[q]))` for monomial ideals in `k[[x_1,…,x_d]]`.
///
/// Enumerates the box `∏[0, q·b_i)` cut out by the pure powers of `J`.
/// Each column along the last coordinate is an initial segment of
/// non-members (the ideal is up-closed), so it is found by bisection.
pub fn colength_pair(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: &Rational,
    q: u64,
) -> Result<ColengthResult> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be at least 1".into()));
    }
    if !s.is_positive() {
        return Err(Error::InvalidParameter(format!("s must be positive, got {s}")));
    }
    if i.num_vars() != j.num_vars() {
        return Err(Error::InvalidParameter(format!(
            "ideals live in {} and {} variables",
            i.num_vars(),
            j.num_vars()
        )));
    }
    i.require_m_primary()?;
    let b = j.require_m_primary()?;
    let d = b.len();
    let n = u32::try_from(ceil_mul(s, q))
        .map_err(|_| Error::InvalidParameter("⌈sq⌉ does not fit in 32 bits".into()))?;
    let extent: Vec<u32> = b
        .iter()
        .map(|&x| {
            u32::try_from(x as u64 * q)
                .map_err(|_| Error::InvalidParameter("box side does not fit in 32 bits".into()))
        })
        .collect::<Result<_>>()?;
    let in_ideal = |a: &[u32]| member_frobenius(j, q, a) || member_power(i, n, a);
    let column = |prefix: &mut Vec<u32>| -> u64 {
        // first index along the last axis that lies in the ideal
        let (mut lo, mut hi) = (0u32, extent[d - 1]);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            prefix.push(mid);
            let member = in_ideal(prefix);
            prefix.pop();
            if member {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        lo as u64
    };
    let count = if d == 1 {
        column(&mut Vec::new())
    } else {
        (0..extent[0])
            .into_par_iter()
            .map(|a0| {
                let mut prefix = vec![a0; 1];
                prefix.resize(d - 1, 0);
                let mut total = 0u64;
                loop {
                    total += column(&mut prefix);
                    let mut k = d - 2;
                    loop {
                        if k == 0 {
                            return total;
                        }
                        prefix[k] += 1;
                        if prefix[k] < extent[k] {
                            break;
                        }
                        prefix[k] = 0;
                        k -= 1;
                    }
                }
            })
            .sum()
    };
    Ok(ColengthResult::new(count, q, d as u32))
}

/// Colength for `R_3 = k[[X,Y,Z,W]]/(XY − ZW)` with `I = J = m`, realized
/// as the semigroup `x, y, x+z, y+z ≥ 0`.
///
/// A point survives if its degree `x+y+z` is below `⌈sq⌉` and it avoids the
/// four cones generating `m^[q]`. For fixed `(x, y)` the surviving `z` form
/// an interval, since each cone condition is an upper ray in `z`.
pub fn colength_quadric3(s: &Rational, q: u64) -> ColengthResult {
    assert!(q >= 1, "q must be positive");
    let n = ceil_mul(s, q) as i64;
    let qi = q as i64;
    let count: u64 = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut total = 0u64;
            for y in 0..n {
                if x >= qi && y >= qi {
                    continue;
                }
                let lo = -x.min(y);
                let mut hi = n - 1 - x - y;
                hi = hi.min(qi - x.min(y) - 1);
                if x >= qi {
                    hi = hi.min(qi - x - 1);
                }
                if y >= qi {
                    hi = hi.min(qi - y - 1);
                }
                if hi >= lo {
                    total += (hi - lo + 1) as u64;
                }
            }
            total
        })
        .sum();
    ColengthResult::new(count, q, 3)
}

/// Exact limit `h_s` where a closed form is known.
pub fn reference_h(ring: &RingSpec, s: &Rational) -> Result<Option<Rational>> {
    let regular_power_sum = |d: Dimension, n: u32| -> Rational {
        let dd = d.get() as u64;
        let sn = s * int(n as i64);
        (0..n as u64)
            .map(|a| {
                let c = Rational::from_integer(binomial(a + dd - 1, dd - 1));
                c * hs_clamped::<Rational>(d, &(&sn - Rational::from_integer(BigInt::from(a))))
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    };
    Ok(match ring {
        RingSpec::Regular { d } => Some(hs_clamped(*d, s)),
        RingSpec::RegularPower { d, n } => Some(regular_power_sum(*d, *n)),
        RingSpec::ToricQuadric3 | RingSpec::Quadric { .. } => {
            let d3 = Dimension::new(3)?;
            if ring.dimension() != d3 {
                return Ok(None);
            }
            Some(es_quadric(d3, s)? * hs_clamped::<Rational>(d3, s))
        }
        RingSpec::MonomialPair { d, i, j } if i == j => {
            let b = i.require_m_primary()?;
            if i.gens().len() == b.len() {
                let e: u64 = b.iter().map(|&x| x as u64).product();
                Some(hs_clamped::<Rational>(*d, s) * int(e as i64))
            } else if b.iter().all(|&x| x == b[0])
                && *i == MonomialIdeal::power_of_maximal(b.len(), b[0])?
            {
                Some(regular_power_sum(*d, b[0]))
            } else {
                None
            }
        }
        _ => None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub ring: RingSpec,
    #[serde(serialize_with = "serialize_display")]
    pub s: Rational,
    pub rows: Vec<ColengthResult>,
    #[serde(serialize_with = "serialize_option_display")]
    pub reference: Option<Rational>,
    /// `c0` of the model `c0 + c1/q` through the last two rows.
    #[serde(serialize_with = "serialize_display")]
    pub extrapolated: Rational,
}

fn serialize_option_display<S: serde::Serializer>(
    value: &Option<Rational>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => ser.collect_str(v),
        None => ser.serialize_none(),
    }
}

/// Rows for `q = base^1, …, base^emax`, each checked against `cap`.
pub fn converge_table(
    ring: &RingSpec,
    s: &Rational,
    base: u64,
    emax: u32,
    cap: u64,
) -> Result<ConvergenceTable> {
    if base < 2 {
        return Err(Error::InvalidParameter("base must be at least 2".into()));
    }
    let limit = if matches!(plan_for(ring)?, Plan::Toric) {
        MAX_EMAX_TORIC
    } else {
        MAX_EMAX
    };
    if emax == 0 || emax > limit {
        return Err(Error::InvalidParameter(format!(
            "emax must lie in 1..={limit} for this ring, got {emax}"
        )));
    }
    let mut rows = Vec::with_capacity(emax as usize);
    let mut q = 1u64;
    for _ in 0..emax {
        q = q
            .checked_mul(base)
            .ok_or_else(|| Error::InvalidParameter("q overflows 64 bits".into()))?;
        let query = ColengthQuery::new(ring.clone(), s.clone(), q)?;
        rows.push(query.run_capped(cap)?);
    }
    let extrapolated = match rows.as_slice() {
        [.., r1, r2] => {
            let (q1, q2) = (int(r1.q as i64), int(r2.q as i64));
            (&q2 * &r2.normalized - &q1 * &r1.normalized) / (q2 - q1)
        }
        [only] => only.normalized.clone(),
        [] => unreachable!("emax >= 1"),
    };
    Ok(ConvergenceTable {
        ring: ring.clone(),
        s: s.clone(),
        rows,
        reference: reference_h(ring, s)?,
        extrapolated,
    })
}

impl ConvergenceTable {
    /// Extrapolated `h_s` divided by `H_s(d)`.
    pub fn es_estimate(&self) -> Rational {
        &self.extrapolated / hs_clamped::<Rational>(self.ring.dimension(), &self.s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = csv::Writer::from_writer(Vec::new());
        let mut write = |row: [String; 5]| out.write_record(row).expect("writing to memory");
        write(["q", "count", "normalized", "reference", "abs_error"].map(String::from));
        for row in &self.rows {
            let (reference, err) = match &self.reference {
                Some(r) => (r.to_string(), to_f64(&(&row.normalized - r).abs()).to_string()),
                None => (String::new(), String::new()),
            };
            write([
                row.q.to_string(),
                row.count.to_string(),
                row.normalized.to_string(),
                reference,
                err,
            ]);
        }
        String::from_utf8(out.into_inner().expect("flushing to memory")).expect("ASCII output")
    }
}

/// Finite-`q` terms of `h_s(I) ≤ h_s(J) + λ(J/I)·h_s(I, m)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnlargementProbe {
    #[serde(serialize_with = "serialize_display")]
    pub h_ii: Rational,
    #[serde(serialize_with = "serialize_display")]
    pub h_jj: Rational,
    #[serde(serialize_with = "serialize_display")]
    pub h_im: Rational,
    /// `λ(J/I) = λ(R/I) − λ(R/J)`.
    pub lambda: u64,
    /// `(h_JJ + λ·h_Im − h_II)/H_s(d)`; the limit statement says `≥ 0`.
    #[serde(serialize_with = "serialize_display")]
    pub slack: Rational,
    /// `−10/q`.
    #[serde(serialize_with = "serialize_display")]
    pub tolerance: Rational,
    pub pass: bool,
    pub q: u64,
}

pub fn probe_enlargement_inequality(
    i: &MonomialIdeal,
    j: &MonomialIdeal,
    s: &Rational,
    q: u64,
) -> Result<EnlargementProbe> {
    if !i.is_subset_of(j) {
        return Err(Error::NotContained(format!(
            "{:?} is not inside {:?}",
            i.gens(),
            j.gens()
        )));
    }
    let d = i.num_vars();
    let m = MonomialIdeal::maximal(d)?;
    let h_ii = colength_pair(i, i, s, q)?.normalized;
    let h_jj = colength_pair(j, j, s, q)?.normalized;
    let h_im = colength_pair(i, &m, s, q)?.normalized;
    let lambda = i.colength()? - j.colength()?;
    let hs = hs_clamped::<Rational>(Dimension::new(d as u32)?, s);
    let slack = (&h_jj + &h_im * int(lambda as i64) - &h_ii) / hs;
    let tolerance = -Rational::new(BigInt::from(10), BigInt::from(q));
    let pass = slack >= tolerance;
    Ok(EnlargementProbe {
        h_ii,
        h_jj,
        h_im,
        lambda,
        slack,
        tolerance,
        pass,
        q,
    })
}

/// Reads `SMULT_MAX_POINTS`, falling back to [`DEFAULT_MAX_POINTS`].
pub fn max_points_from_env() -> Result<u64> {
    match std::env::var("SMULT_MAX_POINTS") {
        Ok(text) => text
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite() && *v >= 1.0)
            .and_then(|v| v.floor().to_u64())
            .ok_or_else(|| Error::Parse(text)),
        Err(_) => Ok(DEFAULT_MAX_POINTS),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn ideal(vars: usize, gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::new(vars, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn quadric3_naive(s: &Rational, q: u64) -> u64 {
        let n = ceil_mul(s, q) as i64;
        let q = q as i64;
        let mut count = 0;
        for x in 0..n {
            for y in 0..n {
                for z in -n + 1..n {
                    let in_cone = x + z >= 0 && y + z >= 0 && x + y + z <= n - 1;
                    let shifted = (x >= q && x + z >= q)
                        || (y >= q && y + z >= q)
                        || (x + z >= q && y + z >= q)
                        || (x >= q && y >= q);
                    if in_cone && !shifted {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn pair_examples() {
        let m = MonomialIdeal::maximal(2).unwrap();
        let r = colength_pair(&m, &m, &rat(3, 2), 8).unwrap();
        assert_eq!(r.count, 58);
        let i = ideal(2, &[&[2, 0], &[0, 1]]);
        assert_eq!(colength_pair(&i, &i, &int(1), 4).unwrap().count, 20);
        assert_eq!(colength_pair(&i, &i, &int(1), 32).unwrap().normalized, rat(33, 32));
        let x = ideal(1, &[&[1]]);
        assert_eq!(colength_pair(&x, &x, &rat(1, 2), 4).unwrap().count, 2);
        let not_primary = ideal(2, &[&[1, 1]]);
        assert!(matches!(
            colength_pair(&not_primary, &m, &int(1), 4),
            Err(Error::NotMPrimary(_))
        ));
    }

    #[test]
    fn pair_matches_lattice_count() {
        for d in 1..=3u32 {
            let m = MonomialIdeal::maximal(d as usize).unwrap();
            for s in [rat(1, 2), rat(5, 4), rat(3, 2), int(2), int(3)] {
                for q in [1u64, 3, 8, 16] {
                    let a = colength_pair(&m, &m, &s, q).unwrap().count;
                    assert_eq!(a, hs_lattice_count(dim(d), &s, q), "d={d} s={s} q={q}");
                }
            }
        }
    }

    #[test]
    fn quadric3_examples() {
        let frozen = [
            (rat(5, 4), [365u64, 2750, 21324]),
            (rat(3, 2), [530, 4084, 32040]),
            (rat(7, 4), [651, 5114, 40516]),
            (int(2), [680, 5456, 43680]),
        ];
        for (s, counts) in frozen {
            for (q, c) in [8u64, 16, 32].into_iter().zip(counts) {
                assert_eq!(colength_quadric3(&s, q).count, c, "s={s} q={q}");
            }
        }
        for s in [rat(1, 3), int(1), rat(3, 2), int(2), rat(5, 2)] {
            for q in [1u64, 2, 5, 8] {
                assert_eq!(colength_quadric3(&s, q).count, quadric3_naive(&s, q));
            }
        }
        assert_eq!(colength_quadric3(&int(3), 16).count, 5456);
    }

    #[test]
    fn converge_examples() {
        let reg2 = RingSpec::Regular { d: dim(2) };
        let t = converge_table(&reg2, &rat(3, 2), 2, 8, DEFAULT_MAX_POINTS).unwrap();
        assert_eq!(t.reference, Some(rat(7, 8)));
        for row in &t.rows {
            let err = (&row.normalized - rat(7, 8)).abs();
            assert!(err <= rat(4, row.q as i64));
        }
        let reg1 = RingSpec::Regular { d: dim(1) };
        let t = converge_table(&reg1, &rat(3, 4), 2, 6, DEFAULT_MAX_POINTS).unwrap();
        for row in &t.rows {
            let n = ceil_mul(&rat(3, 4), row.q) as i64;
            assert_eq!(row.normalized, rat(n, row.q as i64));
        }
        let toric = RingSpec::ToricQuadric3;
        let t = converge_table(&toric, &int(2), 2, 5, DEFAULT_MAX_POINTS).unwrap();
        assert!((to_f64(&t.extrapolated) - 4.0 / 3.0).abs() <= 0.05);
        assert_eq!(t.reference, Some(rat(4, 3)));
        assert!(converge_table(&toric, &int(2), 2, 9, DEFAULT_MAX_POINTS).is_err());
        let csv = t.to_csv();
        assert!(csv.starts_with("q,count,normalized,reference,abs_error\n2,"));
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn reference_values() {
        let i = ideal(2, &[&[2, 0], &[0, 1]]);
        let pair = RingSpec::MonomialPair {
            d: dim(2),
            i: i.clone(),
            j: i,
        };
        assert_eq!(reference_h(&pair, &int(1)).unwrap(), Some(int(1)));
        let m2 = MonomialIdeal::power_of_maximal(2, 2).unwrap();
        let pair = RingSpec::MonomialPair {
            d: dim(2),
            i: m2.clone(),
            j: m2,
        };
        let power = RingSpec::RegularPower { d: dim(2), n: 2 };
        assert_eq!(
            reference_h(&pair, &int(2)).unwrap(),
            reference_h(&power, &int(2)).unwrap()
        );
        assert_eq!(reference_h(&power, &int(2)).unwrap(), Some(int(3)));
    }

    #[test]
    fn cap_is_enforced() {
        let q = ColengthQuery::new(RingSpec::ToricQuadric3, int(2), 64).unwrap();
        assert!(matches!(q.run_capped(10), Err(Error::CapExceeded { .. })));
        assert_eq!(q.run_capped(DEFAULT_MAX_POINTS).unwrap().count, quadric3_naive(&int(2), 64));
        assert!(ColengthQuery::new(RingSpec::Veronese { e: 3 }, int(2), 4).is_err());
        assert!(ColengthQuery::new(RingSpec::ToricQuadric3, int(2), 0).is_err());
    }

    #[test]
    fn enlargement_examples() {
        let i = ideal(2, &[&[2, 0], &[0, 2]]);
        let j = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let p = probe_enlargement_inequality(&i, &j, &rat(3, 2), 8).unwrap();
        assert_eq!(p.lambda, 1);
        assert_eq!(p.h_ii, rat(29, 8));
        assert_eq!(p.h_jj, int(3));
        assert_eq!(p.h_im, int(1));
        assert!(p.pass);
        let same = probe_enlargement_inequality(&j, &j, &rat(3, 2), 8).unwrap();
        assert_eq!(same.lambda, 0);
        assert!(same.slack.is_zero());
        assert!(probe_enlargement_inequality(&j, &i, &rat(3, 2), 8).is_err());
        let x = ideal(1, &[&[1]]);
        assert!(probe_enlargement_inequality(&x, &x, &int(1), 8).unwrap().pass);
    }
}
