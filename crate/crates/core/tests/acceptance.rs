//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p smult-core --test acceptance`. Exits non-zero if
//! any criterion fails or runs past its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use smult_core::arith::rational::{int, rat, to_f64};
use smult_core::closed_forms::{es_quadric, es_regular_power, es_veronese, phi};
use smult_core::hs::{find_peak, hs_clamped, hs_lattice_count, hs_piecewise, hs_value, normalize_count};
use smult_core::monomial::MonomialIdeal;
use smult_core::oracle::{
    colength_pair, colength_quadric3, converge_table, probe_enlargement_inequality,
    DEFAULT_MAX_POINTS,
};
use smult_core::region::{vol_u_closed_form, vol_u_exact, vol_u_mc};
use smult_core::verify::{verify_phi4, verify_veronese, verify_wy, SGrid};
use smult_core::{Dimension, Rational, RingSpec, UniPoly};

type Check = Result<String, String>;

fn dim(d: u32) -> Dimension {
    Dimension::new(d).expect("positive dimension")
}

fn h(d: u32, s: &Rational) -> Rational {
    hs_value(dim(d), s).expect("nonnegative argument")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_anchors() -> Check {
    ensure(h(4, &int(1)) == rat(1, 24), || "H_1(4) != 1/24".into())?;
    ensure(h(4, &int(0)).is_zero(), || "H_0(4) != 0".into())?;
    let peak = (h(4, &rat(5, 2)) - h(4, &rat(3, 2))) * int(2);
    ensure(peak == rat(115, 96), || format!("2H_5/2(4) - 2H_3/2(4) = {peak}"))?;
    // e·H_t(4) − e(e−1)·H_{t−1}(4) as a polynomial in e
    let e = UniPoly::x();
    let e_sq_minus_e = &(&e * &e) - &e;
    for (t, c1, c2) in [(int(2), rat(13, 24), rat(-1, 24)), (rat(3, 2), rat(78, 384), rat(-1, 384))] {
        let lhs = &e.scale(&h(4, &t)) - &e_sq_minus_e.scale(&h(4, &(&t - int(1))));
        let rhs = UniPoly::new(vec![Rational::zero(), c1, c2]);
        ensure(lhs == rhs, || format!("t = {t}: {lhs} != {rhs}"))?;
    }
    Ok("H anchors and both pivot polynomials exact".into())
}

fn closed_form_continuity() -> Check {
    for (d, bp, tail, value) in [(2, rat(3, 2), rat(3, 2), rat(12, 7)), (3, int(2), rat(4, 3), rat(8, 5))] {
        let hs = h(d, &bp);
        let left = int(2) - int(2) * h(d, &(&bp - int(1))) / &hs;
        let right = tail / &hs;
        ensure(left == value && right == value, || {
            format!("d = {d}: pieces {left} and {right} at {bp}")
        })?;
        let via_api = es_quadric(dim(d), &bp).map_err(|e| e.to_string())?;
        ensure(via_api == value, || format!("es_quadric({d}, {bp}) = {via_api}"))?;
    }
    for e in 2..=50i64 {
        let bp = rat(e + 1, e);
        let hs = h(2, &bp);
        let left = (int(e) * &hs - int(e * e - e) * h(2, &(&bp - int(1)))) / &hs;
        let right = rat(e + 1, 2) / &hs;
        ensure(left == right, || format!("Veronese e = {e}: {left} != {right}"))?;
        let via_api = es_veronese(e as u32, &bp).map_err(|e| e.to_string())?;
        ensure(via_api == left, || format!("es_veronese({e}) = {via_api}"))?;
    }
    for d in [2u32, 3] {
        for k in 1..=128 {
            let s = rat(k, 32);
            let a = phi(&s, dim(d)).map_err(|e| e.to_string())?;
            let b = es_quadric(dim(d), &s).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("phi({s}, {d}) = {a} but es_quadric = {b}"))?;
        }
    }
    Ok("quadric, Veronese (e = 2..50), phi = es_quadric on k/32".into())
}

fn region_u_volume() -> Check {
    for k in 0..50 {
        let s = int(1) + rat(k, 49);
        let exact = vol_u_exact(&s).map_err(|e| e.to_string())?;
        let closed = vol_u_closed_form(&s).map_err(|e| e.to_string())?;
        ensure(exact == closed, || format!("s = {s}: integral {exact} vs closed form {closed}"))?;
    }
    let mut worst: f64 = 0.0;
    for (i, s) in [int(1), rat(3, 2), int(2)].into_iter().enumerate() {
        let exact = to_f64(&vol_u_exact(&s).map_err(|e| e.to_string())?);
        let mc = vol_u_mc(&s, 1_000_000, 0x5eed + i as u64).map_err(|e| e.to_string())?;
        let z = (mc.estimate - exact).abs() / mc.stderr;
        worst = worst.max(z);
        ensure(z <= 3.0, || {
            format!("s = {s}: mc {} vs exact {exact}, {z:.2} stderr", mc.estimate)
        })?;
    }
    Ok(format!("50 exact equalities; MC worst deviation {worst:.2} stderr"))
}

fn oracle_convergence() -> Check {
    let svals = [rat(1, 2), rat(5, 4), rat(3, 2), int(2)];
    let mut worst = 0.0f64;
    for d in 1..=3u32 {
        for s in &svals {
            let hs = h(d, s);
            for q in 4..=256u64 {
                let count = hs_lattice_count(dim(d), s, q);
                let err = (normalize_count(count, q, d) - &hs).abs();
                let bound = rat(2 * d as i64, q as i64);
                worst = worst.max(to_f64(&(&err / &bound)));
                ensure(err <= bound, || format!("d = {d}, s = {s}, q = {q}: error {err}"))?;
            }
            let m = MonomialIdeal::maximal(d as usize).map_err(|e| e.to_string())?;
            for q in [4u64, 8, 16, 32, 64, 128, 256] {
                let a = colength_pair(&m, &m, s, q).map_err(|e| e.to_string())?.count;
                let b = hs_lattice_count(dim(d), s, q);
                ensure(a == b, || format!("d = {d}, s = {s}, q = {q}: {a} != {b}"))?;
            }
        }
    }
    Ok(format!("worst error / (2d/q) = {worst:.3}; colength_pair agrees bit-for-bit"))
}

fn toric_quadric() -> Check {
    let mut worst = 0.0f64;
    for s in [rat(5, 4), rat(3, 2), rat(7, 4), int(2)] {
        let target = (h(3, &s) - h(3, &(&s - int(1)))) * int(2);
        for q in [8u64, 16, 32, 64] {
            let r = colength_quadric3(&s, q);
            let err = (&r.normalized - &target).abs();
            worst = worst.max(to_f64(&err) * q as f64);
            ensure(err <= rat(10, q as i64), || format!("s = {s}, q = {q}: error {err}"))?;
        }
    }
    for q in [8u64, 16, 32, 64] {
        let counts: Vec<u64> = [int(2), rat(5, 2), int(3)]
            .iter()
            .map(|s| colength_quadric3(s, q).count)
            .collect();
        ensure(counts.windows(2).all(|w| w[0] == w[1]), || {
            format!("q = {q}: counts {counts:?} differ for s = 2, 5/2, 3")
        })?;
    }
    let table = converge_table(&RingSpec::ToricQuadric3, &int(2), 2, 6, DEFAULT_MAX_POINTS)
        .map_err(|e| e.to_string())?;
    let extrapolated = to_f64(&table.extrapolated);
    ensure((extrapolated - 4.0 / 3.0).abs() <= 0.05, || {
        format!("extrapolation at s = 2 is {extrapolated}")
    })?;
    Ok(format!("worst error·q = {worst:.3}; extrapolated h at s = 2: {extrapolated:.5}"))
}

fn bound_verification_grids() -> Check {
    let grid = SGrid::sixteenths();
    let mut points = 0;
    let mut reports = Vec::new();
    for d in 1..=3 {
        reports.push(verify_wy(d, 2..=200, &grid).map_err(|e| e.to_string())?);
    }
    reports.push(verify_phi4(2..=200, &grid).map_err(|e| e.to_string())?);
    let veronese_grid = SGrid::new(int(1), 16, 48).map_err(|e| e.to_string())?;
    reports.push(verify_veronese(2..=50, &veronese_grid).map_err(|e| e.to_string())?);
    for r in &reports {
        points += r.points.len() + r.pivots.len();
        ensure(r.pass, || {
            let first = r.points.iter().find(|p| !p.pass);
            format!("{}: {} failures, first {first:?}", r.check, r.failures)
        })?;
    }
    Ok(format!("{} reports, {points} exact comparisons", reports.len()))
}

fn limit_rate() -> Check {
    let s = rat(3, 2);
    let limit = int(1) / (int(2) * h(2, &s));
    ensure(limit == rat(4, 7), || format!("limit {limit} != 4/7"))?;
    for n in (4..=256i64).step_by(4) {
        let es = es_regular_power(dim(2), n as u32, &s).map_err(|e| e.to_string())?;
        let gap = es / int(n * n) - &limit;
        ensure(gap == rat(4, 7 * n), || format!("n = {n}: gap {gap}"))?;
    }
    Ok("gap equals (4/7)/n exactly for n = 4, 8, …, 256".into())
}

fn peak_properties() -> Check {
    let tol = Rational::new(1.into(), (1u64 << 20).into());
    for d in 1..=6u32 {
        let mid = rat(d as i64 + 1, 2);
        let (l, hi) = find_peak(dim(d), 1, &tol).map_err(|e| e.to_string())?;
        ensure(l <= mid && mid <= hi, || format!("d = {d}, r = 1: [{l}, {hi}] misses {mid}"))?;
        for r in 1..=10u32 {
            let (l, hi) = find_peak(dim(d), r, &tol).map_err(|e| e.to_string())?;
            ensure(hi <= &mid + &tol && &hi - &l <= tol, || {
                format!("d = {d}, r = {r}: bracket [{l}, {hi}]")
            })?;
        }
    }
    Ok("r = 1 brackets contain (d+1)/2; all 60 brackets end below (d+1)/2 + tol".into())
}

fn property_suites() -> Check {
    let mut runner = TestRunner::new(Config {
        cases: 10_000,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (1u32..=6, 1i64..=64, 0.0f64..=1.0, 0.0f64..=1.0);
    runner
        .run(&strategy, |(d, den, u, v)| {
            // two grid points in [0, d] with denominator den
            let span = (d as i64 * den) as f64;
            let (a, b) = ((u * span) as i64, (v * span) as i64);
            let (lo, hi) = (rat(a.min(b), den), rat(a.max(b), den));
            let h_lo = h(d, &lo);
            let h_hi = h(d, &hi);
            prop_assert!(h_lo >= Rational::zero() && h_hi <= int(1));
            prop_assert!(h_lo <= h_hi, "H not monotone at {lo}, {hi}");
            let mirrored = h(d, &(int(d as i64) - &lo));
            prop_assert_eq!(&h_lo + mirrored, int(1));
            if d >= 2 {
                let deriv = hs_piecewise(dim(d)).derivative().eval(&lo).map_err(fail)?;
                let diff: Rational = h(d - 1, &lo) - hs_clamped(dim(d - 1), &(&lo - int(1)));
                prop_assert_eq!(deriv, diff, "derivative identity at s = {}", lo);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    for d in 2..=6 {
        let lower = hs_piecewise(dim(d - 1));
        let expected = lower.sub(&lower.shift_by_one());
        ensure(hs_piecewise(dim(d)).derivative() == expected, || {
            format!("d = {d}: piecewise derivative identity fails")
        })?;
    }

    let mut floor = f64::INFINITY;
    let two_var = |gens: Vec<Vec<u32>>| MonomialIdeal::new(2, gens).expect("valid ideal");
    let param = two_var(vec![vec![2, 0], vec![0, 1]]);
    let rings: Vec<(RingSpec, Rational, u32)> = vec![
        (RingSpec::Regular { d: dim(1) }, rat(1, 2), 8),
        (RingSpec::Regular { d: dim(2) }, rat(3, 2), 8),
        (RingSpec::Regular { d: dim(3) }, rat(5, 4), 7),
        (RingSpec::RegularPower { d: dim(2), n: 2 }, rat(3, 2), 6),
        (RingSpec::MonomialPair { d: dim(2), i: param.clone(), j: param }, int(1), 6),
        (RingSpec::ToricQuadric3, rat(1, 2), 6),
        (RingSpec::ToricQuadric3, rat(3, 2), 6),
        (RingSpec::ToricQuadric3, int(2), 6),
        (RingSpec::ToricQuadric3, int(3), 6),
    ];
    for (ring, s, emax) in rings {
        let table = converge_table(&ring, &s, 2, emax, DEFAULT_MAX_POINTS).map_err(|e| e.to_string())?;
        let est = table.es_estimate().to_f64().unwrap_or(f64::NAN);
        floor = floor.min(est);
        ensure(est >= 0.95, || format!("{ring:?} at s = {s}: estimate {est}"))?;
    }

    let x = MonomialIdeal::new(1, vec![vec![1]]).expect("valid ideal");
    let square = two_var(vec![vec![2, 0], vec![0, 2]]);
    let m2 = two_var(vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    let probes = [
        (m2.clone(), m2.clone(), rat(3, 2), 64u64),
        (square, m2, rat(3, 2), 64),
        (x.clone(), x, int(1), 64),
    ];
    let mut min_slack = f64::INFINITY;
    for (i, j, s, q) in probes {
        let p = probe_enlargement_inequality(&i, &j, &s, q).map_err(|e| e.to_string())?;
        min_slack = min_slack.min(to_f64(&p.slack));
        ensure(p.pass && p.slack >= rat(-10, q as i64), || {
            format!("probe {:?} in {:?}: slack {}", i.gens(), j.gens(), p.slack)
        })?;
    }
    Ok(format!(
        "10^4 H cases; min e_s estimate {floor:.4}; min enlargement slack {min_slack:.4}"
    ))
}

fn fail(e: smult_core::Error) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Check); 9] = [
        (1, "exact anchors", Duration::from_secs(1), exact_anchors),
        (2, "closed-form continuity", Duration::from_secs(5), closed_form_continuity),
        (3, "region U volume", Duration::from_secs(30), region_u_volume),
        (4, "oracle convergence", Duration::from_secs(60), oracle_convergence),
        (5, "toric quadric", Duration::from_secs(120), toric_quadric),
        (6, "bound verification grids", Duration::from_secs(120), bound_verification_grids),
        (7, "regular power limit rate", Duration::from_secs(1), limit_rate),
        (8, "peak properties", Duration::from_secs(5), peak_properties),
        (9, "property suites", Duration::from_secs(120), property_suites),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(_) if elapsed > budget => {
                ("FAIL", format!("over time budget of {:.0} s", budget.as_secs_f64()))
            }
            Ok(detail) => ("PASS", detail),
            Err(detail) => ("FAIL", detail),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {id} [{verdict}] {name} ({:.2} s): {detail}", elapsed.as_secs_f64());
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
