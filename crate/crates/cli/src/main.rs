//! `smult`: exact s-multiplicity values, lower-bound certification on
//! rational grids, and brute-force colength oracles.
//!
//! Exit codes: 0 success, 1 verification failed, 2 usage error,
//! 3 unparseable number, 4 bad ring file, 5 enumeration cap exceeded,
//! 6 any other computation error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use smult_core::closed_forms::{lower_bound_main_at, BoundPlan};
use smult_core::hs::{find_peak, hs_piecewise, hs_value};
use smult_core::oracle::{converge_table, max_points_from_env, ColengthQuery};
use smult_core::region::{vol_u_exact, vol_u_mc};
use smult_core::verify::{explore_phi, verify_phi4, verify_veronese, verify_wy, SGrid};
use smult_core::{
    parse_rational, Dimension, Error, ExactScalar, RMode, Rational, RingSpec, VerificationReport,
};

#[derive(Parser)]
#[command(name = "smult", version, about = "Exact s-multiplicity computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON on stdout (the default; kept for explicitness).
    #[arg(long, global = true)]
    json: bool,

    /// Also write a CSV table to PATH (converge and verify commands).
    #[arg(long, global = true, value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// H_s(d), the volume of {x in [0,1]^d : sum x_i < s}.
    Hs {
        #[arg(long)]
        dim: u32,
        /// Rational or quadratic value such as 3/2 or 1+2*sqrt(3).
        #[arg(long, required_unless_present = "piecewise")]
        s: Option<String>,
        /// Dump breakpoints and per-piece coefficients instead.
        #[arg(long)]
        piecewise: bool,
    },
    /// Closed-form e_s for a ring file.
    Es {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        s: String,
    },
    /// Certify e_s(R) >= e_s(R_d) for d in {1, 2, 3} on a grid.
    VerifyWy {
        #[arg(long)]
        dim: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Certify e_s(R) >= phi(s, 4) on a grid; d >= 5 runs as exploration.
    VerifyPhi4 {
        #[arg(long, default_value_t = 4)]
        dim: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Certify e_s(R) > e_s(V_e) for s > 1 on a grid.
    VerifyVeronese {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Normalized colengths for q = base^1..base^emax with extrapolation.
    Converge {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 2)]
        base: u64,
        #[arg(long, default_value_t = 6)]
        emax: u32,
    },
    /// One colength lambda(R/(I^ceil(sq) + J^[q])).
    Colength {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        s: String,
        #[arg(long)]
        q: u64,
    },
    /// Volume of the region U for 1 <= s <= 2.
    Volume {
        #[arg(long)]
        s: String,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bracket around the maximizer of H_s(d) - r*H_{s-1}(d).
    Peak {
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value = "1/1048576")]
        tol: String,
    },
    /// Lower bound on e_s from multiplicity e; the main bound at one t if
    /// --t is given, otherwise the best over the built-in candidates.
    Bound {
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        e: u64,
        #[arg(long)]
        s: String,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long, value_enum, default_value_t = ModeArg::FRational)]
        mode: ModeArg,
    },
}

#[derive(Args)]
struct RingArg {
    /// Ring JSON file, or inline JSON starting with '{'.
    #[arg(long, value_name = "FILE")]
    ring: String,
}

#[derive(Args, Default)]
struct GridArgs {
    #[arg(long)]
    e_min: Option<u64>,
    #[arg(long)]
    e_max: Option<u64>,
    /// Grid points are start + k/den for k = 1..=count.
    #[arg(long)]
    grid_start: Option<String>,
    #[arg(long)]
    grid_den: Option<u64>,
    #[arg(long)]
    grid_count: Option<u64>,
    /// Omit per-point records from the JSON report.
    #[arg(long)]
    summary: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Mc,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    FRational,
    NonFRational,
}

enum Failure {
    Verification,
    Usage(String),
    Number(String),
    RingFile(String),
    Cap(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Number(e.to_string()),
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl Failure {
    fn exit(self) -> ExitCode {
        let (code, msg) = match self {
            Failure::Verification => return ExitCode::from(1),
            Failure::Usage(m) => (2, m),
            Failure::Number(m) => (3, m),
            Failure::RingFile(m) => (4, m),
            Failure::Cap(m) => (5, m),
            Failure::Compute(m) => (6, m),
        };
        eprintln!("error: {msg}");
        ExitCode::from(code)
    }
}

type Outcome = Result<(), Failure>;

fn dimension(d: u32) -> Result<Dimension, Failure> {
    Ok(Dimension::new(d)?)
}

fn scalar(text: &str) -> Result<ExactScalar, Failure> {
    text.parse::<ExactScalar>().map_err(Failure::from)
}

fn rational(text: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(text)?)
}

fn load_ring(arg: &RingArg) -> Result<RingSpec, Failure> {
    let text = if arg.ring.trim_start().starts_with('{') {
        arg.ring.clone()
    } else {
        fs::read_to_string(&arg.ring)
            .map_err(|e| Failure::RingFile(format!("cannot read {}: {e}", arg.ring)))?
    };
    let ring: RingSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::RingFile(format!("malformed ring spec: {e}")))?;
    ring.validate()
        .map_err(|e| Failure::RingFile(format!("invalid ring spec: {e}")))?;
    Ok(ring)
}

fn emit(value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("JSON values print");
    // a closed downstream pipe is not an error for a report writer
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn write_csv(path: &Path, text: &str) -> Outcome {
    fs::write(path, text)
        .map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display())))
}

fn cmd_hs(dim: u32, s: Option<&str>, piecewise: bool) -> Outcome {
    let d = dimension(dim)?;
    if piecewise {
        let pw = hs_piecewise(d);
        let pieces: Vec<Vec<String>> = pw
            .pieces()
            .iter()
            .map(|p| p.coeffs().iter().map(ToString::to_string).collect())
            .collect();
        let breakpoints: Vec<String> = pw.breakpoints().iter().map(ToString::to_string).collect();
        emit(&json!({ "d": dim, "breakpoints": breakpoints, "pieces": pieces }));
        return Ok(());
    }
    let s_text = s.expect("clap requires --s without --piecewise");
    let s = scalar(s_text)?;
    let value: ExactScalar = hs_value(d, &s)?;
    emit(&json!({ "d": dim, "s": s.to_string(), "value": value.to_string() }));
    Ok(())
}

fn cmd_es(ring: &RingArg, s: &str) -> Outcome {
    let spec = load_ring(ring)?;
    let s = scalar(s)?;
    let es = spec.es(&s)?;
    emit(&json!({
        "ring": serde_json::to_value(&spec).expect("ring serializes"),
        "s": s.to_string(),
        "es": es.to_string(),
    }));
    Ok(())
}

fn grid_from(args: &GridArgs, defaults: (u64, u64, &str, u64, u64)) -> Result<(std::ops::RangeInclusive<u64>, SGrid), Failure> {
    let (e_min, e_max, start, den, count) = defaults;
    let start = rational(args.grid_start.as_deref().unwrap_or(start))?;
    let grid = SGrid::new(start, args.grid_den.unwrap_or(den), args.grid_count.unwrap_or(count))?;
    Ok((args.e_min.unwrap_or(e_min)..=args.e_max.unwrap_or(e_max), grid))
}

fn report_csv(report: &VerificationReport) -> String {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["e", "s", "bound_source", "bound", "target", "pass"])
        .expect("writing to memory");
    for p in &report.points {
        out.write_record([
            p.e.to_string(),
            p.s.to_string(),
            p.bound_source.to_string(),
            p.bound.to_string(),
            p.target.to_string(),
            p.pass.to_string(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(out.into_inner().expect("flushing to memory")).expect("UTF-8 output")
}

fn finish_report(report: VerificationReport, grid: &GridArgs, csv: Option<&Path>) -> Outcome {
    if let Some(path) = csv {
        write_csv(path, &report_csv(&report))?;
    }
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if grid.summary {
        value["points"] = json!(report.points.len());
    }
    emit(&value);
    if report.pass || report.exploratory {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_converge(ring: &RingArg, s: &str, base: u64, emax: u32, csv: Option<&Path>) -> Outcome {
    let spec = load_ring(ring)?;
    let s = rational(s)?;
    let cap = max_points_from_env()?;
    let table = converge_table(&spec, &s, base, emax, cap)?;
    if let Some(path) = csv {
        write_csv(path, &table.to_csv())?;
    }
    let mut value = serde_json::to_value(&table).expect("table serializes");
    value["es_estimate"] = json!(table.es_estimate().to_string());
    emit(&value);
    Ok(())
}

fn cmd_colength(ring: &RingArg, s: &str, q: u64) -> Outcome {
    let spec = load_ring(ring)?;
    let s = rational(s)?;
    let cap = max_points_from_env()?;
    let result = ColengthQuery::new(spec, s, q)?.run_capped(cap)?;
    emit(&serde_json::to_value(&result).expect("result serializes"));
    Ok(())
}

fn cmd_volume(s: &str, method: Method, samples: u64, seed: u64) -> Outcome {
    let s = rational(s)?;
    let mut out = json!({ "s": s.to_string() });
    if method != Method::Mc {
        out["exact"] = json!(vol_u_exact(&s)?.to_string());
    }
    if method != Method::Exact {
        let cap = max_points_from_env()?;
        if samples > cap {
            return Err(Error::CapExceeded { needed: samples as u128, cap }.into());
        }
        let mc = vol_u_mc(&s, samples, seed)?;
        out["mc"] = json!(mc.estimate);
        out["stderr"] = json!(mc.stderr);
    }
    emit(&out);
    Ok(())
}

fn cmd_peak(dim: u32, r: u32, tol: &str) -> Outcome {
    let tol = rational(tol)?;
    let (lo, hi) = find_peak(dimension(dim)?, r, &tol)?;
    let mid = (&lo + &hi) / Rational::from_integer(2.into());
    emit(&json!({
        "d": dim,
        "r": r,
        "tol": tol.to_string(),
        "lo": lo.to_string(),
        "hi": hi.to_string(),
        "midpoint": mid.to_string(),
    }));
    Ok(())
}

fn cmd_bound(dim: u32, e: u64, s: &str, t: Option<&str>, r: Option<u64>, mode: ModeArg) -> Outcome {
    let d = dimension(dim)?;
    let s = scalar(s)?;
    let mode = match (r, mode) {
        (Some(r), _) => RMode::Explicit(r),
        (None, ModeArg::FRational) => RMode::FRational,
        (None, ModeArg::NonFRational) => RMode::NonFRational,
    };
    let r = mode.r_for(e);
    let mut out = json!({ "d": dim, "e": e, "s": s.to_string(), "r": r });
    match t {
        Some(t) => {
            let t = scalar(t)?;
            let value = lower_bound_main_at(e, d, r, &t, &s)?;
            out["t"] = json!(t.to_string());
            out["value"] = json!(value.to_string());
        }
        None => {
            let best = BoundPlan::new(d, e, mode)?.evaluate(&s)?;
            out["value"] = json!(best.value.to_string());
            out["source"] = serde_json::to_value(&best.source).expect("source serializes");
        }
    }
    emit(&out);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("cannot start {n} workers: {e}")))?;
    }
    let csv = cli.csv.as_deref();
    let csv_capable = matches!(
        cli.command,
        Command::Converge { .. }
            | Command::VerifyWy { .. }
            | Command::VerifyPhi4 { .. }
            | Command::VerifyVeronese { .. }
    );
    if csv.is_some() && !csv_capable {
        return Err(Failure::Usage("--csv applies to converge and verify commands only".into()));
    }
    match &cli.command {
        Command::Hs { dim, s, piecewise } => cmd_hs(*dim, s.as_deref(), *piecewise),
        Command::Es { ring, s } => cmd_es(ring, s),
        Command::VerifyWy { dim, grid } => {
            let (es, g) = grid_from(grid, (2, 200, "0", 16, 64))?;
            finish_report(verify_wy(*dim, es, &g)?, grid, csv)
        }
        Command::VerifyPhi4 { dim, grid } => {
            let (es, g) = grid_from(grid, (2, 200, "0", 16, 64))?;
            let report = match dim {
                4 => verify_phi4(es, &g)?,
                d if *d >= 5 => explore_phi(*d, es, &g)?,
                d => return Err(Error::UnsupportedDimension(*d).into()),
            };
            finish_report(report, grid, csv)
        }
        Command::VerifyVeronese { grid } => {
            let (es, g) = grid_from(grid, (2, 50, "1", 16, 48))?;
            finish_report(verify_veronese(es, &g)?, grid, csv)
        }
        Command::Converge { ring, s, base, emax } => cmd_converge(ring, s, *base, *emax, csv),
        Command::Colength { ring, s, q } => cmd_colength(ring, s, *q),
        Command::Volume { s, method, samples, seed } => cmd_volume(s, *method, *samples, *seed),
        Command::Peak { dim, r, tol } => cmd_peak(*dim, *r, tol),
        Command::Bound { dim, e, s, t, r, mode } => {
            cmd_bound(*dim, *e, s, t.as_deref(), *r, *mode)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
