//! The `harmonics` command line.
//!
//! Exit codes: `0` success, `1` a checked inequality (or the seminorm
//! ordering) failed, `2` usage, input or configuration error. Machine
//! output goes to stdout (or `--output`), diagnostics to stderr.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boundary::BoundaryData;
use crate::constants::{gamma_star, jn_bundle, k_n, liu_constant, m_n_khavinson};
use crate::error::{Error, Result};
use crate::extension::{Harmonic, HarmonicFn};
use crate::poisson::HalfSpacePoint;
use crate::seminorms::{seminorm_suite, PairDomain, PairKind};
use crate::verification::report::real;
use crate::verification::{arc_integral, default_roster, verify_roster, CheckOptions, VerificationReport, VerifyConfig, DEFAULT_ALPHAS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "harmonics", version, about = "Bounded harmonic functions on the upper half-space")]
pub struct Cli {
    /// more diagnostics on stderr (repeatable)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// write to this file instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of dimensional constants and the J_n bundle
    Constants {
        /// dimensions: `a..b` (inclusive), `a,b,c` or a single value
        #[arg(long, default_value = "2..5")]
        n: String,
        /// comma-separated exponents; empty for none
        #[arg(long, default_value = "0.3,0.5,0.7")]
        alpha: String,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// Evaluate U, d_n U and |grad U| at the points of a CSV file
    Extend {
        /// boundary data JSON (`{"family", "n", "params"}`)
        #[arg(long)]
        data: PathBuf,
        /// CSV with n columns (x_1, ..., x_n); an optional header row
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Estimate all four seminorms and the modulus variants
    Seminorm {
        /// boundary data JSON
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 10.0)]
        height_max: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Run the inequality checks on a roster or one data file
    Verify {
        /// built-in roster (`default`)
        #[arg(long, conflicts_with = "data")]
        roster: Option<String>,
        /// boundary data JSON (checked instead of the roster)
        #[arg(long)]
        data: Option<PathBuf>,
        /// comma-separated exponents; defaults to the data's alpha or 0.3,0.5,0.7
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// test hook: multiply every bound by this factor
        #[arg(long, hide = true, default_value_t = 1.0)]
        bound_scale: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Arc integral between two interior points
    Arc {
        /// comma-separated coordinates x_1, ..., x_n
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        out: Output,
    },
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

/// Parses `a..b`, `a..=b`, `a,b,c` or `a`.
pub fn parse_dims(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| usage(format!("bad dimension `{t}`")));
    let dims = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(usage(format!("empty dimension range `{s}`")));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<Vec<_>>>()?
    };
    if dims.is_empty() || dims.iter().any(|&n| !(2..=100).contains(&n)) {
        return Err(usage(format!("dimensions must lie in 2..100, got `{s}`")));
    }
    Ok(dims)
}

pub fn parse_reals(s: &str) -> Result<Vec<f64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            let v = t.trim().parse::<f64>().map_err(|_| usage(format!("bad number `{t}`")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(usage(format!("non-finite number `{t}`")))
            }
        })
        .collect()
}

fn parse_alphas(s: &str) -> Result<Vec<f64>> {
    let a = parse_reals(s)?;
    for &v in &a {
        if !(v > 0.0 && v < 1.0) {
            return Err(usage(format!("alpha must lie in (0, 1), got {v}")));
        }
    }
    Ok(a)
}

fn read_data(path: &Path) -> Result<BoundaryData> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    BoundaryData::from_json(&v)
}

fn emit(out: &Output, body: &[u8]) -> Result<()> {
    match &out.output {
        Some(p) => fs::write(p, body)?,
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(body)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn json_text<T: Serialize>(v: &T) -> Result<Vec<u8>> {
    Ok((serde_json::to_string_pretty(v)? + "\n").into_bytes())
}

#[derive(Serialize)]
struct ConstantsRow {
    n: usize,
    k_n: f64,
    sqrt_n_plus_2: f64,
    m_n: f64,
    n_n_at_0: f64,
    gamma_star: f64,
    gamma_star_residual: f64,
    j: Vec<Value>,
}

fn cmd_constants(n: &str, alpha: &str, format: Format, out: &Output) -> Result<i32> {
    let dims = parse_dims(n)?;
    let alphas = parse_alphas(alpha)?;
    let mut rows = Vec::new();
    for &n in &dims {
        let g = gamma_star(n)?;
        let mut j = Vec::new();
        for &a in &alphas {
            let b = jn_bundle(n, a)?;
            j.push(json!({"alpha": a, "exact": b.exact, "quadrature": b.quadrature, "gamma_bound": b.gamma_bound, "final_bound": b.final_bound}));
        }
        rows.push(ConstantsRow {
            n,
            k_n: k_n(n)?,
            sqrt_n_plus_2: ((n + 2) as f64).sqrt(),
            m_n: m_n_khavinson(n)?,
            n_n_at_0: liu_constant(n, 0.0)?,
            gamma_star: g.value,
            gamma_star_residual: g.residual,
            j,
        });
    }
    let body = match format {
        Format::Json => json_text(&json!({"schema": 1, "version": crate::VERSION, "alphas": alphas, "rows": rows}))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<String> =
                ["n", "K_n", "sqrt_n_plus_2", "M_n", "N_n_0", "gamma_star", "gamma_star_residual"].iter().map(|s| s.to_string()).collect();
            for a in &alphas {
                for col in ["J_exact", "J_quadrature", "J_gamma_bound", "J_final_bound"] {
                    header.push(format!("{col}_{a}"));
                }
            }
            w.write_record(&header)?;
            for r in &rows {
                let mut rec = vec![r.n.to_string(), real(r.k_n), real(r.sqrt_n_plus_2), real(r.m_n), real(r.n_n_at_0), real(r.gamma_star), real(r.gamma_star_residual)];
                for b in &r.j {
                    for key in ["exact", "quadrature", "gamma_bound", "final_bound"] {
                        rec.push(real(b[key].as_f64().unwrap_or(f64::NAN)));
                    }
                }
                w.write_record(&rec)?;
            }
            w.into_inner().map_err(|e| usage(e.to_string()))?
        }
    };
    emit(out, &body)?;
    Ok(EXIT_OK)
}

/// Reads a points CSV; every row must have `n` finite numbers with `x_n ≥ 0`.
pub fn read_points(path: &Path, n: usize) -> Result<Vec<HalfSpacePoint>> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 1;
        let rec = rec.map_err(|e| usage(format!("{}: line {line}: {e}", path.display())))?;
        if rec.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(|f| f.parse::<f64>()).collect();
        let coords = match parsed {
            Ok(c) => c,
            // a non-numeric first row is a header
            Err(_) if line == 1 => continue,
            Err(_) => return Err(usage(format!("{}: line {line}: non-numeric field", path.display()))),
        };
        if coords.len() != n {
            return Err(usage(format!("{}: line {line}: expected {n} columns, got {}", path.display(), coords.len())));
        }
        let p = HalfSpacePoint::from_coords(&coords).map_err(|e| usage(format!("{}: line {line}: {e}", path.display())))?;
        out.push(p);
    }
    Ok(out)
}

fn cmd_extend(data: &Path, points: &Path, out: &Output) -> Result<i32> {
    let d = read_data(data)?;
    let n = d.n;
    let pts = read_points(points, n)?;
    let u = HarmonicFn::new(d)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    header.extend(["U".to_string(), "dn_U".to_string(), "grad_norm".to_string()]);
    w.write_record(&header)?;
    use rayon::prelude::*;
    let evals: Vec<Result<_>> = pts.par_iter().map(|p| u.evaluate(p, p.is_interior())).collect();
    for (p, e) in pts.iter().zip(evals) {
        let e = e?;
        let mut rec: Vec<String> = p.coords().into_iter().map(real).collect();
        rec.push(real(e.value));
        match &e.gradient {
            Some(g) => {
                rec.push(real(g[n - 1]));
                rec.push(real(g.iter().map(|v| v * v).sum::<f64>().sqrt()));
            }
            None => {
                rec.push(String::new());
                rec.push(String::new());
            }
        }
        w.write_record(&rec)?;
    }
    let body = w.into_inner().map_err(|e| usage(e.to_string()))?;
    emit(out, &body)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_seminorm(data: &Path, alpha: f64, budget: usize, seed: u64, radius: f64, eps: f64, height_max: f64, out: &Output) -> Result<i32> {
    let d = read_data(data)?;
    let bx = PairDomain::new(PairKind::Interior, radius, eps, height_max)?;
    let echo = d.to_json();
    let u = HarmonicFn::new(d)?;
    let suite = seminorm_suite(&u, alpha, &bx, budget, seed)?;
    let report = json!({
        "schema": 1,
        "version": crate::VERSION,
        "config": {
            "command": "seminorm",
            "data": echo,
            "alpha": alpha,
            "budget": budget,
            "seed": seed,
            "radius": radius,
            "eps": eps,
            "height_max": height_max,
        },
        "seminorms": suite,
    });
    emit(out, &json_text(&report)?)?;
    if suite.ordering.holds {
        Ok(EXIT_OK)
    } else {
        log::error!("seminorm ordering violated: {:?}", suite.ordering);
        Ok(EXIT_FAIL)
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    roster: Option<&str>,
    data: Option<&Path>,
    alpha: Option<&str>,
    budget: usize,
    seed: u64,
    format: Format,
    bound_scale: f64,
    out: &Output,
) -> Result<i32> {
    let (name, fns) = match (roster, data) {
        (Some("default"), None) | (None, None) => ("default".to_string(), default_roster()?),
        (Some(other), None) => return Err(usage(format!("unknown roster `{other}` (expected `default`)"))),
        (_, Some(p)) => (p.display().to_string(), vec![HarmonicFn::new(read_data(p)?)?]),
    };
    let alphas = match alpha {
        Some(s) => parse_alphas(s)?,
        None => match (data, fns.first().and_then(|u| u.data.alpha)) {
            (Some(_), Some(a)) => vec![a],
            _ => DEFAULT_ALPHAS.to_vec(),
        },
    };
    if alphas.is_empty() {
        return Err(usage("need at least one alpha"));
    }
    let opts = CheckOptions { budget, seed, bound_scale, ..CheckOptions::default() };
    opts.validate().map_err(|e| usage(e.to_string()))?;
    let started = std::time::Instant::now();
    let checks = verify_roster(&fns, &alphas, &opts)?;
    info!("verification took {:.1?}", started.elapsed());
    let config = VerifyConfig { roster: name, functions: fns.iter().map(|u| u.data.to_json()).collect(), alphas, options: opts };
    let report = VerificationReport::new(config, checks);
    for c in report.checks.iter().filter(|c| !c.pass) {
        log::error!("FAILED {} ({} n={} alpha={:?}): worst ratio {}", c.name, c.family, c.n, c.alpha, c.worst_ratio);
    }
    let body = match format {
        Format::Json => report.to_json()?.into_bytes(),
        Format::Csv => {
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            buf
        }
    };
    emit(out, &body)?;
    Ok(if report.pass() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_arc(x: &str, y: &str, alpha: f64, out: &Output) -> Result<i32> {
    let px = HalfSpacePoint::from_coords(&parse_reals(x)?).map_err(|e| usage(e.to_string()))?;
    let py = HalfSpacePoint::from_coords(&parse_reals(y)?).map_err(|e| usage(e.to_string()))?;
    let a = arc_integral(&px, &py, alpha)?;
    let pass = a.value <= a.bound;
    let report = json!({"schema": 1, "version": crate::VERSION, "x": px.coords(), "y": py.coords(), "alpha": alpha, "arc": a, "pass": pass});
    emit(out, &json_text(&report)?)?;
    Ok(if pass { EXIT_OK } else { EXIT_FAIL })
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("HARMONICS_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| usage(format!("HARMONICS_THREADS must be a non-negative integer, got `{v}`")))?;
    if n > 0 {
        // an already-initialised pool (e.g. a second call in one process) is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Accuracy { .. } | Error::Premise(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

pub fn execute(cli: Cli) -> i32 {
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Constants { n, alpha, format, out } => cmd_constants(n, alpha, *format, out),
        Command::Extend { data, points, out } => cmd_extend(data, points, out),
        Command::Seminorm { data, alpha, budget, seed, radius, eps, height_max, out } => {
            cmd_seminorm(data, *alpha, *budget, *seed, *radius, *eps, *height_max, out)
        }
        Command::Verify { roster, data, alpha, budget, seed, format, bound_scale, out } => {
            cmd_verify(roster.as_deref(), data.as_deref(), alpha.as_deref(), *budget, *seed, *format, *bound_scale, out)
        }
        Command::Arc { x, y, alpha, out } => cmd_arc(x, y, *alpha, out),
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("harmonics: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        2 => "debug",
        _ => "trace",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).target(env_logger::Target::Stderr).try_init();
    execute(cli)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_ranges() {
        assert_eq!(parse_dims("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_dims("3").unwrap(), vec![3]);
        assert_eq!(parse_dims("2,7").unwrap(), vec![2, 7]);
        assert!(parse_dims("1..3").is_err());
        assert!(parse_dims("5..2").is_err());
        assert!(parse_dims("2..101").is_err());
        assert!(parse_dims("x").is_err());
    }

    #[test]
    fn reals_and_alphas() {
        assert_eq!(parse_reals("0.3, 0.5").unwrap(), vec![0.3, 0.5]);
        assert!(parse_reals("").unwrap().is_empty());
        assert!(parse_alphas("1.0").is_err());
        assert!(parse_reals("nan").is_err());
    }
}
