//! Command-line front end. Exit codes: 0 success, 1 usage or parse error,
//! 2 degenerate input, 3 verification failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::consts::constants;
use crate::det::atiyah_determinant;
use crate::error::{Error, Result};
use crate::fourpoint::four_point_report;
use crate::geom::Point3;
use crate::harness::{counterexample_path, named_suite, run_suite, write_counterexamples, write_report, RunOptions};
use crate::ngon::{
    cot_product_bounds, cot_product_ln, log_dn_over_n2, ngon_closed_form_ln, ngon_points, verify_integral_identities,
    DIRECT_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_FAILURES: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "atiyah-lab", version, about = "Atiyah determinant toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Determinant of a point configuration.
    Det {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Input format; inferred from the file extension when omitted.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Regular n-gon: closed form, optional direct check and bounds.
    Ngon {
        #[arg(long)]
        n: usize,
        /// Also evaluate the determinant directly (n <= 24).
        #[arg(long)]
        direct: bool,
        /// Report the sandwich bounds on the cotangent product.
        #[arg(long)]
        bounds: bool,
    },
    /// All four-point diagnostics.
    Four {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run a Monte Carlo verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Point count for suites that take one.
        #[arg(long)]
        n: Option<usize>,
        /// Report path; counterexamples go to `<out>.counterexamples.jsonl`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = one per core).
        #[arg(long, env = "ATIYAH_LAB_WORKERS", default_value_t = 0)]
        workers: usize,
        /// Replaces every per-check tolerance.
        #[arg(long, allow_negative_numbers = true)]
        tolerance: Option<f64>,
    },
    /// Computed constants and quadrature residuals.
    Constants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Deserialize)]
struct PointsDoc {
    points: Vec<[f64; 3]>,
}

#[derive(Deserialize)]
struct CsvRow {
    x: f64,
    y: f64,
    z: f64,
}

fn parse_error(path: &Path, message: String) -> Error {
    Error::Parse { path: path.to_path_buf(), message }
}

/// Reads `{"points": [[x, y, z], ...]}` or CSV with header `x,y,z`.
pub fn read_points(path: &Path, format: Option<Format>) -> Result<Vec<Point3>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let format = format.unwrap_or(match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
        _ => Format::Json,
    });
    let rows: Vec<[f64; 3]> = match format {
        Format::Json => {
            let doc: PointsDoc = serde_json::from_str(&text)
                .map_err(|e| parse_error(path, format!("line {}, column {}: {e}", e.line(), e.column())))?;
            doc.points
        }
        Format::Csv => {
            let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
            let mut rows = Vec::new();
            for rec in reader.deserialize::<CsvRow>() {
                let row = rec.map_err(|e| {
                    let at = e.position().map(|p| format!("line {}: ", p.line())).unwrap_or_default();
                    parse_error(path, format!("{at}{e}"))
                })?;
                rows.push([row.x, row.y, row.z]);
            }
            rows
        }
    };
    if rows.len() < 2 {
        return Err(parse_error(path, format!("need at least 2 points, found {}", rows.len())));
    }
    if let Some(i) = rows.iter().position(|r| r.iter().any(|v| !v.is_finite())) {
        return Err(parse_error(path, format!("point {i} has a non-finite coordinate")));
    }
    Ok(rows.into_iter().map(|[x, y, z]| Point3::new(x, y, z)).collect())
}

#[derive(Serialize)]
struct DetOutput {
    n: usize,
    #[serde(rename = "D_re")]
    d_re: f64,
    #[serde(rename = "D_im")]
    d_im: f64,
    #[serde(rename = "abs_D")]
    abs_d: f64,
    cond_hint: f64,
}

enum Outcome {
    Json(serde_json::Value),
    Verify { summary: serde_json::Value, failed: bool },
}

fn to_value<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable output")
}

/// Finite values as numbers, everything else as `null`.
fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Det { input, format } => {
            let pts = read_points(&input, format)?;
            let d = atiyah_determinant(&pts)?;
            Ok(Outcome::Json(to_value(&DetOutput {
                n: d.n,
                d_re: d.value.re,
                d_im: d.value.im,
                abs_d: d.abs(),
                cond_hint: d.cond_hint,
            })))
        }
        Command::Ngon { n, direct, bounds } => {
            if n < 3 {
                return Err(Error::invalid(format!("--n must be at least 3, got {n}")));
            }
            let ln = ngon_closed_form_ln(n)?;
            let closed = finite(ln.exp());
            let direct = if direct && n <= DIRECT_CAP {
                let d = atiyah_determinant(&ngon_points(n)?)?;
                let rel_err = closed.map(|c| (d.abs() - c).abs() / c);
                Some(json!({ "D_re": d.value.re, "D_im": d.value.im, "abs_D": d.abs(), "rel_err": rel_err }))
            } else {
                None
            };
            let bounds = if bounds {
                let b = cot_product_bounds(n)?;
                let value = cot_product_ln(n);
                Some(json!({
                    "product_ln": value,
                    "lower_ln": b.lower_ln,
                    "upper_ln": b.upper_ln,
                    "contains": b.contains_ln(value),
                }))
            } else {
                None
            };
            Ok(Outcome::Json(json!({
                "n": n,
                "closed_form_log": ln,
                "closed_form": closed,
                "direct": direct,
                "log_over_n2": log_dn_over_n2(n)?,
                "bounds": bounds,
            })))
        }
        Command::Four { input, format } => {
            let pts = read_points(&input, format)?;
            let quad: [Point3; 4] = pts
                .try_into()
                .map_err(|p: Vec<Point3>| Error::invalid(format!("four needs exactly 4 points, got {}", p.len())))?;
            Ok(Outcome::Json(to_value(&four_point_report(&quad)?)))
        }
        Command::Verify { suite, trials, seed, n, out, workers, tolerance } => {
            let spec = named_suite(&suite, n)?;
            let opts = RunOptions { trials, seed, workers, tolerance, ..Default::default() };
            let outcome = run_suite(&spec, &opts)?;
            if let Some(path) = out {
                write_report(&path, &outcome.report)?;
                write_counterexamples(&counterexample_path(&path), &outcome.counterexamples)?;
            }
            Ok(Outcome::Verify { summary: to_value(&outcome.report), failed: !outcome.report.passed() })
        }
        Command::Constants => {
            let c = constants();
            let integrals = verify_integral_identities()?;
            Ok(Outcome::Json(json!({
                "zeta3": c.zeta3,
                "B": c.b,
                "L": c.l,
                "catalan": c.catalan,
                "integral": integrals.main.value,
                "integral_check_errors": {
                    "main": integrals.main.abs_err,
                    "sec": integrals.sec.abs_err,
                    "xsec": integrals.xsec.abs_err,
                },
            })))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_degenerate_input() {
        EXIT_DEGENERATE
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(stdout, "{text}") } else { write!(stderr, "{text}") };
            return code;
        }
    };
    let (value, code) = match execute(cli.command) {
        Ok(Outcome::Json(v)) => (v, EXIT_OK),
        Ok(Outcome::Verify { summary, failed }) => (summary, if failed { EXIT_FAILURES } else { EXIT_OK }),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    if writeln!(stdout, "{text}").is_err() {
        return EXIT_USAGE;
    }
    code
}

pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
