//! The `stieltjes-hyp` command line: `stieltjes`, `verify` and `table`.
//!
//! Exit codes: 0 success, 1 verification failure or computation error,
//! 2 bad flags or k > J_MAX, 3 tolerance not met.

pub mod record;
pub mod verify;

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::real::Precision;
use crate::stieltjes::{
    compute, log_sine_summand, power_law_exponent, Acceleration, Shift, StieltjesRequest, DEFAULT_BITS,
    DEFAULT_TERMS,
};
use crate::trigintegrals::J_MAX;
pub use record::{OutputRecord, CSV_HEADER};
pub use verify::{run_suite, Check, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "stieltjes-hyp", version, about = "Stieltjes constants from sums of log-sine integrals")]
pub struct Cli {
    /// Worker threads (default: available cores); never changes results.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one constant γ_k(a).
    Stieltjes {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Run identity checks and print a pass/fail table.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_BITS)]
        bits: u32,
    },
    /// Compute γ_0 … γ_K.
    Table {
        #[arg(long)]
        max_k: usize,
        #[command(flatten)]
        opts: ComputeOpts,
        /// Append the term count and the fitted summand decay exponent.
        #[arg(long)]
        diagnostics: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ComputeOpts {
    #[arg(long, default_value = "1")]
    pub a: String,
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    pub terms: u64,
    #[arg(long, default_value = "asymptotic-tail")]
    pub accel: String,
    #[arg(long, default_value_t = DEFAULT_BITS)]
    pub bits: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Fail with exit code 3 when the error estimate exceeds this bound.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Report real wall-clock times (otherwise 0, keeping output reproducible).
    #[arg(long)]
    pub timing: bool,
}

impl ComputeOpts {
    fn request(&self, k: usize) -> Result<StieltjesRequest, Error> {
        let req = StieltjesRequest::new(k)
            .with_a(self.a.parse::<Shift>()?)
            .with_terms(self.terms)
            .with_acceleration(self.accel.parse::<Acceleration>()?)
            .with_precision(Precision::new(self.bits)?);
        req.validate()?;
        Ok(req)
    }
}

/// Parse `args` (including the program name) and run, writing records and
/// reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return EXIT_USAGE;
        }
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_FAILED;
        }
    };
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = pool.install(|| match &cli.command {
        Command::Stieltjes { k, opts } => cmd_stieltjes(*k, opts, &mut o, &mut e),
        Command::Verify { suite, tol, bits } => cmd_verify(suite, *tol, *bits, &mut o, &mut e),
        Command::Table {
            max_k,
            opts,
            diagnostics,
        } => cmd_table(*max_k, opts, *diagnostics, &mut o, &mut e),
    });
    let _ = out.write_all(&o);
    let _ = err.write_all(&e);
    code
}

fn exit_for(e: &Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::ToleranceNotMet { .. } => EXIT_TOLERANCE,
        Error::RecursionDepthExceeded { .. } | Error::InvalidParameters(_) | Error::InvalidPrecision(_) => EXIT_USAGE,
        _ => EXIT_FAILED,
    }
}

/// Compute one record, enforcing `--tol` when given.
fn compute_record(req: &StieltjesRequest, opts: &ComputeOpts) -> Result<OutputRecord, Error> {
    let start = Instant::now();
    let r = compute(req)?;
    let ms = if opts.timing { start.elapsed().as_millis() as u64 } else { 0 };
    if let Some(tol) = opts.tol {
        if r.error_estimate > tol {
            return Err(Error::ToleranceNotMet {
                value: crate::real::shortest_decimal(&r.value),
                target: tol,
                achieved: r.error_f64(),
            });
        }
    }
    Ok(OutputRecord::new(req, &r, ms))
}

fn emit(records: &[(OutputRecord, Option<String>)], format: Format, extra_header: Option<&str>, out: &mut dyn Write) {
    if format == Format::Csv {
        match extra_header {
            Some(h) => {
                let _ = writeln!(out, "{CSV_HEADER},{h}");
            }
            None => {
                let _ = writeln!(out, "{CSV_HEADER}");
            }
        }
    }
    for (rec, extra) in records {
        let line = match (format, extra) {
            (Format::Json, None) => rec.to_json(),
            (Format::Csv, None) => rec.to_csv(),
            (Format::Json, Some(x)) => {
                let mut v = serde_json::to_value(rec).expect("record serialises");
                let names = extra_header.unwrap_or_default().split(',');
                for (name, val) in names.zip(x.split(',')) {
                    v[name] = serde_json::Value::String(val.to_string());
                }
                v.to_string()
            }
            (Format::Csv, Some(x)) => format!("{},{x}", rec.to_csv()),
        };
        let _ = writeln!(out, "{line}");
    }
}

pub fn cmd_stieltjes(k: usize, opts: &ComputeOpts, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let req = match opts.request(k) {
        Ok(r) => r,
        Err(e) => return exit_for(&e, err),
    };
    match compute_record(&req, opts) {
        Ok(rec) => {
            emit(&[(rec, None)], opts.format, None, out);
            EXIT_OK
        }
        Err(e) => exit_for(&e, err),
    }
}

pub fn cmd_table(max_k: usize, opts: &ComputeOpts, diagnostics: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if max_k > J_MAX {
        return exit_for(
            &Error::RecursionDepthExceeded {
                requested: max_k,
                max: J_MAX,
            },
            err,
        );
    }
    let mut rows = Vec::new();
    for k in 0..=max_k {
        let req = match opts.request(k) {
            Ok(r) => r,
            Err(e) => return exit_for(&e, err),
        };
        let rec = match compute_record(&req, opts) {
            Ok(r) => r,
            Err(e) => return exit_for(&e, err),
        };
        let extra = if diagnostics {
            match summand_slope(&req) {
                Ok(s) => Some(format!("{},{s:.4}", req.n_terms)),
                Err(e) => return exit_for(&e, err),
            }
        } else {
            None
        };
        rows.push((rec, extra));
    }
    let header = diagnostics.then_some("n,summand_slope");
    emit(&rows, opts.format, header, out);
    EXIT_OK
}

/// Log-log slope of the k-th log-sine summand over [N/2, N].
fn summand_slope(req: &StieltjesRequest) -> Result<f64, Error> {
    let n = req.n_terms.max(8);
    let samples = [n / 2, 3 * n / 4, n]
        .iter()
        .map(|&m| log_sine_summand(req.k, m, req.precision).map(|s| (m, s.value)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(-power_law_exponent(&samples)?)
}

pub fn cmd_verify(suite: &str, tol: f64, bits: u32, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let suite = match suite.parse::<Suite>() {
        Ok(s) => s,
        Err(e) => return exit_for(&e, err),
    };
    if !(tol > 0.0) {
        let _ = writeln!(err, "error: --tol must be positive");
        return EXIT_USAGE;
    }
    let p = match Precision::new(bits) {
        Ok(p) => p,
        Err(e) => return exit_for(&e, err),
    };
    let checks = run_suite(suite, tol, p);
    let _ = writeln!(out, "{:<9} {:<56} {:>10} {:>10}  status", "suite", "check", "error", "tolerance");
    for c in &checks {
        let status = if c.passed { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:<9} {:<56} {:>10.3e} {:>10.3e}  {status}",
            c.suite.as_str(),
            c.name,
            c.error,
            c.tolerance
        );
    }
    for c in checks.iter().filter(|c| c.note.is_some() && c.passed) {
        let _ = writeln!(out, "note: {}: {}", c.name, c.note.as_deref().unwrap_or_default());
    }
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let _ = writeln!(out, "{} checks, {} passed, {} failed", checks.len(), checks.len() - failed.len(), failed.len());
    for c in &failed {
        let _ = writeln!(out, "{}", serde_json::to_string(c).expect("check serialises"));
    }
    if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
