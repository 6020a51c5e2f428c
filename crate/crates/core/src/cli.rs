//! Command-line front end.
//!
//! Exit codes: 0 on success (for `verify`: exact agreement everywhere),
//! 1 on a verification mismatch, 2 on usage errors. All emitted numbers are
//! exact strings; see [`crate::emit`].

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::emit;
use crate::error::Error;
use crate::measures::{
    classical_arcsine, classical_equidistribution, sojourn_measure_a, sojourn_measure_b,
    SojournMeasure,
};

use crate::report::CheckResult;
use crate::theorems::{first_return_amplitudes, theorem1_series, theorem2_series};
use crate::verify::{run_all, VerifyOptions};
use crate::walk::{QubitState, SojournTable};

#[derive(Parser)]
#[command(
    name = "hadamard-sojourn",
    version,
    about = "Exact sojourn-time statistics of the Hadamard walk on the integer line"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Upper bound accepted for any order or time horizon.
    #[arg(long, global = true, default_value_t = 40)]
    resource_limit: u32,
    /// Write the result to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a closed-form generating function to a z-order (JSON).
    Expand {
        /// Which closed form: 1 (free walk, p/q/r/s) or 2 (bridge matrix).
        #[arg(long)]
        theorem: u8,
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
    /// Emit the path-sum table as JSON rows {n, y, k, matrix}.
    Dp {
        /// Start position of the walker.
        #[arg(long, default_value_t = 0)]
        start: i64,
        #[arg(long, default_value_t = 24)]
        n_max: u32,
    },
    /// Compute a sojourn measure (weights and normalized probabilities).
    Measure {
        #[arg(long, value_enum)]
        kind: MeasureKind,
        /// Even time horizon.
        #[arg(long)]
        n: u32,
        /// Initial state as "a_re,a_im,b_re,b_im" in exact scalar strings;
        /// defaults to the symmetric state. Ignored for classical kinds.
        #[arg(long)]
        state: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// First-return amplitudes a_n (JSON).
    FirstReturn {
        #[arg(long, default_value_t = 15)]
        n_max: u32,
    },
    /// Run the full exact cross-check suite; exits 0 only when every
    /// comparison agrees.
    Verify {
        #[arg(long, default_value_t = 12)]
        order: u32,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MeasureKind {
    /// Free walk.
    #[value(name = "A")]
    A,
    /// Bridge walk (return to the origin).
    #[value(name = "B")]
    B,
    /// Discrete arc-sine law.
    ClassicalArcsine,
    /// Classical bridge equidistribution.
    ClassicalUniform,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Parse and dispatch; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_impl(argv, &mut std::io::stdout())
}

fn run_impl<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Outcome { text, exit_code }) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            exit_code
        }
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

struct Outcome {
    text: String,
    exit_code: i32,
}

fn ok(text: String) -> Result<Outcome, Error> {
    Ok(Outcome { text, exit_code: 0 })
}

fn check_limit(value: u32, limit: u32, what: &str) -> Result<(), Error> {
    if value > limit {
        return Err(Error::InvalidParameter(format!(
            "{what} {value} exceeds the resource limit {limit} (raise with --resource-limit)"
        )));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<Outcome, Error> {
    let limit = cli.resource_limit;
    match &cli.command {
        Command::Expand { theorem, order } => {
            check_limit(*order, limit, "order")?;
            match theorem {
                1 => ok(emit::theorem1_json(&theorem1_series(*order)?)),
                2 => ok(emit::theorem2_json(&theorem2_series(*order)?)),
                other => Err(Error::InvalidParameter(format!(
                    "theorem must be 1 or 2, got {other}"
                ))),
            }
        }
        Command::Dp { start, n_max } => {
            check_limit(*n_max, limit, "n_max")?;
            ok(emit::dp_json(&SojournTable::evolve(*start, *n_max)))
        }
        Command::Measure { kind, n, state, format } => {
            check_limit(*n, limit, "n")?;
            let phi = parse_state(state.as_deref())?;
            let (label, measure, with_state): (&str, SojournMeasure, bool) = match kind {
                MeasureKind::A => ("A", sojourn_measure_a(*n, &phi)?, true),
                MeasureKind::B => ("B", sojourn_measure_b(*n, &phi)?, true),
                MeasureKind::ClassicalArcsine => {
                    ("classical-arcsine", classical_arcsine(*n)?, false)
                }
                MeasureKind::ClassicalUniform => {
                    ("classical-uniform", classical_equidistribution(*n)?, false)
                }
            };
            match format {
                Format::Json => ok(emit::measure_json(
                    label,
                    &measure,
                    with_state.then_some(&phi),
                )),
                Format::Csv => ok(emit::measure_csv(&measure)),
            }
        }
        Command::FirstReturn { n_max } => {
            check_limit(*n_max, limit, "n_max")?;
            ok(emit::first_return_json(&first_return_amplitudes(*n_max)?))
        }
        Command::Verify { order } => {
            check_limit(*order, limit, "order")?;
            if *order < 2 {
                return Err(Error::InvalidParameter(format!(
                    "verify requires order >= 2, got {order}"
                )));
            }
            let opts = VerifyOptions { order: *order, ..VerifyOptions::default() };
            let checks = run_all(&opts)?;
            Ok(render_verify(&checks))
        }
    }
}

fn render_verify(checks: &[CheckResult]) -> Outcome {
    let mut text = String::new();
    for check in checks {
        text.push_str(&format!("{check}\n"));
    }
    let failed: Vec<&CheckResult> = checks.iter().filter(|c| !c.ok()).collect();
    let total: usize = checks.iter().map(|c| c.comparisons).sum();
    if failed.is_empty() {
        text.push_str(&format!(
            "all {} checks passed ({} exact comparisons)\n",
            checks.len(),
            total
        ));
        Outcome { text, exit_code: 0 }
    } else {
        text.push_str(&format!(
            "{} of {} checks FAILED; first failure: {}\n",
            failed.len(),
            checks.len(),
            failed[0].failures[0]
        ));
        Outcome { text, exit_code: 1 }
    }
}

fn parse_state(raw: Option<&str>) -> Result<QubitState, Error> {
    match raw {
        None => Ok(QubitState::symmetric()),
        Some(raw) => emit::parse_state(raw),
    }
}
