//! `cohsys`: command-line access to the cohsys library.
//!
//! Payloads go to stdout as JSON (or CSV where supported); diagnostics go to
//! stderr as a single line.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid parameters or range,
//! 3 `alpha` is a critical value, 4 `d` is even where it must be odd,
//! 5 output path not writable.

mod commands;
mod error;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use cohsys::exact::Rational;
use cohsys::moduli::SystemType;
use cohsys::report::topology_report_with;
use serde::Serialize;

use commands::{AlphaChoice, PoincarePayload};
use error::CliError;
use sweep::{ChamberRule, IntRange, Parity, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "cohsys", version, about = "Moduli of coherent systems on a curve: walls, Poincaré polynomials, topology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expected dimension, thresholds and non-emptiness of a type.
    Info(TypeArgs),
    /// Critical values of the stability parameter.
    Critical(CriticalArgs),
    /// Poincaré polynomial for k = n - 2 at a point or in a chamber.
    Poincare(PoincareArgs),
    /// Poincaré polynomials over ranges of (n, d, g), written as JSON lines.
    Sweep(SweepArgs),
    /// Picard group, homotopy groups and fibration structure at alpha.
    Report(ReportArgs),
}

#[derive(Args)]
struct TypeArgs {
    #[arg(long)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    d: i64,
    #[arg(long)]
    k: i64,
    #[arg(long)]
    g: i64,
}

impl TypeArgs {
    fn system(&self) -> Result<SystemType, CliError> {
        Ok(SystemType::new(self.n, self.d, self.k, self.g)?)
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["certified", "candidates"])))]
struct CriticalArgs {
    #[command(flatten)]
    ty: TypeArgs,
    /// Certified walls for k = n - 2.
    #[arg(long)]
    certified: bool,
    /// Every candidate critical value in (lo, hi).
    #[arg(long)]
    candidates: bool,
    /// Lower end, default 0.
    #[arg(long, requires = "candidates", allow_hyphen_values = true)]
    lo: Option<Rational>,
    /// Upper end, default d/(n - k).
    #[arg(long, requires = "candidates", allow_hyphen_values = true)]
    hi: Option<Rational>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("at").required(true).args(["alpha", "chamber"])))]
struct PoincareArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    g: i64,
    /// A non-critical value NUM/DEN in (alpha_T, d/2).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<Rational>,
    /// Chamber index, 0 being the lowest.
    #[arg(long)]
    chamber: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// Range a:b (inclusive) or a single value.
    #[arg(long)]
    n: IntRange,
    #[arg(long)]
    d: IntRange,
    #[arg(long)]
    g: IntRange,
    #[arg(long, value_enum, default_value = "odd")]
    parity: Parity,
    /// Which chambers of each type to evaluate.
    #[arg(long, value_enum, default_value = "all")]
    chambers: ChamberRule,
    #[arg(long)]
    out: PathBuf,
    /// JSON lines or CSV.
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Args)]
struct ReportArgs {
    #[command(flatten)]
    ty: TypeArgs,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Rational,
    /// Include unproven but expected statements, marked as conjectures.
    #[arg(long)]
    conjectures: bool,
}

#[derive(Serialize)]
struct SweepSummary {
    out: PathBuf,
    records: usize,
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn poincare_csv(p: &PoincarePayload, args: &PoincareArgs) -> Result<String, CliError> {
    let width = sweep::betti_width(p);
    let mut header: Vec<String> = ["n", "d", "g", "alpha", "beta", "degree", "palindrome"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend((0..width).map(|i| format!("b{i}")));
    let mut row = vec![
        args.n.to_string(),
        args.d.to_string(),
        args.g.to_string(),
        p.alpha.to_string(),
        p.beta.to_string(),
        p.degree.to_string(),
        p.palindrome.to_string(),
    ];
    row.extend(sweep::betti_row(&p.coeffs, width));
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(&header).map_err(internal)?;
    w.write_record(&row).map_err(internal)?;
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Info(ty) => json(&commands::info(ty.system()?)),
        Command::Critical(args) => {
            let s = args.ty.system()?;
            let walls = if args.certified {
                commands::certified(s)?
            } else {
                commands::candidates(s, args.lo, args.hi)?
            };
            json(&walls)
        }
        Command::Poincare(args) => {
            let choice = match (&args.alpha, args.chamber) {
                (Some(a), _) => AlphaChoice::Value(a.clone()),
                (None, Some(i)) => AlphaChoice::Chamber(i),
                (None, None) => unreachable!("clap requires one of --alpha, --chamber"),
            };
            let payload = commands::poincare(args.n, args.d, args.g, choice)?;
            match args.format {
                OutputFormat::Json => json(&payload),
                OutputFormat::Csv => poincare_csv(&payload, &args),
            }
        }
        Command::Sweep(args) => {
            let spec = SweepSpec {
                n: args.n,
                d: args.d,
                g: args.g,
                parity: args.parity,
                chambers: args.chambers,
                out: args.out,
                format: args.format,
            };
            let records = sweep::run(&spec)?;
            json(&SweepSummary { out: spec.out, records })
        }
        Command::Report(args) => {
            let report = topology_report_with(&args.ty.system()?, &args.alpha, args.conjectures)?;
            json(&report)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if writeln!(stdout, "{}", out.trim_end()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
