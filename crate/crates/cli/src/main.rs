use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use braidfan_core::io::{parse_fan, to_json, FanExport, LoadError, TraceExport};
use braidfan_core::oracle::enumerate_coarsenings_within;
use braidfan_core::{
    braid_fan_bounded, factor_to_braid, strong_factorize, validate_fan, Error, FactorOptions,
    FactorizationTrace, Fan, DEFAULT_MAX_N,
};
use clap::{Parser, Subcommand};
use serde_json::json;

/// Braid arrangement coarsenings and their strong factorization.
#[derive(Parser)]
#[command(name = "braidfan", version)]
struct Cli {
    /// Largest n accepted for input fans and generated braid fans.
    #[arg(long, global = true, env = "BRAIDFAN_MAX_N", default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fan file and print the validation report.
    Validate { fan: PathBuf },
    /// Subdivide a fan down to the braid fan and report the trace.
    Factor {
        fan: PathBuf,
        /// Cross-check every step against the brute-force oracle.
        #[arg(long)]
        verify: bool,
        /// Include every intermediate fan in the trace.
        #[arg(long)]
        verbose: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Factor two fans to their common refinement, the braid fan.
    StrongFactor {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        verbose: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit the braid arrangement fan B(n).
    Braid {
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write one Hasse diagram per maximal cone as Graphviz DOT.
    ExportDot {
        fan: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write every complete smooth coarsening of B(n) to a directory.
    Enumerate {
        #[arg(short)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
        /// Give up after this many seconds.
        #[arg(long)]
        budget_secs: Option<u64>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Load { path: PathBuf, source: LoadError },
    #[error("{0}")]
    Usage(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("internal verification failed: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => 2,
            CliError::Load {
                source: LoadError::Invalid(_),
                ..
            }
            | CliError::InvalidFan(_) => 3,
            CliError::Load { .. } => 2,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalVerification(msg) => CliError::Internal(msg),
            Error::TooLarge { .. } | Error::InvalidDimension { .. } | Error::BudgetExceeded => {
                CliError::Usage(e.to_string())
            }
            Error::InvalidFan(msg) => CliError::InvalidFan(msg),
            other => CliError::InvalidFan(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("braidfan: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let max_n = cli.max_n;
    match cli.command {
        Command::Validate { fan } => {
            let fan = load_fan(&fan, max_n)?;
            let report = validate_fan(&fan);
            print!("{}", to_json(&report));
            if report.ok {
                Ok(0)
            } else {
                eprintln!("braidfan: invalid fan: {}", report.summary());
                Ok(3)
            }
        }
        Command::Factor {
            fan,
            verify,
            verbose,
            output,
        } => {
            let fan = load_fan(&fan, max_n)?;
            let trace = factor_to_braid(&fan, &FactorOptions { verify, max_n })?;
            print_summary(None, &trace);
            if let Some(path) = output {
                write(&path, &to_json(&TraceExport::new(&trace, verbose)))?;
            }
            Ok(0)
        }
        Command::StrongFactor {
            a,
            b,
            verify,
            verbose,
            output,
        } => {
            let first = load_fan(&a, max_n)?;
            let second = load_fan(&b, max_n)?;
            let (ta, tb) = strong_factorize(&first, &second, &FactorOptions { verify, max_n })?;
            print_summary(Some("a"), &ta);
            print_summary(Some("b"), &tb);
            if let Some(path) = output {
                let both = json!({
                    "a": TraceExport::new(&ta, verbose),
                    "b": TraceExport::new(&tb, verbose),
                });
                write(&path, &to_json(&both))?;
            }
            Ok(0)
        }
        Command::Braid { n, output } => {
            let text = to_json(&FanExport::from(&braid_fan_bounded(n, max_n)?));
            match output {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::ExportDot { fan, output } => {
            let fan = load_fan(&fan, max_n)?;
            create_dir(&output)?;
            for (i, label) in fan.labels().enumerate() {
                let name = format!("cone_{i:03}");
                write(&output.join(format!("{name}.dot")), &label.to_dot(&name))?;
            }
            println!(
                "wrote {} diagrams to {}",
                fan.maximal().len(),
                output.display()
            );
            Ok(0)
        }
        Command::Enumerate {
            n,
            output,
            budget_secs,
        } => {
            let fans = enumerate_coarsenings_within(n, budget_secs.map(Duration::from_secs))?;
            create_dir(&output)?;
            for (i, fan) in fans.iter().enumerate() {
                write(
                    &output.join(format!("fan_{i:04}.json")),
                    &to_json(&FanExport::from(fan)),
                )?;
            }
            println!("wrote {} fans to {}", fans.len(), output.display());
            Ok(0)
        }
    }
}

fn load_fan(path: &Path, max_n: usize) -> Result<Fan, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let fan = parse_fan(&text).map_err(|source| CliError::Load {
        path: path.into(),
        source,
    })?;
    if fan.n() > max_n {
        return Err(CliError::Usage(format!(
            "{}: n = {} exceeds the limit {max_n} (raise --max-n)",
            path.display(),
            fan.n()
        )));
    }
    Ok(fan)
}

fn print_summary(tag: Option<&str>, trace: &FactorizationTrace) {
    let prefix = tag.map(|t| format!("{t}: ")).unwrap_or_default();
    println!("{prefix}steps: {}", trace.len());
    for ray in trace.added_rays() {
        println!("{prefix}added ray {ray}");
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn create_dir(path: &Path) -> Result<(), CliError> {
    fs::create_dir_all(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}
