//! `hodge`: batch front end for the hodge-core computations.

mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "hodge", version, about = "Exact Hodge-theoretic computations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive roots and highest root of a simple type or Cartan matrix.
    Roots {
        /// Named type such as `E8`.
        #[arg(required_unless_present = "matrix", conflicts_with = "matrix")]
        kind: Option<String>,
        /// Cartan matrix as JSON, e.g. `[[2,-3],[-1,2]]`.
        #[arg(long)]
        matrix: Option<String>,
        /// Maximum number of positive roots before giving up.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Grading of a root system by a grading element.
    Grade {
        /// Named type such as `A3`.
        kind: String,
        /// Values of E on the simple roots, e.g. `1,0,1`.
        element: String,
    },
    /// Exhaustive grid check of the closure lemmas.
    Verify {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_rank: u32,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        max_e: u32,
        /// Restrict to these type letters, e.g. `A,E`.
        #[arg(long, value_delimiter = ',')]
        types: Option<Vec<String>>,
    },
    /// Jacobian ring of a smooth hypersurface of degree d in P^{n+1}.
    Hypersurface {
        n: usize,
        d: usize,
        /// Degree of the certificate for g^{-k,k}.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// JSON file (or inline JSON) listing the terms of F; Fermat otherwise.
        #[arg(long, value_name = "INPUT")]
        explicit: Option<String>,
    },
    /// Expected versus actual codimension from dimension data.
    Atypical {
        /// JSON file, inline JSON, or `-` for stdin.
        input: String,
    },
    /// Noether-Lefschetz codimension bounds from Hodge numbers.
    Nl {
        /// JSON file, inline JSON, or `-` for stdin.
        input: String,
    },
    /// Correction term between an expected and an actual codimension.
    Correction { expected: i64, actual: i64 },
    /// Print the JSON schema of a report.
    Schema {
        #[arg(value_parser = ["roots", "grade", "verify", "hypersurface", "atypical", "nl", "correction"])]
        report: String,
    },
}

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Budget(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Budget(m) | CliError::Io(m) => m,
        }
    }
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Roots {
            kind,
            matrix,
            budget,
        } => commands::roots(kind.as_deref(), matrix.as_deref(), budget),
        Command::Grade { kind, element } => commands::grade(&kind, &element),
        Command::Verify {
            max_rank,
            max_e,
            types,
        } => commands::verify(max_rank as usize, max_e as i64, types),
        Command::Hypersurface { n, d, k, explicit } => {
            commands::hypersurface(n, d, k, explicit.as_deref())
        }
        Command::Atypical { input } => commands::atypical(&input),
        Command::Nl { input } => commands::nl(&input),
        Command::Correction { expected, actual } => commands::correction(expected, actual),
        Command::Schema { report } => Ok(Report::schema(&report)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = cli.out.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e.message());
            return ExitCode::from(e.exit_code());
        }
    };
    let mut rendered = report.render(format);
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    let written = match &out {
        Some(path) => fs::write(path, &rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if report.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
