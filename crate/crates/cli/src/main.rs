use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gcot::corpus::run_corpus;
use gcot::document::Format;
use gcot::error::CliError;
use gcot::{output, run_document, Status};
use serde::Serialize;

/// Exact verification of graded cotangent bundle identities from problem
/// documents. Exit status: 0 all checks pass, 1 a check failed, 2 input or
/// schema error.
#[derive(Parser)]
#[command(name = "gcot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one document.
    Run {
        document: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
    /// Evaluate every .json and .toml document below a directory.
    Corpus {
        directory: PathBuf,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Args)]
struct Flags {
    /// Format of the report on standard output.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for corpus runs.
    #[arg(long)]
    jobs: Option<usize>,
    /// Seed for generated cases, overriding the documents' own.
    #[arg(long)]
    seed: Option<u64>,
}

fn emit<T: Serialize>(
    report: &T,
    human: String,
    format: Format,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(report).expect("reports serialize");
    match format {
        Format::Human => print!("{human}"),
        Format::Json => println!("{json}"),
    }
    if let Some(path) = out {
        std::fs::write(path, json + "\n").map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { document, flags } => {
            let report = run_document(&document, &document.display().to_string(), flags.seed);
            let format = flags.format.or(report.format).unwrap_or_default();
            emit(
                &report,
                output::document(&report),
                format,
                flags.out.as_deref(),
            )
            .map(|()| report.status)
        }
        Command::Corpus { directory, flags } => run_corpus(&directory, flags.jobs, flags.seed)
            .and_then(|report| {
                let format = flags.format.unwrap_or_default();
                emit(
                    &report,
                    output::corpus(&report),
                    format,
                    flags.out.as_deref(),
                )
                .map(|()| report.status())
            }),
    };
    match result {
        Ok(status) => ExitCode::from(status.exit_code() as u8),
        Err(e) => {
            eprintln!("gcot: {e}");
            ExitCode::from(Status::Error.exit_code() as u8)
        }
    }
}
