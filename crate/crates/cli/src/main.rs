use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Smith normal forms, simplicial homology and persistence barcodes.
#[derive(Parser, Debug)]
#[command(name = "persnf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smith normal decomposition of a matrix file
    Snd(SndArgs),
    /// Homology of a simplicial complex file
    Homology(HomologyArgs),
    /// Persistence barcode of a filtration file
    Barcode(BarcodeArgs),
    /// Betti number or p-persistent Betti number of a filtration
    Betti(BettiArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Common {
    #[arg(long)]
    input: PathBuf,
    /// z, q, z<p>, qx or z<p>x
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run independent checks on the result; a failed check exits with 2
    #[arg(long)]
    verify: bool,
    /// Reject a simplex listed twice with different birth times
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
pub struct SndArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    max_dim: Option<usize>,
    /// Add missing faces instead of rejecting the complex
    #[arg(long)]
    close: bool,
}

#[derive(Args, Debug)]
pub struct BarcodeArgs {
    #[command(flatten)]
    common: Common,
    /// q or z<p>
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    max_dim: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BettiArgs {
    #[command(flatten)]
    common: Common,
    /// q or z<p>
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 0)]
    p: usize,
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Internal(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Snd(a) => commands::snd(a),
        Command::Homology(a) => commands::homology(a),
        Command::Barcode(a) => commands::barcode(a),
        Command::Betti(a) => commands::betti(a),
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
