use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use cp_phase::cli::{run, Command};

/// Interference patterns and geometric phases of states under quantum channels.
#[derive(Parser)]
#[command(name = "cp-phase", version)]
struct Args {
    command: Command,
    /// JSON job configuration.
    #[arg(long)]
    config: PathBuf,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pass threshold for `verify`.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cp-phase: cannot read {}: {e}", args.config.display());
            return ExitCode::from(2);
        }
    };
    let outcome = match run(args.command, &text, args.tol) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("cp-phase: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.text) {
                eprintln!("cp-phase: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.text),
    }
    ExitCode::from(outcome.exit_code as u8)
}
