use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use equihom_cli::{catalog, run_text, Overrides, RunOptions};

#[derive(Parser)]
#[command(name = "equihom", version, about = "Runs verification scenarios for equivariant homology constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and print (or write) its report.
    Verify {
        scenario: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; 1 runs checks sequentially.
        #[arg(long)]
        jobs: Option<usize>,
        /// Record wall-clock milliseconds per check (reports stop being byte-identical).
        #[arg(long)]
        timings: bool,
    },
    /// Print every check id with its anchor, operation and arguments.
    ListChecks,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::ListChecks => {
            print!("{}", catalog::render());
            ExitCode::SUCCESS
        }
        Command::Verify { scenario, report, max_degree, seed, jobs, timings } => {
            let text = match std::fs::read_to_string(&scenario) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", scenario.display());
                    return ExitCode::from(2);
                }
            };
            if jobs == Some(0) {
                eprintln!("error: --jobs must be at least 1");
                return ExitCode::from(2);
            }
            let result = run_text(&text, Overrides { seed, max_degree }, RunOptions { jobs, timings });
            let rep = match result {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let body = rep.to_json();
            match report {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, &body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::from(rep.exit_code() as u8)
        }
    }
}
