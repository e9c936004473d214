use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kerr_coupler::{run_scenario, validate_config, Overrides, Scenario, SolverKind};

#[derive(Parser)]
#[command(
    name = "kerr-coupler",
    version,
    about = "Kerr nonlinear coupler simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named scenario (fig2..fig5) or a JSON config and write CSV.
    Run {
        /// Scenario name or config path.
        target: Option<String>,
        /// Output CSV path (fig5 writes <OUT>_kappa_<k>.csv per rate).
        out: Option<PathBuf>,
        #[arg(long, conflicts_with = "config")]
        scenario: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "out", id = "out_flag")]
        out_flag: Option<PathBuf>,
        #[arg(long)]
        solver: Option<SolverKind>,
        #[arg(long)]
        cutoff_a: Option<usize>,
        #[arg(long)]
        cutoff_b: Option<usize>,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Parse and validate a config without running it.
    Validate { config: PathBuf },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.command {
        Command::Run {
            target,
            out,
            scenario,
            config,
            out_flag,
            solver,
            cutoff_a,
            cutoff_b,
            quiet,
        } => {
            let target = scenario
                .or_else(|| config.map(|p| p.to_string_lossy().into_owned()))
                .or(target)
                .ok_or("nothing to run: give a scenario name or config path")?;
            let out = out_flag
                .or(out)
                .unwrap_or_else(|| PathBuf::from(format!("{}.csv", stem(&target))));
            let mut scenario = Scenario::resolve(&target)?;
            scenario.apply(&Overrides {
                solver,
                cutoff_a,
                cutoff_b,
            })?;
            let summary = run_scenario(&scenario, &out)?;
            if !quiet {
                print!("{summary}");
            }
        }
        Command::Validate { config } => print!("{}", validate_config(&config)?),
    }
    Ok(())
}

fn stem(target: &str) -> String {
    std::path::Path::new(target)
        .file_stem()
        .map_or_else(|| target.to_owned(), |s| s.to_string_lossy().into_owned())
}
