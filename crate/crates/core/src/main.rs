use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use taco_core::check::run_checks;
use taco_core::indicators::{analyze, Analysis};
use taco_core::io::{self, load_events, load_gridded, load_manifest};
use taco_core::Result;

#[derive(Parser, Debug)]
#[command(
    name = "taco",
    version,
    about = "Completion times and indicators of target operations from registration logs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Input {
    /// Events CSV (`time,channel,quantity`) or, with --gridded, a grid CSV
    events: PathBuf,
    /// JSON manifest declaring channels, roles and unit costs
    #[arg(long)]
    manifest: PathBuf,
    /// Read the events file as a uniform grid (`time,<channel>,...`)
    #[arg(long)]
    gridded: bool,
    /// Grid step; inferred from the first two rows when omitted
    #[arg(long, requires = "gridded")]
    dt: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the indicator report (JSON)
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write thread and integral-function series as CSV
    Plot {
        #[command(flatten)]
        input: Input,
        /// Destination CSV
        #[arg(long)]
        out: PathBuf,
        /// Also sample on a uniform grid with this step
        #[arg(long)]
        sample_dt: Option<f64>,
    },
    /// Verify the analysis invariants on this input
    Check {
        #[command(flatten)]
        input: Input,
    },
}

fn load(input: &Input) -> Result<Analysis> {
    let manifest = load_manifest(&input.manifest)?;
    let record = if input.gridded {
        load_gridded(&input.events, &manifest, input.dt)?
    } else {
        load_events(&input.events, &manifest)?
    };
    analyze(&record)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze { input, out } => {
            let analysis = load(&input)?;
            match out {
                Some(path) => io::write_report(&analysis.report, path)?,
                None => print!("{}", io::report_to_json(&analysis.report)),
            }
            Ok(true)
        }
        Command::Plot {
            input,
            out,
            sample_dt,
        } => {
            let analysis = load(&input)?;
            let series = io::plot_series(&analysis, sample_dt)?;
            io::write_plot(&series, &out)?;
            eprintln!("wrote {} rows to {}", series.rows.len(), out.display());
            Ok(true)
        }
        Command::Check { input } => {
            let analysis = load(&input)?;
            let outcomes = run_checks(&analysis);
            for c in &outcomes {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!("{status} {}: {}", c.name, c.detail);
            }
            Ok(outcomes.iter().all(|c| c.passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
