use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use aoi_game::cli::{run_command, CommandKind, OutputFormat, Overrides};
use aoi_game::sim::SelectionPolicy;

/// Solver and simulator for a two-sensor age-of-information update game.
#[derive(Parser)]
#[command(name = "aoi-game", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Path to the JSON configuration document.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Directory where result files are written.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Override the configured random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the equilibrium selection policy
    /// (mixed_sampling, lexicographic, token_priority, alternating).
    #[arg(long, global = true)]
    policy: Option<String>,

    /// Override the number of simulation runs per sweep cell.
    #[arg(long = "runs-per-cell", global = true)]
    runs_per_cell: Option<u32>,

    /// Format for tabular outputs.
    #[arg(long, global = true, default_value = "csv")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the one-shot stage game: thresholds, equilibria, critical values.
    Solve,
    /// Play the repeated game over the configured horizon and record the trace.
    Simulate,
    /// Compute the centralized optimal schedule and its average age.
    Baseline,
    /// Evaluate the price of delayed updates over a (c, alpha) grid.
    Sweep,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            let message = err.to_string();
            let line = message.lines().next().unwrap_or("invalid usage");
            eprintln!("{line}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<(), (u8, String)> {
    let kind = match cli.command {
        Command::Solve => CommandKind::Solve,
        Command::Simulate => CommandKind::Simulate,
        Command::Baseline => CommandKind::Baseline,
        Command::Sweep => CommandKind::Sweep,
    };
    let config_path = cli
        .config
        .ok_or_else(|| (EXIT_CONFIG, "--config <path> is required".to_string()))?;
    let config_text = std::fs::read_to_string(&config_path).map_err(|e| {
        (
            EXIT_CONFIG,
            format!("cannot read {}: {e}", config_path.display()),
        )
    })?;
    let policy = match cli.policy {
        Some(name) => Some(SelectionPolicy::from_str(&name).map_err(|e| (EXIT_CONFIG, e))?),
        None => None,
    };
    let format = OutputFormat::from_str(&cli.format).map_err(|e| (EXIT_CONFIG, e))?;
    let overrides = Overrides {
        seed: cli.seed,
        policy,
        runs_per_cell: cli.runs_per_cell,
        format,
    };

    let manifest = run_command(kind, &config_text, &cli.out, &overrides).map_err(|e| {
        let code = if e.is_config_error() {
            EXIT_CONFIG
        } else {
            EXIT_RUNTIME
        };
        (code, e.to_string())
    })?;
    println!(
        "{}: wrote {} to {}",
        manifest.command,
        manifest.outputs.join(", "),
        cli.out.display()
    );
    Ok(())
}
