use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use comaxlab::finite::GridChain;
use comaxlab::runner::{self, RunError, Subcommand, SuiteConfig};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Command {
    VerifyCounterexample,
    FiniteCensus,
    IntegralProperties,
    TnormAxioms,
    ComonotoneCheck,
    ExploreProblem1,
    Validate,
}

impl From<Command> for Subcommand {
    fn from(c: Command) -> Self {
        match c {
            Command::VerifyCounterexample => Subcommand::VerifyCounterexample,
            Command::FiniteCensus => Subcommand::FiniteCensus,
            Command::IntegralProperties => Subcommand::IntegralProperties,
            Command::TnormAxioms => Subcommand::TnormAxioms,
            Command::ComonotoneCheck => Subcommand::ComonotoneCheck,
            Command::ExploreProblem1 => Subcommand::ExploreProblem1,
            Command::Validate => Subcommand::Validate,
        }
    }
}

fn parse_grid(s: &str) -> Result<GridChain, String> {
    SuiteConfig::parse_grid(s).map_err(|e| e.to_string())
}

/// Exact verification suites for comonotonically maxitive functionals.
#[derive(Debug, Parser)]
#[command(name = "comaxlab", version)]
struct Cli {
    #[arg(value_enum)]
    command: Command,

    /// Input JSON files (comonotone-check, validate).
    files: Vec<PathBuf>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, default_value_t = 10_000)]
    samples: u64,

    #[arg(long, default_value_t = 2)]
    prefix_max: usize,

    /// Comma-separated chain, e.g. "0,1/2,1".
    #[arg(long, value_parser = parse_grid, default_value = "0,1/2,1")]
    grid: GridChain,

    #[arg(long, default_value_t = 2)]
    n: usize,

    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,

    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { 2 } else { 0 };
            return ExitCode::from(code);
        }
    };
    let config = SuiteConfig {
        seed: cli.seed,
        samples: cli.samples,
        prefix_max: cli.prefix_max,
        grid: cli.grid,
        n: cli.n,
        budget: cli.budget,
        jobs: cli.jobs,
        output_path: cli.output,
    };
    let report = match runner::run(cli.command.into(), &config, &cli.files) {
        Ok(r) => r,
        Err(e) => {
            eprint!("comaxlab: {e}");
            if !matches!(e, RunError::Input { .. }) {
                eprintln!();
            }
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = report.to_json_string();
    let written = match &config.output_path {
        Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("comaxlab: cannot write report: {e}");
        return ExitCode::from(2);
    }
    eprintln!("{}: {}", report.claim_id, report.status);
    ExitCode::from(runner::exit_code(&report) as u8)
}
