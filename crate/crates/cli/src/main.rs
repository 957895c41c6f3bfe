use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Report;

#[derive(Parser, Debug)]
#[command(
    name = "stirling",
    version,
    about = "Stirling complexes, their homology and characters"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: RunConfig,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Seed for modular-rank primes and sampled permutations.
    #[arg(long, global = true, env = "STIRLING_SEED", default_value_t = stirling_core::linalg::DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers of S_{n,k}, or of every S_{n,k} with n up to --max-n.
    Betti {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Structural checks on S_{n,k}.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated subset of d2, equivariance, reach, euler.
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "d2,equivariance,reach,euler"
        )]
        checks: Vec<Check>,
        /// Random permutations sampled for the equivariance check.
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },
    /// Character of H_n(S_{n,k}) and its irreducible decomposition.
    Characters {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Homology of the genus-one graph complex with m legs.
    Graph {
        #[arg(long)]
        m: usize,
        /// Keep classes with odd automorphisms instead of discarding them.
        #[arg(long)]
        no_kill: bool,
    },
    /// Stirling numbers of the first kind up to --max-n.
    Table {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Generators and differentials of S_{n,k}.
    Complex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Edge count of the generator to draw with --format dot.
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// Index of the generator to draw with --format dot.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    D2,
    Equivariance,
    Reach,
    Euler,
}

fn run(cli: Cli) -> Result<Report> {
    let cfg = &cli.config;
    match cli.command {
        Command::Betti { n, k, max_n } => match (n, k, max_n) {
            (Some(n), Some(k), None) => commands::betti(cfg, &[(n, k)]),
            (None, None, Some(max_n)) => {
                let pairs: Vec<(usize, usize)> = (2..=max_n)
                    .flat_map(|n| (2..=n).map(move |k| (n, k)))
                    .collect();
                commands::betti(cfg, &pairs)
            }
            (Some(n), None, None) => {
                commands::betti(cfg, &(2..=n).map(|k| (n, k)).collect::<Vec<_>>())
            }
            _ => bail!("give --n and --k, --n alone, or --max-n"),
        },
        Command::Verify {
            n,
            k,
            checks,
            samples,
        } => commands::verify(cfg, n, k, &checks, samples),
        Command::Characters { n, k } => commands::characters(cfg, n, k),
        Command::Graph { m, no_kill } => commands::graph(cfg, m, !no_kill),
        Command::Table { max_n } => commands::table(cfg, max_n),
        Command::Complex { n, k, i, index } => commands::complex(cfg, n, k, i, index),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.config.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.config.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = cli.config.format;
    let out = cli.config.out.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = match report.render(format) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match out {
        Some(path) => {
            fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
