//! `frechet`: command-line front end for the graph Fréchet engines.

mod bench;
mod commands;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "frechet", version, about = "Discrete Fréchet distance between walks in weighted graphs")]
struct Cli {
    #[command(flatten)]
    shared: SharedArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SharedArgs {
    /// Graph file (`graph N` / `edge u v w` / `label v name`).
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Walk file for P (`walk v0 v1 ...`).
    #[arg(long, global = true)]
    pub walk_p: Option<PathBuf>,
    /// Walk file for Q.
    #[arg(long, global = true)]
    pub walk_q: Option<PathBuf>,
    /// `exact` or `landmark:<k>`.
    #[arg(long, global = true, default_value = "exact")]
    pub oracle: OracleSpec,
    /// Seed for landmark selection.
    #[arg(long, global = true, default_value_t = 0)]
    pub oracle_seed: u64,
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pub json_pretty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSpec {
    Exact,
    Landmark(usize),
}

impl std::str::FromStr for OracleSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "exact" {
            return Ok(OracleSpec::Exact);
        }
        s.strip_prefix("landmark:")
            .and_then(|k| k.parse().ok())
            .filter(|&k: &usize| k > 0)
            .map(OracleSpec::Landmark)
            .ok_or_else(|| format!("expected `exact` or `landmark:<k>` with k >= 1, got `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Strong,
    Weak,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    Paths,
    Walks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Random,
    OvhPaths,
    OvhWalks,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact strong or weak distance.
    Exact {
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        /// Also return an optimal lattice walk.
        #[arg(long)]
        witness: bool,
    },
    /// (κ+1)-approximate decision or value for a κ-straight P.
    Kappa {
        #[arg(long, default_value = "1")]
        kappa: String,
        /// Decide at this threshold.
        #[arg(long, conflicts_with = "value", required_unless_present = "value")]
        rho: Option<String>,
        /// Search for an approximation interval instead.
        #[arg(long)]
        value: bool,
        #[arg(long, default_value = "1/10")]
        eta: String,
        /// Skip the κ-straightness check on P.
        #[arg(long)]
        trust_straight: bool,
    },
    /// (1+ε)-approximate decision or value via path compression.
    Eps {
        #[arg(long, value_enum, default_value = "strong")]
        mode: ModeArg,
        #[arg(long, default_value = "7/8")]
        epsilon: String,
        /// Decide at this threshold; without it, search for an interval.
        #[arg(long)]
        rho: Option<String>,
        #[arg(long, requires = "beta")]
        alpha: Option<String>,
        #[arg(long, requires = "alpha")]
        beta: Option<String>,
        #[arg(long, default_value = "1")]
        kappa: String,
        #[arg(long, default_value = "1/10")]
        eta: String,
        #[arg(long)]
        trust_straight: bool,
    },
    /// Graph Voronoi diagram with the vertices of P (or --sites) as sites.
    Voronoi {
        /// Comma-separated site list.
        #[arg(long, value_delimiter = ',')]
        sites: Vec<usize>,
    },
    /// Check that P is κ-straight.
    VerifyStraight {
        #[arg(long, default_value = "1")]
        kappa: String,
    },
    /// Generate an Orthogonal-Vectors hardness instance.
    GenOvh {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// One 0/1 string per line, a blank line between A and B.
        #[arg(long)]
        vectors: PathBuf,
        /// Output directory for graph.txt, p.txt, q.txt and instance.json.
        #[arg(long)]
        out_prefix: PathBuf,
        /// Also write graph.dot.
        #[arg(long)]
        emit_dot: bool,
    },
    /// Run engines over generated instances and summarize query counts.
    Bench {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let shared = &cli.shared;
    let report = match cli.command {
        Command::Exact { mode, witness } => commands::exact(shared, mode, witness)?,
        Command::Kappa {
            kappa,
            rho,
            value: _,
            eta,
            trust_straight,
        } => commands::kappa(shared, &kappa, rho.as_deref(), &eta, trust_straight)?,
        Command::Eps {
            mode,
            epsilon,
            rho,
            alpha,
            beta,
            kappa,
            eta,
            trust_straight,
        } => {
            let opts = commands::EpsOptions {
                mode,
                epsilon,
                rho,
                alpha_beta: alpha.zip(beta),
                kappa,
                eta,
                trust_straight,
            };
            commands::eps(shared, &opts)?
        }
        Command::Voronoi { sites } => commands::voronoi(shared, &sites)?,
        Command::VerifyStraight { kappa } => commands::verify_straight(shared, &kappa)?,
        Command::GenOvh {
            variant,
            vectors,
            out_prefix,
            emit_dot,
        } => commands::gen_ovh(variant, &vectors, &out_prefix, emit_dot)?,
        Command::Bench { suite, seed, count } => {
            return Ok(report::to_json(&bench::run(suite, seed, count), shared.json_pretty));
        }
    };
    Ok(report::to_json(&report, shared.json_pretty))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(json) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{json}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
