use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Envelope;

#[derive(Parser, Debug)]
#[command(name = "profgen", version, about = "Exact solubilizer and nilpotentizer probabilities for finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for every randomized step; recorded in the report.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (defaults to the number of cores). Does not affect output.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Largest group order that may be enumerated.
    #[arg(long, global = true, env = "PROFGEN_CAP", default_value_t = profgen::group::DEFAULT_CAP)]
    cap: usize,

    /// Largest number of pairs a single probability computation may classify.
    #[arg(long, global = true, env = "PROFGEN_PAIR_BUDGET")]
    pair_budget: Option<u64>,

    /// JSON-lines file of cached pair classifications, read and updated.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// Catalog group name (see `catalog-list`).
    #[arg(long, conflicts_with = "group_file", required_unless_present = "group_file")]
    group: Option<String>,

    /// Group spec file: a `degree N` line, then one generator per line.
    #[arg(long)]
    group_file: Option<PathBuf>,

    /// Group class: abelian, nilpotent or soluble.
    #[arg(long, default_value = "soluble")]
    class: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ω-sets, probabilities and identity checks for one group and class.
    Analyze(GroupArgs),
    /// Components and diameters of Γ_C(G).
    Graph {
        #[command(flatten)]
        group: GroupArgs,
        /// Also write the edge set in DOT format (at most 500 vertices).
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also check adjacency against the quotient by the soluble radical.
        #[arg(long)]
        compatibility: bool,
    },
    /// Checks in the wreath product Alt(5) wr Alt(5).
    Wreath {
        #[command(subcommand)]
        action: WreathAction,
    },
    /// Probability sequences along finite-quotient towers.
    Tower {
        #[command(subcommand)]
        builder: TowerBuilder,
    },
    /// Lists the built-in groups.
    CatalogList,
    /// Fixed battery of checks across every module.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum WreathAction {
    Verify {
        /// Random socle elements per top element.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TowerBuilder {
    /// Dihedral groups of order 2 p^n.
    Dihedral {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        levels: u32,
        #[arg(long, default_value = "nilpotent")]
        class: String,
        #[arg(long, default_value = "x")]
        track: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("profgen: cannot size worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    let result: anyhow::Result<Envelope> = match &cli.command {
        Command::Analyze(g) => commands::analyze(&cli.common, g),
        Command::Graph {
            group,
            dot,
            compatibility,
        } => commands::graph(&cli.common, group, dot.as_deref(), *compatibility),
        Command::Wreath {
            action: WreathAction::Verify { samples },
        } => commands::wreath(&cli.common, *samples),
        Command::Tower {
            builder:
                TowerBuilder::Dihedral {
                    prime,
                    levels,
                    class,
                    track,
                },
        } => commands::tower_dihedral(&cli.common, *prime, *levels, class, track),
        Command::CatalogList => commands::catalog_list(&cli.common),
        Command::Selftest => commands::selftest(&cli.common),
    };
    match result {
        Ok(envelope) => {
            if let Err(e) = envelope.write(cli.common.format, &mut std::io::stdout().lock()) {
                eprintln!("profgen: {e:#}");
                return ExitCode::from(2);
            }
            if envelope.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                for f in &envelope.failures {
                    eprintln!("profgen: failed: {f}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("profgen: {e:#}");
            ExitCode::from(2)
        }
    }
}
