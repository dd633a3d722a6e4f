//! `malcev`: higher congruences, commutators and the counterexample algebras
//! from the command line.
//!
//! Exit codes: 0 when every checked property holds, 1 when one fails, 2 on bad
//! input.

mod commands;
mod parse;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use malcev_core::closure::{ClosureOptions, Route};
use malcev_core::commutator::{CommutatorOptions, DEFAULT_ORACLE_MAX_SIZE};
use malcev_core::relation::CubeRelation;

use commands::{CommutatorArgs, CounterexampleArgs, FamilyArg, KindArg, Outcome, RouteArg};

#[derive(Parser)]
#[command(
    name = "malcev",
    version,
    about = "Higher-dimensional congruences and commutators of finite algebras"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run on a single thread.
    #[arg(long, global = true)]
    single_thread: bool,
    /// Ignore the cube-space limit.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScheduleArg {
    Rounds,
    Eager,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DeltaRoute {
    Basic,
    Polyk,
}

#[derive(Subcommand)]
enum Command {
    /// Principal congruence generated by pairs.
    Cg {
        /// Bundled algebra name or JSON file.
        #[arg(long)]
        algebra: String,
        /// Pairs like `0:2,1:3`; empty for the identity.
        #[arg(long, default_value = "", num_args = 0..=1, default_missing_value = "")]
        pairs: String,
    },
    /// Higher congruence generated by a set of cubes.
    Theta {
        #[arg(long)]
        algebra: String,
        /// JSON file with `dimension`, `coords` and `cubes`.
        #[arg(long)]
        cubes: PathBuf,
        #[arg(long, value_enum, default_value_t = RouteArg::Both)]
        route: RouteArg,
        /// Direction order for the transitive closures, like `1,0`.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, value_enum, default_value_t = ScheduleArg::Rounds)]
        schedule: ScheduleArg,
    },
    /// Term condition commutator and hypercommutator.
    Commutator {
        #[arg(long)]
        algebra: String,
        /// Number of congruence arguments, at least 2.
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// `full`, `id` or block lists like `[[0,2],[1,3]]`, comma-separated.
        /// A single entry is used for every argument.
        #[arg(long, default_value = "full")]
        thetas: String,
        #[arg(long, value_enum, default_value_t = KindArg::Both)]
        kind: KindArg,
        /// Compare against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_MAX_SIZE)]
        oracle_max_size: usize,
        /// Route used to build Δ.
        #[arg(long, value_enum, default_value_t = DeltaRoute::Basic)]
        route: DeltaRoute,
        /// Centrality direction; the greatest coordinate by default.
        #[arg(long)]
        direction: Option<usize>,
        #[arg(long)]
        order: Option<String>,
    },
    /// Witnesses and bounded searches in the counterexample algebras.
    Counterexample {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Term depth of the polynomial search.
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Constants available to the search, like `0,1,2,3`.
        #[arg(long)]
        seeds: Option<String>,
        /// Search with this many leaves over all directions instead of one
        /// generating cube per direction.
        #[arg(long)]
        leaves: Option<usize>,
    },
    /// The bundled algebras.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    /// Write every bundled algebra as JSON into a directory.
    Export {
        #[arg(long)]
        dir: PathBuf,
    },
}

fn closure_options(
    order: Option<&str>,
    schedule: ScheduleArg,
    force: bool,
) -> Result<ClosureOptions, String> {
    Ok(ClosureOptions {
        schedule: commands::schedule_of(schedule == ScheduleArg::Eager),
        order: order.map(parse::parse_list).transpose()?,
        force,
        ..ClosureOptions::default()
    })
}

fn run(cli: &Cli) -> commands::CmdResult {
    match &cli.command {
        Command::Cg { algebra, pairs } => {
            let alg = parse::load_algebra(algebra)?;
            commands::cg(&alg, &parse::parse_pairs(pairs)?)
        }
        Command::Theta {
            algebra,
            cubes,
            route,
            order,
            schedule,
        } => {
            let alg = parse::load_algebra(algebra)?;
            let text =
                std::fs::read_to_string(cubes).map_err(|e| format!("{}: {e}", cubes.display()))?;
            let g = CubeRelation::<usize>::from_json(&text)
                .map_err(|e| format!("{}: {e}", cubes.display()))?;
            let opts = closure_options(order.as_deref(), *schedule, cli.force)?;
            commands::theta_cmd(&alg, &g, *route, &opts)
        }
        Command::Commutator {
            algebra,
            arity,
            thetas,
            kind,
            oracle,
            oracle_max_size,
            route,
            direction,
            order,
        } => {
            if *arity < 2 {
                return Err(format!("--arity must be at least 2, got {arity}"));
            }
            let alg = parse::load_algebra(algebra)?;
            let thetas = parse::parse_thetas(thetas, alg.size(), *arity)?;
            let args = CommutatorArgs {
                kind: *kind,
                oracle: *oracle,
                oracle_max_size: *oracle_max_size,
                opts: CommutatorOptions {
                    closure: closure_options(order.as_deref(), ScheduleArg::Rounds, cli.force)?,
                    route: match route {
                        DeltaRoute::Basic => Route::BasicOps,
                        DeltaRoute::Polyk => Route::PolK,
                    },
                    direction: *direction,
                },
            };
            commands::commutator_cmd(&alg, &thetas, &args)
        }
        Command::Counterexample {
            family,
            k,
            depth,
            seeds,
            leaves,
        } => {
            let seeds = seeds
                .as_deref()
                .map(|s| {
                    parse::parse_list(s)?
                        .into_iter()
                        .map(|x| u32::try_from(x).map_err(|_| format!("seed {x} is too large")))
                        .collect::<Result<Vec<u32>, String>>()
                })
                .transpose()?;
            commands::counterexample_cmd(&CounterexampleArgs {
                family: *family,
                k: *k,
                depth: *depth,
                seeds,
                leaves: *leaves,
            })
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => commands::corpus_list(),
            CorpusAction::Export { dir } => commands::corpus_export(dir),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.single_thread {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome { json, text, ok }) => {
            let body = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&json).expect("JSON values serialize") + "\n"
                }
                Format::Text => text,
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
