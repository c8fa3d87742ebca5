//! `idealgames`: command-line front end for the covering-game laboratory.
//!
//! Exit codes: 0 on success, 2 on invalid input (with a JSON error on
//! stderr), 3 when a search budget runs out.

mod bm;
mod cantor;
mod docs;
mod error;
mod game;
mod ideal;
mod path;
mod tactic;

use clap::{Parser, Subcommand};
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "idealgames",
    version,
    about = "Covering games on ideals, block systems and Banach-Mazur games"
)]
struct Cli {
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Instances of ideals and their families.
    #[command(subcommand)]
    Ideal(ideal::IdealCmd),
    /// Coherent decompositions.
    #[command(subcommand)]
    Decompose(ideal::DecomposeCmd),
    /// Block systems on Cantor space.
    #[command(subcommand)]
    Cantor(cantor::CantorCmd),
    /// Plays and exhaustive verification.
    #[command(subcommand)]
    Game(game::GameCmd),
    /// Constructed tactics and the adversary.
    #[command(subcommand)]
    Tactic(tactic::TacticCmd),
    /// Bounded-palette path search.
    #[command(subcommand)]
    Path(path::PathCmd),
    /// Banach-Mazur games.
    #[command(subcommand)]
    Bm(bm::BmCmd),
}

/// Shared run settings.
pub struct Ctx {
    pub jobs: usize,
    pub seed: u64,
    pub budget: Option<u64>,
}

fn run(cli: Cli) -> Result<(), CliError> {
    let ctx = Ctx {
        jobs: cli.jobs.max(1),
        seed: cli.seed,
        budget: docs::env_budget()?,
    };
    match cli.group {
        Group::Ideal(c) => ideal::run_ideal(c),
        Group::Decompose(c) => ideal::run_decompose(c),
        Group::Cantor(c) => cantor::run(c),
        Group::Game(c) => game::run(c, &ctx),
        Group::Tactic(c) => tactic::run(c, &ctx),
        Group::Path(c) => path::run(c, &ctx),
        Group::Bm(c) => bm::run(c, &ctx),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return;
        }
        Err(e) => {
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            std::process::exit(err.exit_code());
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("{}", err.to_json());
        std::process::exit(err.exit_code());
    }
}
