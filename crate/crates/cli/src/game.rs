use crate::docs::{emit, read_doc, read_instance, write_text};
use crate::error::{invalid, CliError};
use crate::tactic::{load, Built};
use crate::Ctx;
use clap::{Subcommand, ValueEnum};
use game_engine::{
    run_play, verify_tactic, Arena, CopyTactic, EmptyTactic, GameKind, MenuOrder, OneStrategy,
    PlayConfig, Scripted, SeededRandom, Tactic, TwoMove, Verdict, VerifyConfig,
};
use ideal_core::AtomSet;
use serde_json::json;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Game {
    Mg,
    MgFull,
    Smg,
    Vsg,
}

impl From<Game> for GameKind {
    fn from(g: Game) -> GameKind {
        match g {
            Game::Mg => GameKind::MgFamily,
            Game::MgFull => GameKind::MgFull,
            Game::Smg => GameKind::Smg,
            Game::Vsg => GameKind::Vsg,
        }
    }
}

#[derive(clap::Args, Debug)]
pub struct Setup {
    /// `empty`, `copy`, or a tactic document from `tactic build`.
    #[arg(long)]
    tactic: String,
    /// Instance whose family is ONE's menu; needed for `empty` and `copy`.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Game::Mg)]
    game: Game,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    lag: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum GameCmd {
    /// Play one game and print its transcript as JSON lines.
    Play {
        #[command(flatten)]
        setup: Setup,
        /// `random`, `first`, `human`, or a JSON file listing ONE's moves.
        #[arg(long, default_value = "random")]
        one: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive verification; a defeating transcript is written to `--transcript`.
    Verify {
        #[command(flatten)]
        setup: Setup,
        #[arg(long, default_value = "transcript.jsonl")]
        transcript: PathBuf,
    },
}

fn builtin(name: &str) -> Option<Arc<dyn Tactic>> {
    match name {
        "empty" => Some(Arc::new(EmptyTactic)),
        "copy" => Some(Arc::new(CopyTactic)),
        _ => None,
    }
}

fn resolve(setup: &Setup) -> Result<Built, CliError> {
    let mut built = match builtin(&setup.tactic) {
        Some(tactic) => {
            let path = setup.instance.as_ref().ok_or_else(|| {
                CliError::Usage("--instance is required for built-in tactics".into())
            })?;
            let inst = read_instance(path)?;
            let menu = inst
                .family_sets()
                .ok_or_else(|| invalid("instance has no usable family"))?
                .into_iter()
                .map(|s| s.realized)
                .collect::<Vec<_>>();
            let k = tactic.window();
            Built {
                arena: Arena::new(setup.game.into(), inst, menu.clone()),
                menu,
                tactic,
                depth: 6,
                lag: k + 1,
                slight: None,
            }
        }
        None => load(Path::new(&setup.tactic))?.1,
    };
    built.depth = setup.depth.unwrap_or(built.depth);
    built.lag = setup.lag.unwrap_or(built.lag);
    Ok(built)
}

/// Reads ONE's moves from the terminal as menu indices.
struct Human;

impl OneStrategy for Human {
    fn choose(&self, history: &[(AtomSet, TwoMove)], legal: &[AtomSet]) -> Option<AtomSet> {
        let mut err = std::io::stderr();
        if let Some((_, two)) = history.last() {
            let _ = writeln!(err, "TWO answered {} (declared {})", two.t, two.s);
        }
        if legal.is_empty() {
            let _ = writeln!(err, "no legal move; the play ends");
            return None;
        }
        for (i, m) in legal.iter().enumerate() {
            let _ = writeln!(err, "  [{i}] {m}");
        }
        let stdin = std::io::stdin();
        loop {
            let _ = write!(
                err,
                "inning {}: pick a move (empty line to stop): ",
                history.len() + 1
            );
            let _ = err.flush();
            let mut line = String::new();
            if stdin.lock().read_line(&mut line).ok()? == 0 || line.trim().is_empty() {
                return None;
            }
            match line.trim().parse::<usize>() {
                Ok(i) if i < legal.len() => return Some(legal[i]),
                _ => {
                    let _ = writeln!(err, "enter an index between 0 and {}", legal.len() - 1);
                }
            }
        }
    }
}

pub fn run(cmd: GameCmd, ctx: &Ctx) -> Result<(), CliError> {
    match cmd {
        GameCmd::Play { setup, one, out } => {
            let b = resolve(&setup)?;
            let strategy: Box<dyn OneStrategy> = match one.as_str() {
                "random" => Box::new(SeededRandom(ctx.seed)),
                "first" => Box::new(MenuOrder),
                "human" => Box::new(Human),
                file => Box::new(Scripted(read_doc::<Vec<AtomSet>>(Path::new(file))?)),
            };
            let cfg = PlayConfig {
                depth: b.depth,
                lag: b.lag,
                menu: b.menu.clone(),
            };
            let tr = run_play(&b.arena, strategy.as_ref(), b.tactic.as_ref(), &cfg);
            write_text(&tr.to_json_lines(), out.as_deref())
        }
        GameCmd::Verify { setup, transcript } => {
            let b = resolve(&setup)?;
            let mut cfg = VerifyConfig::new(b.depth, b.lag, b.menu.clone());
            cfg.jobs = ctx.jobs;
            if let Some(budget) = ctx.budget {
                cfg.budget = budget;
            }
            let rep = verify_tactic(&b.arena, b.tactic.as_ref(), &cfg)?;
            let written = match &rep.verdict {
                Verdict::Defeat(tr) => {
                    write_text(&tr.to_json_lines(), Some(&transcript))?;
                    Some(transcript.display().to_string())
                }
                Verdict::AllWins => None,
            };
            let verdict = if rep.all_wins() { "all_wins" } else { "defeat" };
            emit(
                &json!({"tactic": b.tactic.label(), "depth": b.depth, "lag": b.lag, "verdict": verdict, "stats": rep.stats, "transcript": written}),
                None,
            )
        }
    }
}
