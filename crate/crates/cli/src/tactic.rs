//! Tactic documents: a kind, a seed and the resulting arena, rebuilt on load.

use crate::docs::{emit, read_doc};
use crate::error::{invalid, CliError};
use crate::Ctx;
use clap::{Args, Subcommand, ValueEnum};
use game_engine::{Arena, GameKind, Tactic};
use ideal_core::{io::instance_to_value, AtomSet};
use path_partition::Palette;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use tactic_lab::fixtures::{mg_fixture, stacked_fixture, three_fixture, MgFixture};
use tactic_lab::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// Monotone-game k-tactic from a decomposition and a path-free coloring.
    Mg,
    /// Strong-game 2-tactic on a stacked fixture.
    Smg2,
    /// Very-strong-game 2-tactic on a stacked fixture.
    Vsg2,
    /// Very-strong-game 3-tactic on the 6-member chain.
    Vsg3,
    /// The slight-progress instance.
    Slight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Candidate {
    /// The tactic the construction produces.
    Constructed,
    /// Baseline 2-tactic answering with as much as it can.
    Greedy,
    /// Seeded random 2-tactic.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Args)]
pub struct Spec {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Progress parameter of the slight instance.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Candidate::Constructed)]
    pub candidate: Candidate,
}

/// Everything needed to play or verify a built tactic.
pub struct Built {
    pub arena: Arena,
    pub menu: Vec<AtomSet>,
    pub tactic: Arc<dyn Tactic>,
    pub depth: usize,
    pub lag: usize,
    pub slight: Option<SlightInstance>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TacticDoc {
    pub spec: Spec,
    pub seed: u64,
    pub label: String,
    pub game: GameKind,
    pub depth: usize,
    pub lag: usize,
    pub menu: Vec<AtomSet>,
    pub instance: Value,
}

fn lab(e: LabError) -> CliError {
    invalid(e)
}

fn mg_base(fx: &MgFixture, length_palette: Palette) -> Result<Arc<dyn Tactic>, CliError> {
    let t = build_mg_tactic(
        &fx.family,
        &fx.decomposition,
        &fx.coloring,
        2,
        Some(PathCheck::new(6, length_palette)),
    )
    .map_err(lab)?;
    Ok(Arc::new(t))
}

pub fn build(spec: &Spec, seed: u64) -> Result<Built, CliError> {
    if spec.kind != Kind::Slight && spec.candidate != Candidate::Constructed {
        return Err(invalid("only the slight instance has baseline candidates"));
    }
    let from_fixture = |fx: MgFixture, kind: GameKind, tactic: Arc<dyn Tactic>| {
        let menu = fx.menu();
        Built {
            arena: Arena::new(kind, fx.instance, menu.clone()),
            menu,
            tactic,
            depth: 6,
            lag: 3,
            slight: None,
        }
    };
    Ok(match spec.kind {
        Kind::Mg => {
            let fx = mg_fixture(seed);
            let distinct: BTreeSet<u64> = fx.coloring.colors.values().copied().collect();
            let t = mg_base(&fx, Palette::Count(distinct.len().saturating_sub(1)))?;
            from_fixture(fx, GameKind::MgFamily, t)
        }
        Kind::Smg2 => {
            let fx = stacked_fixture(seed, 6);
            let base = mg_base(&fx, Palette::Count(1))?;
            let t = build_smg_two_tactic(base, build_phi_maps(&fx.family)).map_err(lab)?;
            from_fixture(fx, GameKind::Smg, Arc::new(t))
        }
        Kind::Vsg2 => {
            let fx = stacked_fixture(seed, 6);
            let base = mg_base(&fx, Palette::Count(1))?;
            let t = build_vsg_two_tactic(base, &fx.family).map_err(lab)?;
            from_fixture(fx, GameKind::Vsg, Arc::new(t))
        }
        Kind::Vsg3 => {
            let (inst, inputs) = three_fixture();
            let menu = inputs.family.sets();
            let t = build_vsg_three_tactic(inputs).map_err(lab)?;
            Built {
                arena: Arena::new(GameKind::Vsg, inst, menu.clone()),
                menu,
                tactic: Arc::new(t),
                depth: 6,
                lag: 4,
                slight: None,
            }
        }
        Kind::Slight => {
            let order = OrderSpec::standard(spec.n + 1)
                .ok_or_else(|| invalid(format!("no frozen order witness for n = {}", spec.n)))?;
            let (inst, constructed) = build_slight_instance(spec.n, 4, order).map_err(lab)?;
            let tactic: Arc<dyn Tactic> = match spec.candidate {
                Candidate::Constructed => Arc::new(constructed),
                Candidate::Greedy => Arc::new(greedy_cover(&inst)),
                Candidate::Random => Arc::new(random_candidate(&inst, spec.n, seed)),
            };
            let lag = if spec.candidate == Candidate::Constructed {
                spec.n + 2
            } else {
                spec.n + 1
            };
            Built {
                arena: inst.arena(),
                menu: inst.menu.clone(),
                tactic,
                depth: 6,
                lag,
                slight: Some(inst),
            }
        }
    })
}

/// Rebuild a document's tactic and check it still describes the same arena.
pub fn load(path: &Path) -> Result<(TacticDoc, Built), CliError> {
    let doc: TacticDoc = read_doc(path)?;
    let built = build(&doc.spec, doc.seed)?;
    if built.menu != doc.menu
        || built.arena.kind != doc.game
        || instance_to_value(&built.arena.instance) != doc.instance
    {
        return Err(invalid(
            "tactic document does not match the rebuilt fixture",
        ));
    }
    Ok((doc, built))
}

#[derive(Subcommand, Debug)]
pub enum TacticCmd {
    /// Build a tactic and write its document.
    Build {
        #[command(flatten)]
        spec: Spec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the adversary against a tactic on the slight instance.
    Defeat {
        #[command(flatten)]
        spec: Spec,
        /// Path length searched for.
        #[arg(long, default_value_t = 6)]
        length: usize,
        /// Bits allowed in the union of the window colors.
        #[arg(long, default_value_t = 2)]
        bits: u32,
    },
    /// The trace coloring the adversary reads off a tactic.
    Extract {
        #[command(flatten)]
        spec: Spec,
    },
}

fn slight_only(b: &Built) -> Result<&SlightInstance, CliError> {
    b.slight
        .as_ref()
        .ok_or_else(|| invalid("the adversary runs on the slight instance only"))
}

pub fn run(cmd: TacticCmd, ctx: &Ctx) -> Result<(), CliError> {
    match cmd {
        TacticCmd::Build { spec, out } => {
            let b = build(&spec, ctx.seed)?;
            let doc = TacticDoc {
                label: b.tactic.label(),
                seed: ctx.seed,
                game: b.arena.kind,
                depth: b.depth,
                lag: b.lag,
                menu: b.menu.clone(),
                instance: instance_to_value(&b.arena.instance),
                spec,
            };
            emit(&doc, out.as_deref())
        }
        TacticCmd::Defeat { spec, length, bits } => {
            let b = build(&spec, ctx.seed)?;
            let inst = slight_only(&b)?;
            let mut cfg = DefeatConfig::new(length, b.lag, Palette::Union(bits));
            cfg.jobs = ctx.jobs;
            if let Some(budget) = ctx.budget {
                cfg.budget = budget;
            }
            let rep = trace_defeat(
                &b.arena,
                b.tactic.as_ref(),
                &inst.menu,
                inst.lambda_size as u32,
                |x| inst.trace_mask(x),
                &cfg,
            );
            let confirmed = rep.as_ref().is_some_and(|r| r.confirmed());
            emit(
                &json!({"tactic": b.tactic.label(), "defeated": confirmed, "report": rep}),
                None,
            )
        }
        TacticCmd::Extract { spec } => {
            let b = build(&spec, ctx.seed)?;
            let inst = slight_only(&b)?;
            match extract_trace_coloring(
                b.tactic.as_ref(),
                &inst.menu,
                inst.lambda_size as u32,
                |x| inst.trace_mask(x),
            ) {
                Ok(col) => emit(&json!({"tactic": b.tactic.label(), "coloring": col}), None),
                Err(r) => emit(
                    &json!({"tactic": b.tactic.label(), "refused": {"window": r.window, "error": r.error.to_string()}}),
                    None,
                ),
            }
        }
    }
}
