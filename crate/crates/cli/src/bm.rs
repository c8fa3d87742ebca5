use crate::docs::{emit, read_doc};
use crate::error::{invalid, CliError};
use crate::Ctx;
use bm_games::*;
use clap::{Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Markov {
    /// Child cone of the newest set, chosen by the inning's parity.
    Child,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Scheme {
    /// `J_m([s]) = [s 0^(m-1) 1]`.
    Cones,
}

#[derive(Subcommand, Debug)]
pub enum BmCmd {
    /// Pairwise-meeting decomposition of a finite space's opens.
    Decompose { space: PathBuf },
    /// Plain tactic from a Markov one; checks the embedding on seeded plays.
    Reduce {
        #[arg(long, value_enum, default_value_t = Markov::Child)]
        markov: Markov,
        #[arg(long, value_enum, default_value_t = Scheme::Cones)]
        scheme: Scheme,
        /// Window of the Markov tactic.
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
        /// Cone depth.
        #[arg(long, default_value_t = 10)]
        cone_depth: usize,
        #[arg(long, default_value_t = 200)]
        plays: u64,
        /// Innings per play.
        #[arg(long, default_value_t = 10)]
        depth: usize,
        /// How far below TWO's answer ONE may reach in one move.
        #[arg(long, default_value_t = 2)]
        extra: usize,
    },
    /// Exhaustive check: the decomposition tactic on a finite space, or the
    /// reduced tactic on a cone space.
    Verify {
        #[arg(
            long,
            conflicts_with = "cone_depth",
            required_unless_present = "cone_depth"
        )]
        space: Option<PathBuf>,
        #[arg(long)]
        cone_depth: Option<usize>,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        extra: usize,
    },
}

fn read_space(path: &Path) -> Result<FiniteSpace, CliError> {
    let raw: FiniteSpace = read_doc(path)?;
    Ok(FiniteSpace::new(raw.points, raw.opens)?)
}

fn reduced(
    depth: usize,
    k: usize,
) -> Result<
    (
        ConeSpace,
        ConeSplitting,
        Arc<ChildByInning>,
        ReducedTactic<ConeSplitting>,
    ),
    CliError,
> {
    let space = ConeSpace::new(depth)?;
    let scheme = ConeSplitting { space };
    let f = Arc::new(ChildByInning { k, space });
    let g = markov_to_plain(f.clone(), scheme)?;
    Ok((space, scheme, f, g))
}

fn verify_cfg(depth: usize, ctx: &Ctx) -> BmVerifyConfig {
    BmVerifyConfig {
        jobs: ctx.jobs,
        budget: ctx.budget.unwrap_or(DEFAULT_BM_BUDGET),
        ..BmVerifyConfig::new(depth)
    }
}

pub fn run(cmd: BmCmd, ctx: &Ctx) -> Result<(), CliError> {
    match cmd {
        BmCmd::Decompose { space } => {
            let sp = read_space(&space)?;
            let d = fip_decompose(&sp);
            let problems = d.problems(&sp);
            emit(&json!({"decomposition": d, "problems": problems}), None)
        }
        BmCmd::Reduce {
            markov: Markov::Child,
            scheme: Scheme::Cones,
            k,
            cone_depth,
            plays,
            depth,
            extra,
        } => {
            let (space, scheme, f, g) = reduced(cone_depth, k)?;
            let menu = ConeMenu { extra };
            let mut violations = Vec::new();
            let mut answered = 0;
            for seed in ctx.seed..ctx.seed + plays {
                let tr = bm_play(&space, &SeededOne(seed), &g, &menu, depth);
                answered = answered.max(tr.innings.iter().filter(|i| i.two.is_some()).count());
                for v in embedding_violations(&scheme, f.as_ref(), &tr) {
                    violations.push(json!({"seed": seed, "violation": v}));
                }
            }
            let ok = violations.is_empty();
            emit(
                &json!({"tactic": g.label(), "plays": plays, "max_answered_innings": answered, "violations": violations}),
                None,
            )?;
            if ok {
                Ok(())
            } else {
                Err(invalid("embedding identity violated"))
            }
        }
        BmCmd::Verify {
            space,
            cone_depth,
            k,
            depth,
            extra,
        } => match (space, cone_depth) {
            (Some(path), _) => {
                let sp = read_space(&path)?;
                let t = fip_one_tactic(&sp, &fip_decompose(&sp))?;
                let rep = bm_verify(&sp, &t, &verify_cfg(depth, ctx), &FullMenu)?;
                emit(&json!({"tactic": t.label(), "report": rep}), None)
            }
            (None, Some(d)) => {
                let (space, _, _, g) = reduced(d, k)?;
                let rep = bm_verify(&space, &g, &verify_cfg(depth, ctx), &ConeMenu { extra })?;
                emit(&json!({"tactic": g.label(), "report": rep}), None)
            }
            (None, None) => Err(CliError::Usage("give --space or --cone-depth".into())),
        },
    }
}
