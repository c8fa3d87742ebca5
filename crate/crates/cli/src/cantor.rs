use crate::docs::{emit, read_doc};
use crate::error::{invalid, CliError};
use cantor_blocks::{
    brute_inclusion, cover_build, separating_witness, stage_membership, subset_decide_with_slack,
    BlockSystem, TrieChain, DEFAULT_MAX_WORD_LEN, DEFAULT_SLACK,
};
use clap::Subcommand;
use serde_json::json;
use std::path::PathBuf;

#[derive(Subcommand, Debug)]
pub enum CantorCmd {
    /// How the first system's meager set sits inside the second's.
    Subset {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SLACK)]
        slack: usize,
    },
    /// A word separating the two systems, checked by stage membership.
    Witness { a: PathBuf, b: PathBuf },
    /// One block system covering an increasing chain of tries.
    Cover {
        chain: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LEN)]
        max_word_len: usize,
    },
    /// Exhaustive stage inclusion `a^n ⊆ b^m`.
    Oracle {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
}

pub fn run(cmd: CantorCmd) -> Result<(), CliError> {
    match cmd {
        CantorCmd::Subset { a, b, slack } => {
            let (a, b): (BlockSystem, BlockSystem) = (read_doc(&a)?, read_doc(&b)?);
            emit(
                &subset_decide_with_slack(&a, &b, slack).map_err(invalid)?,
                None,
            )
        }
        CantorCmd::Witness { a, b } => {
            let (a, b): (BlockSystem, BlockSystem) = (read_doc(&a)?, read_doc(&b)?);
            let w = separating_witness(&a, &b).map_err(invalid)?;
            let in_a = stage_membership(&w.z, &a, w.stage).map_err(invalid)?;
            let in_b = stage_membership(&w.z, &b, w.stage).map_err(invalid)?;
            emit(&json!({"witness": w, "in_a": in_a, "in_b": in_b}), None)
        }
        CantorCmd::Cover {
            chain,
            max_word_len,
        } => {
            let chain: TrieChain = read_doc(&chain)?;
            emit(&cover_build(&chain, max_word_len).map_err(invalid)?, None)
        }
        CantorCmd::Oracle { a, b, n, m } => {
            let (a, b): (BlockSystem, BlockSystem) = (read_doc(&a)?, read_doc(&b)?);
            emit(
                &json!({"n": n, "m": m, "included": brute_inclusion(&a, &b, n, m).map_err(invalid)?}),
                None,
            )
        }
    }
}
