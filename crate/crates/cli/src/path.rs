use crate::docs::{emit, read_doc};
use crate::error::CliError;
use crate::Ctx;
use clap::Subcommand;
use path_partition::{find_bounded_path_par, Coloring, FinitePoset, Palette, DEFAULT_BUDGET};
use serde_json::json;
use std::path::PathBuf;

#[derive(Subcommand, Debug)]
pub enum PathCmd {
    /// Strictly increasing path of `length` nodes whose window colors stay
    /// within the palette. A missing path is exact for this length only.
    Find {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Window size; must match the coloring's arity.
        #[arg(short = 'k', default_value_t = 2)]
        arity: usize,
        #[arg(short = 'L', default_value_t = 8)]
        length: usize,
        /// Palette limit.
        #[arg(short = 'c', default_value_t = 2)]
        colors: usize,
        /// Read colors as bit masks and bound the bits of their union.
        #[arg(long)]
        union: bool,
    },
}

pub fn run(cmd: PathCmd, ctx: &Ctx) -> Result<(), CliError> {
    let PathCmd::Find {
        poset,
        coloring,
        arity,
        length,
        colors,
        union,
    } = cmd;
    let poset: FinitePoset = read_doc(&poset)?;
    let col: Coloring = read_doc(&coloring)?;
    if col.arity != arity {
        return Err(CliError::Invalid(format!(
            "coloring has arity {}, -k is {arity}",
            col.arity
        )));
    }
    let palette = if union {
        Palette::Union(colors as u32)
    } else {
        Palette::Count(colors)
    };
    let budget = ctx.budget.unwrap_or(DEFAULT_BUDGET);
    let rep = find_bounded_path_par(&poset, &col, length, palette, budget, ctx.jobs)?;
    emit(
        &json!({"length": length, "palette": palette, "report": rep}),
        None,
    )
}
