use crate::docs::{emit, read_doc, read_instance};
use crate::error::{invalid, CliError};
use clap::{Subcommand, ValueEnum};
use coherent_decomp::{
    decompose_bounded, decompose_lifted, decompose_locally_small, verify_coherence, Coherence,
    Decomposition, SizeLadder,
};
use ideal_core::{rank_family, validate_instance, FamilySpec, IdealInstance};
use serde_json::json;
use std::path::PathBuf;

#[derive(Subcommand, Debug)]
pub enum IdealCmd {
    /// Check an instance document; the report lists every violation.
    Validate { file: PathBuf },
    /// Well-founded rank of each family member.
    Rank { file: PathBuf },
    /// Rewrite an instance document in canonical form.
    Canon {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    /// Single-atom exhaustions of a locally small family.
    Atoms,
    /// Generator pieces lifted through down-sets.
    Lifted,
    /// Per-stage size ladder.
    Bounded,
}

#[derive(Subcommand, Debug)]
pub enum DecomposeCmd {
    /// Build a decomposition of the instance's family.
    Build {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        stages: usize,
        #[arg(long, value_enum, default_value_t = Mode::Atoms)]
        mode: Mode,
        /// Local bound to enforce in atom mode.
        #[arg(long)]
        local_bound: Option<usize>,
        /// Comma-separated size bounds for bounded mode.
        #[arg(long, value_delimiter = ',')]
        ladder: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coherence threshold or failure for every comparable pair.
    Verify {
        file: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
    },
}

fn family_of(inst: &IdealInstance) -> Result<FamilySpec, CliError> {
    let sets = inst
        .family_sets()
        .ok_or_else(|| invalid("instance has no family, or a member uses an unknown generator"))?;
    let fam = FamilySpec::new(sets);
    fam.check().map_err(invalid)?;
    Ok(fam)
}

pub fn run_ideal(cmd: IdealCmd) -> Result<(), CliError> {
    match cmd {
        IdealCmd::Validate { file } => {
            let inst = read_instance(&file)?;
            let report = validate_instance(&inst);
            emit(&report, None)?;
            if report.is_valid() {
                Ok(())
            } else {
                Err(invalid(format!("{} violation(s)", report.violations.len())))
            }
        }
        IdealCmd::Rank { file } => {
            let fam = family_of(&read_instance(&file)?)?;
            emit(&json!({"ranks": rank_family(&fam).map_err(invalid)?}), None)
        }
        IdealCmd::Canon { file, out } => {
            let inst = read_instance(&file)?;
            crate::docs::write_text(
                &ideal_core::io::store_instance_string(&inst),
                out.as_deref(),
            )
        }
    }
}

pub fn run_decompose(cmd: DecomposeCmd) -> Result<(), CliError> {
    match cmd {
        DecomposeCmd::Build {
            file,
            stages,
            mode,
            local_bound,
            ladder,
            out,
        } => {
            let inst = read_instance(&file)?;
            let fam = family_of(&inst)?;
            let dec = match mode {
                Mode::Atoms => decompose_locally_small(&fam, stages, local_bound),
                Mode::Lifted => decompose_lifted(&inst, &fam, stages),
                Mode::Bounded => decompose_bounded(&fam, &SizeLadder { bounds: ladder }),
            }
            .map_err(invalid)?;
            emit(&dec, out.as_deref())
        }
        DecomposeCmd::Verify {
            file,
            decomposition,
        } => {
            let fam = family_of(&read_instance(&file)?)?;
            let dec: Decomposition = read_doc(&decomposition)?;
            if dec.stages.len() != fam.len() {
                return Err(invalid(format!(
                    "decomposition has {} members, family has {}",
                    dec.stages.len(),
                    fam.len()
                )));
            }
            let structural = dec.structural_errors(&fam);
            let pairs = verify_coherence(&fam, &dec);
            let failures = pairs
                .iter()
                .filter(|p| matches!(p.outcome, Coherence::Failure { .. }))
                .count();
            emit(
                &json!({"structural_errors": structural, "pairs": pairs}),
                None,
            )?;
            if failures + structural.len() > 0 {
                return Err(invalid(format!(
                    "{failures} incoherent pair(s), {} structural error(s)",
                    structural.len()
                )));
            }
            Ok(())
        }
    }
}
