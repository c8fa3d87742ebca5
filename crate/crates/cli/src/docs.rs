//! Reading input documents and writing canonical output.

use crate::error::CliError;
use ideal_core::io::{parse_json, to_canonical_json, DocError};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::Path;

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Doc(DocError::Io(e)))
}

/// Parse a JSON document into `T`; schema errors carry a JSON pointer.
pub fn read_doc<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let value = parse_json(&read_text(path)?)?;
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer: String = e
            .path()
            .iter()
            .filter_map(|seg| match seg {
                serde_path_to_error::Segment::Seq { index } => Some(format!("/{index}")),
                serde_path_to_error::Segment::Map { key } => Some(format!("/{key}")),
                serde_path_to_error::Segment::Enum { variant } => Some(format!("/{variant}")),
                serde_path_to_error::Segment::Unknown => None,
            })
            .collect();
        CliError::Doc(DocError::Schema {
            pointer,
            message: e.into_inner().to_string(),
        })
    })
}

pub fn read_instance(path: &Path) -> Result<ideal_core::IdealInstance, CliError> {
    Ok(ideal_core::io::load_instance_str(&read_text(path)?)?)
}

pub fn write_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Doc(DocError::Io(e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    write_text(&to_canonical_json(value), out)
}

/// Node budget from `IDEALGAMES_BUDGET`, if set.
pub fn env_budget() -> Result<Option<u64>, CliError> {
    match std::env::var("IDEALGAMES_BUDGET") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "IDEALGAMES_BUDGET must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(None),
    }
}
