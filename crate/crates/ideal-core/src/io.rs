//! Instance documents and canonical JSON.
//!
//! Canonical form: object keys sorted, no insignificant whitespace, one
//! trailing newline, generator atoms listed in ground order.

use crate::ground::{Atom, GroundSet};
use crate::instance::IdealInstance;
use crate::set::{AtomSet, MAX_ATOMS};
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl DocError {
    fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        DocError::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

/// Serialize any value to canonical JSON text.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string(&v).expect("value serializes");
    s.push('\n');
    s
}

/// Parse JSON text, turning syntax errors into positioned errors.
pub fn parse_json(text: &str) -> Result<Value, DocError> {
    serde_json::from_str(text).map_err(|e| DocError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn parse_atom(v: &Value, ptr: &str) -> Result<Atom, DocError> {
    serde_json::from_value(v.clone())
        .map_err(|_| DocError::schema(ptr, "atom must be an integer or a [label, integer] pair"))
}

fn parse_usize(v: &Value, ptr: &str) -> Result<usize, DocError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| DocError::schema(ptr, "expected a non-negative integer"))
}

fn expect_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, DocError> {
    v.as_array()
        .ok_or_else(|| DocError::schema(ptr, "expected an array"))
}

/// Decode an instance document.
pub fn instance_from_value(doc: &Value) -> Result<IdealInstance, DocError> {
    let obj = doc
        .as_object()
        .ok_or_else(|| DocError::schema("", "expected an object"))?;
    for k in obj.keys() {
        if !["ground", "generators", "sigma_stage_bound", "family"].contains(&k.as_str()) {
            return Err(DocError::schema(format!("/{k}"), "unknown key"));
        }
    }
    let ground_v = obj
        .get("ground")
        .ok_or_else(|| DocError::schema("/ground", "missing"))?;
    let elements = expect_array(ground_v, "/ground")?
        .iter()
        .enumerate()
        .map(|(i, a)| parse_atom(a, &format!("/ground/{i}")))
        .collect::<Result<Vec<_>, _>>()?;
    if elements.len() > MAX_ATOMS {
        return Err(DocError::schema(
            "/ground",
            format!("more than {MAX_ATOMS} atoms"),
        ));
    }
    let ground = GroundSet::new(elements);

    let gens_v = obj
        .get("generators")
        .ok_or_else(|| DocError::schema("/generators", "missing"))?;
    let mut generators = Vec::new();
    for (gi, g) in expect_array(gens_v, "/generators")?.iter().enumerate() {
        let mut set = AtomSet::EMPTY;
        for (ai, a) in expect_array(g, &format!("/generators/{gi}"))?
            .iter()
            .enumerate()
        {
            let ptr = format!("/generators/{gi}/{ai}");
            let atom = parse_atom(a, &ptr)?;
            let idx = ground
                .index_of(&atom)
                .ok_or_else(|| DocError::schema(ptr, format!("atom {atom} not in ground")))?;
            set.insert(idx);
        }
        generators.push(set);
    }

    let bound_v = obj
        .get("sigma_stage_bound")
        .ok_or_else(|| DocError::schema("/sigma_stage_bound", "missing"))?;
    let sigma_stage_bound = parse_usize(bound_v, "/sigma_stage_bound")?;

    let family = match obj.get("family") {
        None => None,
        Some(f) => {
            let mut fam = Vec::new();
            for (mi, m) in expect_array(f, "/family")?.iter().enumerate() {
                let stages = expect_array(m, &format!("/family/{mi}"))?
                    .iter()
                    .enumerate()
                    .map(|(si, x)| parse_usize(x, &format!("/family/{mi}/{si}")))
                    .collect::<Result<Vec<_>, _>>()?;
                fam.push(stages);
            }
            Some(fam)
        }
    };
    Ok(IdealInstance {
        ground,
        generators,
        sigma_stage_bound,
        family,
    })
}

/// Encode an instance as a JSON value (keys sort on output).
pub fn instance_to_value(inst: &IdealInstance) -> Value {
    let mut m = Map::new();
    m.insert(
        "ground".into(),
        serde_json::to_value(&inst.ground.elements).unwrap(),
    );
    let gens: Vec<Value> = inst
        .generators
        .iter()
        .map(|g| {
            Value::Array(
                g.iter()
                    .map(|i| serde_json::to_value(inst.ground.atom(i)).unwrap())
                    .collect(),
            )
        })
        .collect();
    m.insert("generators".into(), Value::Array(gens));
    m.insert(
        "sigma_stage_bound".into(),
        Value::from(inst.sigma_stage_bound),
    );
    if let Some(f) = &inst.family {
        m.insert("family".into(), serde_json::to_value(f).unwrap());
    }
    Value::Object(m)
}

pub fn load_instance_str(text: &str) -> Result<IdealInstance, DocError> {
    instance_from_value(&parse_json(text)?)
}

pub fn store_instance_string(inst: &IdealInstance) -> String {
    to_canonical_json(&instance_to_value(inst))
}

pub fn load_instance(path: &std::path::Path) -> Result<IdealInstance, DocError> {
    load_instance_str(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CANON: &str = "{\"family\":[[0],[0,1]],\"generators\":[[0,1],[2],[[\"p\",3]]],\"ground\":[0,1,2,[\"p\",3]],\"sigma_stage_bound\":2}\n";

    #[test]
    fn canonical_roundtrip_is_byte_identical() {
        let inst = load_instance_str(CANON).unwrap();
        assert_eq!(store_instance_string(&inst), CANON);
    }

    #[test]
    fn unsorted_keys_are_canonicalized() {
        let messy = "{ \"sigma_stage_bound\": 2,\n \"ground\": [0,1,2,[\"p\",3]], \"generators\": [[1,0],[2],[[\"p\",3]]], \"family\": [[0],[0,1]] }";
        let inst = load_instance_str(messy).unwrap();
        assert_eq!(store_instance_string(&inst), CANON);
    }

    #[test]
    fn schema_error_has_pointer() {
        let bad = "{\"ground\":[0,1],\"generators\":[[0],[5]],\"sigma_stage_bound\":1}";
        match load_instance_str(bad) {
            Err(DocError::Schema { pointer, .. }) => assert_eq!(pointer, "/generators/1/0"),
            other => panic!("unexpected {other:?}"),
        }
        let bad2 = "{\"ground\":[0],\"generators\":[[0]],\"sigma_stage_bound\":-1}";
        assert!(matches!(
            load_instance_str(bad2),
            Err(DocError::Schema { pointer, .. }) if pointer == "/sigma_stage_bound"
        ));
    }

    #[test]
    fn malformed_json_has_position() {
        match load_instance_str("{\"ground\": [0,\n 1,, ]}") {
            Err(DocError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
