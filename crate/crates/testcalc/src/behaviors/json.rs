//! JSON input format for S/P/T models.
//!
//! ```json
//! {
//!   "universe": ["1", "2"],
//!   "S": ["1"],
//!   "P": ["1", "2"],
//!   "T": ["2"],
//!   "tests": {"t1": ["2"]}
//! }
//! ```
//!
//! `tests` is optional; duplicate ids inside any list are an error.

use std::collections::BTreeMap;

use serde::Deserialize;
use thiserror::Error;

use super::{BehaviorError, BehaviorSet, SptModel};

#[derive(Debug, Error)]
pub enum SptJsonError {
    #[error("malformed SPT document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] BehaviorError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpt {
    universe: Vec<String>,
    #[serde(rename = "S")]
    specified: Vec<String>,
    #[serde(rename = "P")]
    programmed: Vec<String>,
    #[serde(rename = "T")]
    tested: Vec<String>,
    #[serde(default)]
    tests: Option<BTreeMap<String, Vec<String>>>,
}

fn to_set(list_name: &str, ids: Vec<String>) -> Result<BehaviorSet, BehaviorError> {
    let mut set = BehaviorSet::new();
    for id in ids {
        if id.is_empty() {
            return Err(BehaviorError::EmptyId {
                list: list_name.to_string(),
            });
        }
        if !set.insert(id.clone()) {
            return Err(BehaviorError::DuplicateId {
                list: list_name.to_string(),
                id,
            });
        }
    }
    Ok(set)
}

pub fn spt_from_json(src: &str) -> Result<SptModel, SptJsonError> {
    let raw: RawSpt = serde_json::from_str(src)?;
    let universe = to_set("universe", raw.universe)?;
    let specified = to_set("S", raw.specified)?;
    let programmed = to_set("P", raw.programmed)?;
    let tested = to_set("T", raw.tested)?;
    let model = match raw.tests {
        None => SptModel::new(universe, specified, programmed, tested)?,
        Some(tests) => {
            let mut map = BTreeMap::new();
            for (name, ids) in tests {
                let ids = to_set(&format!("tests.{name}"), ids)?;
                map.insert(name, ids);
            }
            SptModel::with_tests(universe, specified, programmed, tested, map)?
        }
    };
    Ok(model)
}
