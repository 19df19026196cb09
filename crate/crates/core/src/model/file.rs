use std::fs;
use std::path::Path;

use serde_json::Value;

use super::Scenario;
use crate::error::{Error, Result};

/// Parses a scenario document. `context` names the source in error messages;
/// serde's message carries the line, column and offending key.
pub fn parse_scenario(text: &str, context: &str) -> Result<Scenario> {
    let scenario: Scenario = serde_json::from_str(text).map_err(|source| Error::Parse {
        context: context.to_string(),
        source,
    })?;
    scenario.validate()?;
    Ok(scenario)
}

pub fn scenario_from_value(value: Value, context: &str) -> Result<Scenario> {
    let scenario: Scenario = serde_json::from_value(value).map_err(|source| Error::Parse {
        context: context.to_string(),
        source,
    })?;
    scenario.validate()?;
    Ok(scenario)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_scenario(&text, &path.display().to_string())
}

fn named(v: &Value) -> Option<&str> {
    v.get("name").and_then(Value::as_str)
}

/// Deep-merges `overlay` into `base`. Objects merge key by key; arrays whose
/// overlay elements all carry a `name` merge element-wise by that name
/// (unmatched names are appended); anything else is replaced.
pub fn merge_json(base: &mut Value, overlay: Value) {
    match (base, overlay) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(&k) {
                    Some(slot) => merge_json(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (Value::Array(b), Value::Array(o)) if !o.is_empty() && o.iter().all(|v| named(v).is_some()) => {
            for item in o {
                let name = named(&item).unwrap_or_default().to_string();
                match b.iter_mut().find(|x| named(x) == Some(name.as_str())) {
                    Some(slot) => merge_json(slot, item),
                    None => b.push(item),
                }
            }
        }
        (slot, v) => *slot = v,
    }
}
