//! Flattening of parameter structs into ordered `dotted.key → value` records.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::{Error, Result};

/// Ordered parameter record; values are TOML literals.
pub type Record = BTreeMap<String, String>;

/// Flattens `value` (a struct serialising to a table) under `prefix`.
pub fn flatten(prefix: &str, value: &impl Serialize) -> Result<Record> {
    let v = toml::Value::try_from(value).map_err(|e| Error::Config(format!("{prefix}: {e}")))?;
    let mut out = Record::new();
    insert(&mut out, prefix, &v);
    Ok(out)
}

fn insert(out: &mut Record, key: &str, v: &toml::Value) {
    match v {
        toml::Value::Table(t) => {
            for (k, inner) in t {
                let full = if key.is_empty() { k.clone() } else { format!("{key}.{k}") };
                insert(out, &full, inner);
            }
        }
        other => {
            out.insert(key.to_string(), other.to_string());
        }
    }
}
