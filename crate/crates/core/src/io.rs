//! Arrangement files.
//!
//! ```json
//! {"order": 3, "dim": 2, "hyperplanes": [[{"order": 3, "coeffs": ["1", "0"]}, ...], ...]}
//! ```
//!
//! Each coordinate is a cyclotomic element with exactly φ(order)
//! coefficients written as reduced `"p/q"` strings.

use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::arrangement::{Arrangement, ArrangementFile};
use crate::error::{Error, Result};
use crate::exactnum::Cyc;

pub fn arrangement_from_json(text: &str) -> Result<Arrangement> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    let field = |name: &str| {
        obj.get(name)
            .ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
    };
    let order = field("order")?
        .as_u64()
        .filter(|&n| n > 0 && n <= u32::MAX as u64)
        .ok_or_else(|| Error::Parse("order must be a positive integer".into()))?
        as u32;
    let dim = field("dim")?
        .as_u64()
        .ok_or_else(|| Error::Parse("dim must be a nonnegative integer".into()))?
        as usize;
    let rows = field("hyperplanes")?
        .as_array()
        .ok_or_else(|| Error::Parse("hyperplanes must be an array".into()))?;
    let mut normals = Vec::with_capacity(rows.len());
    for (row, entries) in rows.iter().enumerate() {
        let bad = |message: String| Error::BadRow { row, message };
        let entries = entries
            .as_array()
            .ok_or_else(|| bad("expected an array of coordinates".into()))?;
        if entries.len() != dim {
            return Err(bad(format!(
                "expected {dim} entries, found {}",
                entries.len()
            )));
        }
        let mut normal = Vec::with_capacity(dim);
        for e in entries {
            let c: Cyc = serde_json::from_value(e.clone()).map_err(|e| bad(e.to_string()))?;
            if c.order() != order {
                return Err(bad(format!(
                    "entry has order {}, arrangement order is {order}",
                    c.order()
                )));
            }
            normal.push(c);
        }
        if normal.iter().all(Cyc::is_zero) {
            return Err(bad("zero normal vector".into()));
        }
        normals.push(normal);
    }
    Arrangement::new(order, dim, normals)
}

/// Pretty-printed JSON in the file format.
pub fn arrangement_to_json_pretty(a: &Arrangement) -> String {
    serde_json::to_string_pretty(&ArrangementFile::from(a)).expect("arrangement serializes")
}

pub fn load_arrangement(path: impl AsRef<Path>) -> Result<Arrangement> {
    let text = fs::read_to_string(path)?;
    arrangement_from_json(&text)
}

pub fn save_arrangement(a: &Arrangement, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, arrangement_to_json_pretty(a) + "\n")?;
    Ok(())
}
