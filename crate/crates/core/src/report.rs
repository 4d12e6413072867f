//! JSON report emission with deterministic field layout. serde_json maps
//! sort keys, struct fields keep declaration order, and every array is
//! produced in catalog / lattice enumeration order, so two runs with the
//! same config differ only in the timestamp.

use std::path::Path;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::SuiteReport;
use crate::perm::Subgroup;

/// Compact JSON description of a subgroup: order plus a deterministic
/// generating set of image arrays.
pub fn subgroup_value(sub: &Subgroup) -> Value {
    let gens: Vec<Vec<usize>> = sub
        .generating_set()
        .iter()
        .map(|p| p.images().to_vec())
        .collect();
    json!({ "order": sub.order(), "generators": gens })
}

/// One JSON document for a batch of suite reports. Each report carries
/// {suite, config, records, tallies, …, timestamp}.
pub fn render_reports(reports: &[SuiteReport]) -> Value {
    let timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let stamped: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = serde_json::to_value(r).expect("suite report serializes");
            v.as_object_mut()
                .expect("suite report is an object")
                .insert("timestamp".into(), json!(timestamp));
            v
        })
        .collect();
    json!({ "reports": stamped })
}

pub fn write_reports(reports: &[SuiteReport], path: &Path) -> Result<()> {
    let doc = render_reports(reports);
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text).map_err(|e| Error::Io(e.to_string()))
}

/// Removes every "timestamp" key so byte-level comparisons see only the
/// deterministic payload.
pub fn strip_timestamps(value: &mut Value) {
    match value {
        Value::Object(map) => {
            map.remove("timestamp");
            for (_, v) in map.iter_mut() {
                strip_timestamps(v);
            }
        }
        Value::Array(items) => {
            for v in items {
                strip_timestamps(v);
            }
        }
        _ => {}
    }
}
