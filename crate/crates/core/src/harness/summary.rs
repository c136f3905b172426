use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};

use super::modes::{ScanRecord, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summary {
    pub csv: String,
    pub warnings: Vec<String>,
}

const REQUIRED: [&str; 6] = ["mode", "canonical_key", "verdict", "p", "r", "A"];

/// Per-`(p, r)` counts across JSONL files, deduplicated on
/// `(mode, p, canonical key)`.
pub fn summarize<P: AsRef<Path>>(paths: &[P]) -> Result<Summary> {
    let mut seen = BTreeSet::new();
    let mut modes = BTreeSet::new();
    let mut rows: BTreeMap<(usize, i64), [u64; 4]> = BTreeMap::new();
    let mut warnings = Vec::new();
    for path in paths {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let schema = |msg: String| Error::Schema {
                path: path.to_path_buf(),
                msg: format!("line {}: {msg}", i + 1),
            };
            let v: Value = serde_json::from_str(line).map_err(|e| schema(e.to_string()))?;
            if let Some(k) = REQUIRED.iter().find(|k| v.get(**k).is_none()) {
                return Err(schema(format!("missing field {k:?}")));
            }
            let rec: ScanRecord = serde_json::from_value(v).map_err(|e| schema(e.to_string()))?;
            let c = &rec.certificate;
            if !seen.insert((rec.mode, c.p, rec.canonical_key.clone())) {
                let w = format!(
                    "{}:{}: duplicate instance {} dropped",
                    path.display(),
                    i + 1,
                    rec.canonical_key
                );
                log::warn!("{w}");
                warnings.push(w);
                continue;
            }
            modes.insert(rec.mode);
            let row = rows.entry((c.p, c.r)).or_default();
            row[0] += 1;
            match rec.verdict {
                Verdict::Holds => {
                    row[1] += 1;
                    row[2] += 1;
                }
                Verdict::Violation => {
                    row[1] += 1;
                    row[3] += 1;
                }
                Verdict::NotApplicable => {}
            }
        }
    }
    if modes.len() > 1 {
        warnings.push(format!("inputs mix {} scan modes", modes.len()));
    }
    let mut csv = String::from("p,r,orbits,applicable,holds,violations\n");
    for ((p, r), [o, a, h, v]) in rows {
        csv.push_str(&format!("{p},{r},{o},{a},{h},{v}\n"));
    }
    Ok(Summary { csv, warnings })
}
