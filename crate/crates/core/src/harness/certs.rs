use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::modes::{recheck_record, ScanRecord};

/// Outcome of re-verifying a JSONL certificate file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertFileReport {
    pub records: usize,
    pub passed: usize,
    /// `(line, diagnosis)` for every record that failed.
    pub failures: Vec<(usize, String)>,
    pub warnings: Vec<String>,
}

impl CertFileReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Parses one JSONL file into records; a malformed line is an error that
/// names the file and line.
pub fn read_records(path: &Path) -> Result<Vec<(usize, ScanRecord)>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: ScanRecord = serde_json::from_str(line).map_err(|e| Error::Record {
            path: path.to_path_buf(),
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push((i + 1, rec));
    }
    Ok(out)
}

/// Re-checks every record from its sets alone.
pub fn verify_certificate_file(path: &Path) -> Result<CertFileReport> {
    let recs = read_records(path)?;
    let mut rep = CertFileReport {
        records: recs.len(),
        ..Default::default()
    };
    if recs.is_empty() {
        rep.warnings
            .push(format!("{}: no records, nothing to verify", path.display()));
        log::warn!("{}: empty certificate file", path.display());
    }
    for (line, rec) in recs {
        match recheck_record(&rec) {
            Ok(()) => rep.passed += 1,
            Err(msg) => rep.failures.push((line, format!("{}: {msg}", rec.canonical_key))),
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::modes::{ScanMode, Verdict};
    use crate::harness::scan::{scan, ScanConfig};

    #[test]
    fn round_trip_and_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p7.jsonl");
        let mut cfg = ScanConfig::new(ScanMode::Conjecture, vec![7]);
        cfg.emit_all = true;
        cfg.output = Some(path.clone());
        let report = scan(&cfg).unwrap();
        let rep = verify_certificate_file(&path).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(rep.records as u64, report.records_written);

        // shorten one cover in the first record that has covers
        let text = fs::read_to_string(&path).unwrap();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let idx = lines
            .iter()
            .position(|l| l.contains("\"verdict\":\"holds\""))
            .unwrap();
        let mut rec: ScanRecord = serde_json::from_str(&lines[idx]).unwrap();
        assert_eq!(rec.verdict, Verdict::Holds);
        rec.certificate.covers[0].len -= 1;
        lines[idx] = serde_json::to_string(&rec).unwrap();
        let bad = dir.path().join("bad.jsonl");
        fs::write(&bad, lines.join("\n")).unwrap();
        let rep = verify_certificate_file(&bad).unwrap();
        assert!(!rep.ok());
        assert_eq!(rep.failures[0].0, idx + 1);

        let empty = dir.path().join("empty.jsonl");
        fs::write(&empty, "").unwrap();
        let rep = verify_certificate_file(&empty).unwrap();
        assert!(rep.ok() && rep.records == 0 && !rep.warnings.is_empty());

        let broken = dir.path().join("broken.jsonl");
        fs::write(&broken, "{\"mode\":\"conjecture\"}\n").unwrap();
        assert!(matches!(
            verify_certificate_file(&broken),
            Err(Error::Record { line: 1, .. })
        ));
    }
}
