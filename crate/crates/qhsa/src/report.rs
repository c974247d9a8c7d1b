//! Run reports: one TOML `[[check]]` record per check, sorted by id.
//!
//! Wall times go to a separate `<report>.timings` file so that the report itself depends only
//! on the seed and configuration.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One executed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// Keys understood by `qhsa explain`.
    pub refs: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub millis: u128,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Conventions and totals written at the top of every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format: u32,
    /// How θ-words are matched with idempotents in pairing checks.
    pub orientation: String,
    /// How the pictured dot/crossing relations are read as operator identities.
    pub reading: String,
    pub pi: String,
    pub seed: u64,
    pub data: Vec<String>,
    pub suites: Vec<String>,
    pub checks: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub report: Header,
    #[serde(default)]
    pub check: Vec<CheckRecord>,
}

impl Report {
    pub fn failed(&self) -> impl Iterator<Item = &CheckRecord> {
        self.check.iter().filter(|c| !c.passed())
    }

    pub fn all_passed(&self) -> bool {
        self.report.failed == 0
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }

    pub fn from_toml(text: &str) -> Result<Report, toml::de::Error> {
        toml::from_str(text)
    }

    /// `id = millis` lines in id order.
    pub fn timings(&self) -> String {
        let mut out = String::new();
        for c in &self.check {
            let _ = writeln!(out, "{:?} = {}", c.id, c.millis);
        }
        out
    }

    /// Human-readable pass/fail table.
    pub fn table(&self) -> String {
        let width = self.check.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.check {
            let v = if c.passed() { "pass" } else { "FAIL" };
            let _ = write!(out, "{v}  {:<width$}", c.id);
            if let Some(w) = &c.witness {
                let _ = write!(out, "  {w}");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} checks, {} failed", self.report.checks, self.report.failed);
        out
    }

    /// Writes the report and its timings sidecar.
    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_toml())?;
        std::fs::write(timings_path(path), self.timings())
    }
}

pub fn timings_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".timings");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let rec = |id: &str, verdict, witness: Option<&str>| CheckRecord {
            id: id.to_string(),
            refs: vec!["pairing".to_string()],
            inputs: BTreeMap::from([("datum".to_string(), "super".to_string())]),
            verdict,
            witness: witness.map(str::to_string),
            millis: 7,
        };
        Report {
            report: Header {
                format: 1,
                orientation: "identity".into(),
                reading: "r".into(),
                pi: "minus".into(),
                seed: 3,
                data: vec!["super".into()],
                suites: vec!["pairing".into()],
                checks: 2,
                failed: 1,
            },
            check: vec![rec("a", Verdict::Pass, None), rec("b", Verdict::Fail, Some("degree 4"))],
        }
    }

    #[test]
    fn toml_roundtrip() {
        let r = sample();
        let text = r.to_toml();
        assert!(text.contains("[[check]]"));
        assert!(!text.contains("millis"));
        let mut back = Report::from_toml(&text).unwrap();
        for c in &mut back.check {
            c.millis = 7;
        }
        assert_eq!(back, r);
        assert_eq!(r.failed().count(), 1);
        assert_eq!(r.timings(), "\"a\" = 7\n\"b\" = 7\n");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(timings_path(Path::new("out/report.toml")), PathBuf::from("out/report.toml.timings"));
    }
}
