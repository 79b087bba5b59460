//! Run manifests and line-delimited verdict reports.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::containment::ContainmentVerdict;
use crate::groebner::Budget;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const MANIFEST_FORMAT: &str = "containlab-manifest/1";

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("cannot access {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {source}")]
    Record { line: usize, source: serde_json::Error },
    #[error("not a manifest: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub timeout_secs: Option<u64>,
    pub max_pairs: Option<u64>,
}

impl Budgets {
    pub fn of(budget: &Budget) -> Self {
        Budgets { timeout_secs: budget.timeout().map(|t| t.as_secs()), max_pairs: budget.max_pairs() }
    }

    pub fn budget(&self) -> Budget {
        Budget::new(self.timeout_secs.map(std::time::Duration::from_secs), self.max_pairs)
    }
}

/// Everything needed to re-run a batch of checks: the configuration spec, the budgets
/// and the verdicts obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub format: String,
    pub artifact_version: String,
    pub command_line: Vec<String>,
    pub config_spec: String,
    pub budgets: Budgets,
    /// The seed of a `general:` spec, recorded separately for convenience.
    pub seed: Option<u64>,
    pub results: Vec<ContainmentVerdict>,
    #[serde(default)]
    pub conjectures: Vec<serde_json::Value>,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>, config_spec: &str, budget: &Budget) -> Self {
        RunManifest {
            format: MANIFEST_FORMAT.to_string(),
            artifact_version: ARTIFACT_VERSION.to_string(),
            command_line,
            config_spec: config_spec.to_string(),
            budgets: Budgets::of(budget),
            seed: seed_of(config_spec),
            results: Vec::new(),
            conjectures: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ManifestError> {
        let m: RunManifest =
            serde_json::from_str(text).map_err(|e| ManifestError::Record { line: e.line(), source: e })?;
        if m.format != MANIFEST_FORMAT {
            return Err(ManifestError::Format(format!("unsupported format '{}'", m.format)));
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self, ManifestError> {
        Self::from_json(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), ManifestError> {
        write(path, &(self.to_json() + "\n"))
    }
}

/// `general:<s>:<N>:<seed>` carries a seed; nothing else does.
pub fn seed_of(spec: &str) -> Option<u64> {
    match spec.trim().split(':').collect::<Vec<_>>().as_slice() {
        ["general", _, _, seed] => seed.parse().ok(),
        _ => None,
    }
}

/// The manifest path that accompanies a report file: `out.jsonl` → `out.manifest.json`.
pub fn manifest_path(report: &Path) -> PathBuf {
    report.with_extension("manifest.json")
}

pub fn write_report(verdicts: &[ContainmentVerdict]) -> String {
    verdicts.iter().map(|v| serde_json::to_string(v).expect("verdict serializes") + "\n").collect()
}

/// Parses one verdict per nonblank line.
pub fn read_report(text: &str) -> Result<Vec<ContainmentVerdict>, ManifestError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| ManifestError::Record { line: i + 1, source: e }))
        .collect()
}

pub(crate) fn read(path: &Path) -> Result<String, ManifestError> {
    std::fs::read_to_string(path).map_err(|e| ManifestError::Io { path: path.to_path_buf(), source: e })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), ManifestError> {
    std::fs::write(path, text).map_err(|e| ManifestError::Io { path: path.to_path_buf(), source: e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::containment::{Guarantee, VerdictStatus};

    fn verdict() -> ContainmentVerdict {
        ContainmentVerdict {
            config: "dual-hesse".into(),
            field: "QQ(zeta3)".into(),
            n: 2,
            m: 3,
            r: 2,
            j: 0,
            holds: Some(false),
            witness_degree: Some(9),
            witness: Some("x0^9".into()),
            guarantees: vec![Guarantee::Els],
            elapsed_ms: 5,
            status: VerdictStatus::Fails,
        }
    }

    #[test]
    fn report_round_trip() {
        let vs = vec![verdict(), ContainmentVerdict { m: 4, ..verdict() }];
        assert_eq!(read_report(&write_report(&vs)).unwrap(), vs);
        assert!(matches!(read_report("{\"config\": 1}"), Err(ManifestError::Record { line: 1, .. })));
    }

    #[test]
    fn manifest_round_trip() {
        let mut m = RunManifest::new(vec!["search".into()], "general:3:2:9", &Budget::new(None, Some(7)));
        m.results.push(verdict());
        assert_eq!(m.seed, Some(9));
        assert_eq!(m.budgets, Budgets { timeout_secs: None, max_pairs: Some(7) });
        assert_eq!(RunManifest::from_json(&m.to_json()).unwrap(), m);
        let other = m.to_json().replace(MANIFEST_FORMAT, "something-else");
        assert!(matches!(RunManifest::from_json(&other), Err(ManifestError::Format(_))));
    }

    #[test]
    fn paths_and_seeds() {
        assert_eq!(manifest_path(Path::new("a/out.jsonl")), PathBuf::from("a/out.manifest.json"));
        assert_eq!(seed_of("dual-hesse"), None);
        assert_eq!(seed_of("general:1:2:42"), Some(42));
    }
}
