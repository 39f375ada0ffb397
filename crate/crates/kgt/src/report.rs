//! Text and machine-readable renderings of a suite report.

use std::fmt::Write as _;

use kgt_core::verify::{CaseReport, Report, Status, SuiteConfig};
use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "kgt-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportConfig {
    pub seed: u64,
    pub cap: String,
    pub slack: String,
    pub fock_truncation: String,
    pub fock_depth: String,
    pub max_fock_dim: usize,
    pub max_cases: usize,
    pub tolerance: f64,
}

impl From<&SuiteConfig> for ReportConfig {
    fn from(c: &SuiteConfig) -> Self {
        ReportConfig {
            seed: c.seed,
            cap: c.cap.to_string(),
            slack: c.slack.to_string(),
            fock_truncation: c.fock_truncation.to_string(),
            fock_depth: c.fock_depth.to_string(),
            max_fock_dim: c.max_fock_dim,
            max_cases: c.max_cases,
            tolerance: c.tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseEntry {
    pub id: String,
    pub instance: String,
    pub status: CaseStatus,
    /// First counterexample of a failing case.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Why a skipped case does not apply.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// Generation seed of a random instance, else the suite seed.
    pub seed: u64,
    pub cases: usize,
    pub millis: u64,
    pub detail: String,
    /// Command line that reruns this case alone.
    pub replay: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema: String,
    /// The check selector that was run.
    pub suite: String,
    pub config: ReportConfig,
    pub cases: Vec<CaseEntry>,
    pub summary: Summary,
}

impl ReportDocument {
    /// `replay` maps a case to the command that reruns it.
    pub fn new(suite: &str, cfg: &SuiteConfig, report: &Report, replay: impl Fn(&CaseReport) -> String) -> Self {
        let cases = report
            .cases
            .iter()
            .map(|c| {
                let (status, witness, reason) = match &c.status {
                    Status::Pass => (CaseStatus::Pass, None, None),
                    Status::Fail(w) => (CaseStatus::Fail, Some(w.clone()), None),
                    Status::Skipped(r) => (CaseStatus::Skipped, None, Some(r.clone())),
                };
                CaseEntry {
                    id: c.check.to_string(),
                    instance: c.instance.clone(),
                    status,
                    witness,
                    reason,
                    seed: c.seed.unwrap_or(cfg.seed),
                    cases: c.cases,
                    millis: c.millis,
                    detail: c.detail.clone(),
                    replay: replay(c),
                }
            })
            .collect();
        let (pass, fail, skipped) = report.tally();
        ReportDocument {
            schema: REPORT_SCHEMA.to_string(),
            suite: suite.to_string(),
            config: cfg.into(),
            cases,
            summary: Summary { pass, fail, skipped },
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    /// One line per case, then the totals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = match c.status {
                CaseStatus::Pass => "PASS",
                CaseStatus::Fail => "FAIL",
                CaseStatus::Skipped => "SKIP",
            };
            let _ = write!(out, "{tag} {} [{}] {} cases, {} ms", c.id, c.instance, c.cases, c.millis);
            if !c.detail.is_empty() {
                let _ = write!(out, ", {}", c.detail);
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "  witness: {w}");
                let _ = writeln!(out, "  replay: {}", c.replay);
            }
            if let Some(r) = &c.reason {
                let _ = writeln!(out, "  reason: {r}");
            }
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let case = |check, status| CaseReport {
            check,
            instance: "f1".into(),
            seed: None,
            status,
            cases: 3,
            millis: 1,
            detail: "cap (2,2)".into(),
        };
        Report {
            cases: vec![
                case("cocycle-identity", Status::Pass),
                case("x-adjoint", Status::Fail("at (e, f)".into())),
                case("psi-model", Status::Skipped("vertex u receives no color-1 edge".into())),
            ],
        }
    }

    #[test]
    fn statuses_map_to_fields() {
        let doc = ReportDocument::new("all", &SuiteConfig::default(), &sample(), |c| format!("kgt check --suite {}", c.check));
        assert_eq!(doc.summary, Summary { pass: 1, fail: 1, skipped: 1 });
        assert!(!doc.passed());
        assert_eq!(doc.cases[1].witness.as_deref(), Some("at (e, f)"));
        assert_eq!(doc.cases[2].status, CaseStatus::Skipped);
        assert!(doc.cases[2].reason.is_some());
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["schema"], REPORT_SCHEMA);
        assert_eq!(json["cases"][1]["status"], "fail");
        assert!(json["cases"][0].get("witness").is_none());
    }

    #[test]
    fn text_shows_witness_and_replay() {
        let doc = ReportDocument::new("all", &SuiteConfig::default(), &sample(), |c| format!("kgt check --suite {}", c.check));
        let text = doc.to_text();
        assert!(text.contains("FAIL x-adjoint [f1]"));
        assert!(text.contains("  witness: at (e, f)"));
        assert!(text.contains("  replay: kgt check --suite x-adjoint"));
        assert!(text.ends_with("1 passed, 1 failed, 1 skipped\n"));
    }
}
