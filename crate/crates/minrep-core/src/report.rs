//! Machine-readable verification reports.
//!
//! Every suite produces a [`Report`]: a config echo, a list of check
//! records, the structured findings (documented discrepancies between what
//! is printed and what verifies), an overall pass flag and the wall time.
//! JSON output is versioned with `"schema": "minrep-report/1"` and is
//! byte-identical for identical configs apart from the wall-time field.

use serde::Serialize;

/// Schema tag for JSON reports.
pub const REPORT_SCHEMA: &str = "minrep-report/1";

/// Configuration echo embedded in every report.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: String,
    pub rank: usize,
    pub max_degree: i64,
    pub max_m: u64,
    pub seed: u64,
    pub mc_samples: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: "all".to_string(),
            rank: 2,
            max_degree: 6,
            max_m: 5,
            seed: 7,
            mc_samples: 200_000,
        }
    }
}

/// One check: name, expected/computed values as canonical exact strings,
/// residual, and a pass flag. Optional fields carry the norm-engine and
/// operator-identity metadata.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<i64>,
    pub expected: String,
    pub computed: String,
    pub residual: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<Vec<String>>,
}

impl CheckRecord {
    pub fn value(name: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        let expected = expected.into();
        let computed = computed.into();
        let pass = expected == computed;
        CheckRecord {
            name: name.into(),
            r: None,
            m: None,
            parity: None,
            degree_cap: None,
            residual: if pass { "0".to_string() } else { "nonzero".to_string() },
            expected,
            computed,
            pass,
        residual_terms: None,
        }
    }

    pub fn flag(name: impl Into<String>, pass: bool) -> Self {
        CheckRecord {
            name: name.into(),
            r: None,
            m: None,
            parity: None,
            degree_cap: None,
            expected: "pass".to_string(),
            computed: if pass { "pass" } else { "fail" }.to_string(),
            residual: if pass { "0" } else { "nonzero" }.to_string(),
            pass,
            residual_terms: None,
        }
    }

    pub fn with_rank(mut self, r: usize) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_m(mut self, m: impl Into<String>) -> Self {
        self.m = Some(m.into());
        self
    }

    pub fn with_parity(mut self, parity: impl Into<String>) -> Self {
        self.parity = Some(parity.into());
        self
    }

    pub fn with_degree_cap(mut self, cap: i64) -> Self {
        self.degree_cap = Some(cap);
        self
    }

    pub fn with_residual_terms(mut self, terms: Vec<String>) -> Self {
        if !terms.is_empty() {
            self.residual = "nonzero".to_string();
        }
        self.residual_terms = Some(terms);
        self
    }
}

/// A documented discrepancy between printed formulas and what verifies.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub id: String,
    pub summary: String,
    pub details: Vec<String>,
}

/// A full suite report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub suite: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub findings: Vec<Finding>,
    pub pass: bool,
    pub wall_time_ms: u128,
}

impl Report {
    pub fn new(config: SuiteConfig, checks: Vec<CheckRecord>, findings: Vec<Finding>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Report {
            schema: REPORT_SCHEMA,
            suite: config.suite.clone(),
            config,
            checks,
            findings,
            pass,
            wall_time_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# suite `{}`\n\n", self.suite));
        out.push_str(&format!(
            "overall: **{}** ({} checks, {} findings, {} ms)\n\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.findings.len(),
            self.wall_time_ms
        ));
        out.push_str("| check | expected | computed | pass |\n");
        out.push_str("|---|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                c.name,
                c.expected,
                c.computed,
                if c.pass { "yes" } else { "NO" }
            ));
        }
        if !self.findings.is_empty() {
            out.push_str("\n## findings\n\n");
            for f in &self.findings {
                out.push_str(&format!("* **{}**: {}\n", f.id, f.summary));
                for d in &f.details {
                    out.push_str(&format!("  - {}\n", d));
                }
            }
        }
        out
    }
}
