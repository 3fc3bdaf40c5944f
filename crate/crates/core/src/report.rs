//! Machine-readable run reports.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::claims::{ClaimReport, Standing, Verdict, WitnessSample};
use crate::error::{Error, Result};

/// Gaps listed in a report before truncation.
pub const DEFAULT_GAP_LIMIT: usize = 1000;
/// Leading gaps kept per case summary.
const CASE_GAP_LIMIT: usize = 10;

/// What a report is about.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Subject {
    Claim { id: String, standing: Standing, summary: String },
    Scan { problem: String },
    Exceptional {
        family: String,
        #[serde(with = "crate::arith::as_i64")]
        c_lo: i128,
        #[serde(with = "crate::arith::as_i64")]
        c_hi: i128,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub lo: i128,
    pub hi: i128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub label: String,
    pub param: Option<i128>,
    pub lo: i128,
    pub hi: i128,
    pub gap_count: usize,
    pub first_gaps: Vec<i128>,
}

/// One run, serialized with a fixed key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub subject: Subject,
    pub range: Range,
    pub verdict: Verdict,
    pub expectation_met: bool,
    /// Distinct gaps over all cases.
    pub gap_count: usize,
    pub gaps: Vec<i128>,
    pub gaps_truncated: bool,
    pub cases: Vec<CaseSummary>,
    pub witnesses: Vec<WitnessSample>,
    pub elapsed_seconds: f64,
    pub checkpoint_cursor: Option<i128>,
}

impl ReportDocument {
    pub fn from_claim(subject: Subject, report: &ClaimReport, gap_limit: usize) -> Self {
        let pooled = report.pooled_gaps();
        let gap_count = pooled.len();
        let gaps: Vec<i128> = pooled.into_iter().take(gap_limit).collect();
        let cases = report
            .cases
            .iter()
            .map(|c| CaseSummary {
                label: c.label.clone(),
                param: c.param,
                lo: c.lo,
                hi: c.hi,
                gap_count: c.gaps.len(),
                first_gaps: c.gaps.iter().take(CASE_GAP_LIMIT).copied().collect(),
            })
            .collect();
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subject,
            range: Range { lo: report.lo, hi: report.hi },
            verdict: report.verdict.clone(),
            expectation_met: report.expectation_met,
            gaps_truncated: gaps.len() < gap_count,
            gap_count,
            gaps,
            cases,
            witnesses: report.cases.iter().flat_map(|c| c.witnesses.iter().cloned()).collect(),
            // Microsecond resolution keeps the decimal form short and exact.
            elapsed_seconds: (report.elapsed_seconds * 1e6).round() / 1e6,
            checkpoint_cursor: report.checkpoint_cursor,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed report: {e}")))
    }

    /// The document with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        ReportDocument { elapsed_seconds: 0.0, ..self.clone() }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Short human summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let title = match &self.subject {
            Subject::Claim { id, summary, .. } => format!("{id}: {summary}"),
            Subject::Scan { problem } => problem.clone(),
            Subject::Exceptional { family, c_lo, c_hi } => format!("{family}, c in [{c_lo}, {c_hi}]"),
        };
        let verdict = match &self.verdict {
            Verdict::Confirmed => "confirmed".to_string(),
            Verdict::EvidenceOnly => "evidence only".to_string(),
            Verdict::Refuted { case, n } => format!("refuted at n = {n} ({case})"),
        };
        let _ = writeln!(out, "{title}");
        let _ = writeln!(out, "  range     [{}, {}]", self.range.lo, self.range.hi);
        let _ = writeln!(out, "  verdict   {verdict}");
        let _ = writeln!(out, "  expected  {}", if self.expectation_met { "yes" } else { "no" });
        let mut gaps: Vec<String> = self.gaps.iter().take(20).map(|g| g.to_string()).collect();
        if self.gap_count > gaps.len() {
            gaps.push("...".into());
        }
        let _ = writeln!(out, "  gaps      {} [{}]", self.gap_count, gaps.join(", "));
        for w in self.witnesses.iter().take(4) {
            let _ = writeln!(out, "  witness   {} = {}", w.n, w.witness);
        }
        let _ = writeln!(out, "  elapsed   {:.3}s", self.elapsed_seconds);
        out
    }
}

/// Writes `gaps` as a one-column CSV with header `n`.
pub fn write_gap_csv(path: &Path, gaps: &[i128]) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "n")?;
    for g in gaps {
        writeln!(f, "{g}")?;
    }
    f.flush()?;
    Ok(())
}
