//! Machine-readable report documents.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fixtures;
use crate::measures::{evaluate, EvalOptions, MeasureReport};
use crate::verify::TrialOutcome;

pub const SCHEMA: &str = "gme-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Tolerance for comparisons against values printed to 4 decimals.
pub const PRINTED_VOLUME_TOL: f64 = 2e-3;
pub const PRINTED_C_GME_TOL: f64 = 1e-4;
/// A published zero is compared at this tolerance.
pub const PUBLISHED_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Match,
    Discrepancy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperRow {
    pub state: String,
    pub quantity: String,
    pub expected: f64,
    pub computed: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub status: RowStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PaperRow {
    pub fn new(state: &str, quantity: &str, expected: f64, computed: f64, tolerance: f64) -> Self {
        let deviation = (computed - expected).abs();
        Self {
            state: state.to_string(),
            quantity: quantity.to_string(),
            expected,
            computed,
            deviation,
            tolerance,
            status: if deviation <= tolerance {
                RowStatus::Match
            } else {
                RowStatus::Discrepancy
            },
            note: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Concurrence threshold for zero cuts and classification.
    pub zero: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub tool_version: String,
    pub tolerances: Tolerances,
    pub states: Vec<MeasureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paper_rows: Option<Vec<PaperRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<TrialOutcome>>,
}

impl ReportDocument {
    pub fn new(zero_tol: f64) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            tool_version: TOOL_VERSION.to_string(),
            tolerances: Tolerances { zero: zero_tol },
            states: Vec::new(),
            paper_rows: None,
            checks: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are serializable")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Every numeric field is finite.
    pub fn is_finite(&self) -> bool {
        let state_ok = self.states.iter().all(|s| {
            s.concurrences.values().all(|c| c.is_finite())
                && [s.volume, s.c_gme, s.triangle]
                    .iter()
                    .flatten()
                    .all(|v| v.is_finite())
                && s.geometry.map_or(true, |g| {
                    [g.a, g.h, g.base_area, g.volume]
                        .iter()
                        .all(|v| v.is_finite())
                })
        });
        let rows_ok = self.paper_rows.iter().flatten().all(|r| {
            [r.expected, r.computed, r.deviation, r.tolerance]
                .iter()
                .all(|v| v.is_finite())
        });
        let checks_ok = self
            .checks
            .iter()
            .flatten()
            .all(|c| c.max_deviation.is_finite() && c.tolerance.is_finite());
        state_ok && rows_ok && checks_ok && self.tolerances.zero.is_finite()
    }
}

/// Evaluates every benchmark fixture and compares against published values.
pub fn paper_report(opts: &EvalOptions) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(opts.tol);
    let mut rows = Vec::new();
    for fixture in fixtures::all()? {
        let report = evaluate(fixture.id, &fixture.state, opts)?;
        if let (Some(expected), Some(computed)) = (fixture.published_volume, report.volume) {
            let tol = if expected == 0.0 {
                PUBLISHED_ZERO_TOL
            } else {
                PRINTED_VOLUME_TOL
            };
            let mut row = PaperRow::new(fixture.id, "V", expected, computed, tol);
            row.note = fixture.volume_note.map(str::to_string);
            rows.push(row);
        }
        if let (Some(expected), Some(computed)) = (fixture.published_c_gme, report.c_gme) {
            rows.push(PaperRow::new(
                fixture.id,
                "C_GME",
                expected,
                computed,
                PRINTED_C_GME_TOL,
            ));
        }
        doc.states.push(report);
    }
    doc.paper_rows = Some(rows);
    Ok(doc)
}
