//! Batch front end: evaluates problem documents and corpora of them.

pub mod corpus;
pub mod document;
mod dto;
pub mod error;
mod kinds;
pub mod outcome;
pub mod output;

use std::path::Path;

use serde::{Deserialize, Serialize};

use document::{Document, Format, Kind};
use error::Result;
use outcome::CaseOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    /// Some case failed its check or disagreed with its oracle.
    Failed,
    /// The document could not be read, parsed or evaluated.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentReport {
    pub document: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<Kind>,
    pub seed: u64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub cases: Vec<CaseOutcome>,
    /// Output format asked for by the document itself.
    #[serde(skip)]
    pub format: Option<Format>,
}

impl DocumentReport {
    pub fn passed_cases(&self) -> usize {
        self.cases.iter().filter(|c| c.ok).count()
    }
}

/// Evaluates a parsed document. `seed` overrides the document's own seed.
pub fn evaluate(doc: &Document, seed: Option<u64>) -> Result<Vec<CaseOutcome>> {
    let seed = seed.or(doc.options.seed).unwrap_or(0);
    kinds::evaluate(doc.kind, doc.payload.clone(), seed)
}

/// Loads and evaluates one document; errors become [`Status::Error`].
pub fn run_document(path: &Path, display: &str, seed: Option<u64>) -> DocumentReport {
    let mut report = DocumentReport {
        document: display.to_string(),
        name: None,
        kind: None,
        seed: seed.unwrap_or(0),
        status: Status::Error,
        error: None,
        cases: Vec::new(),
        format: None,
    };
    let doc = match Document::load(path) {
        Ok(d) => d,
        Err(e) => {
            report.error = Some(e.to_string());
            return report;
        }
    };
    report.name = doc.name.clone();
    report.kind = Some(doc.kind);
    report.seed = seed.or(doc.options.seed).unwrap_or(0);
    report.format = doc.options.format;
    match evaluate(&doc, seed) {
        Ok(cases) => {
            report.status = if cases.iter().all(|c| c.ok) {
                Status::Ok
            } else {
                Status::Failed
            };
            report.cases = cases;
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}
