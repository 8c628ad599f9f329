//! Human-readable rendering. Machine output is the serde form of the
//! reports.

use std::fmt::Write;

use crate::corpus::CorpusReport;
use crate::outcome::CaseOutcome;
use crate::{DocumentReport, Status};

fn case_line(out: &mut String, c: &CaseOutcome) {
    let mark = if c.ok { "ok  " } else { "FAIL" };
    let _ = write!(out, "  {mark}  {}: {}", c.label, c.verdict);
    if let Some(e) = c.expect {
        let _ = write!(out, " (expected {e})");
    }
    if let Some(o) = &c.oracle {
        let agree = if o.agrees { "agrees" } else { "DISAGREES" };
        let _ = write!(out, "; {} {} ({})", o.name, agree, o.verdict);
    }
    out.push('\n');
    if !c.ok {
        for r in &c.reports {
            for clause in r.failing() {
                let _ = write!(out, "        {} / {}", r.check, clause.name);
                if let Some(d) = &clause.detail {
                    let _ = write!(out, ": {d}");
                }
                out.push('\n');
            }
        }
    }
}

pub fn document(r: &DocumentReport) -> String {
    let mut out = String::new();
    let _ = write!(out, "{}", r.document);
    if let Some(k) = r.kind {
        let _ = write!(out, " [{k}]");
    }
    if let Some(n) = &r.name {
        let _ = write!(out, " {n}");
    }
    out.push('\n');
    if let Some(e) = &r.error {
        let _ = writeln!(out, "  error: {e}");
        return out;
    }
    for c in &r.cases {
        case_line(&mut out, c);
    }
    let _ = writeln!(
        out,
        "  {}/{} cases ok, seed {}: {}",
        r.passed_cases(),
        r.cases.len(),
        r.seed,
        status_word(r.status)
    );
    out
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Failed => "FAILED",
        Status::Error => "ERROR",
    }
}

pub fn corpus(r: &CorpusReport) -> String {
    let mut out = String::new();
    let rows: Vec<[String; 4]> = r
        .documents
        .iter()
        .map(|d| {
            [
                d.document.clone(),
                d.kind.map(|k| k.to_string()).unwrap_or_else(|| "-".into()),
                format!("{}/{}", d.passed_cases(), d.cases.len()),
                status_word(d.status).to_string(),
            ]
        })
        .collect();
    let header = ["document", "kind", "cases", "status"].map(String::from);
    let mut width = [0usize; 4];
    for row in rows.iter().chain([&header]) {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    for row in [&header].into_iter().chain(&rows) {
        let line: Vec<String> = row
            .iter()
            .zip(width)
            .map(|(cell, w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    for d in &r.documents {
        match d.status {
            Status::Ok => {}
            Status::Error => {
                let _ = writeln!(
                    out,
                    "\n{}: error: {}",
                    d.document,
                    d.error.as_deref().unwrap_or("")
                );
            }
            Status::Failed => {
                let _ = writeln!(out, "\n{}:", d.document);
                for c in d.cases.iter().filter(|c| !c.ok) {
                    case_line(&mut out, c);
                }
            }
        }
    }
    let s = &r.summary;
    let _ = writeln!(
        out,
        "\n{} documents: {} ok, {} failed, {} errors",
        s.documents, s.ok, s.failed, s.errors
    );
    out
}
