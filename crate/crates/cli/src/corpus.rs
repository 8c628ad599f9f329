//! Runs every document under a directory, in parallel across documents.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::document::is_document;
use crate::error::{CliError, Result};
use crate::{run_document, DocumentReport, Status};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub documents: usize,
    pub ok: usize,
    pub failed: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub directory: String,
    pub documents: Vec<DocumentReport>,
    pub summary: Summary,
}

impl CorpusReport {
    pub fn status(&self) -> Status {
        self.documents
            .iter()
            .map(|d| d.status)
            .max()
            .unwrap_or(Status::Ok)
    }
}

/// `.json` and `.toml` files below `dir`, sorted by relative path.
pub fn collect(dir: &Path) -> Result<Vec<PathBuf>> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if is_document(&path) {
                out.push(path);
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(dir, &mut out).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    out.sort();
    Ok(out)
}

fn relative(dir: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(dir).unwrap_or(path);
    rel.components()
        .map(|c| c.as_os_str().to_string_lossy())
        .collect::<Vec<_>>()
        .join("/")
}

/// Runs the corpus on `jobs` worker threads (all cores when `None`). The
/// report does not depend on the thread count.
pub fn run_corpus(dir: &Path, jobs: Option<usize>, seed: Option<u64>) -> Result<CorpusReport> {
    let paths = collect(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Threads(e.to_string()))?;
    let documents: Vec<DocumentReport> = pool.install(|| {
        paths
            .par_iter()
            .map(|p| run_document(p, &relative(dir, p), seed))
            .collect()
    });
    let mut summary = Summary {
        documents: documents.len(),
        ..Summary::default()
    };
    for d in &documents {
        match d.status {
            Status::Ok => summary.ok += 1,
            Status::Failed => summary.failed += 1,
            Status::Error => summary.errors += 1,
        }
    }
    Ok(CorpusReport {
        directory: dir.display().to_string(),
        documents,
        summary,
    })
}
