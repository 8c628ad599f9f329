//! Verdict reports with clause-level detail.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// Holds except for constancy of rank: a weak lagrangian.
    Weak,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self != Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Weak => "weak",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    /// Obstruction or witness when the clause fails.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// A failing soft clause downgrades the verdict to `Weak`, not `Fail`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub soft: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub verdict: Verdict,
    pub clauses: Vec<Clause>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            verdict: Verdict::Pass,
            clauses: Vec::new(),
        }
    }

    /// Records a clause; a failing clause turns the verdict to `Fail`.
    pub fn clause(
        &mut self,
        name: impl Into<String>,
        holds: bool,
        detail: Option<String>,
    ) -> &mut Self {
        self.push(name.into(), holds, detail, false)
    }

    /// Records a clause whose failure only weakens the verdict.
    pub fn soft_clause(
        &mut self,
        name: impl Into<String>,
        holds: bool,
        detail: Option<String>,
    ) -> &mut Self {
        self.push(name.into(), holds, detail, true)
    }

    fn push(&mut self, name: String, holds: bool, detail: Option<String>, soft: bool) -> &mut Self {
        if !holds {
            self.verdict = match (self.verdict, soft) {
                (Verdict::Fail, _) | (_, false) => Verdict::Fail,
                _ => Verdict::Weak,
            };
        }
        self.clauses.push(Clause {
            name,
            holds,
            detail: if holds { None } else { detail },
            soft,
        });
        self
    }

    /// True when every hard clause holds, whatever the soft ones say.
    pub fn hard_clauses_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.holds || c.soft)
    }

    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    pub fn clause_holds(&self, name: &str) -> Option<bool> {
        self.clauses
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.holds)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.holds)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.check, self.verdict)?;
        for c in &self.clauses {
            let mark = match (c.holds, c.soft) {
                (true, _) => "ok",
                (false, true) => "weak",
                (false, false) => "FAIL",
            };
            write!(f, "  [{mark}] {}", c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
