use graded_cotangent::report::{Report, Verdict};
use serde::{Deserialize, Serialize};

/// An independent computation the primary verdict is compared against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Oracle {
    pub name: String,
    pub verdict: Verdict,
    pub agrees: bool,
}

/// The result of one case of a document. The first report is the primary
/// one; its verdict is the case verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub label: String,
    pub ok: bool,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Oracle>,
    pub reports: Vec<Report>,
}

impl CaseOutcome {
    pub fn new(label: impl Into<String>, primary: Report) -> Self {
        CaseOutcome {
            label: label.into(),
            ok: false,
            verdict: primary.verdict,
            expect: None,
            oracle: None,
            reports: vec![primary],
        }
    }

    pub fn with_report(mut self, r: Report) -> Self {
        self.reports.push(r);
        self
    }

    /// Compares against an oracle whose verdict must equal the primary one.
    pub fn against(self, name: &str, verdict: Verdict) -> Self {
        let agrees = verdict == self.verdict;
        self.against_with(name, verdict, agrees)
    }

    pub fn against_with(mut self, name: &str, verdict: Verdict, agrees: bool) -> Self {
        self.oracle = Some(Oracle {
            name: name.into(),
            verdict,
            agrees,
        });
        self
    }

    /// Settles `ok` for a hand-written case: the oracle must agree and the
    /// verdict must match `expect`, which defaults to passing.
    pub fn explicit(mut self, expect: Option<Verdict>) -> Self {
        self.expect = expect;
        let verdict_ok = match expect {
            Some(e) => self.verdict == e,
            None => self.verdict.passed(),
        };
        self.ok = verdict_ok && self.oracle.as_ref().is_none_or(|o| o.agrees);
        self
    }

    /// Settles `ok` for a generated case: with an oracle only agreement
    /// counts, without one the verdict must pass.
    pub fn generated(mut self) -> Self {
        self.ok = match &self.oracle {
            Some(o) => o.agrees,
            None => self.verdict.passed(),
        };
        self
    }
}

pub fn verdict_of(holds: bool) -> Verdict {
    if holds {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(holds: bool) -> Report {
        let mut r = Report::new("r");
        r.clause("c", holds, None);
        r
    }

    #[test]
    fn explicit_cases() {
        assert!(CaseOutcome::new("a", report(true)).explicit(None).ok);
        assert!(!CaseOutcome::new("a", report(false)).explicit(None).ok);
        assert!(
            CaseOutcome::new("a", report(false))
                .explicit(Some(Verdict::Fail))
                .ok
        );
        let disagree = CaseOutcome::new("a", report(false)).against("o", Verdict::Pass);
        assert!(!disagree.explicit(Some(Verdict::Fail)).ok);
    }

    #[test]
    fn generated_cases() {
        let agree = CaseOutcome::new("a", report(false)).against("o", Verdict::Fail);
        assert!(agree.generated().ok);
        assert!(!CaseOutcome::new("a", report(false)).generated().ok);
    }
}
