//! Check reports: a verdict plus concrete symbolic witnesses on failure.

use crate::expr::{Coords, ScalarExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
        }
    }
}

/// One failing identity instance: where it failed and the nonzero residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Which identity or sub-check the witness belongs to.
    pub context: String,
    /// 1-based index tuple locating the failing instance.
    pub indices: Vec<usize>,
    /// The nonzero canonical residual.
    pub residual: ScalarExpr,
}

impl Witness {
    pub fn render(&self, coords: &Coords) -> String {
        let idx = self
            .indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",");
        if self.context.is_empty() {
            format!("[{idx}] residual {}", self.residual.to_text(coords))
        } else {
            format!(
                "{} [{idx}] residual {}",
                self.context,
                self.residual.to_text(coords)
            )
        }
    }
}

/// Outcome of a named check. The verdict is `Pass` exactly when the witness
/// list is empty; notes carry auxiliary detail (sub-verdicts, sample
/// counts) that does not affect the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.passed() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn push_witness(
        &mut self,
        context: impl Into<String>,
        indices: Vec<usize>,
        residual: ScalarExpr,
    ) {
        debug_assert!(!residual.is_zero(), "witness residual must be nonzero");
        self.witnesses.push(Witness {
            context: context.into(),
            indices,
            residual,
        });
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Folds a sub-check into an aggregate report: records its verdict as a
    /// note and re-parents its witnesses under the sub-check's name.
    pub fn absorb(&mut self, sub: CheckReport) {
        self.notes.push(format!("{}: {}", sub.name, sub.verdict()));
        for w in sub.witnesses {
            let context = if w.context.is_empty() {
                sub.name.clone()
            } else {
                format!("{}: {}", sub.name, w.context)
            };
            self.witnesses.push(Witness { context, ..w });
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}
