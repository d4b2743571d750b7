//! Check selection and orchestration.

use std::time::Instant;

use thiserror::Error;

use algcalc_core::calculus::{maurer_cartan_check, verify_calculus_identities, SampleBudget};
use algcalc_core::eds::eds_closure_check;
use algcalc_core::ids::{cartan_test, involutive_bracket_test, IdsError};
use algcalc_core::report::CheckReport;

use crate::definition::ProblemDefinition;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("unknown check name {0:?} (expected axioms, maurer-cartan, calculus-identities, involutive:<name>, cartan:<name>, eds:<name>, or equivalence:<name>)")]
    UnknownCheck(String),
    #[error("unknown subbundle {0:?}")]
    UnknownSubbundle(String),
    #[error("subbundle {name:?}: {source}")]
    Ids { name: String, source: IdsError },
}

/// One requested check. Subbundle-scoped selectors carry the subbundle
/// name from the definition file.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckSelector {
    Axioms,
    MaurerCartan,
    CalculusIdentities,
    Involutive(String),
    Cartan(String),
    Eds(String),
    Equivalence(String),
}

impl CheckSelector {
    pub fn parse(text: &str) -> Result<Self, RunError> {
        match text {
            "axioms" => Ok(CheckSelector::Axioms),
            "maurer-cartan" => Ok(CheckSelector::MaurerCartan),
            "calculus-identities" => Ok(CheckSelector::CalculusIdentities),
            _ => {
                if let Some((kind, name)) = text.split_once(':') {
                    if name.is_empty() {
                        return Err(RunError::UnknownCheck(text.to_string()));
                    }
                    match kind {
                        "involutive" => Ok(CheckSelector::Involutive(name.to_string())),
                        "cartan" => Ok(CheckSelector::Cartan(name.to_string())),
                        "eds" => Ok(CheckSelector::Eds(name.to_string())),
                        "equivalence" => Ok(CheckSelector::Equivalence(name.to_string())),
                        _ => Err(RunError::UnknownCheck(text.to_string())),
                    }
                } else {
                    Err(RunError::UnknownCheck(text.to_string()))
                }
            }
        }
    }

    /// Precedence used for the canonical report order.
    fn kind_order(&self) -> usize {
        match self {
            CheckSelector::Axioms => 0,
            CheckSelector::MaurerCartan => 1,
            CheckSelector::CalculusIdentities => 2,
            CheckSelector::Involutive(_) => 3,
            CheckSelector::Cartan(_) => 4,
            CheckSelector::Eds(_) => 5,
            CheckSelector::Equivalence(_) => 6,
        }
    }

    fn subbundle(&self) -> Option<&str> {
        match self {
            CheckSelector::Involutive(n)
            | CheckSelector::Cartan(n)
            | CheckSelector::Eds(n)
            | CheckSelector::Equivalence(n) => Some(n),
            _ => None,
        }
    }
}

impl std::fmt::Display for CheckSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckSelector::Axioms => write!(f, "axioms"),
            CheckSelector::MaurerCartan => write!(f, "maurer-cartan"),
            CheckSelector::CalculusIdentities => write!(f, "calculus-identities"),
            CheckSelector::Involutive(n) => write!(f, "involutive:{n}"),
            CheckSelector::Cartan(n) => write!(f, "cartan:{n}"),
            CheckSelector::Eds(n) => write!(f, "eds:{n}"),
            CheckSelector::Equivalence(n) => write!(f, "equivalence:{n}"),
        }
    }
}

/// Parses a comma-separated `--only` list; an empty string selects nothing.
pub fn parse_selection(text: &str) -> Result<Vec<CheckSelector>, RunError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|part| CheckSelector::parse(part.trim()))
        .collect()
}

/// Everything applicable to the definition, in canonical order: the three
/// algebroid-level checks, then the four subbundle checks per subbundle.
pub fn default_selection(def: &ProblemDefinition) -> Vec<CheckSelector> {
    let mut out = vec![
        CheckSelector::Axioms,
        CheckSelector::MaurerCartan,
        CheckSelector::CalculusIdentities,
    ];
    for name in def.subbundles.keys() {
        out.push(CheckSelector::Involutive(name.clone()));
        out.push(CheckSelector::Cartan(name.clone()));
        out.push(CheckSelector::Eds(name.clone()));
        out.push(CheckSelector::Equivalence(name.clone()));
    }
    sort_selection(&mut out);
    out
}

fn sort_selection(selection: &mut [CheckSelector]) {
    selection.sort_by(|a, b| {
        a.kind_order()
            .cmp(&b.kind_order())
            .then_with(|| a.subbundle().cmp(&b.subbundle()))
    });
}

/// The outcome of one selected check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub selector: String,
    pub report: CheckReport,
    pub elapsed_ms: u128,
}

/// A full run over one definition.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub digest: String,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl RunReport {
    pub fn overall_pass(&self) -> bool {
        self.checks.iter().all(|c| c.report.passed())
    }
}

/// Runs the selected checks in canonical order. Deterministic given
/// `(definition, selection, seed)`: only the calculus-identity sampling
/// consumes the seed; every involutivity verdict is fully symbolic.
pub fn run_checks(
    def: &ProblemDefinition,
    selection: &[CheckSelector],
    seed: u64,
    digest: String,
) -> Result<RunReport, RunError> {
    let mut ordered = selection.to_vec();
    sort_selection(&mut ordered);
    let a = &def.algebroid;
    let mut checks = Vec::with_capacity(ordered.len());
    for sel in &ordered {
        let subbundle = match sel.subbundle() {
            Some(name) => Some(
                def.subbundles
                    .get(name)
                    .ok_or_else(|| RunError::UnknownSubbundle(name.to_string()))?,
            ),
            None => None,
        };
        let started = Instant::now();
        let report = match sel {
            CheckSelector::Axioms => a.validate(),
            CheckSelector::MaurerCartan => maurer_cartan_check(a),
            CheckSelector::CalculusIdentities => {
                verify_calculus_identities(a, &SampleBudget::default(), seed)
            }
            CheckSelector::Involutive(name) => {
                involutive_bracket_test(a, subbundle.expect("resolved above")).map_err(
                    |source| RunError::Ids {
                        name: name.clone(),
                        source,
                    },
                )?
            }
            CheckSelector::Cartan(name) => {
                let (report, _) = cartan_test(a, subbundle.expect("resolved above"))
                    .map_err(|source| RunError::Ids {
                        name: name.clone(),
                        source,
                    })?;
                report
            }
            CheckSelector::Eds(name) => eds_closure_check(a, subbundle.expect("resolved above"))
                .map_err(|source| RunError::Ids {
                    name: name.clone(),
                    source,
                })?,
            CheckSelector::Equivalence(name) => {
                let eq = algcalc_core::eds::eds_involutivity_equivalence(
                    a,
                    subbundle.expect("resolved above"),
                )
                .map_err(|source| RunError::Ids {
                    name: name.clone(),
                    source,
                })?;
                eq.summary(a.base_dim())
            }
        };
        checks.push(CheckOutcome {
            selector: sel.to_string(),
            report,
            elapsed_ms: started.elapsed().as_millis(),
        });
    }
    Ok(RunReport {
        digest,
        seed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_parsing() {
        assert_eq!(CheckSelector::parse("axioms").unwrap(), CheckSelector::Axioms);
        assert_eq!(
            CheckSelector::parse("cartan:contact").unwrap(),
            CheckSelector::Cartan("contact".to_string())
        );
        assert!(CheckSelector::parse("frobenius").is_err());
        assert!(CheckSelector::parse("cartan:").is_err());
        assert_eq!(parse_selection("").unwrap(), Vec::new());
        assert_eq!(
            parse_selection("axioms, maurer-cartan").unwrap().len(),
            2
        );
    }
}
