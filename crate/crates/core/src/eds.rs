//! Exterior differential systems: the ideal generated by the annihilator
//! 1-forms of an interior differential system, membership testing with
//! certificates, the differential-closure check, and the three-way
//! involutivity equivalence.
//!
//! The ideal is represented intensionally by its 1-form generators.
//! Membership of `ω` is decided by the top-wedge criterion
//! `ω ∧ Θ^{r+1} ∧ … ∧ Θ^p = 0`, exact for ideals generated by pointwise
//! independent 1-forms; certificates are produced on demand by expanding
//! `ω` in an adapted coframe basis.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebroid::{LieAlgebroid, Section};
use crate::calculus::{ext_deriv, increasing_tuples, DifferentialForm};
use crate::expr::ScalarExpr;
use crate::ids::{
    annihilator, cartan_test, involutive_bracket_test, AdaptedCoframe, AnnihilatorBasis,
    IdsError, SubbundleSpec,
};
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EdsError {
    #[error("degree-0 forms are excluded: a proper generated ideal contains no nonzero scalars")]
    DegreeZero,
}

/// The ideal of the exterior algebra generated by an annihilator basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedIdeal {
    generators: AnnihilatorBasis,
    top: DifferentialForm,
    rank: usize,
    nvars: usize,
}

impl GeneratedIdeal {
    pub fn new(a: &LieAlgebroid, e: &SubbundleSpec) -> Result<Self, IdsError> {
        let generators = annihilator(a, e)?;
        Ok(Self::from_annihilator(generators, a.rank(), a.base_dim()))
    }

    pub fn from_annihilator(generators: AnnihilatorBasis, rank: usize, nvars: usize) -> Self {
        let mut top = DifferentialForm::scalar(rank, ScalarExpr::one(nvars));
        for theta in generators.coforms() {
            top = top.wedge(theta);
        }
        GeneratedIdeal {
            generators,
            top,
            rank,
            nvars,
        }
    }

    pub fn generators(&self) -> &[DifferentialForm] {
        self.generators.coforms()
    }

    /// The wedge of all generators, `Θ^{r+1} ∧ … ∧ Θ^p`.
    pub fn top_wedge(&self) -> &DifferentialForm {
        &self.top
    }
}

/// Top-wedge membership test: `ω ∈ I` iff `ω ∧ Θ^{r+1} ∧ … ∧ Θ^p` vanishes
/// canonically.
///
/// Panics on 0-forms; the generated ideal has no nonzero scalar component,
/// so querying one signals a caller error.
pub fn ideal_membership(ideal: &GeneratedIdeal, omega: &DifferentialForm) -> bool {
    assert!(
        omega.degree() >= 1,
        "membership queries require degree >= 1"
    );
    omega.wedge(ideal.top_wedge()).is_zero()
}

/// An explicit representation `ω = Σ_α Ω_α ∧ Θ^α` over the adapted coframe
/// tail, keyed by the tail index `α ∈ r+1..=p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub omegas: BTreeMap<usize, DifferentialForm>,
}

impl MembershipCertificate {
    /// Re-expands `Σ_α Ω_α ∧ Θ^α`.
    pub fn expand(&self, cf: &AdaptedCoframe) -> DifferentialForm {
        let p = cf.ambient_rank();
        let nvars = cf.frame_section(1).nvars();
        let degree = self
            .omegas
            .values()
            .map(|w| w.degree() + 1)
            .next()
            .unwrap_or(1);
        let mut out = DifferentialForm::zero(degree, p, nvars);
        for (&alpha, omega) in &self.omegas {
            out = out.add(&omega.wedge(cf.coframe_form(alpha)));
        }
        out
    }
}

/// Expands a form of any degree in the adapted wedge basis: the coefficient
/// on `Θ^{J}` is `ω(S_{J_1},…,S_{J_k})` by duality.
pub fn decompose_in_coframe(
    cf: &AdaptedCoframe,
    omega: &DifferentialForm,
) -> BTreeMap<Vec<usize>, ScalarExpr> {
    let p = cf.ambient_rank();
    let mut out = BTreeMap::new();
    for key in increasing_tuples(p, omega.degree()) {
        let sections: Vec<Section> = key.iter().map(|&u| cf.frame_section(u).clone()).collect();
        let c = omega.apply(&sections);
        if !c.is_zero() {
            out.insert(key, c);
        }
    }
    out
}

/// Produces a membership certificate by decomposing `ω` in the adapted
/// basis and collecting every term that contains a tail index; `None` when
/// a term supported entirely on generator indices remains, i.e. when `ω`
/// is not in the ideal.
pub fn membership_certificate(
    cf: &AdaptedCoframe,
    omega: &DifferentialForm,
) -> Option<MembershipCertificate> {
    assert!(
        omega.degree() >= 1,
        "membership queries require degree >= 1"
    );
    let r = cf.subbundle_rank();
    let p = cf.ambient_rank();
    let nvars = cf.frame_section(1).nvars();
    let mut omegas: BTreeMap<usize, DifferentialForm> = (r + 1..=p)
        .map(|alpha| (alpha, DifferentialForm::zero(omega.degree() - 1, p, nvars)))
        .collect();
    for (key, coeff) in decompose_in_coframe(cf, omega) {
        let tail_max = key.iter().rev().find(|&&u| u > r);
        let Some(&alpha) = tail_max else {
            return None; // term lives entirely on generator coframe indices
        };
        // α is the largest index of the key, so Θ^{key} = Θ^{key∖α} ∧ Θ^α
        // with no sign adjustment.
        debug_assert_eq!(*key.last().expect("nonempty key"), alpha);
        let reduced: Vec<usize> = key[..key.len() - 1].to_vec();
        let mut basis = DifferentialForm::scalar(p, ScalarExpr::one(nvars));
        for &u in &reduced {
            basis = basis.wedge(cf.coframe_form(u));
        }
        let entry = omegas.get_mut(&alpha).expect("tail index present");
        *entry = entry.add(&basis.scale(&coeff));
    }
    Some(MembershipCertificate { omegas })
}

/// Differential closure of the generated ideal, checked on generators:
/// `d^F I ⊆ I` iff `d^F Θ^α ∈ I` for every generator, by the graded
/// Leibniz rule.
pub fn eds_closure_check(a: &LieAlgebroid, e: &SubbundleSpec) -> Result<CheckReport, IdsError> {
    let ideal = GeneratedIdeal::new(a, e)?;
    let r = e.generator_count();
    let mut report = CheckReport::new("eds-closure");
    for (k, theta) in ideal.generators().iter().enumerate() {
        let d_theta = ext_deriv(a, theta);
        let residual = d_theta.wedge(ideal.top_wedge());
        let first = residual
            .terms()
            .next()
            .map(|(key, coeff)| (key.clone(), coeff.clone()));
        if let Some((key, coeff)) = first {
            let mut indices = vec![r + k + 1];
            indices.extend_from_slice(&key);
            report.push_witness("top-wedge residual", indices, coeff);
        }
    }
    report.note(format!("{} ideal generators differentiated", ideal.generators().len()));
    Ok(report)
}

/// Vanishing on the system: `ω(u_1,…,u_k) = 0` for all sections of the
/// subbundle, decided on increasing generator tuples by multilinearity.
/// For `k` above the generator count every evaluation vanishes by
/// alternation, so the answer is vacuously `true`.
pub fn vanishes_on_ids(omega: &DifferentialForm, e: &SubbundleSpec) -> Result<bool, EdsError> {
    let k = omega.degree();
    if k == 0 {
        return Err(EdsError::DegreeZero);
    }
    let r = e.generator_count();
    if k > r {
        return Ok(true);
    }
    for key in increasing_tuples(r, k) {
        let sections: Vec<Section> = key.iter().map(|&i| e.generator(i).clone()).collect();
        if !omega.apply(&sections).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The three involutivity verdicts side by side.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub bracket: CheckReport,
    pub cartan: CheckReport,
    pub closure: CheckReport,
}

impl EquivalenceReport {
    pub fn verdicts_agree(&self) -> bool {
        self.bracket.passed() == self.cartan.passed()
            && self.cartan.passed() == self.closure.passed()
    }

    /// Folds into a single report: pass iff the three verdicts agree
    /// (whatever the common verdict), with the verdicts recorded as notes.
    pub fn summary(&self, nvars: usize) -> CheckReport {
        let mut report = CheckReport::new("involutivity-equivalence");
        for sub in [&self.bracket, &self.cartan, &self.closure] {
            report.note(format!("{}: {}", sub.name, sub.verdict()));
        }
        if !self.verdicts_agree() {
            report.push_witness(
                format!(
                    "verdicts disagree: {}={}, {}={}, {}={}",
                    self.bracket.name,
                    self.bracket.verdict(),
                    self.cartan.name,
                    self.cartan.verdict(),
                    self.closure.name,
                    self.closure.verdict()
                ),
                Vec::new(),
                ScalarExpr::one(nvars),
            );
        }
        report
    }
}

/// Runs the pairwise bracket test, the Cartan test, and the closure test
/// and reports whether the three verdicts agree.
pub fn eds_involutivity_equivalence(
    a: &LieAlgebroid,
    e: &SubbundleSpec,
) -> Result<EquivalenceReport, IdsError> {
    let bracket = involutive_bracket_test(a, e)?;
    let (cartan, _) = cartan_test(a, e)?;
    let closure = eds_closure_check(a, e)?;
    Ok(EquivalenceReport {
        bracket,
        cartan,
        closure,
    })
}
