//! The Lie algebroid data model in a fixed frame over one chart: the anchor
//! action, the section bracket, and the defining axioms as executable
//! checks.
//!
//! A Lie algebroid here is the local data `(n, p, ρ, L)`: `n` base
//! coordinates, fibre rank `p`, the anchor coefficient matrix `ρ^i_α`, and
//! the structure functions `L^γ_{αβ}` defined by the frame brackets
//! `[t_α, t_β] = L^γ_{αβ} t_γ`. Axioms are not enforced at construction so
//! that the checkers can diagnose bad inputs; run [`LieAlgebroid::validate`]
//! to certify a value.

use thiserror::Error;

use crate::expr::{Coords, ScalarExpr};
use crate::report::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebroidError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("anchor must be {n} x {p}, got {rows} x {cols}")]
    AnchorShape {
        n: usize,
        p: usize,
        rows: usize,
        cols: usize,
    },
    #[error("structure array must be {p} x {p} x {p}")]
    StructureShape { p: usize },
    #[error("entry arity {got} does not match the {n}-coordinate chart")]
    EntryArity { got: usize, n: usize },
}

/// A section `z = z^α t_α` of the algebroid, as its component tuple in the
/// fixed frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    components: Vec<ScalarExpr>,
}

impl Section {
    pub fn new(components: Vec<ScalarExpr>) -> Self {
        assert!(!components.is_empty(), "section must have components");
        let nvars = components[0].nvars();
        assert!(
            components.iter().all(|c| c.nvars() == nvars),
            "section components over mixed charts"
        );
        Section { components }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        Section::new(vec![ScalarExpr::zero(nvars); rank])
    }

    /// The frame section `t_α` (1-based).
    pub fn frame(rank: usize, nvars: usize, alpha: usize) -> Self {
        assert!(alpha >= 1 && alpha <= rank, "frame index out of range");
        let mut components = vec![ScalarExpr::zero(nvars); rank];
        components[alpha - 1] = ScalarExpr::one(nvars);
        Section::new(components)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.components[0].nvars()
    }

    /// Component `z^α` for a 1-based frame index.
    pub fn component(&self, alpha: usize) -> &ScalarExpr {
        &self.components[alpha - 1]
    }

    pub fn components(&self) -> &[ScalarExpr] {
        &self.components
    }

    pub fn add(&self, other: &Section) -> Section {
        assert_eq!(self.len(), other.len(), "section rank mismatch");
        Section::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Section) -> Section {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Section {
        Section::new(self.components.iter().map(ScalarExpr::neg).collect())
    }

    pub fn scale(&self, f: &ScalarExpr) -> Section {
        Section::new(self.components.iter().map(|c| c.mul(f)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ScalarExpr::is_zero)
    }
}

/// Local Lie algebroid data over a fixed chart and frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebroid {
    coords: Coords,
    rank: usize,
    /// `anchor[i-1][α-1]` houses `ρ^i_α`.
    anchor: Vec<Vec<ScalarExpr>>,
    /// `structure[α-1][β-1][γ-1]` houses `L^γ_{αβ}`.
    structure: Vec<Vec<Vec<ScalarExpr>>>,
}

impl LieAlgebroid {
    pub fn new(
        coords: Coords,
        rank: usize,
        anchor: Vec<Vec<ScalarExpr>>,
        structure: Vec<Vec<Vec<ScalarExpr>>>,
    ) -> Result<Self, AlgebroidError> {
        let n = coords.len();
        if rank == 0 {
            return Err(AlgebroidError::ZeroRank);
        }
        if anchor.len() != n || anchor.iter().any(|row| row.len() != rank) {
            return Err(AlgebroidError::AnchorShape {
                n,
                p: rank,
                rows: anchor.len(),
                cols: anchor.first().map_or(0, Vec::len),
            });
        }
        let shape_ok = structure.len() == rank
            && structure
                .iter()
                .all(|a| a.len() == rank && a.iter().all(|b| b.len() == rank));
        if !shape_ok {
            return Err(AlgebroidError::StructureShape { p: rank });
        }
        for e in anchor
            .iter()
            .flatten()
            .chain(structure.iter().flatten().flatten())
        {
            if e.nvars() != n {
                return Err(AlgebroidError::EntryArity { got: e.nvars(), n });
            }
        }
        Ok(LieAlgebroid {
            coords,
            rank,
            anchor,
            structure,
        })
    }

    /// Base dimension `n`.
    pub fn base_dim(&self) -> usize {
        self.coords.len()
    }

    /// Fibre rank `p`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    /// `ρ^i_α`, 1-based indices.
    pub fn anchor_entry(&self, i: usize, alpha: usize) -> &ScalarExpr {
        &self.anchor[i - 1][alpha - 1]
    }

    /// `L^γ_{αβ}`, 1-based indices.
    pub fn structure_fn(&self, alpha: usize, beta: usize, gamma: usize) -> &ScalarExpr {
        &self.structure[alpha - 1][beta - 1][gamma - 1]
    }

    pub fn frame_section(&self, alpha: usize) -> Section {
        Section::frame(self.rank, self.base_dim(), alpha)
    }

    /// The frame bracket `[t_α, t_β]` as a section with components
    /// `L^γ_{αβ}`.
    pub fn frame_bracket(&self, alpha: usize, beta: usize) -> Section {
        Section::new(
            (1..=self.rank)
                .map(|gamma| self.structure_fn(alpha, beta, gamma).clone())
                .collect(),
        )
    }

    /// The vector field of the frame section: `ρ(t_α) f = ρ^i_α ∂f/∂x^i`.
    pub fn anchor_apply_frame(&self, alpha: usize, f: &ScalarExpr) -> ScalarExpr {
        let mut acc = ScalarExpr::zero(self.base_dim());
        for i in 1..=self.base_dim() {
            let rho = self.anchor_entry(i, alpha);
            if rho.is_zero() {
                continue;
            }
            let df = f.partial(i).expect("coordinate index in range");
            acc = acc.add(&rho.mul(&df));
        }
        acc
    }

    /// The anchor action `ρ(z) f = ρ^i_α z^α ∂f/∂x^i`.
    ///
    /// Panics if the section rank does not match.
    pub fn anchor_apply(&self, z: &Section, f: &ScalarExpr) -> ScalarExpr {
        assert_eq!(z.len(), self.rank, "section rank mismatch");
        let mut acc = ScalarExpr::zero(self.base_dim());
        for i in 1..=self.base_dim() {
            let df = f.partial(i).expect("coordinate index in range");
            if df.is_zero() {
                continue;
            }
            for alpha in 1..=self.rank {
                let rho = self.anchor_entry(i, alpha);
                if rho.is_zero() || z.component(alpha).is_zero() {
                    continue;
                }
                acc = acc.add(&rho.mul(z.component(alpha)).mul(&df));
            }
        }
        acc
    }

    /// The section bracket in components:
    /// `[u,v]^γ = u^α v^β L^γ_{αβ} + ρ(u)(v^γ) − ρ(v)(u^γ)`,
    /// the unique bilinear antisymmetric extension of the frame bracket
    /// satisfying the Leibniz rule.
    pub fn bracket(&self, u: &Section, v: &Section) -> Section {
        assert_eq!(u.len(), self.rank, "section rank mismatch");
        assert_eq!(v.len(), self.rank, "section rank mismatch");
        let mut components = Vec::with_capacity(self.rank);
        for gamma in 1..=self.rank {
            let mut acc = ScalarExpr::zero(self.base_dim());
            for alpha in 1..=self.rank {
                if u.component(alpha).is_zero() {
                    continue;
                }
                for beta in 1..=self.rank {
                    let l = self.structure_fn(alpha, beta, gamma);
                    if l.is_zero() || v.component(beta).is_zero() {
                        continue;
                    }
                    acc = acc.add(&u.component(alpha).mul(v.component(beta)).mul(l));
                }
            }
            acc = acc.add(&self.anchor_apply(u, v.component(gamma)));
            acc = acc.sub(&self.anchor_apply(v, u.component(gamma)));
            components.push(acc);
        }
        Section::new(components)
    }

    /// Antisymmetry of the structure functions: `L^γ_{αβ} + L^γ_{βα} = 0`
    /// for every index triple.
    pub fn check_antisymmetry(&self) -> CheckReport {
        let mut report = CheckReport::new("antisymmetry");
        for alpha in 1..=self.rank {
            for beta in alpha..=self.rank {
                for gamma in 1..=self.rank {
                    let residual = self
                        .structure_fn(alpha, beta, gamma)
                        .add(self.structure_fn(beta, alpha, gamma));
                    if !residual.is_zero() {
                        report.push_witness("", vec![alpha, beta, gamma], residual);
                    }
                }
            }
        }
        report
    }

    /// Compatibility of anchor and bracket:
    /// `ρ^i_α ∂ρ^k_β/∂x^i − ρ^j_β ∂ρ^k_α/∂x^j − L^γ_{αβ} ρ^k_γ = 0`
    /// for all `(α, β, k)`. The witness residual is the anchor-derivative
    /// side minus the structure side.
    pub fn check_anchor_compatibility(&self) -> CheckReport {
        let mut report = CheckReport::new("anchor-compatibility");
        for alpha in 1..=self.rank {
            for beta in 1..=self.rank {
                for k in 1..=self.base_dim() {
                    let mut rhs = ScalarExpr::zero(self.base_dim());
                    rhs = rhs.add(&self.anchor_apply_frame(alpha, self.anchor_entry(k, beta)));
                    rhs = rhs.sub(&self.anchor_apply_frame(beta, self.anchor_entry(k, alpha)));
                    let mut lhs = ScalarExpr::zero(self.base_dim());
                    for gamma in 1..=self.rank {
                        let l = self.structure_fn(alpha, beta, gamma);
                        if l.is_zero() {
                            continue;
                        }
                        lhs = lhs.add(&l.mul(self.anchor_entry(k, gamma)));
                    }
                    let residual = rhs.sub(&lhs);
                    if !residual.is_zero() {
                        report.push_witness("", vec![alpha, beta, k], residual);
                    }
                }
            }
        }
        report
    }

    /// Jacobi identity on frame triples `α < β < γ`:
    /// `[t_α,[t_β,t_γ]] + [t_β,[t_γ,t_α]] + [t_γ,[t_α,t_β]] = 0`.
    /// Goes through [`LieAlgebroid::bracket`], so anchor-derivative terms
    /// of non-constant structure functions are covered. Together with the
    /// Leibniz rule this extends to arbitrary sections.
    pub fn check_jacobi(&self) -> CheckReport {
        let mut report = CheckReport::new("jacobi");
        for alpha in 1..=self.rank {
            for beta in (alpha + 1)..=self.rank {
                for gamma in (beta + 1)..=self.rank {
                    let t_a = self.frame_section(alpha);
                    let t_b = self.frame_section(beta);
                    let t_c = self.frame_section(gamma);
                    let cyclic = self
                        .bracket(&t_a, &self.bracket(&t_b, &t_c))
                        .add(&self.bracket(&t_b, &self.bracket(&t_c, &t_a)))
                        .add(&self.bracket(&t_c, &self.bracket(&t_a, &t_b)));
                    for delta in 1..=self.rank {
                        let residual = cyclic.component(delta);
                        if !residual.is_zero() {
                            report.push_witness(
                                "",
                                vec![alpha, beta, gamma, delta],
                                residual.clone(),
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// Aggregate axiom check: antisymmetry, anchor compatibility, Jacobi.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("axioms");
        report.absorb(self.check_antisymmetry());
        report.absorb(self.check_anchor_compatibility());
        report.absorb(self.check_jacobi());
        report
    }
}
