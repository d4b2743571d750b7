//! Differential forms on the algebroid: alternating multilinear objects
//! stored sparsely on strictly increasing coframe multi-indices.
//!
//! The wedge follows the determinant (shuffle) convention without
//! factorial normalization, so `(t^1 ∧ t^2)(t_1, t_2) = 1`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebroid::Section;
use crate::expr::ScalarExpr;
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("coefficient key {key:?} is not a strictly increasing tuple in 1..={rank} of length {degree}")]
    BadKey {
        key: Vec<usize>,
        degree: usize,
        rank: usize,
    },
    #[error("coefficient arity {got} does not match the {nvars}-coordinate chart")]
    EntryArity { got: usize, nvars: usize },
}

/// All strictly increasing `k`-tuples with entries in `1..=n`, in
/// lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in start..=n.saturating_sub(k - 1) {
            prefix.push(i);
            rec(i + 1, n, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// A degree-`q` differential form. Coefficient keys are strictly
/// increasing 1-based frame index tuples; zero coefficients are never
/// stored, so structural equality is canonical equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialForm {
    degree: usize,
    rank: usize,
    nvars: usize,
    coeffs: BTreeMap<Vec<usize>, ScalarExpr>,
}

impl DifferentialForm {
    pub fn zero(degree: usize, rank: usize, nvars: usize) -> Self {
        DifferentialForm {
            degree,
            rank,
            nvars,
            coeffs: BTreeMap::new(),
        }
    }

    /// A 0-form holding the function `f`.
    pub fn scalar(rank: usize, f: ScalarExpr) -> Self {
        let nvars = f.nvars();
        let mut form = DifferentialForm::zero(0, rank, nvars);
        form.insert(Vec::new(), f);
        form
    }

    /// The coframe element `t^α`.
    pub fn coframe(rank: usize, nvars: usize, alpha: usize) -> Self {
        assert!(alpha >= 1 && alpha <= rank, "coframe index out of range");
        let mut form = DifferentialForm::zero(1, rank, nvars);
        form.insert(vec![alpha], ScalarExpr::one(nvars));
        form
    }

    /// A 1-form from its coefficient vector on the coframe.
    pub fn one_form(rank: usize, nvars: usize, coeffs: &[ScalarExpr]) -> Self {
        assert_eq!(coeffs.len(), rank, "coefficient count mismatch");
        let mut form = DifferentialForm::zero(1, rank, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            form.insert(vec![k + 1], c.clone());
        }
        form
    }

    pub fn from_coefficients<I>(
        degree: usize,
        rank: usize,
        nvars: usize,
        coeffs: I,
    ) -> Result<Self, FormError>
    where
        I: IntoIterator<Item = (Vec<usize>, ScalarExpr)>,
    {
        let mut form = DifferentialForm::zero(degree, rank, nvars);
        for (key, c) in coeffs {
            let increasing = key.windows(2).all(|w| w[0] < w[1]);
            let in_range = key.iter().all(|&i| i >= 1 && i <= rank);
            if key.len() != degree || !increasing || !in_range {
                return Err(FormError::BadKey {
                    key,
                    degree,
                    rank,
                });
            }
            if c.nvars() != nvars {
                return Err(FormError::EntryArity {
                    got: c.nvars(),
                    nvars,
                });
            }
            let prev = form.coefficient(&key).clone();
            form.insert(key, prev.add(&c));
        }
        Ok(form)
    }

    fn insert(&mut self, key: Vec<usize>, value: ScalarExpr) {
        debug_assert_eq!(key.len(), self.degree);
        if value.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, value);
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at a strictly increasing key; zero when absent.
    pub fn coefficient(&self, key: &[usize]) -> ScalarExpr {
        self.coeffs
            .get(key)
            .cloned()
            .unwrap_or_else(|| ScalarExpr::zero(self.nvars))
    }

    /// The single coefficient of a 0-form.
    pub fn scalar_part(&self) -> ScalarExpr {
        assert_eq!(self.degree, 0, "scalar_part of a positive-degree form");
        self.coefficient(&[])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &ScalarExpr)> {
        self.coeffs.iter()
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &DifferentialForm) -> DifferentialForm {
        self.check_compatible(other);
        // The zero form is the zero of every degree; let it absorb into
        // the other operand instead of insisting on a degree match.
        if self.degree != other.degree {
            if self.is_zero() {
                return other.clone();
            }
            if other.is_zero() {
                return self.clone();
            }
        }
        assert_eq!(self.degree, other.degree, "degree mismatch in addition");
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            let prev = out.coefficient(k);
            out.insert(k.clone(), prev.add(c));
        }
        out
    }

    pub fn sub(&self, other: &DifferentialForm) -> DifferentialForm {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DifferentialForm {
        DifferentialForm {
            degree: self.degree,
            rank: self.rank,
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, f: &ScalarExpr) -> DifferentialForm {
        if f.is_zero() {
            return DifferentialForm::zero(self.degree, self.rank, self.nvars);
        }
        DifferentialForm {
            degree: self.degree,
            rank: self.rank,
            nvars: self.nvars,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.clone(), c.mul(f)))
                .collect(),
        }
    }

    /// Exterior product under the determinant convention: the coefficient
    /// on a merged increasing tuple is the sign of the interleaving shuffle
    /// times the product of coefficients.
    pub fn wedge(&self, other: &DifferentialForm) -> DifferentialForm {
        self.check_compatible(other);
        let degree = self.degree + other.degree;
        let mut out = DifferentialForm::zero(degree, self.rank, self.nvars);
        if degree > self.rank {
            return out;
        }
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let Some((key, sign)) = merge_tuples(ka, kb) else {
                    continue;
                };
                let mut term = ca.mul(cb);
                if sign < 0 {
                    term = term.neg();
                }
                let prev = out.coefficient(&key);
                out.insert(key, prev.add(&term));
            }
        }
        out
    }

    /// Alternating multilinear evaluation `ω(z_1, …, z_q)`: for each stored
    /// key the determinant of the corresponding component matrix.
    ///
    /// Panics when the argument count differs from the degree.
    pub fn apply(&self, sections: &[Section]) -> ScalarExpr {
        assert_eq!(
            sections.len(),
            self.degree,
            "argument count must equal the degree"
        );
        if self.degree == 0 {
            return self.scalar_part();
        }
        let mut acc = ScalarExpr::zero(self.nvars);
        for (key, c) in &self.coeffs {
            let rows: Vec<Vec<ScalarExpr>> = key
                .iter()
                .map(|&i| {
                    sections
                        .iter()
                        .map(|z| z.component(i).clone())
                        .collect()
                })
                .collect();
            let det = Matrix::from_rows(rows, self.nvars).determinant();
            if det.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&det));
        }
        acc
    }

    fn check_compatible(&self, other: &DifferentialForm) {
        assert_eq!(self.rank, other.rank, "forms over different algebroids");
        assert_eq!(self.nvars, other.nvars, "forms over different charts");
    }
}

/// Merges two strictly increasing tuples into one, returning the combined
/// tuple and the sign of the sorting permutation; `None` when they share
/// an index.
fn merge_tuples(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] == b[j] {
            return None;
        }
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining entries of a.
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((out, sign))
}
