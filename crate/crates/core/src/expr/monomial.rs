//! Monomials: exponent vectors under the graded lexicographic order.

use std::cmp::Ordering;

/// A power product of the coordinate variables, stored as an exponent
/// vector of fixed arity. Variable indices are 0-based here; the public
/// coordinate indices used elsewhere are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn unit(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable index {v} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[v] = 1;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.exps[v]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exact monomial quotient, `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    /// The same monomial with the exponent of `v` replaced by `e`.
    pub fn with_exp(&self, v: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[v] = e;
        Monomial { exps }
    }
}

/// Graded lexicographic: total degree first, then lexicographic with the
/// lowest-index variable most significant.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => self.exps.cmp(&other.exps),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_ranks_degree_before_lex() {
        let x1 = Monomial::var(2, 0);
        let x2 = Monomial::var(2, 1);
        let x1x2 = x1.mul(&x2);
        let x1sq = x1.mul(&x1);
        assert!(x1sq > x1x2); // same degree, x1^2 lexicographically larger
        assert!(x1x2 > x1); // higher degree wins
        assert!(x1 > x2);
    }

    #[test]
    fn div_checks_componentwise() {
        let x1x2 = Monomial::from_exps(vec![1, 1]);
        let x1 = Monomial::var(2, 0);
        assert_eq!(x1x2.div(&x1), Some(Monomial::var(2, 1)));
        assert_eq!(x1.div(&x1x2), None);
    }
}
