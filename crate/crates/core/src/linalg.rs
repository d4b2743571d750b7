//! Symbolic linear algebra over the rational-function field: fraction-free
//! row reduction, generic rank, nullspace bases, and inversion.

use num::One;

use crate::expr::{poly_gcd_many, Poly, ScalarExpr};

/// A dense matrix of rational-function entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<ScalarExpr>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<ScalarExpr>>, nvars: usize) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            for e in row {
                assert_eq!(e.nvars(), nvars, "entry arity mismatch");
                data.push(e);
            }
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            nvars,
            data,
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Matrix {
            rows: n,
            cols: n,
            nvars,
            data: vec![ScalarExpr::zero(nvars); n * n],
        };
        for i in 0..n {
            *m.entry_mut(i, i) = ScalarExpr::one(nvars);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> &ScalarExpr {
        &self.data[r * self.cols + c]
    }

    fn entry_mut(&mut self, r: usize, c: usize) -> &mut ScalarExpr {
        &mut self.data[r * self.cols + c]
    }

    fn row(&self, r: usize) -> Vec<ScalarExpr> {
        (0..self.cols).map(|c| self.entry(r, c).clone()).collect()
    }

    /// Rank over the function field (generic rank).
    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Fraction-free row echelon form: rows are first cleared to
    /// polynomial entries, elimination uses cross-multiplication only, and
    /// every updated row is reduced by its polynomial content.
    fn echelon(&self) -> Echelon {
        let mut rows: Vec<Vec<ScalarExpr>> = (0..self.rows)
            .map(|r| clear_row_denominators(&self.row(r), self.nvars))
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(pivot_row) = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero())
            else {
                continue;
            };
            rows.swap(next_row, pivot_row);
            let pivot = rows[next_row][col].clone();
            for r in (next_row + 1)..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for c in 0..self.cols {
                    let updated = rows[r][c]
                        .mul(&pivot)
                        .sub(&rows[next_row][c].mul(&factor));
                    rows[r][c] = updated;
                }
                rows[r] = reduce_row_content(&rows[r], self.nvars);
            }
            pivots.push((next_row, col));
            next_row += 1;
            if next_row == rows.len() {
                break;
            }
        }
        Echelon { rows, pivots }
    }

    /// A basis of the right nullspace. Each basis vector corresponds to one
    /// free column (in increasing order), is denominator-cleared to
    /// polynomial entries, reduced by its content, and scaled so the free
    /// column's entry has leading coefficient 1.
    pub fn nullspace(&self) -> Vec<Vec<ScalarExpr>> {
        let ech = self.echelon();
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![ScalarExpr::zero(self.nvars); self.cols];
            v[free] = ScalarExpr::one(self.nvars);
            // Back-substitute pivot entries from the bottom up.
            for &(r, c) in ech.pivots.iter().rev() {
                let mut sum = ScalarExpr::zero(self.nvars);
                for j in (c + 1)..self.cols {
                    if ech.rows[r][j].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    sum = sum.add(&ech.rows[r][j].mul(&v[j]));
                }
                v[c] = sum
                    .neg()
                    .div(&ech.rows[r][c])
                    .expect("pivot entry is nonzero");
            }
            basis.push(normalize_nullspace_vector(v, free, self.nvars));
        }
        basis
    }

    /// Inverse over the function field, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Matrix::identity(n, self.nvars);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.entry(r, col).is_zero())?;
            for c in 0..n {
                work.data.swap(col * n + c, pivot_row * n + c);
                inv.data.swap(col * n + c, pivot_row * n + c);
            }
            let pivot = work.entry(col, col).clone();
            for c in 0..n {
                *work.entry_mut(col, c) = work
                    .entry(col, c)
                    .div(&pivot)
                    .expect("pivot is nonzero");
                *inv.entry_mut(col, c) = inv
                    .entry(col, c)
                    .div(&pivot)
                    .expect("pivot is nonzero");
            }
            for r in 0..n {
                if r == col || work.entry(r, col).is_zero() {
                    continue;
                }
                let factor = work.entry(r, col).clone();
                for c in 0..n {
                    let w = work.entry(r, c).sub(&work.entry(col, c).mul(&factor));
                    *work.entry_mut(r, c) = w;
                    let i = inv.entry(r, c).sub(&inv.entry(col, c).mul(&factor));
                    *inv.entry_mut(r, c) = i;
                }
            }
        }
        Some(inv)
    }

    /// Determinant by cofactor expansion along the first row; the matrices
    /// here stay small enough that this is fine.
    pub fn determinant(&self) -> ScalarExpr {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return ScalarExpr::one(self.nvars);
        }
        if n == 1 {
            return self.entry(0, 0).clone();
        }
        let mut acc = ScalarExpr::zero(self.nvars);
        for c in 0..n {
            if self.entry(0, c).is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<ScalarExpr>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&j| j != c)
                        .map(|j| self.entry(r, j).clone())
                        .collect()
                })
                .collect();
            let minor = Matrix::from_rows(minor_rows, self.nvars).determinant();
            let term = self.entry(0, c).mul(&minor);
            if c % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }
}

struct Echelon {
    rows: Vec<Vec<ScalarExpr>>,
    pivots: Vec<(usize, usize)>,
}

/// Multiplies a row by the least common multiple of its denominators so
/// every entry becomes polynomial, then removes the common content.
fn clear_row_denominators(row: &[ScalarExpr], nvars: usize) -> Vec<ScalarExpr> {
    let mut lcm = Poly::one(nvars);
    for e in row {
        if e.is_zero() {
            continue;
        }
        let den = e.denominator();
        let g = crate::expr::poly_gcd(&lcm, den);
        lcm = lcm.mul(&den.div_exact(&g).expect("gcd divides"));
    }
    let scale = ScalarExpr::from_poly(lcm);
    let cleared: Vec<ScalarExpr> = row.iter().map(|e| e.mul(&scale)).collect();
    reduce_row_content(&cleared, nvars)
}

/// Divides polynomial row entries by their common polynomial content.
fn reduce_row_content(row: &[ScalarExpr], nvars: usize) -> Vec<ScalarExpr> {
    debug_assert!(row.iter().all(ScalarExpr::is_polynomial));
    let content = poly_gcd_many(
        row.iter().filter(|e| !e.is_zero()).map(ScalarExpr::numerator),
        nvars,
    );
    if content.is_zero() || content.is_one() {
        return row.to_vec();
    }
    let inv = ScalarExpr::from_poly(content)
        .recip()
        .expect("nonzero content");
    row.iter().map(|e| e.mul(&inv)).collect()
}

/// Denominator-clears, reduces content, and scales so the distinguished
/// entry's leading coefficient is 1.
fn normalize_nullspace_vector(
    v: Vec<ScalarExpr>,
    distinguished: usize,
    nvars: usize,
) -> Vec<ScalarExpr> {
    let cleared = clear_row_denominators(&v, nvars);
    let lead = cleared[distinguished]
        .numerator()
        .leading()
        .map(|(_, c)| c.clone())
        .expect("distinguished entry is nonzero");
    if lead.is_one() {
        return cleared;
    }
    let scale = ScalarExpr::constant(nvars, lead.recip());
    cleared.iter().map(|e| e.mul(&scale)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_expr, Coords};

    fn matrix(coords: &Coords, rows: &[&[&str]]) -> Matrix {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| parse_expr(t, coords).unwrap())
                    .collect::<Vec<_>>()
            })
            .collect();
        Matrix::from_rows(parsed, coords.len())
    }

    #[test]
    fn rank_of_generic_matrix() {
        let c = Coords::standard(2);
        let m = matrix(&c, &[&["1", "x1", "0"], &["0", "1", "x2"]]);
        assert_eq!(m.rank(), 2);
        let dependent = matrix(&c, &[&["1", "x1"], &["x2", "x1*x2"]]);
        assert_eq!(dependent.rank(), 1);
    }

    #[test]
    fn nullspace_of_contact_matrix() {
        // Rows (0,1,0) and (1,0,x2): kernel spanned by (-x2, 0, 1).
        let c = Coords::standard(3);
        let m = matrix(&c, &[&["0", "1", "0"], &["1", "0", "x2"]]);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 1);
        let expected: Vec<_> = ["-x2", "0", "1"]
            .iter()
            .map(|t| parse_expr(t, &c).unwrap())
            .collect();
        assert_eq!(basis[0], expected);
    }

    #[test]
    fn full_rank_matrix_has_empty_nullspace() {
        let c = Coords::standard(2);
        let m = matrix(&c, &[&["1", "0"], &["x1", "1"]]);
        assert!(m.nullspace().is_empty());
    }

    #[test]
    fn inverse_round_trip() {
        let c = Coords::standard(2);
        let m = matrix(&c, &[&["1", "x1"], &["0", "x2"]]);
        let inv = m.inverse().unwrap();
        // m * inv = identity
        let mut prod = Vec::new();
        for r in 0..2 {
            let mut row = Vec::new();
            for cidx in 0..2 {
                let mut acc = ScalarExpr::zero(2);
                for k in 0..2 {
                    acc = acc.add(&m.entry(r, k).mul(inv.entry(k, cidx)));
                }
                row.push(acc);
            }
            prod.push(row);
        }
        let id = Matrix::identity(2, 2);
        assert_eq!(Matrix::from_rows(prod, 2), id);

        let singular = matrix(&c, &[&["1", "x1"], &["x2", "x1*x2"]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn determinant_small_cases() {
        let c = Coords::standard(2);
        let m = matrix(&c, &[&["1", "x1"], &["x2", "0"]]);
        assert_eq!(m.determinant(), parse_expr("-x1*x2", &c).unwrap());
    }
}
