//! Dense exact linear algebra over Q.

use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};

use crate::poly::Rational;

pub type VectorQ = Vec<Rational>;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: Vec<VectorQ>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        MatrixQ {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<VectorQ> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> VectorQ {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(crate::poly::format_rational)
                .collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixQ,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form by Gauss-Jordan elimination.
pub fn rref(m: &MatrixQ) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).recip();
        for j in c..a.cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        let pivot_row: Vec<Rational> = a.row(r).to_vec();
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if factor.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if pv.is_zero() {
                    continue;
                }
                let v = a.get(i, j) - &factor * pv;
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: pivots.len(),
        pivot_columns: pivots,
    }
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn determinant(m: &MatrixQ) -> Rational {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let mut a = m.clone();
    let n = a.rows;
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let piv = a.get(c, c).clone();
        det *= &piv;
        for i in c + 1..n {
            let factor = a.get(i, c) / &piv;
            if factor.is_zero() {
                continue;
            }
            for j in c..n {
                let v = a.get(i, j) - &factor * a.get(c, j);
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Basis of the right null space, returned in reduced row echelon form.
pub fn kernel_basis(m: &MatrixQ) -> Vec<VectorQ> {
    let red = rref(m);
    let n = m.cols;
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !red.pivot_columns.contains(c)) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (k, &pc) in red.pivot_columns.iter().enumerate() {
            v[pc] = -red.matrix.get(k, free).clone();
        }
        basis.push(v);
    }
    rebase(basis)
}

/// RREF basis of the span of the given vectors (all of one length).
pub fn rebase(vectors: Vec<VectorQ>) -> Vec<VectorQ> {
    if vectors.is_empty() {
        return vectors;
    }
    let red = rref(&MatrixQ::from_rows(vectors));
    red.matrix.to_rows().into_iter().take(red.rank).collect()
}

/// RREF basis of the span of the coordinate projections `v[range]`.
pub fn project_rebase(vectors: &[VectorQ], range: Range<usize>) -> Vec<VectorQ> {
    rebase(vectors.iter().map(|v| v[range.clone()].to_vec()).collect())
}
