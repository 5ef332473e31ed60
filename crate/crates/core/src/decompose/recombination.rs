//! The linear system on cofactor coefficients whose kernel groups the
//! irreducible factors of `F = F1/F2` into the inner function.

use num_traits::{One, Zero};

use crate::derivation::{CofactorVector, JacobianDerivation};
use crate::factor::{factor_with_oracle, Factorization};
use crate::linalg::{kernel_basis, project_rebase, MatrixQ, VectorQ};
use crate::poly::{Monomial, MultiPoly, Rational, RationalFunction};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Num,
    Den,
}

/// The matrix of the system together with its column and row labels.
///
/// Column `j` holds the coefficients of the cofactor of factor `j`
/// (numerator factors first); row `r` corresponds to the coefficient of
/// monomial `row_index[r].0` in cofactor component `row_index[r].1`
/// (components numbered from 2 as the variables they pair with `X_1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecombinationSystem {
    pub matrix: MatrixQ,
    pub column_factors: Vec<(Side, MultiPoly, CofactorVector)>,
    pub row_index: Vec<(Monomial, usize)>,
}

impl RecombinationSystem {
    pub fn num_count(&self) -> usize {
        self.column_factors
            .iter()
            .filter(|c| c.0 == Side::Num)
            .count()
    }
}

/// Output of [`recombine`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recombination {
    /// `Π F1_i^v1_i / Π F2_i^v2_i`.
    pub inner: RationalFunction,
    pub basis_num: Vec<VectorQ>,
    pub basis_den: Vec<VectorQ>,
    pub v_num: VectorQ,
    pub v_den: VectorQ,
    pub factors_num: Vec<MultiPoly>,
    pub factors_den: Vec<MultiPoly>,
    pub system: RecombinationSystem,
}

/// All monomials in `n` variables of total degree at most `bound`, ordered
/// by `(τ_n, ..., τ_1)` ascending.
pub(crate) fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    rec(n, bound, &mut Vec::new(), &mut all);
    all.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    all.into_iter().map(Monomial::new).collect()
}

/// Builds the system from the irreducible factors of each side of `f` and
/// their cofactors for `D_f`. Rows cover every monomial of degree at most
/// `2·deg f − 2` and every component; entries are the raw cofactor
/// coefficients on both sides, so a kernel vector `x` satisfies
/// `Σ x_j 𝒢_j = 0`.
pub fn build_recombination_system(
    f: &RationalFunction,
    fac_num: &Factorization,
    fac_den: &Factorization,
) -> Result<RecombinationSystem> {
    let d = JacobianDerivation::new(f)?;
    let n = f.nvars();
    let mut column_factors = Vec::new();
    for (side, fac) in [(Side::Num, fac_num), (Side::Den, fac_den)] {
        for (p, _) in &fac.factors {
            column_factors.push((side, p.clone(), d.cofactor(p)?));
        }
    }
    let bound = (2 * f.degree()).saturating_sub(2);
    let mut row_index = Vec::new();
    for m in monomials_up_to(n, bound) {
        for l in 0..n - 1 {
            row_index.push((m.clone(), l + 2));
        }
    }
    let mut matrix = MatrixQ::zeros(row_index.len(), column_factors.len());
    for (r, (m, l)) in row_index.iter().enumerate() {
        for (c, (_, _, cof)) in column_factors.iter().enumerate() {
            let v = cof.components[l - 2].coefficient(m);
            if !v.is_zero() {
                matrix.set(r, c, v);
            }
        }
    }
    Ok(RecombinationSystem {
        matrix,
        column_factors,
        row_index,
    })
}

fn is_boolean_orthogonal(basis: &[VectorQ]) -> bool {
    let entries_ok = basis.iter().flatten().all(|v| v.is_zero() || v.is_one());
    let orthogonal = basis.iter().enumerate().all(|(i, a)| {
        basis[i + 1..]
            .iter()
            .all(|b| a.iter().zip(b).all(|(x, y)| x.is_zero() || y.is_zero()))
    });
    entries_ok && orthogonal && !basis.is_empty()
}

/// First vector of `basis` minimizing `Σ v_i · deg(factor_i)`.
fn lightest(basis: &[VectorQ], factors: &[MultiPoly]) -> VectorQ {
    let weight = |v: &VectorQ| -> Rational {
        v.iter()
            .zip(factors)
            .map(|(c, p)| c * Rational::from_integer(p.total_degree().unwrap_or(0).into()))
            .sum()
    };
    let mut best = &basis[0];
    let mut best_w = weight(best);
    for v in &basis[1..] {
        let w = weight(v);
        if w < best_w {
            best = v;
            best_w = w;
        }
    }
    best.clone()
}

fn product(nvars: usize, factors: &[MultiPoly], v: &VectorQ) -> MultiPoly {
    factors
        .iter()
        .zip(v)
        .filter(|(_, c)| c.is_one())
        .fold(MultiPoly::one(nvars), |acc, (p, _)| &acc * p)
}

/// Supplied candidate factors for each side, used when the built-in
/// factorization does not apply.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorOracle {
    pub num: Vec<MultiPoly>,
    pub den: Vec<MultiPoly>,
}

/// Groups the irreducible factors of the squarefree sides of `f` into the
/// inner function.
pub fn recombine(f: &RationalFunction, oracle: Option<&FactorOracle>) -> Result<Recombination> {
    let fac_num = factor_with_oracle(f.num(), oracle.map(|o| o.num.as_slice()))?;
    let fac_den = factor_with_oracle(f.den(), oracle.map(|o| o.den.as_slice()))?;
    let system = build_recombination_system(f, &fac_num, &fac_den)?;
    let s1 = fac_num.factors.len();
    let s2 = fac_den.factors.len();
    let kernel = kernel_basis(&system.matrix);
    let basis_num = project_rebase(&kernel, 0..s1);
    let basis_den = project_rebase(&kernel, s1..s1 + s2);
    if !is_boolean_orthogonal(&basis_num) || !is_boolean_orthogonal(&basis_den) {
        return Err(Error::BasisNotBoolean);
    }
    let factors_num = fac_num.irreducibles();
    let factors_den = fac_den.irreducibles();
    let v_num = lightest(&basis_num, &factors_num);
    let v_den = lightest(&basis_den, &factors_den);
    let n = f.nvars();
    let inner = RationalFunction::new(
        product(n, &factors_num, &v_num),
        product(n, &factors_den, &v_den),
    )?;
    Ok(Recombination {
        inner,
        basis_num,
        basis_den,
        v_num,
        v_den,
        factors_num,
        factors_den,
        system,
    })
}
