use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linalg::{kernel_basis, MatrixQ};
use crate::poly::{Monomial, MultiPoly, Rational, RationalFunction, UniPoly, UniRationalFunction};
use crate::{Error, Result};

/// Finds `u` with `u(h) = f` by solving
/// `f1·Σ b_i h1^i h2^(k−i) − f2·Σ a_i h1^i h2^(k−i) = 0` for the `2(k+1)`
/// coefficients, where `k = deg f / deg h`.
pub fn recover_u(f: &RationalFunction, h: &RationalFunction) -> Result<UniRationalFunction> {
    let (df, dh) = (f.degree() as usize, h.degree() as usize);
    if dh == 0 || df % dh != 0 {
        return Err(Error::NoSolution);
    }
    let k = df / dh;
    let n = f.nvars();
    let mut p1 = vec![MultiPoly::one(n)];
    let mut p2 = vec![MultiPoly::one(n)];
    for i in 1..=k {
        p1.push(&p1[i - 1] * h.num());
        p2.push(&p2[i - 1] * h.den());
    }
    let basis: Vec<MultiPoly> = (0..=k).map(|i| &p1[i] * &p2[k - i]).collect();
    // columns: a_0..a_k then b_0..b_k
    let mut columns: Vec<MultiPoly> = basis.iter().map(|b| -&(f.den() * b)).collect();
    columns.extend(basis.iter().map(|b| f.num() * b));

    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for c in &columns {
        for (m, _) in c.terms() {
            let next = rows.len();
            rows.entry(m.clone()).or_insert(next);
        }
    }
    let mut mat = MatrixQ::zeros(rows.len(), columns.len());
    for (j, c) in columns.iter().enumerate() {
        for (m, v) in c.terms() {
            mat.set(rows[m], j, v.clone());
        }
    }
    let kernel = kernel_basis(&mat);
    match kernel.len() {
        0 => Err(Error::NoSolution),
        1 => {
            let v = &kernel[0];
            let num = UniPoly::new(v[..=k].to_vec());
            let den = UniPoly::new(v[k + 1..].to_vec());
            if den.is_zero() {
                return Err(Error::NoSolution);
            }
            UniRationalFunction::new(num, den)
        }
        dim => Err(Error::AmbiguousSolution(dim)),
    }
}

/// `u(T / s)`, so that `u(h) = u'(s·h)` for `u' = scale_argument(u, s)`.
pub(crate) fn scale_argument(u: &UniRationalFunction, s: &Rational) -> UniRationalFunction {
    let sub = UniPoly::linear(Rational::zero(), s.recip());
    UniRationalFunction::new(u.num().compose(&sub), u.den().compose(&sub))
        .expect("nonzero denominator")
}
