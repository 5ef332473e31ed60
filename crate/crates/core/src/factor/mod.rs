//! Irreducible factorization over Q.
//!
//! Univariate and bivariate polynomials are factored directly. Polynomials
//! in three or more variables need externally supplied candidate factors,
//! which are verified by exact division.

mod bivariate;
mod univariate;

use std::cmp::Ordering;

use crate::poly::{MultiPoly, Rational, UniPoly};
use crate::{Error, Result};

pub use bivariate::SPECIALIZATION_CANDIDATES;
pub use univariate::MAX_MODULAR_FACTORS;

/// `unit * Π factor^multiplicity`, with every factor irreducible, primitive
/// and of positive leading coefficient. Factors are pairwise non-associate
/// and sorted in decreasing [`MultiPoly::canonical_cmp`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub nvars: usize,
    pub unit: Rational,
    pub factors: Vec<(MultiPoly, u32)>,
}

impl Factorization {
    /// Normalizes and sorts `parts` and computes the unit so that the result
    /// multiplies back to `p`.
    fn assemble(p: &MultiPoly, parts: Vec<(MultiPoly, u32)>) -> Factorization {
        let mut factors: Vec<(MultiPoly, u32)> = Vec::new();
        for (f, m) in parts {
            let f = f.primitive_part();
            match factors.iter_mut().find(|(g, _)| *g == f) {
                Some(entry) => entry.1 += m,
                None => factors.push((f, m)),
            }
        }
        factors.sort_by(|a, b| b.0.canonical_cmp(&a.0));
        let mut unit = p.leading_coefficient();
        for (f, m) in &factors {
            unit /= num_traits::pow(f.leading_coefficient(), *m as usize);
        }
        Factorization {
            nvars: p.nvars(),
            unit,
            factors,
        }
    }

    /// The product `unit * Π factor^multiplicity`.
    pub fn expand(&self) -> MultiPoly {
        self.factors.iter().fold(
            MultiPoly::constant(self.nvars, self.unit.clone()),
            |acc, (f, m)| &acc * &f.pow(*m),
        )
    }

    /// Distinct irreducible factors in order.
    pub fn irreducibles(&self) -> Vec<MultiPoly> {
        self.factors.iter().map(|(f, _)| f.clone()).collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factorization of a univariate polynomial; factors are reported as
/// one-variable [`MultiPoly`] values.
pub fn factor_univariate(p: &UniPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut parts = Vec::new();
    if p.degree() != Some(0) {
        for (a, m) in univariate::yun(p) {
            for f in univariate::irreducible_factors(&a)? {
                parts.push((MultiPoly::from_unipoly(1, 0, &f), m));
            }
        }
    }
    Ok(Factorization::assemble(
        &MultiPoly::from_unipoly(1, 0, p),
        parts,
    ))
}

/// Factorization of a polynomial in exactly two variables.
pub fn factor_bivariate(p: &MultiPoly) -> Result<Factorization> {
    if p.nvars() != 2 {
        return Err(Error::WrongVariableCount {
            expected: 2,
            found: p.nvars(),
        });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let parts = if p.is_constant() {
        Vec::new()
    } else {
        bivariate::factor_bivariate_parts(p)?
    };
    Ok(Factorization::assemble(p, parts))
}

/// Factors `p` in any ring, as long as at most two variables actually occur.
/// Other polynomials return [`Error::MissingOracle`].
pub fn factor(p: &MultiPoly) -> Result<Factorization> {
    factor_with_oracle(p, None)
}

/// Factorization using `supplied` candidate factors when given, and the
/// built-in algorithms otherwise.
///
/// Supplied factors are normalized, deduplicated and checked: each must
/// divide `p`, and together with their computed multiplicities they must
/// account for all of `p` up to a constant. Supplied factors in at most two
/// variables are also checked for irreducibility.
pub fn factor_with_oracle(p: &MultiPoly, supplied: Option<&[MultiPoly]>) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match supplied {
        None => factor_builtin(p),
        Some(list) => verify_supplied(p, list),
    }
}

fn factor_builtin(p: &MultiPoly) -> Result<Factorization> {
    let n = p.nvars();
    let vars = p.variables();
    match vars.len() {
        0 => Ok(Factorization::assemble(p, Vec::new())),
        1 => {
            let v = vars[0];
            let u = p.to_unipoly(v).expect("single variable");
            let f = factor_univariate(&u)?;
            let parts = f
                .factors
                .iter()
                .map(|(g, m)| {
                    (
                        MultiPoly::from_unipoly(n, v, &g.to_unipoly(0).expect("univariate")),
                        *m,
                    )
                })
                .collect();
            Ok(Factorization::assemble(p, parts))
        }
        2 if n == 2 => factor_bivariate(p),
        2 => {
            let (a, b) = (vars[0], vars[1]);
            let images: Vec<MultiPoly> = (0..n)
                .map(|i| match i {
                    _ if i == a => MultiPoly::var(2, 0),
                    _ if i == b => MultiPoly::var(2, 1),
                    _ => MultiPoly::zero(2),
                })
                .collect();
            let back = [MultiPoly::var(n, a), MultiPoly::var(n, b)];
            let f = factor_bivariate(&p.substitute_all(&images))?;
            let parts = f
                .factors
                .iter()
                .map(|(g, m)| (g.substitute_all(&back), *m))
                .collect();
            Ok(Factorization::assemble(p, parts))
        }
        k => Err(Error::MissingOracle(k)),
    }
}

fn verify_supplied(p: &MultiPoly, list: &[MultiPoly]) -> Result<Factorization> {
    let mut distinct: Vec<MultiPoly> = Vec::new();
    for (i, f) in list.iter().enumerate() {
        if f.nvars() != p.nvars() {
            return Err(Error::VariableCountMismatch(p.nvars(), f.nvars()));
        }
        if f.is_zero() {
            return Err(Error::UnverifiedFactors(format!(
                "supplied factor {} is zero",
                i + 1
            )));
        }
        if f.is_constant() {
            continue;
        }
        let f = f.primitive_part();
        if !distinct.contains(&f) {
            distinct.push(f);
        }
    }
    let mut rem = p.clone();
    let mut parts = Vec::new();
    for (i, f) in distinct.iter().enumerate() {
        if f.variables().len() <= 2 && !factor(f)?.is_irreducible() {
            return Err(Error::UnverifiedFactors(format!(
                "supplied factor {} is reducible",
                i + 1
            )));
        }
        let mut m = 0;
        while let Ok(q) = rem.divide_exact(f) {
            rem = q;
            m += 1;
        }
        if m == 0 {
            return Err(Error::UnverifiedFactors(format!(
                "supplied factor {} does not divide the input",
                i + 1
            )));
        }
        parts.push((f.clone(), m));
    }
    if !rem.is_constant() {
        return Err(Error::UnverifiedFactors(
            "supplied factors do not account for the whole input".into(),
        ));
    }
    Ok(Factorization::assemble(p, parts))
}

/// Sort key shared with recombination: larger factors first.
pub fn factor_order(a: &MultiPoly, b: &MultiPoly) -> Ordering {
    b.canonical_cmp(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }

    #[test]
    fn univariate_examples() {
        let f = factor_univariate(&UniPoly::from_ints(&[1, 0, 1])).unwrap();
        assert!(f.is_irreducible());
        let f = factor_univariate(&UniPoly::from_ints(&[-1, 0, 0, 0, 1])).unwrap();
        let got: Vec<UniPoly> = f
            .factors
            .iter()
            .map(|(g, _)| g.to_unipoly(0).unwrap())
            .collect();
        assert_eq!(
            got,
            vec![
                UniPoly::from_ints(&[1, 0, 1]),
                UniPoly::from_ints(&[1, 1]),
                UniPoly::from_ints(&[-1, 1])
            ]
        );
        assert_eq!(f.unit, rat(1));
        // T(T-1)(T^2+1)
        let p = &UniPoly::from_ints(&[0, -1, 1]) * &UniPoly::from_ints(&[1, 0, 1]);
        let f = factor_univariate(&p).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.expand().to_unipoly(0).unwrap(), p);
    }

    #[test]
    fn constant_and_zero() {
        let f = factor_univariate(&UniPoly::constant(ratio(-3, 4))).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.unit, ratio(-3, 4));
        assert_eq!(
            factor_univariate(&UniPoly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn unit_carries_scalars() {
        // -2/3 (X - Y)^2 (X + 1)
        let p = (&(&x() - &y()).pow(2) * &(&x() + &MultiPoly::one(2))).scale(&ratio(-2, 3));
        let f = factor_bivariate(&p).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.unit, ratio(-2, 3));
    }

    #[test]
    fn oracle_path() {
        let z = MultiPoly::var(3, 2);
        let x3 = MultiPoly::var(3, 0);
        let y3 = MultiPoly::var(3, 1);
        let a = &(&x3 + &y3) + &z;
        let b = &x3 - &z;
        let p = &a * &b;
        let f = factor_with_oracle(&p, Some(&[a.clone(), b.clone()])).unwrap();
        assert_eq!(f.expand(), p);
        assert_eq!(f.factors.len(), 2);
        let wrong = &x3 + &z;
        assert!(matches!(
            factor_with_oracle(&p, Some(&[a.clone(), wrong])),
            Err(Error::UnverifiedFactors(_))
        ));
        assert!(matches!(
            factor_with_oracle(&p, Some(&[a])),
            Err(Error::UnverifiedFactors(_))
        ));
        assert_eq!(factor_with_oracle(&p, None), Err(Error::MissingOracle(3)));
    }

    #[test]
    fn two_used_variables_in_bigger_ring() {
        let x3 = MultiPoly::var(3, 0);
        let z = MultiPoly::var(3, 2);
        let p = &(&x3 * &x3) - &(&z * &z);
        let f = factor(&p).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), p);
    }
}
