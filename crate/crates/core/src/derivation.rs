//! The Jacobian derivative attached to `f = f1/f2` and Darboux cofactors.
//!
//! For `F` in `Q[X1..Xn]` the derivative has components `l = 2..n`:
//!
//! ```text
//! D(F)_l = (∂1 f1·f2 − f1·∂1 f2)·∂l F − (∂l f1·f2 − f1·∂l f2)·∂1 F
//! ```
//!
//! `F` is a Darboux polynomial when `F` divides every component; the
//! quotient vector is its cofactor.

use crate::poly::{MultiPoly, RationalFunction};
use crate::{Error, Result};

/// Cofactor components for `l = 2..n`, in variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CofactorVector {
    pub components: Vec<MultiPoly>,
}

impl CofactorVector {
    /// Largest total degree among the nonzero components.
    pub fn degree(&self) -> Option<u32> {
        self.components
            .iter()
            .filter_map(MultiPoly::total_degree)
            .max()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }
}

impl std::ops::Add for &CofactorVector {
    type Output = CofactorVector;
    fn add(self, rhs: &CofactorVector) -> CofactorVector {
        CofactorVector {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// The derivation `D_f` with the Wronskian-like coefficients
/// `w_l = ∂l f1·f2 − f1·∂l f2` precomputed.
#[derive(Clone, Debug)]
pub struct JacobianDerivation {
    nvars: usize,
    w: Vec<MultiPoly>,
}

impl JacobianDerivation {
    pub fn new(f: &RationalFunction) -> Result<Self> {
        let n = f.nvars();
        if n < 2 {
            return Err(Error::WrongVariableCount {
                expected: 2,
                found: n,
            });
        }
        let (f1, f2) = (f.num(), f.den());
        let w = (0..n)
            .map(|l| {
                let a = &f1.partial_derivative(l)? * f2;
                let b = f1 * &f2.partial_derivative(l)?;
                Ok(&a - &b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JacobianDerivation { nvars: n, w })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<Vec<MultiPoly>> {
        if p.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, p.nvars()));
        }
        let d1 = p.partial_derivative(0)?;
        (1..self.nvars)
            .map(|l| {
                let dl = p.partial_derivative(l)?;
                Ok(&(&self.w[0] * &dl) - &(&self.w[l] * &d1))
            })
            .collect()
    }

    pub fn cofactor(&self, p: &MultiPoly) -> Result<CofactorVector> {
        let components = self
            .apply(p)?
            .iter()
            .map(|c| c.divide_exact(p).map_err(|_| Error::NotDarboux))
            .collect::<Result<Vec<_>>>()?;
        Ok(CofactorVector { components })
    }
}

/// `D_f(p)` as its `n − 1` components.
pub fn jacobian_apply(f: &RationalFunction, p: &MultiPoly) -> Result<Vec<MultiPoly>> {
    if f.nvars() != p.nvars() {
        return Err(Error::VariableCountMismatch(f.nvars(), p.nvars()));
    }
    JacobianDerivation::new(f)?.apply(p)
}

/// `D_f(p) / p`, or [`Error::NotDarboux`] when the division is not exact.
pub fn cofactor(f: &RationalFunction, p: &MultiPoly) -> Result<CofactorVector> {
    if f.nvars() != p.nvars() {
        return Err(Error::VariableCountMismatch(f.nvars(), p.nvars()));
    }
    if p.is_zero() {
        return Err(Error::DivisionByZero);
    }
    JacobianDerivation::new(f)?.cofactor(p)
}

/// Whether `g` is a first integral of `D_f`, i.e. `g.num` and `g.den` are
/// Darboux polynomials with equal cofactors.
pub fn is_first_integral(f: &RationalFunction, g: &RationalFunction) -> bool {
    let Ok(d) = JacobianDerivation::new(f) else {
        return false;
    };
    match (d.cofactor(g.num()), d.cofactor(g.den())) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}
