use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rational_content, Monomial, Rational, UniPoly};
use crate::{Error, Result};

/// Multivariate polynomial over Q in canonical sparse form.
///
/// Terms are kept in a map from [`Monomial`] to nonzero coefficient, so two
/// polynomials are equal exactly when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    /// The variable `X_{index+1}` (indices are zero-based).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), Rational::one());
        p
    }

    pub fn monomial(mono: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(mono.nvars());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    /// Integer coefficients, for tests and literals.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), Rational::from_integer(BigInt::from(*c)))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` is the degree of the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `index`; `None` for the zero polynomial.
    pub fn degree_in(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[index]).max()
    }

    /// Variables that actually occur.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.degree_in(i).unwrap_or(0) > 0)
            .collect()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v.clone()))
                .collect(),
        }
    }

    /// `self -= c * mono * q` in place.
    fn sub_scaled_shifted(&mut self, q: &MultiPoly, c: &Rational, mono: &Monomial) {
        for (m, v) in &q.terms {
            self.add_term(m.mul(mono), -(c * v));
        }
    }

    /// Formal partial derivative in variable `index`.
    pub fn partial_derivative(&self, index: usize) -> Result<MultiPoly> {
        if index >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.exponents_mut()[index] -= 1;
            out.terms
                .insert(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Substitutes the assigned variables. Unassigned variables are kept;
    /// assigned ones no longer occur in the result.
    pub fn eval_partial(&self, assignments: &[Option<Rational>]) -> Result<MultiPoly> {
        if assignments.len() > self.nvars {
            return Err(Error::VariableOutOfRange {
                index: assignments.len() - 1,
                nvars: self.nvars,
            });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = m.clone();
            for (i, a) in assignments.iter().enumerate() {
                if let Some(v) = a {
                    let e = mono.exponents()[i];
                    if e > 0 {
                        coeff *= num_traits::pow(v.clone(), e as usize);
                        mono.exponents_mut()[i] = 0;
                    }
                }
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }

    /// Full evaluation at a point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.exponents().iter().zip(point) {
                if *e > 0 {
                    t *= num_traits::pow(v.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replaces every variable `X_i` by `images[i]` (all over the same ring).
    pub fn substitute_all(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars);
        let target_n = images.first().map(|p| p.nvars).unwrap_or(self.nvars);
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(p.nvars), p.clone()])
            .collect();
        let mut out = MultiPoly::zero(target_n);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target_n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients as a polynomial in variable `index`: entry `k` multiplies
    /// `X_index^k` and does not involve `X_index`.
    pub fn to_univariate_coeffs(&self, index: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in(index) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut out = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponents()[index] as usize;
            let mut m2 = m.clone();
            m2.exponents_mut()[index] = 0;
            out[e].terms.insert(m2, c.clone());
        }
        out
    }

    pub fn from_univariate_coeffs(nvars: usize, index: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut m2 = m.clone();
                m2.exponents_mut()[index] += k as u32;
                out.add_term(m2, v.clone());
            }
        }
        out
    }

    /// The polynomial as a univariate one in `index`, if no other variable occurs.
    pub fn to_unipoly(&self, index: usize) -> Option<UniPoly> {
        let mut coeffs =
            vec![Rational::zero(); self.degree_in(index).map(|d| d as usize + 1).unwrap_or(0)];
        for (m, c) in &self.terms {
            if m.exponents()
                .iter()
                .enumerate()
                .any(|(i, &e)| i != index && e > 0)
            {
                return None;
            }
            coeffs[m.exponents()[index] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_unipoly(nvars: usize, index: usize, p: &UniPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = Monomial::one(nvars);
            m.exponents_mut()[index] = k as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Embeds into a ring with `nvars` variables, appending new trailing ones.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            e.resize(nvars, 0);
            out.terms.insert(Monomial::new(e), c.clone());
        }
        out
    }

    /// Drops variable `index`, which must not occur.
    pub fn remove_var(&self, index: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            debug_assert_eq!(m.exponents()[index], 0);
            let mut e = m.exponents().to_vec();
            e.remove(index);
            out.terms.insert(Monomial::new(e), c.clone());
        }
        out
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rational {
        rational_content(self.terms.values())
    }

    /// `self / content`, with positive leading coefficient. Zero stays zero.
    pub fn primitive_part(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    /// Exact quotient `self / q`.
    pub fn divide_exact(&self, q: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(q)?;
        let (lm_q, lc_q) = match q.leading_term() {
            Some((m, c)) => (m.clone(), c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        if q.is_constant() {
            return Ok(self.scale(&lc_q.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        let lc_inv = lc_q.recip();
        while let Some((lm, lc)) = rem.leading_term() {
            let m = lm.div(&lm_q).ok_or(Error::NotDivisible)?;
            let c = lc * &lc_inv;
            rem.sub_scaled_shifted(q, &c, &m);
            quot.terms.insert(m, c);
        }
        Ok(quot)
    }

    /// Whether `q` divides `self` exactly.
    pub fn divisible_by(&self, q: &MultiPoly) -> bool {
        self.divide_exact(q).is_ok()
    }

    /// Total order used for deterministic sorting of polynomials: compares
    /// term sequences from the leading term down (monomial, then coefficient).
    pub fn canonical_cmp(&self, other: &MultiPoly) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    let o = ma.cmp(mb).then_with(|| ca.cmp(cb));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
            }
        }
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        })
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable count mismatch in add")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable count mismatch in sub")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("variable count mismatch in mul")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
