//! Bivariate factorization over Q: specialize `X = x0`, factor the
//! univariate image, lift the factors X-adically and recombine.
//!
//! Variable 0 is `X` (the lifting variable), variable 1 is `Y`.

use itertools::Itertools;
use num_traits::Zero;

use super::univariate::irreducible_factors;
use crate::poly::{gcd, rat, MultiPoly, Rational, UniPoly};
use crate::{Error, Result};

/// Number of specialization points examined before giving up.
pub const SPECIALIZATION_CANDIDATES: usize = 41;
/// Good specializations factored before picking the one with fewest factors.
const SPECIALIZATIONS_COMPARED: usize = 3;

type Series = Vec<UniPoly>;

fn x_var() -> MultiPoly {
    MultiPoly::var(2, 0)
}

fn y_var() -> MultiPoly {
    MultiPoly::var(2, 1)
}

/// The content of `p` as a polynomial in `var`, i.e. the gcd of its
/// coefficients, which do not involve `var`.
pub(crate) fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.nvars());
    for c in p.to_univariate_coeffs(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            return MultiPoly::one(p.nvars());
        }
    }
    g
}

/// Yun's squarefree decomposition with respect to `var` of a polynomial
/// primitive in `var`. Parts are returned with their multiplicity.
pub(crate) fn yun_multi(f: &MultiPoly, var: usize) -> Result<Vec<(MultiPoly, u32)>> {
    let fp = f.partial_derivative(var)?;
    let b = gcd(f, &fp);
    let mut c = f.divide_exact(&b)?;
    let mut d = &fp.divide_exact(&b)? - &c.partial_derivative(var)?;
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree_in(var).unwrap_or(0) > 0 {
        let a = gcd(&c, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        c = c.divide_exact(&a)?;
        d = &d.divide_exact(&a)? - &c.partial_derivative(var)?;
        i += 1;
    }
    Ok(out)
}

/// Irreducible factors with multiplicities of a nonconstant bivariate
/// polynomial. The unit is not tracked.
pub(crate) fn factor_bivariate_parts(p: &MultiPoly) -> Result<Vec<(MultiPoly, u32)>> {
    let mut out = Vec::new();
    let mut q = p.clone();
    for var in [1, 0] {
        let c = content_in(&q, var);
        if !c.is_constant() {
            q = q.divide_exact(&c)?;
            let other = 1 - var;
            let uc = c
                .to_unipoly(other)
                .expect("content lives in the other variable");
            for (f, m) in univariate_parts(&uc)? {
                out.push((MultiPoly::from_unipoly(2, other, &f), m));
            }
        }
    }
    if q.is_constant() {
        return Ok(out);
    }
    for (a, m) in yun_multi(&q, 1)? {
        for f in factor_squarefree(&a)? {
            out.push((f, m));
        }
    }
    Ok(out)
}

fn univariate_parts(p: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    let mut out = Vec::new();
    for (a, m) in super::univariate::yun(p) {
        for f in irreducible_factors(&a)? {
            out.push((f, m));
        }
    }
    Ok(out)
}

/// `0, 1, -1, 2, -2, ...`
fn specialization_point(k: usize) -> Rational {
    let h = k.div_ceil(2) as i64;
    if k % 2 == 1 {
        rat(h)
    } else {
        rat(-h)
    }
}

fn at_x(p: &MultiPoly, x0: &Rational) -> UniPoly {
    p.eval_partial(&[Some(x0.clone())])
        .expect("two variables")
        .to_unipoly(1)
        .expect("only Y remains")
}

/// Factors a squarefree polynomial without factors in `X` alone or `Y` alone.
fn factor_squarefree(a: &MultiPoly) -> Result<Vec<MultiPoly>> {
    let dy = a.degree_in(1).unwrap_or(0);
    if a.degree_in(0).unwrap_or(0) == 0 {
        let u = a.to_unipoly(1).expect("univariate in Y");
        return Ok(irreducible_factors(&u)?
            .iter()
            .map(|f| MultiPoly::from_unipoly(2, 1, f))
            .collect());
    }
    if dy <= 1 {
        return Ok(vec![a.primitive_part()]);
    }
    let lc_y = a.to_univariate_coeffs(1).pop().expect("nonzero");

    let mut best: Option<(Rational, Vec<UniPoly>)> = None;
    let mut good = 0;
    for k in 0..SPECIALIZATION_CANDIDATES {
        let x0 = specialization_point(k);
        if lc_y.eval(&[x0.clone(), Rational::zero()]).is_zero() {
            continue;
        }
        let image = at_x(a, &x0);
        if image.gcd(&image.derivative()).degree() != Some(0) {
            continue;
        }
        let facs = irreducible_factors(&image)?;
        if facs.len() == 1 {
            return Ok(vec![a.primitive_part()]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((x0, facs));
        }
        good += 1;
        if good == SPECIALIZATIONS_COMPARED {
            break;
        }
    }
    let Some((x0, images)) = best else {
        return Err(Error::NoGoodSpecialization(SPECIALIZATION_CANDIDATES));
    };

    let shift = |c: &Rational| a_shift(c);
    let b = a.substitute_all(&[shift(&x0), y_var()]);
    let factors = lift_and_recombine(&b, images)?;
    let back = shift(&-x0);
    Ok(factors
        .iter()
        .map(|f| f.substitute_all(&[back.clone(), y_var()]).primitive_part())
        .collect())
}

/// `X + c`.
fn a_shift(c: &Rational) -> MultiPoly {
    &x_var() + &MultiPoly::constant(2, c.clone())
}

/// Coefficients of `p` in powers of X, each a polynomial in Y.
fn x_series(p: &MultiPoly, len: usize) -> Series {
    let mut out: Series = p
        .to_univariate_coeffs(0)
        .iter()
        .map(|c| c.to_unipoly(1).expect("coefficient in Y"))
        .collect();
    out.resize(len, UniPoly::zero());
    out.truncate(len);
    out
}

fn series_to_poly(s: &[UniPoly]) -> MultiPoly {
    let coeffs: Vec<MultiPoly> = s.iter().map(|c| MultiPoly::from_unipoly(2, 1, c)).collect();
    MultiPoly::from_univariate_coeffs(2, 0, &coeffs)
}

fn series_mul(a: &[UniPoly], b: &[UniPoly], len: usize) -> Series {
    let mut out = vec![UniPoly::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    out
}

/// Inverse of `s` modulo `X^len` for a power series with scalar coefficients.
fn scalar_series_inverse(s: &[Rational], len: usize) -> Vec<Rational> {
    let inv0 = s[0].recip();
    let mut inv = vec![inv0.clone()];
    for k in 1..len {
        let mut acc = Rational::zero();
        for j in 1..=k.min(s.len() - 1) {
            acc += &s[j] * &inv[k - j];
        }
        inv.push(-acc * &inv0);
    }
    inv
}

/// `s` with `s * a ≡ 1 (mod m)` for coprime `a`, `m` over Q.
fn inverse_mod(a: &UniPoly, m: &UniPoly) -> UniPoly {
    let (mut r0, mut r1) = (a.div_rem(m).1, m.clone());
    let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s2);
    }
    debug_assert_eq!(r0.degree(), Some(0), "moduli must be coprime");
    s0.scale(&r0.leading_coefficient().recip()).div_rem(m).1
}

/// Given `b` with `b(0, Y)` squarefree of full Y-degree and its irreducible
/// factors `images`, returns the irreducible factors of `b`.
fn lift_and_recombine(b: &MultiPoly, images: Vec<UniPoly>) -> Result<Vec<MultiPoly>> {
    let n = b.degree_in(0).unwrap_or(0) as usize + 1;
    let dy = b.degree_in(1).expect("nonzero") as usize;
    let lc_series = |p: &MultiPoly| -> Vec<Rational> {
        let lc = p.to_univariate_coeffs(1).pop().expect("nonzero");
        let u = lc.to_unipoly(0).expect("leading coefficient in X");
        (0..n).map(|k| u.coeff(k)).collect()
    };

    // monic (in Y) series b / lc_Y(b) mod X^n
    let lc = lc_series(b);
    let inv = scalar_series_inverse(&lc, n);
    let bs = x_series(b, n);
    let m: Series = (0..n)
        .map(|k| (0..=k).fold(UniPoly::zero(), |acc, j| &acc + &bs[j].scale(&inv[k - j])))
        .collect();

    let g: Vec<UniPoly> = images.iter().map(UniPoly::monic).collect();
    let r = g.len();
    let beta: Vec<UniPoly> = (0..r)
        .map(|i| {
            let others = (0..r)
                .filter(|&j| j != i)
                .fold(UniPoly::one(), |acc, j| &acc * &g[j]);
            inverse_mod(&others, &g[i])
        })
        .collect();

    // G[i] are the lifted factors; prefix[j] = G[0] * ... * G[j]
    let mut lifted: Vec<Series> = g
        .iter()
        .map(|gi| {
            let mut s = vec![UniPoly::zero(); n];
            s[0] = gi.clone();
            s
        })
        .collect();
    let mut prefix: Vec<Series> = vec![vec![UniPoly::zero(); n]; r];
    let update_prefix = |prefix: &mut Vec<Series>, lifted: &[Series], k: usize| {
        prefix[0][k] = lifted[0][k].clone();
        for j in 1..r {
            let mut acc = UniPoly::zero();
            for t in 0..=k {
                if !prefix[j - 1][t].is_zero() && !lifted[j][k - t].is_zero() {
                    acc = &acc + &(&prefix[j - 1][t] * &lifted[j][k - t]);
                }
            }
            prefix[j][k] = acc;
        }
    };
    update_prefix(&mut prefix, &lifted, 0);
    debug_assert_eq!(prefix[r - 1][0], m[0]);
    for k in 1..n {
        update_prefix(&mut prefix, &lifted, k);
        let e = &m[k] - &prefix[r - 1][k];
        if e.is_zero() {
            continue;
        }
        debug_assert!(e.degree().unwrap() < dy);
        for i in 0..r {
            lifted[i][k] = (&e * &beta[i]).div_rem(&g[i]).1;
        }
        update_prefix(&mut prefix, &lifted, k);
    }

    let mut rem = b.clone();
    let mut out = Vec::new();
    let probe = rat(7);
    let mut size = 1;
    'grow: while 2 * size <= lifted.len() {
        for subset in (0..lifted.len()).combinations(size) {
            let lc = lc_series(&rem);
            let lc_s: Series = lc.iter().map(|c| UniPoly::constant(c.clone())).collect();
            let prod = subset
                .iter()
                .fold(lc_s, |acc, &i| series_mul(&acc, &lifted[i], n));
            let cand = series_to_poly(&prod);
            let cand = cand.divide_exact(&content_in(&cand, 1))?.primitive_part();
            if cand.degree_in(1).unwrap_or(0) == 0 {
                continue;
            }
            let ct = at_x(&cand, &probe);
            if ct.degree() == cand.degree_in(1).map(|d| d as usize)
                && !at_x(&rem, &probe).div_rem(&ct).1.is_zero()
            {
                continue;
            }
            if let Ok(q) = rem.divide_exact(&cand) {
                out.push(cand);
                rem = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'grow;
            }
        }
        size += 1;
    }
    if !rem.is_constant() {
        out.push(rem.primitive_part());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        x_var()
    }
    fn y() -> MultiPoly {
        y_var()
    }
    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(2, rat(v))
    }

    fn factor_set(p: &MultiPoly) -> Vec<(MultiPoly, u32)> {
        let mut f = factor_bivariate_parts(p).unwrap();
        for (g, _) in f.iter_mut() {
            *g = g.primitive_part();
        }
        f.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        f
    }

    #[test]
    fn contents_with_gaps() {
        assert_eq!(factor_set(&(&x() * &y())), vec![(y(), 1), (x(), 1)]);
        let p = &(&(&x() * &x()) * &y()) * &(&(&x() * &y()) + &c(1));
        let f = factor_set(&p);
        assert_eq!(f.len(), 3);
        assert!(f.contains(&(x(), 2)) && f.contains(&(y(), 1)));
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() * &x()) - &(&y() * &y());
        let f = factor_set(&p);
        assert_eq!(f.len(), 2);
        assert!(f.contains(&(&x() + &y(), 1)));
        assert!(f.contains(&(&x() - &y(), 1)));
    }

    #[test]
    fn irreducible_needs_lifting() {
        // X^2 + Y^2 - 1 is irreducible but specializes to (Y-1)(Y+1) at X = 0
        let p = &(&(&x() * &x()) + &(&y() * &y())) - &c(1);
        assert_eq!(factor_set(&p), vec![(p.clone(), 1)]);
    }

    #[test]
    fn contents_and_multiplicities() {
        // 6 * X^2 * (Y + 1)^3 * (X*Y + 2)
        let a = &y() + &c(1);
        let b = &(&x() * &y()) + &c(2);
        let p = &(&(&(&x() * &x()) * &a.pow(3)) * &b) * &c(6);
        let f = factor_set(&p);
        assert_eq!(f.len(), 3);
        assert!(f.contains(&(x(), 2)));
        assert!(f.contains(&(a, 3)));
        assert!(f.contains(&(b, 1)));
    }

    #[test]
    fn nonmonic_leading_coefficients() {
        // (X*Y^2 + Y + 1)(X^2*Y - 3X + 2)(Y - X^3)
        let f1 = &(&(&x() * &y().pow(2)) + &y()) + &c(1);
        let f2 = &(&(&x().pow(2) * &y()) - &x().scale(&rat(3))) + &c(2);
        let f3 = &y() - &x().pow(3);
        let p = &(&f1 * &f2) * &f3;
        let got = factor_set(&p);
        assert_eq!(got.len(), 3);
        for f in [f1, f2, f3] {
            assert!(got.contains(&(f.primitive_part(), 1)), "missing {f:?}");
        }
    }

    #[test]
    fn specialization_points_alternate() {
        let pts: Vec<Rational> = (0..5).map(specialization_point).collect();
        assert_eq!(pts, vec![rat(0), rat(1), rat(-1), rat(2), rat(-2)]);
    }
}
