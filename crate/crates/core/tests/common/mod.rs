//! Random generators shared by the integration tests.
#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ratdec::factor::factor;
use ratdec::poly::{gcd, rat, MultiPoly, Rational, RationalFunction, UniPoly, UniRationalFunction};

pub fn nonzero(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    loop {
        let c = rng.gen_range(-h..=h);
        if c != 0 {
            return c;
        }
    }
}

/// Random bivariate polynomial of total degree exactly `d`, coefficients in
/// `[-h, h]`, each monomial present with probability `density`.
pub fn rand_poly(rng: &mut ChaCha8Rng, d: u32, h: i64, density: f64) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            if rng.gen_bool(density) {
                terms.push((vec![i, j], rat(rng.gen_range(-h..=h))));
            }
        }
    }
    let i = rng.gen_range(0..=d);
    terms.push((vec![i, d - i], rat(nonzero(rng, h))));
    MultiPoly::from_terms(2, terms)
}

pub fn rand_uni(rng: &mut ChaCha8Rng, d: usize, h: i64) -> UniPoly {
    let mut c: Vec<Rational> = (0..d).map(|_| rat(rng.gen_range(-h..=h))).collect();
    c.push(rat(nonzero(rng, h)));
    UniPoly::new(c)
}

/// Random reduced `f` with numerator and denominator of degree at most `d`
/// and `deg f = d`.
pub fn rand_reduced(rng: &mut ChaCha8Rng, d: u32, h: i64) -> RationalFunction {
    loop {
        let a = rand_poly(rng, d, h, 0.6);
        let b = {
            let k = rng.gen_range(1..=d);
            rand_poly(rng, k, h, 0.6)
        };
        if gcd(&a, &b).total_degree() != Some(0) {
            continue;
        }
        let f = RationalFunction::new(a, b).expect("nonzero denominator");
        if f.degree() == d {
            return f;
        }
    }
}

/// Random outer function of degree exactly `k`.
pub fn rand_outer(rng: &mut ChaCha8Rng, k: usize, h: i64) -> UniRationalFunction {
    loop {
        let a = rand_uni(rng, k, h);
        let b = {
            let k = rng.gen_range(0..=k);
            rand_uni(rng, k, h)
        };
        let u = UniRationalFunction::new(a, b).expect("nonzero denominator");
        if u.degree() == k {
            return u;
        }
    }
}

/// Pencil oracle: `f` is non-composite iff `f1 − f(a)·f2` is irreducible of
/// full degree for some point `a`. For `f = u(h)` with `deg u ≥ 2` every
/// such member has the factor `h1 − h(a)·h2` and a cofactor of positive
/// degree, so this direction is certain; the other direction is generic.
pub fn pencil_says_non_composite(f: &RationalFunction, rng: &mut ChaCha8Rng, tries: usize) -> bool {
    let mut done = 0;
    while done < tries {
        let a = [rat(rng.gen_range(-20..=20)), rat(rng.gen_range(-20..=20))];
        let den = f.den().eval(&a);
        if den.is_zero() {
            continue;
        }
        done += 1;
        let lambda = f.num().eval(&a) / den;
        let member = f.num() - &f.den().scale(&lambda);
        if member.total_degree() != Some(f.degree()) {
            continue;
        }
        if factor(&member)
            .map(|fac| fac.is_irreducible())
            .unwrap_or(false)
        {
            return true;
        }
    }
    false
}

pub fn random_non_composite(rng: &mut ChaCha8Rng, d: u32, h: i64) -> RationalFunction {
    loop {
        let f = rand_reduced(rng, d, h);
        if pencil_says_non_composite(&f, rng, 30) {
            return f;
        }
    }
}
