//! Univariate factorization over Z by the Zassenhaus method: modular
//! factorization (Cantor-Zassenhaus), quadratic Hensel lifting along a
//! factor tree, and subset recombination with trial division.

use itertools::Itertools;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::modp::{next_prime, Zp};
use crate::poly::{Rational, UniPoly};
use crate::{Error, Result};

/// Maximum number of modular factors handed to subset recombination.
pub const MAX_MODULAR_FACTORS: usize = 20;

const FIRST_PRIME: u64 = 31;
const PRIMES_TRIED: usize = 3;

/// Dense integer polynomial, ascending, no trailing zeros.
pub(crate) type IntPoly = Vec<BigInt>;

fn trim(v: &mut IntPoly) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Primitive integer polynomial with positive leading coefficient
/// proportional to `p`.
pub(crate) fn to_primitive_int(p: &UniPoly) -> IntPoly {
    let pp = p.primitive_part();
    pp.coeffs().iter().map(|c| c.to_integer()).collect()
}

pub(crate) fn from_int(p: &IntPoly) -> UniPoly {
    UniPoly::new(
        p.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

/// Squarefree decomposition (Yun) of a nonconstant polynomial over Q:
/// monic `a_i` with `p = lc * Π a_i^i`, constant parts dropped.
pub(crate) fn yun(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let f = p.monic();
    let fp = f.derivative();
    let b = f.gcd(&fp);
    let mut c = f.div_rem(&b).0;
    let mut d = &fp.div_rem(&b).0 - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        c = c.div_rem(&a).0;
        d = &d.div_rem(&a).0 - &c.derivative();
        i += 1;
    }
    out
}

/// Irreducible factors over Q of a squarefree nonconstant polynomial, each
/// primitive over Z with positive leading coefficient.
pub(crate) fn irreducible_factors(p: &UniPoly) -> Result<Vec<UniPoly>> {
    let f = to_primitive_int(p);
    Ok(factor_squarefree_int(&f)?.iter().map(from_int).collect())
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient.
pub(crate) fn factor_squarefree_int(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let lc = f.last().unwrap().clone();

    // pick the prime with the fewest modular factors among the first few good ones
    let mut best: Option<(Zp, Vec<Vec<u64>>)> = None;
    let mut p = FIRST_PRIME;
    let mut good = 0;
    while good < PRIMES_TRIED {
        let zp = Zp::new(p);
        p = next_prime(p + 1);
        if zp.reduce(&lc) == 0 {
            continue;
        }
        let fp = zp.poly_monic(&zp.poly_from_bigints(f));
        if zp.poly_gcd(&fp, &zp.poly_derivative(&fp)).len() != 1 {
            continue;
        }
        good += 1;
        let facs = factor_mod_p(&zp, &fp);
        if facs.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((zp, facs));
        }
    }
    let (zp, modular) = best.expect("at least one good prime");
    if modular.len() > MAX_MODULAR_FACTORS {
        return Err(Error::TooManyModularFactors {
            found: modular.len(),
            limit: MAX_MODULAR_FACTORS,
        });
    }

    let bound = coefficient_bound(f);
    let pb = BigInt::from(zp.p);
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift(f, &modular, &zp, &modulus);
    Ok(recombine(f, lifted, &modulus))
}

/// `2 * |lc| * 2^n * ||f||_2` rounded up: twice the largest coefficient a
/// factor candidate `lc * (monic factor)` can have.
fn coefficient_bound(f: &IntPoly) -> BigInt {
    let n = f.len() - 1;
    let sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = sq.sqrt() + BigInt::one();
    BigInt::from(2) * f.last().unwrap().abs() * (BigInt::one() << n) * norm
}

// ---- factorization modulo p ----

/// Monic irreducible factors of a monic squarefree polynomial mod `p`.
pub(crate) fn factor_mod_p(zp: &Zp, f: &[u64]) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(zp, f) {
        equal_degree(zp, &g, d, &mut rng, &mut out);
    }
    out.sort();
    out
}

fn distinct_degree(zp: &Zp, f: &[u64]) -> Vec<(Vec<u64>, usize)> {
    let x = vec![0, 1];
    let mut out = Vec::new();
    let mut g = f.to_vec();
    let mut h = x.clone();
    let mut i = 0;
    while g.len() > 2 * (i + 1) {
        i += 1;
        h = zp.poly_powmod(&h, zp.p as u128, &g);
        let d = zp.poly_gcd(&g, &zp.poly_sub(&h, &x));
        if d.len() > 1 {
            g = zp.poly_divrem(&g, &d).0;
            h = zp.poly_rem(&h, &g);
            out.push((d, i));
        }
    }
    if g.len() > 1 {
        let deg = g.len() - 1;
        out.push((g, deg));
    }
    out
}

fn equal_degree(zp: &Zp, f: &[u64], d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    loop {
        let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..zp.p)).collect();
        Zp::trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
        let mut t = a.clone();
        let mut norm = a.clone();
        for _ in 1..d {
            t = zp.poly_powmod(&t, zp.p as u128, f);
            norm = zp.poly_rem(&zp.poly_mul(&norm, &t), f);
        }
        let b = zp.poly_powmod(&norm, ((zp.p - 1) / 2) as u128, f);
        let g = zp.poly_gcd(f, &zp.poly_sub(&b, &[1]));
        if g.len() > 1 && g.len() < f.len() {
            let h = zp.poly_divrem(f, &g).0;
            equal_degree(zp, &g, d, rng, out);
            equal_degree(zp, &zp.poly_monic(&h), d, rng, out);
            return;
        }
    }
}

// ---- arithmetic in (Z/m)[x] on BigInt coefficients ----

fn reduce(a: &[BigInt], m: &BigInt) -> IntPoly {
    let mut v: IntPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut v);
    v
}

fn add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: IntPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> IntPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let v: IntPoly = (0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect();
    reduce(&v, m)
}

fn mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    reduce(&out, m)
}

fn scale(a: &[BigInt], c: &BigInt, m: &BigInt) -> IntPoly {
    reduce(&a.iter().map(|x| x * c).collect::<Vec<_>>(), m)
}

/// Division by a monic `b` modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (IntPoly, IntPoly) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (reduce(&q, m), reduce(&r, m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let (mut r0, mut r1) = (a.mod_floor(m), m.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    while !r1.is_zero() {
        let (q, r) = r0.div_mod_floor(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    debug_assert!(r0.is_one(), "inverse of a non-unit");
    s0.mod_floor(m)
}

fn to_big(v: &[u64]) -> IntPoly {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ lc(f) * Π factors (mod p)` to monic factors modulo `modulus`,
/// a power of `p`, by splitting the factor list in halves recursively.
fn hensel_lift(f: &IntPoly, factors: &[Vec<u64>], zp: &Zp, modulus: &BigInt) -> Vec<IntPoly> {
    let fm = reduce(f, modulus);
    if factors.len() == 1 {
        let inv = mod_inverse(fm.last().unwrap(), modulus);
        return vec![scale(&fm, &inv, modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = zp.reduce(f.last().unwrap());
    let g0 = left.iter().fold(vec![lc_p], |acc, u| zp.poly_mul(&acc, u));
    let h0 = right.iter().fold(vec![1u64], |acc, u| zp.poly_mul(&acc, u));
    let (one, s0, t0) = zp.poly_ext_gcd(&g0, &h0);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (to_big(&g0), to_big(&h0), to_big(&s0), to_big(&t0));
    let mut m = BigInt::from(zp.p);
    while &m < modulus {
        m = &m * &m;
        let e = sub(f, &mul(&g, &h, &m), &m);
        let (q, r) = divrem_monic(&mul(&s, &e, &m), &h, &m);
        let g1 = add(&add(&g, &mul(&t, &e, &m), &m), &mul(&q, &g, &m), &m);
        let h1 = add(&h, &r, &m);
        let b = sub(
            &add(&mul(&s, &g1, &m), &mul(&t, &h1, &m), &m),
            &[BigInt::one()],
            &m,
        );
        let (c, d) = divrem_monic(&mul(&s, &b, &m), &h1, &m);
        s = sub(&s, &d, &m);
        t = sub(&sub(&t, &mul(&t, &b, &m), &m), &mul(&c, &g1, &m), &m);
        g = g1;
        h = h1;
    }
    let g = symmetric(&reduce(&g, modulus), modulus);
    let h = symmetric(&reduce(&h, modulus), modulus);
    let mut out = hensel_lift(&g, left, zp, modulus);
    out.extend(hensel_lift(&h, right, zp, modulus));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half = m >> 1;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(mut a: IntPoly) -> IntPoly {
    trim(&mut a);
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return a;
    }
    let g = if a.last().unwrap().sign() == Sign::Minus {
        -g
    } else {
        g
    };
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient over Z, if any.
pub(crate) fn divide_int(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut rem = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    'grow: while 2 * size <= lifted.len() {
        for subset in (0..lifted.len()).combinations(size) {
            let lc = rem.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| mul(&acc, &lifted[i], modulus));
            let cand = primitive(symmetric(&prod, modulus));
            if cand.len() < 2 {
                continue;
            }
            if !cand[0].is_zero() && !(&rem[0] % &cand[0]).is_zero() {
                continue;
            }
            if let Some(q) = divide_int(&rem, &cand) {
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
    if rem.len() > 1 {
        out.push(primitive(rem));
    }
    out
}

/// Small integer conversion for tests and diagnostics.
#[allow(dead_code)]
pub(crate) fn to_i64s(p: &IntPoly) -> Vec<i64> {
    p.iter()
        .map(|c| c.to_i64().expect("small coefficient"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn sorted(mut v: Vec<IntPoly>) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = v.drain(..).map(|p| to_i64s(&p)).collect();
        out.sort();
        out
    }

    #[test]
    fn modular_factors_multiply_back() {
        let zp = Zp::new(31);
        // x^4 - 1 splits completely mod 31 (31 ≡ 3 mod 4 so x^2+1 stays irreducible)
        let f = zp.poly_from_bigints(&ip(&[-1, 0, 0, 0, 1]));
        let facs = factor_mod_p(&zp, &f);
        assert_eq!(facs.len(), 3);
        let prod = facs.iter().fold(vec![1], |acc, g| zp.poly_mul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn swinnerton_dyer_like_irreducible() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime
        let f = ip(&[1, 0, -10, 0, 1]);
        assert_eq!(
            sorted(factor_squarefree_int(&f).unwrap()),
            vec![vec![1, 0, -10, 0, 1]]
        );
    }

    #[test]
    fn non_monic_product() {
        // (3x^2 + 2)(5x - 7)(2x + 1)
        let a = from_int(&ip(&[2, 0, 3]));
        let b = from_int(&ip(&[-7, 5]));
        let c = from_int(&ip(&[1, 2]));
        let f = to_primitive_int(&(&(&a * &b) * &c));
        let got = sorted(factor_squarefree_int(&f).unwrap());
        assert_eq!(got, vec![vec![-7, 5], vec![1, 2], vec![2, 0, 3]]);
    }

    #[test]
    fn yun_multiplicities() {
        // (x-1)^3 (x+2)
        let p = &from_int(&ip(&[-1, 1])).pow(3) * &from_int(&ip(&[2, 1]));
        let sqf = yun(&p);
        assert_eq!(
            sqf,
            vec![(from_int(&ip(&[2, 1])), 1), (from_int(&ip(&[-1, 1])), 3)]
        );
    }

    #[test]
    fn exact_integer_division() {
        assert_eq!(
            divide_int(&ip(&[-1, 0, 1]), &ip(&[1, 1])),
            Some(ip(&[-1, 1]))
        );
        assert_eq!(divide_int(&ip(&[1, 0, 1]), &ip(&[1, 1])), None);
        assert_eq!(divide_int(&ip(&[1, 0, 4]), &ip(&[1, 2])), None);
    }
}
