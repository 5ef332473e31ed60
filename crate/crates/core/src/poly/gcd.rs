//! Multivariate gcd by primitive subresultant remainder sequences recursing on
//! the last occurring variable, and resultants as Sylvester determinants.

use num_bigint::BigInt;
use num_traits::One;

use super::MultiPoly;
use crate::modp::Zp;

/// Greatest common divisor, normalized to be primitive with positive
/// leading coefficient. `gcd(p, 0)` is the normalized `p`; `gcd(0, 0) = 0`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    assert_eq!(
        p.nvars(),
        q.nvars(),
        "gcd of polynomials over different rings"
    );
    if p.is_zero() {
        return q.primitive_part();
    }
    if q.is_zero() {
        return p.primitive_part();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(p.nvars());
    }
    let main = p
        .variables()
        .into_iter()
        .chain(q.variables())
        .max()
        .expect("nonconstant input");
    gcd_in(p, q, main).primitive_part()
}

/// gcd of a list, stopping early once it becomes constant.
fn gcd_many<'a>(nvars: usize, items: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut g = MultiPoly::zero(nvars);
    for c in items {
        g = gcd(&g, c);
        if g.is_constant() && !g.is_zero() {
            return MultiPoly::one(nvars);
        }
    }
    g
}

fn gcd_in(p: &MultiPoly, q: &MultiPoly, main: usize) -> MultiPoly {
    let n = p.nvars();
    let pc = p.to_univariate_coeffs(main);
    let qc = q.to_univariate_coeffs(main);
    if pc.len() <= 1 {
        return gcd_many(n, std::iter::once(p).chain(qc.iter()));
    }
    if qc.len() <= 1 {
        return gcd_many(n, std::iter::once(q).chain(pc.iter()));
    }
    let cont_p = gcd_many(n, pc.iter());
    let cont_q = gcd_many(n, qc.iter());
    let g_cont = gcd(&cont_p, &cont_q);
    let pp: Vec<MultiPoly> = pc
        .iter()
        .map(|c| c.divide_exact(&cont_p).expect("content divides"))
        .collect();
    let qq: Vec<MultiPoly> = qc
        .iter()
        .map(|c| c.divide_exact(&cont_q).expect("content divides"))
        .collect();
    let g_pp = if certified_coprime(&pp, &qq, main) {
        MultiPoly::one(n)
    } else {
        let g = subresultant_gcd(pp, qq);
        if g.len() <= 1 {
            MultiPoly::one(n)
        } else {
            let c = gcd_many(n, g.iter());
            let g: Vec<MultiPoly> = g
                .iter()
                .map(|x| x.divide_exact(&c).expect("content divides"))
                .collect();
            MultiPoly::from_univariate_coeffs(n, main, &g)
        }
    };
    &g_cont * &g_pp
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder `lc(v)^(deg u - deg v + 1) * u mod v` in `R[x]`.
fn prem(u: &[MultiPoly], v: &[MultiPoly]) -> Vec<MultiPoly> {
    let dv = v.len() - 1;
    let lcv = &v[dv];
    let mut r = u.to_vec();
    let mut k = (u.len() - v.len() + 1) as u32;
    while r.len() > dv && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - dv;
        for c in r.iter_mut() {
            *c = &*c * lcv;
        }
        for (j, vc) in v.iter().enumerate() {
            r[shift + j] = &r[shift + j] - &(&lr * vc);
        }
        trim(&mut r);
        k -= 1;
    }
    if k > 0 {
        let f = lcv.pow(k);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

/// Last nonzero entry of the subresultant remainder sequence (up to a factor
/// of the coefficient ring). Inputs must have positive degree.
fn subresultant_gcd(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let n = a[0].nvars();
    let (mut u, mut v) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut g = MultiPoly::one(n);
    let mut h = MultiPoly::one(n);
    loop {
        let delta = (u.len() - v.len()) as u32;
        let r = prem(&u, &v);
        if r.is_empty() {
            return v;
        }
        if r.len() == 1 {
            return r;
        }
        let div = &g * &h.pow(delta);
        u = v;
        v = r
            .iter()
            .map(|c| {
                c.divide_exact(&div)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = u.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .divide_exact(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

/// Sound certificate that two primitive polynomials in `main` have no common
/// factor of positive degree in `main`: images at a random point modulo a
/// large prime with nonvanishing leading coefficients are coprime.
fn certified_coprime(p: &[MultiPoly], q: &[MultiPoly], main: usize) -> bool {
    const PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];
    let n = p[0].nvars();
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
    for &prime in &PRIMES {
        let zp = Zp::new(prime);
        let (Some(pi), Some(qi)) = (integer_images(p, &zp), integer_images(q, &zp)) else {
            continue;
        };
        for _ in 0..2 {
            let point: Vec<u64> = (0..n)
                .map(|_| {
                    seed = seed
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    (seed >> 33) % prime
                })
                .collect();
            let pe: Vec<u64> = pi.iter().map(|c| eval_mod(c, &point, main, &zp)).collect();
            let qe: Vec<u64> = qi.iter().map(|c| eval_mod(c, &point, main, &zp)).collect();
            if pe.last() == Some(&0) || qe.last() == Some(&0) {
                continue;
            }
            let g = zp.poly_gcd(&pe, &qe);
            return g.len() == 1;
        }
    }
    false
}

type ModTerms = Vec<(Vec<u32>, u64)>;

/// Coefficients scaled to a common integer polynomial and reduced mod p.
fn integer_images(coeffs: &[MultiPoly], zp: &Zp) -> Option<Vec<ModTerms>> {
    let mut den = BigInt::one();
    for c in coeffs {
        den = num_integer::Integer::lcm(&den, &c.denominator_lcm());
    }
    if zp.reduce(&den) == 0 {
        return None;
    }
    Some(
        coeffs
            .iter()
            .map(|c| {
                c.terms()
                    .map(|(m, v)| {
                        let scaled = v.numer() * (&den / v.denom());
                        (m.exponents().to_vec(), zp.reduce(&scaled))
                    })
                    .collect()
            })
            .collect(),
    )
}

fn eval_mod(terms: &ModTerms, point: &[u64], skip: usize, zp: &Zp) -> u64 {
    let mut acc = 0;
    for (e, c) in terms {
        let mut t = *c;
        for (i, &k) in e.iter().enumerate() {
            if i != skip && k > 0 {
                t = zp.mul(t, zp.pow(point[i], k as u64));
            }
        }
        acc = zp.add(acc, t);
    }
    acc
}

/// Resultant with respect to the last variable, as the determinant of the
/// Sylvester matrix with the rows of `a` on top. Coefficients live in the
/// remaining variables.
pub fn resultant_wrt_last(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    assert_eq!(
        a.nvars(),
        b.nvars(),
        "resultant of polynomials over different rings"
    );
    let n = a.nvars();
    let last = n - 1;
    let ac = a.to_univariate_coeffs(last);
    let bc = b.to_univariate_coeffs(last);
    if ac.is_empty() || bc.is_empty() {
        return MultiPoly::zero(n);
    }
    let m = ac.len() - 1;
    let k = bc.len() - 1;
    if m == 0 {
        return ac[0].pow(k as u32);
    }
    if k == 0 {
        return bc[0].pow(m as u32);
    }
    let size = m + k;
    let mut mat = vec![vec![MultiPoly::zero(n); size]; size];
    for i in 0..k {
        for (j, c) in ac.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in bc.iter().rev().enumerate() {
            mat[k + i][i + j] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

/// Fraction-free determinant over a polynomial ring.
pub(crate) fn bareiss_determinant(mut mat: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let size = mat.len();
    let n = mat[0][0].nvars();
    let mut negate = false;
    let mut prev = MultiPoly::one(n);
    for k in 0..size {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(n),
            }
        }
        if k + 1 == size {
            break;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = t.divide_exact(&prev).expect("Bareiss division is exact");
            }
            mat[i][k] = MultiPoly::zero(n);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// True iff no irreducible factor occurs squared: `gcd(p, ∂1 p, ..., ∂n p)`
/// is constant. Zero is not squarefree.
pub fn is_squarefree(p: &MultiPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut g = p.clone();
    for i in p.variables().into_iter().rev() {
        let d = p.partial_derivative(i).expect("variable in range");
        g = gcd(&g, &d);
        if g.is_constant() {
            return true;
        }
    }
    g.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, MultiPoly};

    fn x() -> MultiPoly {
        MultiPoly::var(2, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(2, 1)
    }
    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(2, rat(v))
    }

    #[test]
    fn gcd_basic() {
        let a = &(&x() + &y()) * &(&x() - &y());
        let b = &(&x() + &y()) * &x();
        assert_eq!(gcd(&a, &b), &x() + &y());
        let p = (&x() - &y()).scale(&rat(-3));
        assert_eq!(gcd(&p, &MultiPoly::zero(2)), &x() - &y());
    }

    #[test]
    fn gcd_with_content_in_lower_variable() {
        // (X+1)(Y+X) and (X+1)(Y-X)
        let a = &(&x() + &c(1)) * &(&y() + &x());
        let b = &(&x() + &c(1)) * &(&y() - &x());
        assert_eq!(gcd(&a, &b), &x() + &c(1));
    }

    #[test]
    fn gcd_nontrivial_high_degree() {
        let g = &(&x().pow(2) + &y().pow(3)) + &c(2);
        let a = &g * &(&x() + &(&y() * &y()));
        let b = &g * &(&(&x() * &y()) - &c(7));
        assert_eq!(gcd(&a, &b), g);
    }

    #[test]
    fn resultant_small_cases() {
        // Res_Y(Y - a, Y - b) = a - b with constant a, b.
        let r = resultant_wrt_last(&(&y() - &c(3)), &(&y() - &c(5)));
        assert_eq!(r, c(-2));
        let r = resultant_wrt_last(&(&y().pow(2) - &c(1)), &(&y() - &c(1)));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree() {
        assert!(!is_squarefree(&(&x() + &y()).pow(2)));
        assert!(is_squarefree(&(&x() + &y())));
        assert!(is_squarefree(&(&x() * &y())));
    }
}
