//! Word-size prime field arithmetic and dense univariate polynomials over it.
//!
//! Polynomials are `Vec<u64>` in ascending order with no trailing zeros.
//! Primes must stay below 2^32 so products fit in `u64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `>= n`.
pub(crate) fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 32));
        Zp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        let m = v.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("reduced residue fits in u64")
    }

    // ---- polynomials ----

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn poly_from_bigints(&self, coeffs: &[BigInt]) -> Vec<u64> {
        let mut v: Vec<u64> = coeffs.iter().map(|c| self.reduce(c)).collect();
        Self::trim(&mut v);
        v
    }

    #[cfg(test)]
    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut v: Vec<u64> = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut v);
        v
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut v: Vec<u64> = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut v);
        v
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(&mut out);
        out
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        let mut v: Vec<u64> = a.iter().map(|&x| self.mul(x, c)).collect();
        Self::trim(&mut v);
        v
    }

    pub fn poly_monic(&self, a: &[u64]) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.poly_scale(a, self.inv(lc)),
        }
    }

    /// `(quotient, remainder)`; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c == 0 {
                continue;
            }
            q[k] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.poly_divrem(a, b).1
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        while !y.is_empty() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn poly_ext_gcd(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = *r0.last().expect("gcd of two zero polynomials");
        let inv = self.inv(lc);
        (
            self.poly_scale(&r0, inv),
            self.poly_scale(&s0, inv),
            self.poly_scale(&t0, inv),
        )
    }

    pub fn poly_derivative(&self, a: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| self.mul(c, k as u64 % self.p))
            .collect();
        Self::trim(&mut v);
        v
    }

    /// `base^e mod modulus`.
    pub fn poly_powmod(&self, base: &[u64], mut e: u128, modulus: &[u64]) -> Vec<u64> {
        let mut result = vec![1u64];
        let mut b = self.poly_rem(base, modulus);
        while e > 0 {
            if e & 1 == 1 {
                result = self.poly_rem(&self.poly_mul(&result, &b), modulus);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), modulus);
            }
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(next_prime(31), 31);
        assert_eq!(next_prime(32), 37);
        assert!(is_prime(2147483647));
    }

    #[test]
    fn ext_gcd_identity() {
        let f = Zp::new(31);
        let a = vec![1, 0, 1]; // x^2 + 1
        let b = vec![30, 1]; // x - 1
        let (g, s, t) = f.poly_ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        let lhs = f.poly_add(&f.poly_mul(&s, &a), &f.poly_mul(&t, &b));
        assert_eq!(lhs, vec![1]);
    }
}
