//! Exact polynomial arithmetic over Q.

mod gcd;
mod monomial;
mod multi;
mod ratfunc;
mod uni;

pub use gcd::{gcd, is_squarefree, resultant_wrt_last};
pub use monomial::Monomial;
pub use multi::MultiPoly;
pub use ratfunc::{
    compose_uni, mobius_compose, mobius_inverse, Mobius, RationalFunction, UniRationalFunction,
};
pub use uni::UniPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Prints `p` or `p/q` with `q > 0`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// gcd of numerators over lcm of denominators; zero for an empty iterator.
pub(crate) fn rational_content<'a>(coeffs: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    Rational::new(num, den)
}
