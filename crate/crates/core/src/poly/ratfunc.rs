use num_traits::{One, Signed, Zero};

use super::{gcd, MultiPoly, Rational, UniPoly};
use crate::{Error, Result};

/// Reduced multivariate rational function `num/den`.
///
/// Invariants: `den != 0`, `gcd(num, den)` is constant, `den` is primitive
/// with positive graded-lex leading coefficient (so the scalar lives in
/// `num`), and `0` is stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    /// Reduces and normalizes `num/den`.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::VariableCountMismatch(num.nvars(), den.nvars()));
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let n = num.nvars();
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: MultiPoly::one(n),
            });
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.divide_exact(&g)?, den.divide_exact(&g)?)
        };
        let mut c = den.content();
        if den.leading_coefficient().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn polynomial(p: MultiPoly) -> Self {
        let n = p.nvars();
        RationalFunction {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    /// `max(deg num, deg den)`; the zero function has degree 0.
    pub fn degree(&self) -> u32 {
        self.num
            .total_degree()
            .unwrap_or(0)
            .max(self.den.total_degree().unwrap_or(0))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The scalar multiple of `self` whose numerator and denominator are both
    /// primitive with positive leading coefficients. Used for inner
    /// functions, which are only defined up to such scalars.
    pub fn normalize_inner(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.primitive_part(),
            den: self.den.primitive_part(),
        }
    }

    /// Replaces every variable by the corresponding polynomial.
    pub fn substitute_all(&self, images: &[MultiPoly]) -> Result<RationalFunction> {
        RationalFunction::new(
            self.num.substitute_all(images),
            self.den.substitute_all(images),
        )
    }
}

/// Reduced univariate rational function `num/den` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRationalFunction {
    num: UniPoly,
    den: UniPoly,
}

impl UniRationalFunction {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(UniRationalFunction {
                num,
                den: UniPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading_coefficient().recip();
        Ok(UniRationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    /// `T`.
    pub fn identity() -> Self {
        UniRationalFunction {
            num: UniPoly::t(),
            den: UniPoly::one(),
        }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t) / d)
        }
    }
}

/// Degree-one map `U(T) = (a*T + b) / (c*T + e)` with `a*e - b*c != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mobius {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub e: Rational,
}

impl Mobius {
    pub fn new(a: Rational, b: Rational, c: Rational, e: Rational) -> Result<Self> {
        if (&a * &e - &b * &c).is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(Mobius { a, b, c, e })
    }

    pub fn identity() -> Self {
        Mobius {
            a: Rational::one(),
            b: Rational::zero(),
            c: Rational::zero(),
            e: Rational::one(),
        }
    }

    /// `(T - la) / (T - lb)`, the good-homography shape.
    pub fn from_poles(la: &Rational, lb: &Rational) -> Result<Self> {
        Mobius::new(Rational::one(), -la.clone(), Rational::one(), -lb.clone())
    }

    pub fn to_uni(&self) -> UniRationalFunction {
        UniRationalFunction::new(
            UniPoly::linear(self.b.clone(), self.a.clone()),
            UniPoly::linear(self.e.clone(), self.c.clone()),
        )
        .expect("invertible Möbius map has nonzero denominator")
    }
}

/// `U ∘ v`, reduced.
pub fn mobius_compose(u: &Mobius, v: &UniRationalFunction) -> UniRationalFunction {
    let num = &v.num.scale(&u.a) + &v.den.scale(&u.b);
    let den = &v.num.scale(&u.c) + &v.den.scale(&u.e);
    UniRationalFunction::new(num, den).expect("invertible Möbius map keeps the denominator nonzero")
}

/// Compositional inverse: `(e*T - b) / (-c*T + a)`.
pub fn mobius_inverse(u: &Mobius) -> Mobius {
    Mobius {
        a: u.e.clone(),
        b: -u.b.clone(),
        c: -u.c.clone(),
        e: u.a.clone(),
    }
}

/// `u(h)`: with `k = max(deg u1, deg u2)`, returns the reduced quotient of
/// `Σ a_i h1^i h2^(k-i)` by `Σ b_i h1^i h2^(k-i)`.
pub fn compose_uni(u: &UniRationalFunction, h: &RationalFunction) -> Result<RationalFunction> {
    let n = h.nvars();
    let k = u.degree();
    let mut p1 = vec![MultiPoly::one(n)];
    let mut p2 = vec![MultiPoly::one(n)];
    for i in 1..=k {
        p1.push(&p1[i - 1] * h.num());
        p2.push(&p2[i - 1] * h.den());
    }
    let combine = |coeffs: &UniPoly| {
        let mut acc = MultiPoly::zero(n);
        for (i, c) in coeffs.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(&p1[i] * &p2[k - i]).scale(c);
        }
        acc
    };
    let num = combine(u.num());
    let den = combine(u.den());
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    RationalFunction::new(num, den)
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
    fn reduce_cancels_common_factor() {
        let f = RationalFunction::new(&(&x() + &y()) * &x(), &(&x() + &y()) * &y()).unwrap();
        assert_eq!(f.num(), &x());
        assert_eq!(f.den(), &y());
        let z = RationalFunction::new(MultiPoly::zero(2), &x() + &y()).unwrap();
        assert!(z.num().is_zero() && z.den().is_one());
        assert_eq!(
            RationalFunction::new(x(), MultiPoly::zero(2)),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn denominator_normalization() {
        // x / (-2y) -> (-1/2 x) / y
        let f = RationalFunction::new(x(), y().scale(&rat(-2))).unwrap();
        assert_eq!(f.den(), &y());
        assert_eq!(f.num(), &x().scale(&ratio(-1, 2)));
    }

    #[test]
    fn compose_identity() {
        let h = RationalFunction::new(&x() + &y(), &x() - &y()).unwrap();
        assert_eq!(
            compose_uni(&UniRationalFunction::identity(), &h).unwrap(),
            h
        );
    }

    #[test]
    fn mobius_inverse_of_good_homography() {
        let la = rat(2);
        let lb = ratio(3, 5);
        let u = Mobius::from_poles(&la, &lb).unwrap();
        let inv = mobius_inverse(&u);
        // (lb*T - la) / (T - 1) after scaling
        let expected = UniRationalFunction::new(
            UniPoly::linear(-la.clone(), lb.clone()),
            UniPoly::linear(rat(-1), rat(1)),
        )
        .unwrap();
        assert_eq!(inv.to_uni(), expected);
        assert_eq!(
            mobius_compose(&u, &inv.to_uni()),
            UniRationalFunction::identity()
        );
        let v = UniRationalFunction::new(
            UniPoly::from_ints(&[0, -1, 1]),
            UniPoly::from_ints(&[1, 0, 1]),
        )
        .unwrap();
        assert_eq!(mobius_compose(&Mobius::identity(), &v), v);
        assert_eq!(mobius_compose(&inv, &mobius_compose(&u, &v)), v);
    }

    #[test]
    fn singular_mobius_rejected() {
        assert_eq!(
            Mobius::new(rat(1), rat(2), rat(2), rat(4)),
            Err(Error::SingularMobius)
        );
    }
}
