//! Choice of a degree-one map `U` making both sides of `U(f)` squarefree.

use num_traits::Zero;

use super::hypothesis::axis_restriction;
use crate::poly::{compose_uni, is_squarefree, rat, Mobius, Rational, RationalFunction, UniPoly};
use crate::{Error, Result};

/// Output of [`good_homography`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodHomographyResult {
    /// `U(T) = (T − λa) / (T − λb)`.
    pub homography: Mobius,
    pub lambda_a: Rational,
    pub lambda_b: Rational,
    /// `U(f) = (f1 − λa f2) / (f1 − λb f2)`, reduced.
    pub transformed: RationalFunction,
    /// `X_n` coordinates on the last axis where `λa` and `λb` were read.
    pub a_point: Rational,
    pub b_point: Rational,
}

/// Values `f̄(i)` for `i = 0, 1, 2, ...` skipping poles, deduplicated in
/// order of appearance, from the first `count` regular points.
fn axis_values(fbar1: &UniPoly, fbar2: &UniPoly, count: usize) -> Vec<(Rational, Rational)> {
    let mut distinct: Vec<(Rational, Rational)> = Vec::new();
    let mut taken = 0;
    let mut i = 0i64;
    while taken < count {
        let t = rat(i);
        i += 1;
        let den = fbar2.eval(&t);
        if den.is_zero() {
            continue;
        }
        taken += 1;
        let v = fbar1.eval(&t) / den;
        if !distinct.iter().any(|(w, _)| *w == v) {
            distinct.push((v, t));
        }
    }
    distinct
}

/// Whether `λ` yields a member of the pencil of full degree on the axis that
/// is squarefree: either on the axis already, or as a polynomial in all
/// variables.
fn acceptable(
    f: &RationalFunction,
    fbar1: &UniPoly,
    fbar2: &UniPoly,
    lambda: &Rational,
    d: usize,
) -> bool {
    let p = fbar1 - &fbar2.scale(lambda);
    if p.degree() != Some(d) {
        return false;
    }
    if p.gcd(&p.derivative()).degree() == Some(0) {
        return true;
    }
    is_squarefree(&(f.num() - &f.den().scale(lambda)))
}

/// Picks `λa ≠ λb` among values of `f` on the last axis.
///
/// `f` must satisfy the hypothesis and have degree `d ≥ 1`. Evaluation runs
/// over `X_n = 0, 1, 2, ...`; the first `2d² + 2d` regular values are
/// collected and the first `2d + 2` distinct ones are tested.
pub fn good_homography(f: &RationalFunction) -> Result<GoodHomographyResult> {
    let d = f.degree() as usize;
    let fbar1 = axis_restriction(f.num());
    let fbar2 = axis_restriction(f.den());
    if fbar2.is_zero() {
        return Err(Error::InsufficientCandidates);
    }
    let values = axis_values(&fbar1, &fbar2, 2 * d * d + 2 * d);
    let mut chosen = values
        .iter()
        .take(2 * d + 2)
        .filter(|(lambda, _)| acceptable(f, &fbar1, &fbar2, lambda, d));
    let (Some((la, pa)), Some((lb, pb))) = (chosen.next(), chosen.next()) else {
        return Err(Error::InsufficientCandidates);
    };
    let homography = Mobius::from_poles(la, lb)?;
    let transformed = compose_uni(&homography.to_uni(), f)?;
    Ok(GoodHomographyResult {
        homography,
        lambda_a: la.clone(),
        lambda_b: lb.clone(),
        transformed,
        a_point: pa.clone(),
        b_point: pb.clone(),
    })
}
