//! Decomposition `f = u(h)` of a multivariate rational function.
//!
//! The pipeline: make the last variable generic (shifting variables when
//! needed), pick a homography `U` so that both sides of `F = U(f)` are
//! squarefree, group the irreducible factors of `F` with the cofactor
//! system into `H`, solve for `u'` with `u'(H) = F`, and return
//! `u = U⁻¹ ∘ u'`, `h = H`.

mod homography;
mod hypothesis;
mod outer;
mod recombination;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use homography::{good_homography, GoodHomographyResult};
pub use hypothesis::{
    apply_variable_shift, check_hypothesis_h, pencil_discriminant, undo_variable_shift,
    HypothesisReport, VariableShift,
};
pub use outer::recover_u;
pub use recombination::{
    build_recombination_system, recombine, FactorOracle, Recombination, RecombinationSystem, Side,
};

use crate::linalg::VectorQ;
use crate::poly::{
    compose_uni, mobius_compose, mobius_inverse, Mobius, MultiPoly, Rational, RationalFunction,
    UniRationalFunction,
};
use crate::{Error, Result};

pub const DEFAULT_SHIFT_RETRIES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Number of random variable shifts tried after the unshifted attempt.
    pub max_shift_retries: usize,
    /// Seed for the shift generator.
    pub seed: u64,
    /// Factors of both sides of `F = U(f)`, in the input coordinates.
    pub oracle: Option<FactorOracle>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            max_shift_retries: DEFAULT_SHIFT_RETRIES,
            seed: 0,
            oracle: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Composite,
    NonComposite,
}

/// Intermediate data justifying a result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub hypothesis: HypothesisReport,
    pub homography: Mobius,
    pub lambda_a: Rational,
    pub lambda_b: Rational,
    pub basis_num: Vec<VectorQ>,
    pub basis_den: Vec<VectorQ>,
    pub v_num: VectorQ,
    pub v_den: VectorQ,
    /// Irreducible factors of both sides of `F`, in the input coordinates.
    pub factors_num: Vec<MultiPoly>,
    pub factors_den: Vec<MultiPoly>,
}

/// `f = u(h)` with `h` non-composite. For non-composite inputs `u = T` and
/// `h` is the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub status: Status,
    pub u: UniRationalFunction,
    pub h: RationalFunction,
    pub certificate: Option<Certificate>,
}

impl Decomposition {
    fn trivial(f: &RationalFunction, certificate: Option<Certificate>) -> Self {
        Decomposition {
            status: Status::NonComposite,
            u: UniRationalFunction::identity(),
            h: f.clone(),
            certificate,
        }
    }
}

/// Result of the (hypothesis, homography) stage.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub shift: Option<VariableShift>,
    pub hypothesis: HypothesisReport,
    pub homography: GoodHomographyResult,
    /// `F` in the input coordinates.
    pub transformed: RationalFunction,
}

fn shifts(nvars: usize, options: &DecomposeOptions) -> impl Iterator<Item = Option<VariableShift>> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let retries = options.max_shift_retries;
    std::iter::once(None)
        .chain((1..=retries).map(move |a| Some(VariableShift::random(nvars, a, &mut rng))))
}

fn attempt_homography(
    f: &RationalFunction,
    shift: &Option<VariableShift>,
) -> Result<Option<Prepared>> {
    let g = match shift {
        Some(s) => s.apply(f)?,
        None => f.clone(),
    };
    let mut hypothesis = check_hypothesis_h(&g);
    hypothesis.shift_applied = shift.clone();
    if !hypothesis.satisfied {
        return Ok(None);
    }
    let homography = match good_homography(&g) {
        Ok(h) => h,
        Err(Error::InsufficientCandidates) => return Ok(None),
        Err(e) => return Err(e),
    };
    let transformed = compose_uni(&homography.homography.to_uni(), f)?;
    Ok(Some(Prepared {
        shift: shift.clone(),
        hypothesis,
        homography,
        transformed,
    }))
}

/// Runs the hypothesis check and homography choice with shift retries,
/// returning the first success. `F` is reported in the input coordinates.
pub fn prepare(f: &RationalFunction, options: &DecomposeOptions) -> Result<Prepared> {
    check_input(f)?;
    for shift in shifts(f.nvars(), options) {
        if let Some(p) = attempt_homography(f, &shift)? {
            return Ok(p);
        }
    }
    Err(Error::HypothesisFailure(options.max_shift_retries))
}

fn check_input(f: &RationalFunction) -> Result<()> {
    if f.nvars() < 2 {
        return Err(Error::WrongVariableCount {
            expected: 2,
            found: f.nvars(),
        });
    }
    Ok(())
}

/// [`decompose_with`] with default options.
pub fn decompose(f: &RationalFunction) -> Result<Decomposition> {
    decompose_with(f, &DecomposeOptions::default())
}

pub fn decompose_with(f: &RationalFunction, options: &DecomposeOptions) -> Result<Decomposition> {
    check_input(f)?;
    if f.degree() <= 1 {
        return Ok(Decomposition::trivial(f, None));
    }
    for shift in shifts(f.nvars(), options) {
        let Some(prep) = attempt_homography(f, &shift)? else {
            continue;
        };
        match finish(f, prep, options.oracle.as_ref()) {
            Err(Error::NoGoodSpecialization(_)) => continue,
            other => return other,
        }
    }
    Err(Error::HypothesisFailure(options.max_shift_retries))
}

fn finish(
    f: &RationalFunction,
    prep: Prepared,
    oracle: Option<&FactorOracle>,
) -> Result<Decomposition> {
    let shift = prep.shift.clone().filter(|s| !s.is_identity());
    let work_f = match &shift {
        Some(s) => s.apply(&prep.transformed)?,
        None => prep.transformed.clone(),
    };
    let work_oracle = oracle.map(|o| match &shift {
        Some(s) => FactorOracle {
            num: o.num.iter().map(|p| s.apply_poly(p)).collect(),
            den: o.den.iter().map(|p| s.apply_poly(p)).collect(),
        },
        None => o.clone(),
    });
    let rec = recombine(&work_f, work_oracle.as_ref())?;
    let u_prime = recover_u(&work_f, &rec.inner)?;

    let unshift = |p: &MultiPoly| match &shift {
        Some(s) => s.undo_poly(p).primitive_part(),
        None => p.clone(),
    };
    let certificate = Certificate {
        hypothesis: prep.hypothesis,
        homography: prep.homography.homography.clone(),
        lambda_a: prep.homography.lambda_a.clone(),
        lambda_b: prep.homography.lambda_b.clone(),
        basis_num: rec.basis_num.clone(),
        basis_den: rec.basis_den.clone(),
        v_num: rec.v_num.clone(),
        v_den: rec.v_den.clone(),
        factors_num: rec.factors_num.iter().map(unshift).collect(),
        factors_den: rec.factors_den.iter().map(unshift).collect(),
    };
    if u_prime.degree() <= 1 {
        return Ok(Decomposition::trivial(f, Some(certificate)));
    }

    let u = mobius_compose(&mobius_inverse(&prep.homography.homography), &u_prime);
    let h = match &shift {
        Some(s) => s.undo(&rec.inner)?,
        None => rec.inner.clone(),
    };
    let (u, h_norm) = normalize_pair(&u, &h);
    if compose_uni(&u, &h_norm)? != *f
        || f.degree() as usize != u.degree() * h_norm.degree() as usize
    {
        return Err(Error::VerificationFailed);
    }
    Ok(Decomposition {
        status: Status::Composite,
        u,
        h: h_norm,
        certificate: Some(certificate),
    })
}

/// Rescales `h` to primitive numerator and denominator and adjusts `u` so
/// that `u(h)` is unchanged.
pub(crate) fn normalize_pair(
    u: &UniRationalFunction,
    h: &RationalFunction,
) -> (UniRationalFunction, RationalFunction) {
    let h_norm = h.normalize_inner();
    let scale = (h_norm.num().leading_coefficient() / h.num().leading_coefficient())
        / (h_norm.den().leading_coefficient() / h.den().leading_coefficient());
    (outer::scale_argument(u, &scale), h_norm)
}
