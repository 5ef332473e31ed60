//! The genericity hypothesis on the last variable and the variable shifts
//! used to enforce it.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{determinant, MatrixQ};
use crate::poly::{rat, MultiPoly, Rational, RationalFunction, UniPoly};
use crate::Result;

/// Outcome of [`check_hypothesis_h`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    /// `max(deg_Xn f1, deg_Xn f2) = max(deg f1, deg f2)`.
    pub degree_condition: bool,
    /// `R(Λ)`, the discriminant-normalized resultant in `X_n` of
    /// `A = f1(0,..,0,X_n) + Λ f2(0,..,0,X_n)` and `∂A/∂X_n`:
    /// `(-1)^(δ(δ-1)/2) Res(A, ∂A)` with `δ = deg_Xn A`.
    pub resultant_r: UniPoly,
    pub satisfied: bool,
    pub shift_applied: Option<VariableShift>,
}

/// Restriction of `p` to the last coordinate axis, as a polynomial in `X_n`.
pub(crate) fn axis_restriction(p: &MultiPoly) -> UniPoly {
    let n = p.nvars();
    let mut point = vec![Some(Rational::zero()); n];
    point[n - 1] = None;
    p.eval_partial(&point)
        .expect("point length matches")
        .to_unipoly(n - 1)
        .expect("only X_n remains")
}

/// Checks the hypothesis for `f` (no shift is applied here).
pub fn check_hypothesis_h(f: &RationalFunction) -> HypothesisReport {
    let n = f.nvars();
    let (f1, f2) = (f.num(), f.den());
    let deg = f1
        .total_degree()
        .unwrap_or(0)
        .max(f2.total_degree().unwrap_or(0));
    let deg_last = f1
        .degree_in(n - 1)
        .unwrap_or(0)
        .max(f2.degree_in(n - 1).unwrap_or(0));
    let degree_condition = deg == deg_last;
    let r = pencil_discriminant(&axis_restriction(f1), &axis_restriction(f2));
    HypothesisReport {
        degree_condition,
        satisfied: degree_condition && !r.is_zero(),
        resultant_r: r,
        shift_applied: None,
    }
}

/// `(-1)^(δ(δ-1)/2) Res_T(a + Λb, a' + Λb')` as a polynomial in `Λ`, by
/// evaluating the Sylvester determinant at `2δ + 1` points and
/// interpolating.
pub fn pencil_discriminant(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let delta = a.degree().unwrap_or(0).max(b.degree().unwrap_or(0));
    if delta == 0 || (a.is_zero() && b.is_zero()) {
        return UniPoly::zero();
    }
    let points: Vec<Rational> = (0..=2 * delta as i64).map(rat).collect();
    let values: Vec<Rational> = points
        .iter()
        .map(|l| {
            let p = a + &b.scale(l);
            sylvester_resultant(&p, &p.derivative(), delta, delta - 1)
        })
        .collect();
    let r = interpolate(&points, &values);
    if (delta * (delta - 1) / 2) % 2 == 1 {
        -&r
    } else {
        r
    }
}

/// Determinant of the Sylvester matrix of `p` and `q` taken with formal
/// degrees `m` and `k` (leading coefficients may vanish).
pub(crate) fn sylvester_resultant(p: &UniPoly, q: &UniPoly, m: usize, k: usize) -> Rational {
    let size = m + k;
    if size == 0 {
        return Rational::one();
    }
    let mut mat = MatrixQ::zeros(size, size);
    for i in 0..k {
        for j in 0..=m {
            mat.set(i, i + j, p.coeff(m - j));
        }
    }
    for i in 0..m {
        for j in 0..=k {
            mat.set(k + i, i + j, q.coeff(k - j));
        }
    }
    determinant(&mat)
}

/// Newton interpolation through `(x_i, y_i)`.
pub(crate) fn interpolate(xs: &[Rational], ys: &[Rational]) -> UniPoly {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut out = UniPoly::zero();
    for i in (0..n).rev() {
        out = &(&out * &UniPoly::linear(-xs[i].clone(), Rational::one()))
            + &UniPoly::constant(coef[i].clone());
    }
    out
}

/// The affine change `X_i ← X_i + c_i·X_n + e_i` for `i < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableShift {
    pub linear: Vec<i64>,
    pub offset: Vec<i64>,
}

impl VariableShift {
    /// The linear shift `X_i ← X_i + c_i·X_n`.
    pub fn linear(c: &[i64]) -> Self {
        VariableShift {
            linear: c.to_vec(),
            offset: vec![0; c.len()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.iter().chain(&self.offset).all(|&v| v == 0)
    }

    /// A random shift for retry number `attempt` (starting at 1). The first
    /// two retries are linear; later ones also translate.
    pub(crate) fn random(nvars: usize, attempt: usize, rng: &mut ChaCha8Rng) -> Self {
        let m = nvars - 1;
        let linear = (0..m)
            .map(|_| rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 })
            .collect();
        let offset = if attempt <= 2 {
            vec![0; m]
        } else {
            (0..m).map(|_| rng.gen_range(-3..=3)).collect()
        };
        VariableShift { linear, offset }
    }

    fn images(&self, nvars: usize, sign: i64) -> Vec<MultiPoly> {
        assert_eq!(
            self.linear.len() + 1,
            nvars,
            "shift length must be nvars - 1"
        );
        let last = MultiPoly::var(nvars, nvars - 1);
        let mut out: Vec<MultiPoly> = (0..nvars - 1)
            .map(|i| {
                let lin = last.scale(&rat(sign * self.linear[i]));
                let off = MultiPoly::constant(nvars, rat(sign * self.offset[i]));
                &(&MultiPoly::var(nvars, i) + &lin) + &off
            })
            .collect();
        out.push(last);
        out
    }

    pub fn apply_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.substitute_all(&self.images(p.nvars(), 1))
    }

    pub fn undo_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.substitute_all(&self.images(p.nvars(), -1))
    }

    pub fn apply(&self, f: &RationalFunction) -> Result<RationalFunction> {
        f.substitute_all(&self.images(f.nvars(), 1))
    }

    pub fn undo(&self, f: &RationalFunction) -> Result<RationalFunction> {
        f.substitute_all(&self.images(f.nvars(), -1))
    }
}

/// `f` after `X_i ← X_i + c_i·X_n` for `i < n`.
pub fn apply_variable_shift(f: &RationalFunction, c: &[i64]) -> Result<RationalFunction> {
    VariableShift::linear(c).apply(f)
}

/// Inverse of [`apply_variable_shift`].
pub fn undo_variable_shift(f: &RationalFunction, c: &[i64]) -> Result<RationalFunction> {
    VariableShift::linear(c).undo(f)
}
