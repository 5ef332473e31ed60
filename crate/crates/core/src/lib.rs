//! Exact decomposition of multivariate rational functions over Q.
//!
//! Given `f = f1/f2` in `Q(X1, ..., Xn)`, [`decompose::decompose`] finds a
//! univariate `u` and a non-composite `h` with `f = u(h)`. The inner function
//! is obtained by recombining the irreducible factors of the numerator and
//! denominator of a Möbius-normalized `f` through their Darboux cofactors for
//! the Jacobian derivative of `f`, which turns the recombination into exact
//! linear algebra over Q.
//!
//! Module map:
//!
//! * [`poly`]: rationals, sparse multivariate and dense univariate polynomials,
//!   gcd / resultant, reduced rational functions and Möbius maps.
//! * [`linalg`]: reduced row echelon form, kernels and coordinate projections.
//! * [`factor`]: irreducible factorization over Q (univariate, bivariate, and
//!   verified externally supplied factors for three or more variables).
//! * [`derivation`]: the Jacobian derivative, cofactors, first integrals.
//! * [`decompose`]: hypothesis checks, good homography, recombination, and
//!   recovery of the outer function.
//! * [`convex`]: Newton polygons and unimodular monomial maps for sparse
//!   bivariate inputs.
//! * [`expr`] and [`cli`]: expression parsing / printing and the `ratdec`
//!   command line front-end.

pub mod cli;
pub mod convex;
pub mod decompose;
pub mod derivation;
pub mod expr;
pub mod factor;
pub mod linalg;
pub mod poly;

mod error;
mod modp;

pub use error::{Error, Result};
pub use poly::{
    Mobius, Monomial, MultiPoly, Rational, RationalFunction, UniPoly, UniRationalFunction,
};
