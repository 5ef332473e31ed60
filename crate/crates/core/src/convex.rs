//! Sparse bivariate inputs: supports, Newton polygons and unimodular
//! monomial maps that shrink the dense size before decomposing.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::decompose::{decompose_with, normalize_pair, DecomposeOptions, Decomposition, Status};
use crate::poly::{compose_uni, MultiPoly, Rational, RationalFunction};
use crate::{Error, Result};

pub type Point = (i64, i64);

/// Exponent set of a bivariate polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SupportSet {
    pub points: BTreeSet<Point>,
}

impl SupportSet {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Self {
        SupportSet {
            points: points.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        SupportSet {
            points: self.points.union(&other.points).copied().collect(),
        }
    }

    fn bounds(&self) -> Option<(Point, Point)> {
        let min_i = self.points.iter().map(|p| p.0).min()?;
        let max_i = self.points.iter().map(|p| p.0).max()?;
        let min_j = self.points.iter().map(|p| p.1).min()?;
        let max_j = self.points.iter().map(|p| p.1).max()?;
        Some(((min_i, min_j), (max_i, max_j)))
    }

    /// `(d_x + 1)(d_y + 1)` for the bounding rectangle; 0 when empty.
    pub fn dense_size(&self) -> u64 {
        self.bounds()
            .map_or(0, |((a, b), (c, d))| ((c - a + 1) * (d - b + 1)) as u64)
    }
}

/// Convex lattice polygon, vertices counterclockwise without collinear
/// triples. Segments have two vertices and points one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    pub vertices: Vec<Point>,
}

/// Affine action `x ↦ M·x + t` on exponent vectors, `det M = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialAffineMap {
    pub matrix: [[i64; 2]; 2],
    pub translation: Point,
}

impl MonomialAffineMap {
    pub fn new(matrix: [[i64; 2]; 2], translation: Point) -> Result<Self> {
        let m = MonomialAffineMap {
            matrix,
            translation,
        };
        match m.determinant() {
            1 | -1 => Ok(m),
            d => Err(Error::NotUnimodular(d)),
        }
    }

    pub fn identity() -> Self {
        MonomialAffineMap {
            matrix: [[1, 0], [0, 1]],
            translation: (0, 0),
        }
    }

    pub fn translation(t: Point) -> Self {
        MonomialAffineMap {
            translation: t,
            ..Self::identity()
        }
    }

    pub fn determinant(&self) -> i64 {
        let [[a1, a2], [a3, a4]] = self.matrix;
        a1 * a4 - a2 * a3
    }

    pub fn linear_part(&self) -> MonomialAffineMap {
        MonomialAffineMap {
            matrix: self.matrix,
            translation: (0, 0),
        }
    }

    pub fn apply_point(&self, (i, j): Point) -> Point {
        let [[a1, a2], [a3, a4]] = self.matrix;
        (
            a1 * i + a2 * j + self.translation.0,
            a3 * i + a4 * j + self.translation.1,
        )
    }

    pub fn apply_support(&self, s: &SupportSet) -> SupportSet {
        SupportSet::new(s.points.iter().map(|&p| self.apply_point(p)))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MonomialAffineMap) -> MonomialAffineMap {
        let m = mat_mul(&self.matrix, &other.matrix);
        let t = self.apply_point(other.translation);
        MonomialAffineMap {
            matrix: m,
            translation: t,
        }
    }

    pub fn inverse(&self) -> MonomialAffineMap {
        let [[a1, a2], [a3, a4]] = self.matrix;
        let d = self.determinant();
        // d = ±1 so the adjugate divided by d stays integral
        let m = [[a4 * d, -a2 * d], [-a3 * d, a1 * d]];
        let lin = MonomialAffineMap {
            matrix: m,
            translation: (0, 0),
        };
        let (ti, tj) = lin.apply_point(self.translation);
        MonomialAffineMap {
            matrix: m,
            translation: (-ti, -tj),
        }
    }
}

fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn check_bivariate(p: &MultiPoly) -> Result<()> {
    if p.nvars() != 2 {
        return Err(Error::WrongVariableCount {
            expected: 2,
            found: p.nvars(),
        });
    }
    Ok(())
}

pub fn support(p: &MultiPoly) -> Result<SupportSet> {
    check_bivariate(p)?;
    Ok(SupportSet::new(p.terms().map(|(m, _)| {
        (m.exponents()[0] as i64, m.exponents()[1] as i64)
    })))
}

fn cross(o: Point, a: Point, b: Point) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull by the monotone chain.
pub fn newton_polygon(s: &SupportSet) -> Result<LatticePolygon> {
    let pts: Vec<Point> = s.points.iter().copied().collect();
    if pts.is_empty() {
        return Err(Error::EmptySupport);
    }
    if pts.len() <= 2 {
        return Ok(LatticePolygon { vertices: pts });
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // all points collinear: the chain degenerates to the two endpoints
    if lower.len() == 2 || lower.len() > 2 && lower.windows(3).all(|w| cross(w[0], w[1], w[2]) == 0)
    {
        return Ok(LatticePolygon {
            vertices: vec![pts[0], pts[pts.len() - 1]],
        });
    }
    Ok(LatticePolygon { vertices: lower })
}

/// Number of integer points in the closed polygon.
pub fn lattice_size(poly: &LatticePolygon) -> u64 {
    let v = &poly.vertices;
    let Some(bounds) = SupportSet::new(v.iter().copied()).bounds() else {
        return 0;
    };
    let ((x0, y0), (x1, y1)) = bounds;
    let inside = |p: Point| -> bool {
        match v.len() {
            1 => true,
            2 => cross(v[0], v[1], p) == 0,
            k => (0..k).all(|i| cross(v[i], v[(i + 1) % k], p) >= 0),
        }
    };
    let mut count = 0;
    for x in x0..=x1 {
        for y in y0..=y1 {
            if inside((x, y)) {
                count += 1;
            }
        }
    }
    count
}

/// In `N²` and touching both axes.
pub fn is_normalized(s: &SupportSet) -> bool {
    matches!(s.bounds(), Some(((0, 0), _)))
}

/// The translation by `(−min i, −min j)`.
pub fn normalize_translation(s: &SupportSet) -> Result<MonomialAffineMap> {
    let ((a, b), _) = s.bounds().ok_or(Error::EmptySupport)?;
    Ok(MonomialAffineMap::translation((-a, -b)))
}

/// Unimodular matrix sending the primitive direction `(p, q)` to `(1, 0)`.
fn straighten(p: i64, q: i64) -> [[i64; 2]; 2] {
    let e = p.extended_gcd(&q);
    let s = e.gcd.signum();
    [[e.x * s, e.y * s], [-q / e.gcd, p / e.gcd]]
}

fn candidate_matrices(s: &SupportSet) -> Vec<[[i64; 2]; 2]> {
    let ident = [[1, 0], [0, 1]];
    let mut bases = vec![ident];
    if let Ok(poly) = newton_polygon(s) {
        let v = &poly.vertices;
        for i in 0..v.len() {
            let (a, b) = (v[i], v[(i + 1) % v.len()]);
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            if dx == 0 && dy == 0 {
                continue;
            }
            let g = dx.gcd(&dy);
            bases.push(straighten(dx / g, dy / g));
        }
    }
    let mut generators = vec![ident, [[0, 1], [1, 0]]];
    for k in [-2, -1, 1, 2] {
        generators.push([[1, k], [0, 1]]);
        generators.push([[1, 0], [k, 1]]);
    }
    let mut out: BTreeSet<[[i64; 2]; 2]> = BTreeSet::new();
    for b in &bases {
        for g1 in &generators {
            for g2 in &generators {
                for g3 in &generators {
                    out.insert(mat_mul(g3, &mat_mul(g2, &mat_mul(g1, b))));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// `T = B∘L` with `T(S)` normalized and small bounding rectangle.
///
/// `L` ranges over products of up to three swaps and small shears applied
/// after the identity or a matrix straightening one edge of the Newton
/// polygon. The smallest dense size wins; ties prefer the identity, then the
/// smallest sum of absolute entries, then the lexicographically smallest
/// matrix.
pub fn find_reduction_map(s: &SupportSet) -> Result<MonomialAffineMap> {
    if s.is_empty() {
        return Err(Error::EmptySupport);
    }
    let ident = [[1, 0], [0, 1]];
    let best = candidate_matrices(s)
        .into_iter()
        .map(|m| {
            let l = MonomialAffineMap {
                matrix: m,
                translation: (0, 0),
            };
            let height: i64 = m.iter().flatten().map(|x| x.abs()).sum();
            (l.apply_support(s).dense_size(), m != ident, height, m)
        })
        .min()
        .expect("identity is a candidate");
    let l = MonomialAffineMap {
        matrix: best.3,
        translation: (0, 0),
    };
    let b = normalize_translation(&l.apply_support(s))?;
    Ok(b.compose(&l))
}

/// Image of `p` under the linear part of `t` as a monomial times a
/// polynomial: `(exponent shift, L_0(p))`.
fn laurent_image(t: &MonomialAffineMap, p: &MultiPoly) -> (Point, Vec<(Point, Rational)>) {
    let lin = t.linear_part();
    let terms: Vec<(Point, Rational)> = p
        .terms()
        .map(|(m, c)| {
            (
                lin.apply_point((m.exponents()[0] as i64, m.exponents()[1] as i64)),
                c.clone(),
            )
        })
        .collect();
    let min_i = terms.iter().map(|t| t.0 .0).min().unwrap_or(0);
    let min_j = terms.iter().map(|t| t.0 .1).min().unwrap_or(0);
    let shifted = terms
        .into_iter()
        .map(|((i, j), c)| ((i - min_i, j - min_j), c))
        .collect();
    ((min_i, min_j), shifted)
}

fn from_points(terms: Vec<(Point, Rational)>, shift: Point) -> MultiPoly {
    MultiPoly::from_terms(
        2,
        terms
            .into_iter()
            .map(|((i, j), c)| (vec![(i + shift.0) as u32, (j + shift.1) as u32], c)),
    )
}

/// `T(f1)/T(f2)` as a reduced quotient of polynomials. The translation
/// cancels; the monomial contents of the two images are balanced between
/// numerator and denominator.
pub fn apply_map_to_function(
    t: &MonomialAffineMap,
    f: &RationalFunction,
) -> Result<RationalFunction> {
    check_bivariate(f.num())?;
    let (c1, n) = laurent_image(t, f.num());
    let (c2, d) = laurent_image(t, f.den());
    let (di, dj) = (c1.0 - c2.0, c1.1 - c2.1);
    let num = from_points(n, (di.max(0), dj.max(0)));
    let den = from_points(d, ((-di).max(0), (-dj).max(0)));
    RationalFunction::new(num, den)
}

/// Image of a polynomial under `t` with its monomial content removed.
pub fn apply_map_to_polynomial(t: &MonomialAffineMap, p: &MultiPoly) -> Result<MultiPoly> {
    check_bivariate(p)?;
    let (_, terms) = laurent_image(t, p);
    Ok(from_points(terms, (0, 0)))
}

/// [`convex_decompose`] with the chosen map and dense sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexDecomposition {
    pub decomposition: Decomposition,
    pub map: MonomialAffineMap,
    pub transformed: RationalFunction,
    pub dense_size_before: u64,
    pub dense_size_after: u64,
}

pub fn convex_decompose(f: &RationalFunction) -> Result<Decomposition> {
    convex_decompose_with(f, &DecomposeOptions::default()).map(|c| c.decomposition)
}

pub fn convex_decompose_with(
    f: &RationalFunction,
    options: &DecomposeOptions,
) -> Result<ConvexDecomposition> {
    check_bivariate(f.num())?;
    let s = support(f.num())?.union(&support(f.den())?);
    let map = find_reduction_map(&s)?;
    let transformed = apply_map_to_function(&map, f)?;
    let inner = decompose_with(&transformed, options)?;
    let decomposition = match inner.status {
        Status::NonComposite => Decomposition {
            status: Status::NonComposite,
            u: inner.u,
            h: f.clone(),
            certificate: inner.certificate,
        },
        Status::Composite => {
            let h = apply_map_to_function(&map.inverse(), &inner.h)?;
            let (u, h) = normalize_pair(&inner.u, &h);
            if compose_uni(&u, &h)? != *f {
                return Err(Error::VerificationFailed);
            }
            Decomposition {
                status: Status::Composite,
                u,
                h,
                certificate: inner.certificate,
            }
        }
    };
    Ok(ConvexDecomposition {
        decomposition,
        map,
        transformed,
        dense_size_before: s.dense_size(),
        dense_size_after: map.apply_support(&s).dense_size(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{UniPoly, UniRationalFunction};
    use proptest::prelude::*;

    fn pts(v: &[Point]) -> SupportSet {
        SupportSet::new(v.iter().copied())
    }

    fn p(terms: &[(&[u32], i64)]) -> MultiPoly {
        MultiPoly::from_int_terms(2, terms)
    }

    #[test]
    fn supports() {
        assert_eq!(
            support(&p(&[(&[1, 0], 1), (&[0, 1], 1)])).unwrap(),
            pts(&[(1, 0), (0, 1)])
        );
        assert!(support(&MultiPoly::zero(2)).unwrap().is_empty());
        let s = support(&p(&[(&[0, 0], 1), (&[2, 2], 1), (&[4, 4], 1)])).unwrap();
        assert_eq!(s, pts(&[(0, 0), (2, 2), (4, 4)]));
        assert!(support(&MultiPoly::one(3)).is_err());
    }

    #[test]
    fn polygons_and_sizes() {
        let tri = newton_polygon(&pts(&[(0, 0), (3, 0), (0, 3), (1, 1)])).unwrap();
        assert_eq!(tri.vertices, vec![(0, 0), (3, 0), (0, 3)]);
        assert_eq!(lattice_size(&tri), 10);
        let single = newton_polygon(&pts(&[(2, 5)])).unwrap();
        assert_eq!(lattice_size(&single), 1);
        let seg = newton_polygon(&pts(&[(0, 0), (2, 2), (4, 4)])).unwrap();
        assert_eq!(seg.vertices.len(), 2);
        assert_eq!(lattice_size(&seg), 5);
        assert_eq!(
            newton_polygon(&SupportSet::default()),
            Err(Error::EmptySupport)
        );
    }

    #[test]
    fn normalization() {
        assert!(is_normalized(&pts(&[(1, 0), (0, 1)])));
        assert!(is_normalized(&pts(&[(0, 5), (5, 0)])));
        let s = pts(&[(2, 3), (5, 3)]);
        assert!(!is_normalized(&s));
        let t = normalize_translation(&s).unwrap();
        assert_eq!(t.translation, (-2, -3));
        assert!(is_normalized(&t.apply_support(&s)));
    }

    #[test]
    fn diagonal_support_is_flattened() {
        let s = pts(&[(0, 0), (2, 2), (4, 4)]);
        let t = find_reduction_map(&s).unwrap();
        let image = t.apply_support(&s);
        assert_eq!(image.dense_size(), 5);
        assert_eq!(s.dense_size(), 25);
        assert!(is_normalized(&image));
        assert_eq!(t.determinant().abs(), 1);
    }

    #[test]
    fn dense_square_keeps_identity() {
        let s = pts(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(
            find_reduction_map(&s).unwrap(),
            MonomialAffineMap::identity()
        );
        let single = pts(&[(3, 4)]);
        assert_eq!(
            find_reduction_map(&single).unwrap(),
            MonomialAffineMap::translation((-3, -4))
        );
    }

    #[test]
    fn maps_on_functions() {
        let f = RationalFunction::new(
            p(&[(&[0, 0], 1), (&[1, 1], 1)]),
            p(&[(&[0, 0], 1), (&[2, 2], 1)]),
        )
        .unwrap();
        assert_eq!(
            apply_map_to_function(&MonomialAffineMap::identity(), &f).unwrap(),
            f
        );
        let l = MonomialAffineMap::new([[1, 0], [-1, 1]], (0, 0)).unwrap();
        let g = apply_map_to_function(&l, &f).unwrap();
        let expected = RationalFunction::new(
            p(&[(&[0, 0], 1), (&[1, 0], 1)]),
            p(&[(&[0, 0], 1), (&[2, 0], 1)]),
        )
        .unwrap();
        assert_eq!(g, expected);
        assert_eq!(apply_map_to_function(&l.inverse(), &g).unwrap(), f);
        assert_eq!(
            MonomialAffineMap::new([[2, 0], [0, 1]], (0, 0)),
            Err(Error::NotUnimodular(2))
        );
    }

    #[test]
    fn monomial_contents_are_balanced() {
        // X·Y / (1 + X) under (i, j) ↦ (i, j − i): X / (1 + X·Y^-1) = X·Y / (X + Y)
        let f =
            RationalFunction::new(p(&[(&[1, 1], 1)]), p(&[(&[0, 0], 1), (&[1, 0], 1)])).unwrap();
        let l = MonomialAffineMap::new([[1, 0], [-1, 1]], (0, 0)).unwrap();
        let g = apply_map_to_function(&l, &f).unwrap();
        assert_eq!(
            g,
            RationalFunction::new(p(&[(&[1, 1], 1)]), p(&[(&[1, 0], 1), (&[0, 1], 1)])).unwrap()
        );
        assert_eq!(apply_map_to_function(&l.inverse(), &g).unwrap(), f);
    }

    #[test]
    fn sparse_composite() {
        // h = (Y + X^2 Y^3) / (1 + X Y), u = T^2 + T
        let h = RationalFunction::new(
            p(&[(&[0, 1], 1), (&[2, 3], 1)]),
            p(&[(&[0, 0], 1), (&[1, 1], 1)]),
        )
        .unwrap();
        let u = UniRationalFunction::new(UniPoly::from_ints(&[0, 1, 1]), UniPoly::one()).unwrap();
        let f = compose_uni(&u, &h).unwrap();
        let c = convex_decompose_with(&f, &DecomposeOptions::default()).unwrap();
        assert!(c.dense_size_after < c.dense_size_before);
        assert!(c.transformed.degree() < f.degree());
        let d = c.decomposition;
        assert_eq!(d.status, Status::Composite);
        assert_eq!(d.u.degree(), 2);
        assert_eq!(d.h.degree(), 5);
        assert_eq!(compose_uni(&d.u, &d.h).unwrap(), f);
        assert!(crate::derivation::is_first_integral(&f, &d.h));
    }

    fn arb_support() -> impl Strategy<Value = SupportSet> {
        prop::collection::btree_set((0i64..7, 0i64..7), 1..10)
            .prop_map(|points| SupportSet { points })
    }

    proptest! {
        #[test]
        fn reduction_map_contract(s in arb_support()) {
            let t = find_reduction_map(&s).unwrap();
            prop_assert_eq!(t.determinant().abs(), 1);
            let image = t.apply_support(&s);
            prop_assert!(is_normalized(&image));
            prop_assert!(image.dense_size() <= s.dense_size());
            prop_assert_eq!(
                lattice_size(&newton_polygon(&image).unwrap()),
                lattice_size(&newton_polygon(&s).unwrap())
            );
            prop_assert_eq!(t.inverse().apply_support(&image), s);
        }

        #[test]
        fn lattice_size_invariant_under_maps(s in arb_support(), a in -2i64..3, b in -2i64..3, tx in -3i64..4) {
            let m = MonomialAffineMap::new(mat_mul(&[[1, a], [0, 1]], &[[1, 0], [b, 1]]), (tx, -tx)).unwrap();
            prop_assert_eq!(
                lattice_size(&newton_polygon(&m.apply_support(&s)).unwrap()),
                lattice_size(&newton_polygon(&s).unwrap())
            );
        }
    }
}
