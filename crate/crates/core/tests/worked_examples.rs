use num_traits::{One, Zero};
use ratdec::decompose::{
    check_hypothesis_h, decompose, good_homography, recombine, recover_u, Status,
};
use ratdec::derivation::cofactor;
use ratdec::expr::parse_polynomial;
use ratdec::linalg::kernel_basis;
use ratdec::poly::{
    compose_uni, rat, ratio, MultiPoly, Rational, RationalFunction, UniPoly, UniRationalFunction,
};

fn vars() -> Vec<String> {
    vec!["X".into(), "Y".into()]
}

fn p(s: &str) -> MultiPoly {
    parse_polynomial(s, &vars()).unwrap()
}

fn h_pair() -> (MultiPoly, MultiPoly) {
    let h1 = p("(1+X+Y^2)*(X+Y)");
    let h2 = &h1 - &p("(Y^2-X-1)*(Y-2*X+1)");
    (h1, h2)
}

fn non_composite() -> RationalFunction {
    let (h1, h2) = h_pair();
    RationalFunction::new(h1, h2).unwrap()
}

fn outer() -> UniRationalFunction {
    UniRationalFunction::new(
        UniPoly::from_ints(&[0, -1, 1]),
        UniPoly::from_ints(&[1, 0, 1]),
    )
    .unwrap()
}

fn composite() -> RationalFunction {
    compose_uni(&outer(), &non_composite()).unwrap()
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let Some(i) = b.iter().position(|x| !x.is_zero()) else {
        return a.iter().all(Zero::is_zero);
    };
    let s = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == &s * y)
}

#[test]
fn non_composite_hypothesis_and_resultant() {
    let f = non_composite();
    assert_eq!(f.num(), &p("X + X^2 + X*Y^2 + Y + Y*X + Y^3"));
    assert_eq!(f.den(), &p("-X^2 + 3*X*Y^2 + 2*Y + 2*Y*X - Y^2 + 1"));
    let rep = check_hypothesis_h(&f);
    assert!(rep.degree_condition && rep.satisfied);
    assert_eq!(rep.resultant_r, UniPoly::from_ints(&[-4, -24, -92, -64, 8]));
}

#[test]
fn non_composite_homography_and_system() {
    let f = non_composite();
    let g = good_homography(&f).unwrap();
    assert_eq!(g.lambda_a, rat(0));
    assert_eq!(g.lambda_b, rat(1));
    let big_f = g.transformed;
    let f1 = p("(1+X+Y^2)*(X+Y)");
    assert!(big_f.num() == &f1 || big_f.num() == &-&f1);

    let r = recombine(&big_f, None).unwrap();
    assert_eq!(r.factors_num, vec![p("1+X+Y^2"), p("X+Y")]);
    assert_eq!(r.factors_den.len(), 2);
    assert!(r.factors_den.contains(&p("Y^2-X-1")) || r.factors_den.contains(&p("-(Y^2-X-1)")));

    // the printed cofactor is taken for the derivation of f; that of F is (λa − λb) times it
    let printed = p("3*X^2 + 8*Y*X^2 + 2*X - 2*Y*X + 7*X*Y^2 - 1 + 3*Y^2 - 6*Y^3 - 6*Y^4 + 2*Y");
    assert_eq!(
        cofactor(&f, &p("1+X+Y^2")).unwrap().components,
        vec![printed.clone()]
    );
    assert_eq!(
        cofactor(&big_f, &p("1+X+Y^2")).unwrap().components,
        vec![-&printed]
    );

    // the printed 15x4 system (for the derivation of f), rows in the same order
    let printed_rows: [[i64; 4]; 15] = [
        [-1, 3, -1, 3],
        [2, 6, 2, 6],
        [3, 3, 3, 3],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
        [2, -4, -2, 0],
        [-2, 4, -6, 8],
        [8, 8, 8, 8],
        [0, 0, 0, 0],
        [3, -6, -11, 8],
        [7, 0, 1, 6],
        [0, 0, 0, 0],
        [-6, -2, -6, -2],
        [0, 0, 0, 0],
        [-6, -3, -6, -3],
    ];
    assert_eq!(r.system.matrix.rows(), 15);
    assert_eq!(r.system.matrix.cols(), 4);
    let den_order: Vec<usize> =
        if r.factors_den[0] == p("Y^2-X-1") || r.factors_den[0] == p("-(Y^2-X-1)") {
            vec![2, 3]
        } else {
            vec![3, 2]
        };
    for (i, row) in printed_rows.iter().enumerate() {
        assert_eq!(*r.system.matrix.get(i, 0), -rat(row[0]), "row {i}");
        assert_eq!(*r.system.matrix.get(i, 1), -rat(row[1]), "row {i}");
        assert_eq!(
            *r.system.matrix.get(i, 2),
            -rat(row[den_order[0]]),
            "row {i}"
        );
        assert_eq!(
            *r.system.matrix.get(i, 3),
            -rat(row[den_order[1]]),
            "row {i}"
        );
    }

    let ker = kernel_basis(&r.system.matrix);
    assert_eq!(ker.len(), 1);
    assert!(proportional(&ker[0], &[rat(-1), rat(-1), rat(1), rat(1)]));
}

#[test]
fn non_composite_verdict() {
    let f = non_composite();
    let d = decompose(&f).unwrap();
    assert_eq!(d.status, Status::NonComposite);
    assert_eq!(d.h, f);
    assert_eq!(d.u, UniRationalFunction::identity());
    let cert = d.certificate.unwrap();
    assert_eq!((cert.lambda_a, cert.lambda_b), (rat(0), rat(1)));
}

#[test]
fn composite_bases_and_inner_function() {
    let f = composite();
    let g = good_homography(&f).unwrap();
    assert_eq!(g.lambda_a, rat(0));
    assert_eq!(g.lambda_b, ratio(90, 101));
    let r = recombine(&g.transformed, None).unwrap();
    // printed order is F11 = 1+X+Y^2, F12 = 2X-Y-1, F13 = Y^2-X-1, F14 = X+Y; ours swaps the middle pair
    let expected_factors: Vec<MultiPoly> = ["1+X+Y^2", "Y^2-X-1", "2*X-Y-1", "X+Y"]
        .iter()
        .map(|s| p(s).primitive_part())
        .collect();
    assert_eq!(r.factors_num, expected_factors);
    let v = |a: &[i64]| a.iter().map(|&x| rat(x)).collect::<Vec<_>>();
    let mut b1 = r.basis_num.clone();
    b1.sort();
    let mut e1 = vec![v(&[1, 0, 0, 1]), v(&[0, 1, 1, 0])];
    e1.sort();
    assert_eq!(b1, e1);
    let mut b2 = r.basis_den.clone();
    b2.sort();
    assert_eq!(b2, vec![v(&[0, 1]), v(&[1, 0])]);
    assert_eq!(r.v_num, v(&[1, 0, 0, 1]));
    assert_eq!(r.v_den, v(&[1, 0]));

    let (h1, h2) = h_pair();
    let expected =
        RationalFunction::new(h1.clone(), &h1.scale(&rat(11)) + &h2.scale(&rat(9))).unwrap();
    assert_eq!(r.inner, expected);
    assert_eq!(
        r.factors_den[0],
        p("2*X^2 + 11*X + 9 + 29*X*Y + 29*Y + 38*X*Y^2 - 9*Y^2 + 11*Y^3")
    );
}

#[test]
fn composite_recovers_outer_function() {
    let f = composite();
    let (h1, h2) = h_pair();
    let u = recover_u(&f, &RationalFunction::new(h1, h2).unwrap()).unwrap();
    assert_eq!(u, outer());
}

#[test]
fn composite_verdict() {
    let f = composite();
    let d = decompose(&f).unwrap();
    assert_eq!(d.status, Status::Composite);
    assert_eq!(d.u.degree(), 2);
    assert_eq!(d.h.degree(), 3);
    assert_eq!(compose_uni(&d.u, &d.h).unwrap(), f);
    assert!(ratdec::derivation::is_first_integral(&f, &d.h));
    assert!(d.h.num().content().is_one() && d.h.den().content().is_one());
}
