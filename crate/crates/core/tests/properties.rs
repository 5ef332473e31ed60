use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ratdec::decompose::{decompose, recombine, Status};
use ratdec::factor::{factor, factor_univariate};
use ratdec::poly::{
    compose_uni, gcd, mobius_compose, rat, resultant_wrt_last, Mobius, MultiPoly, UniPoly,
};

mod common;

use common::*;

fn poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -9i64..=9), 0..6).prop_map(
        move |terms| MultiPoly::from_terms(nvars, terms.into_iter().map(|(e, c)| (e, rat(c)))),
    )
}

fn nonzero_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    poly(nvars, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn mobius(rng: &mut ChaCha8Rng) -> Mobius {
    loop {
        let c: Vec<i64> = (0..4).map(|_| rng.gen_range(-5..=5)).collect();
        if let Ok(m) = Mobius::new(rat(c[0]), rat(c[1]), rat(c[2]), rat(c[3])) {
            return m;
        }
    }
}

fn associates(a: &MultiPoly, b: &MultiPoly) -> bool {
    a.primitive_part() == b.primitive_part()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(3, 3), b in poly(3, 3), c in poly(3, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn exact_division_undoes_multiplication(p in poly(2, 4), q in nonzero_poly(2, 3)) {
        prop_assert_eq!((&p * &q).divide_exact(&q).unwrap(), p);
    }

    #[test]
    fn gcd_extracts_common_factor(p in nonzero_poly(2, 2), q in nonzero_poly(2, 2), g in nonzero_poly(2, 2)) {
        let lhs = gcd(&(&p * &g), &(&q * &g));
        prop_assert!(associates(&lhs, &(&g * &gcd(&p, &q))));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in nonzero_poly(2, 2), b in nonzero_poly(2, 2), g in nonzero_poly(2, 2)) {
        let (a, b) = (&a * &g, &b * &g);
        prop_assume!(a.degree_in(1).unwrap() > 0 && b.degree_in(1).unwrap() > 0);
        let shares = gcd(&a, &b).degree_in(1).unwrap() > 0;
        prop_assert_eq!(resultant_wrt_last(&a, &b).is_zero(), shares);
    }

    #[test]
    fn resultant_of_random_pairs(a in nonzero_poly(2, 3), b in nonzero_poly(2, 3)) {
        prop_assume!(a.degree_in(1).unwrap() > 0 && b.degree_in(1).unwrap() > 0);
        let shares = gcd(&a, &b).degree_in(1).unwrap() > 0;
        prop_assert_eq!(resultant_wrt_last(&a, &b).is_zero(), shares);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mobius_composition_commutes_with_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = mobius(&mut rng);
        let k = rng.gen_range(1..=3);
        let v = rand_outer(&mut rng, k, 6);
        let h = rand_reduced(&mut rng, 2, 6);
        let lhs = compose_uni(&mobius_compose(&m, &v), &h).unwrap();
        let rhs = compose_uni(&m.to_uni(), &compose_uni(&v, &h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorization_recomposes_into_irreducibles(p in nonzero_poly(2, 3), q in nonzero_poly(2, 2)) {
        let p = &p * &q;
        let fac = factor(&p).unwrap();
        prop_assert_eq!(fac.expand(), p);
        for (g, _) in &fac.factors {
            let again = factor(g).unwrap();
            prop_assert!(again.is_irreducible());
            prop_assert_eq!(&again.factors[0].0, g);
        }
    }

    #[test]
    fn univariate_factorization_recomposes(c in prop::collection::vec(-9i64..=9, 1..12), d in prop::collection::vec(-9i64..=9, 1..8)) {
        let p = &UniPoly::from_ints(&c) * &UniPoly::from_ints(&d);
        prop_assume!(!p.is_zero());
        let fac = factor_univariate(&p).unwrap();
        prop_assert_eq!(fac.expand(), MultiPoly::from_unipoly(1, 0, &p));
        for (g, _) in &fac.factors {
            prop_assert!(factor(g).unwrap().is_irreducible());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn round_trip_and_degree_multiplicativity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dh = rng.gen_range(2..=3);
        let du = rng.gen_range(2..=3);
        let h = random_non_composite(&mut rng, dh, 8);
        let u = rand_outer(&mut rng, du, 8);
        let f = compose_uni(&u, &h).unwrap();
        let d = decompose(&f).unwrap();
        prop_assert_eq!(d.status, Status::Composite);
        prop_assert_eq!(compose_uni(&d.u, &d.h).unwrap(), f.clone());
        prop_assert_eq!(d.h.degree(), dh);
        prop_assert_eq!(f.degree() as usize, d.u.degree() * d.h.degree() as usize);
    }

    #[test]
    fn verdict_is_invariant_under_mobius(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if rng.gen_bool(0.5) {
            let h = rand_reduced(&mut rng, 2, 6);
            let u = rand_outer(&mut rng, 2, 6);
            compose_uni(&u, &h).unwrap()
        } else {
            rand_reduced(&mut rng, 3, 6)
        };
        let g = compose_uni(&mobius(&mut rng).to_uni(), &f).unwrap();
        let (a, b) = (decompose(&f).unwrap(), decompose(&g).unwrap());
        prop_assert_eq!(a.status, b.status);
        prop_assert_eq!(a.h.degree(), b.h.degree());
    }

    #[test]
    fn recombination_bases_partition_the_factors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_non_composite(&mut rng, 2, 6);
        let k = rng.gen_range(1..=3);
        let u = rand_outer(&mut rng, k, 6);
        let f = compose_uni(&u, &h).unwrap();
        let Ok(g) = ratdec::decompose::good_homography(&f) else { return Ok(()) };
        let r = recombine(&g.transformed, None).unwrap();
        for (basis, factors, side) in [
            (&r.basis_num, &r.factors_num, g.transformed.num()),
            (&r.basis_den, &r.factors_den, g.transformed.den()),
        ] {
            let mut degree = 0;
            for (i, v) in basis.iter().enumerate() {
                prop_assert!(v.iter().all(|x| x.is_zero() || *x == rat(1)));
                for w in &basis[i + 1..] {
                    prop_assert!(v.iter().zip(w).all(|(a, b)| (a * b).is_zero()));
                }
                for (x, fac) in v.iter().zip(factors) {
                    if !x.is_zero() {
                        degree += fac.total_degree().unwrap();
                    }
                }
            }
            prop_assert_eq!(degree, side.total_degree().unwrap());
        }
    }
}
