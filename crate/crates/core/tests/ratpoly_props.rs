mod common;

use num_traits::{One, Zero};
use polycert::rational::{gauss, modulus_sq, rat, sqrt_exact, GaussianRational, Rational};
use polycert::MultiPoly;
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "z"];

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0usize..=3, 0usize..=3, 0usize..=2), rational()), 0..7).prop_map(|terms| {
        MultiPoly::from_terms(&VARS, terms.into_iter().map(|((a, b, c), v)| (vec![a, b, c], v))).unwrap()
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 3)
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(a, b)| gauss(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(7), ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &MultiPoly::constant(&VARS, Rational::one()), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in poly(), q in poly(), pt in point()) {
        let (a, b) = (p.eval(&pt).unwrap(), q.eval(&pt).unwrap());
        prop_assert_eq!((&p + &q).eval(&pt).unwrap(), &a + &b);
        prop_assert_eq!((&p * &q).eval(&pt).unwrap(), &a * &b);
    }

    #[test]
    fn affine_substitution_commutes_with_evaluation(p in poly(), s in rational(), o in rational(), pt in point()) {
        let sub = p.substitute_affine("y", &s, &o).unwrap();
        let moved = vec![pt[0].clone(), &o + &s * &pt[1], pt[2].clone()];
        prop_assert_eq!(sub.eval(&pt).unwrap(), p.eval(&moved).unwrap());
    }

    #[test]
    fn leibniz_rule(p in poly(), q in poly()) {
        let lhs = (&p * &q).derivative("x").unwrap();
        let rhs = &p.derivative("x").unwrap() * &q + &p * &q.derivative("x").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partial_evaluation_agrees(p in poly(), pt in point()) {
        let reduced = p.partial_eval("x", &pt[0]).unwrap().partial_eval("z", &pt[2]).unwrap();
        prop_assert_eq!(reduced.eval(&[pt[1].clone()]).unwrap(), p.eval(&pt).unwrap());
    }

    #[test]
    fn interchange_round_trip(p in poly()) {
        let back = MultiPoly::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(back.content_hash(), p.content_hash());
        prop_assert_eq!(back, p);
    }

    #[test]
    fn gaussian_modulus_is_multiplicative(a in gaussian(), b in gaussian()) {
        prop_assert_eq!(modulus_sq(&(&a * &b)), modulus_sq(&a) * modulus_sq(&b));
        prop_assert_eq!(&a * &a.conj(), gauss(modulus_sq(&a), Rational::zero()));
        if !a.is_zero() {
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn exact_square_roots(n in 0i64..500, d in 1i64..60) {
        let q = rat(n, d);
        prop_assert_eq!(sqrt_exact(&(&q * &q)), Some(q.clone()));
        if let Some(s) = sqrt_exact(&q) {
            prop_assert_eq!(&s * &s, q);
        }
    }
}
