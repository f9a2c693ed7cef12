mod common;

use common::{rand_rational, rng};
use num_traits::Zero;
use polycert::hankel::coeffs::{hankel_values, taylor_from_schwarz};
use polycert::maminda::{extremal_function, schwarz_power, subordination_roundtrip, ExtremalKind, PhiSpec};
use polycert::rational::{int, rat, real, Rational};
use polycert::series::{PowerSeries, DEFAULT_ORDER};
use proptest::prelude::*;

fn series_without_constant() -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec((-6i64..=6, 1i64..=5), 1..6).prop_map(|cs| {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(cs.into_iter().map(|(n, d)| rat(n, d)));
        PowerSeries::from_coeffs(coeffs, 10)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_seed: proptest::test_runner::RngSeed::Fixed(17), ..ProptestConfig::default() })]

    #[test]
    fn exp_turns_sums_into_products(s in series_without_constant(), t in series_without_constant()) {
        let lhs = s.add(&t).exp().unwrap();
        let rhs = s.exp().unwrap().mul(&t.exp().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_solves_its_differential_equation(s in series_without_constant()) {
        // z (e^s)' = (z s') e^s, truncated consistently.
        let e = s.exp().unwrap();
        prop_assert_eq!(e.z_derivative(), s.z_derivative().mul(&e));
    }
}

/// `f = z exp(sum_k g_k z^k / k)` where `g = w + t w^2`, the solution of
/// `z f'/f = 1 + w + t w^2` computed with series arithmetic alone.
fn solve_by_series(cs: &[Rational], t: &Rational, order: usize) -> PowerSeries {
    let mut wc = vec![Rational::zero()];
    wc.extend(cs.iter().cloned());
    let w = PowerSeries::from_coeffs(wc, order);
    let g = w.add(&w.mul(&w).scale(t));
    let log: Vec<Rational> = (0..=order)
        .map(|k| if k == 0 { Rational::zero() } else { g.coeff(k) / int(k as i64) })
        .collect();
    let e = PowerSeries::from_coeffs(log, order).exp().unwrap();
    PowerSeries::monomial(1, int(1), order).mul(&e)
}

#[test]
fn taylor_coefficients_match_the_series_solution() {
    let mut r = rng(41);
    for _ in 0..100 {
        let cs: Vec<Rational> = (0..4).map(|_| rand_rational(&mut r, 6, 7)).collect();
        let t = rand_rational(&mut r, 4, 8);
        let f = solve_by_series(&cs, &t, 8);
        let g = |x: &Rational| real(x.clone());
        let tc = taylor_from_schwarz(&g(&cs[0]), &g(&cs[1]), &g(&cs[2]), &g(&cs[3]), &g(&t));
        assert_eq!([tc.a2, tc.a3, tc.a4, tc.a5], [2, 3, 4, 5].map(|k| g(&f.coeff(k))));
    }
}

#[test]
fn extremal_functions_agree_with_the_coefficient_route() {
    for (m, n) in [(1, 2), (1, 3), (2, 5), (3, 7)] {
        let spec = PhiSpec::new(m, n).unwrap();
        for kind in [ExtremalKind::H2, ExtremalKind::H3] {
            let f = extremal_function(kind, &spec, DEFAULT_ORDER).unwrap();
            let w = schwarz_power(kind.power(), DEFAULT_ORDER);
            assert!(subordination_roundtrip(&f, &w, &spec).unwrap().is_zero());
            let c: Vec<_> = (1..=4).map(|k| real(w.coeff(k))).collect();
            let tc = taylor_from_schwarz(&c[0], &c[1], &c[2], &c[3], &real(spec.a.clone()));
            assert_eq!([&tc.a2, &tc.a3, &tc.a4, &tc.a5], [2, 3, 4, 5].map(|k| real(f.coeff(k))).each_ref());
            let (h2, h3) = hankel_values(&tc);
            match kind {
                ExtremalKind::H2 => assert_eq!(h2, real(rat(-1, 4))),
                ExtremalKind::H3 => assert_eq!(h3, real(rat(-1, 9))),
            }
        }
    }
}

#[test]
fn a_wrong_schwarz_function_leaves_a_residual() {
    let spec = PhiSpec::new(1, 2).unwrap();
    let f = extremal_function(ExtremalKind::H2, &spec, DEFAULT_ORDER).unwrap();
    let w = schwarz_power(3, DEFAULT_ORDER);
    assert!(!subordination_roundtrip(&f, &w, &spec).unwrap().is_zero());
}
