use meanbound::bounds::{
    cargo_shisha, kantorovich_bound, ln_cargo_shisha, ln_new_bound, new_bound, sinch_bracket,
    BoundInputs,
};
use meanbound::means::{log_ratio, ratio, spread_gamma, ExtendedExponent};
use meanbound::special::{f, f_prime};
use meanbound::PositiveVector;
use proptest::prelude::*;

fn fin(p: f64) -> ExtendedExponent {
    ExtendedExponent::Finite(p)
}

fn ordered_pair(lim: f64) -> impl Strategy<Value = (f64, f64)> {
    (-lim..lim, -lim..lim).prop_map(|(a, b): (f64, f64)| (a.max(b), a.min(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cargo_shisha_between_one_and_new_bound((p, q) in ordered_pair(10.0), lg in 1e-3f64..7.0) {
        prop_assume!(p > q);
        let b = BoundInputs::new(p, q, lg.exp()).unwrap();
        let k = cargo_shisha(&b);
        prop_assert!(k > 1.0);
        prop_assert!(k <= new_bound(&b) * (1.0 + 1e-10));
    }

    #[test]
    fn bounds_dominate_ratio(
        (p, q) in ordered_pair(10.0),
        xs in prop::collection::vec(-3.0f64..3.0, 1..16),
    ) {
        let v = PositiveVector::new(xs.iter().map(|x| 10f64.powf(*x)).collect()).unwrap();
        let b = BoundInputs::new(p, q, spread_gamma(&v)).unwrap();
        let r = log_ratio(fin(p), fin(q), &v);
        prop_assert!(r <= ln_cargo_shisha(&b) + 1e-9);
        prop_assert!(r <= ln_new_bound(&b) + 1e-9);
    }

    #[test]
    fn kantorovich_equality(m in -3.0f64..3.0, lg in 0.01f64..9.2) {
        let (m, g) = (10f64.powf(m), lg.exp());
        let v = PositiveVector::new(vec![m, g * m]).unwrap();
        let want = kantorovich_bound(g).unwrap();
        let got = ratio(fin(1.0), fin(-1.0), &v);
        prop_assert!((got - want).abs() / want <= 1e-12);
        // the bound's own γ is recomputed from the vector
        let k = cargo_shisha(&BoundInputs::new(1.0, -1.0, spread_gamma(&v)).unwrap());
        prop_assert!((k - want).abs() / want <= 1e-12);
    }

    #[test]
    fn bracket_symmetries(a in -40.0f64..40.0, b in -40.0f64..40.0) {
        let s = sinch_bracket(a, b);
        prop_assert!((s + sinch_bracket(b, a)).abs() <= 1e-13 * (1.0 + s.abs()));
        prop_assert!((s + sinch_bracket(-a, -b)).abs() <= 1e-13 * (1.0 + s.abs()));
    }

    #[test]
    fn f_is_decreasing(x in 0.0f64..50.0, d in 1e-3f64..10.0) {
        prop_assert!(f(x).unwrap() > f(x + d).unwrap());
    }

    #[test]
    fn f_prime_matches_central_differences(x in 0.05f64..50.0) {
        let h = 1e-5;
        let fd = (f(x + h).unwrap() - f(x - h).unwrap()) / (2.0 * h);
        prop_assert!((fd - f_prime(x).unwrap()).abs() <= 1e-6);
        prop_assert!(f_prime(x).unwrap() < 0.0);
    }

    #[test]
    fn x_f_is_subadditive(x in 0.0f64..50.0, y in 0.0f64..50.0) {
        let g = |t: f64| t * f(t).unwrap();
        prop_assert!(g(x) + g(y) >= g(x + y) - 1e-9 * (1.0 + g(x + y).abs()));
    }
}

#[test]
fn constant_vector_meets_every_bound_with_equality() {
    let v = PositiveVector::new(vec![3.0; 5]).unwrap();
    let b = BoundInputs::new(4.0, -2.0, spread_gamma(&v)).unwrap();
    assert_eq!(ratio(fin(4.0), fin(-2.0), &v), 1.0);
    assert_eq!(cargo_shisha(&b), 1.0);
    assert_eq!(new_bound(&b), 1.0);
}

#[test]
fn spot_values_at_gamma_e() {
    let b = BoundInputs::new(1.0, -1.0, std::f64::consts::E).unwrap();
    // (e+1)²/(4e) and e^{1/4}
    assert!((cargo_shisha(&b) - 1.271_540_317_407_621_9).abs() < 1e-15);
    assert!((new_bound(&b) - 1.284_025_416_687_741_5).abs() < 1e-15);
}
