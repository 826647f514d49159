use meanbound::bounds::{ln_cargo_shisha, ln_new_bound, BoundInputs};
use meanbound::extremal::{
    gap_report, ln_two_point_ratio, sharpness_probe, sup_ratio, vector_search, TwoPointConfig,
};
use meanbound::means::{log_ratio, ExtendedExponent};
use meanbound::PositiveVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn two_point_ratio_matches_vector_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (a, b): (f64, f64) = (rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
        let (p, q) = (a.max(b), a.min(b));
        let gamma = rng.gen_range(1.01..100.0);
        let n = rng.gen_range(2..=16u32);
        let k = rng.gen_range(1..n);
        let c = TwoPointConfig::discrete(gamma, k, n).unwrap();
        let mut v = vec![1.0; n as usize];
        v[..k as usize].fill(gamma);
        let v = PositiveVector::new(v).unwrap();
        let want = log_ratio(ExtendedExponent::Finite(p), ExtendedExponent::Finite(q), &v);
        let got = ln_two_point_ratio(p, q, &c).unwrap();
        // relative on the ratio itself
        assert!(
            (got - want).exp_m1().abs() <= 1e-12,
            "{p} {q} {gamma} {k}/{n}"
        );
    }
}

#[test]
fn sup_k_b_are_ordered_on_grid() {
    for i in 0..20 {
        let p = -5.0 + 10.0 * i as f64 / 19.0;
        for j in 0..20 {
            let q = p - 0.05 - 10.0 * j as f64 / 19.0;
            for s in 0..10 {
                let gamma = 1.01 * (100.0f64 / 1.01).powf(s as f64 / 9.0);
                let sup = sup_ratio(p, q, gamma).unwrap();
                let b = BoundInputs::new(p, q, gamma).unwrap();
                let (ln_k, ln_b) = (ln_cargo_shisha(&b), ln_new_bound(&b));
                assert!(sup.ln_value <= ln_k + 1e-9, "{p} {q} {gamma}");
                assert!(ln_k <= ln_b + 1e-9, "{p} {q} {gamma}");
            }
        }
    }
}

#[test]
fn kantorovich_case_is_attained() {
    let r = gap_report(1.0, -1.0, 4.0).unwrap();
    assert!((r.sup_estimate.unwrap() - 1.5625).abs() < 1e-12);
    assert!(r.slack_k_over_sup.unwrap().abs() < 1e-12);
}

#[test]
fn sharpness_ratio_in_unit_interval_and_near_one() {
    for (p, q) in [(1.0, -1.0), (2.0, -1.0), (5.0, 4.0), (-0.5, -3.0)] {
        for t in [1.0, 0.1, 0.01] {
            let r = sharpness_probe(p, q, t).unwrap().normalized_ratio;
            assert!(r > 0.0 && r <= 1.0);
        }
        let r = sharpness_probe(p, q, 1e-3).unwrap().normalized_ratio;
        assert!((r - 1.0).abs() <= 1e-4);
    }
}

#[test]
fn full_vectors_do_not_beat_two_point_optimum() {
    for (p, q, gamma, n) in [
        (1.0, -1.0, 4.0, 6),
        (3.0, 0.5, 20.0, 8),
        (-1.0, -4.0, 9.0, 5),
    ] {
        let sup = sup_ratio(p, q, gamma).unwrap();
        let found = vector_search(p, q, gamma, n, 4, 11).unwrap();
        assert!(found.ln_ratio <= sup.ln_value + 1e-9);
        // and it finds the best n-vector two-point configuration, λ = k/n
        let best_discrete = (1..n as u32)
            .map(|k| {
                let c = TwoPointConfig::discrete(gamma, k, n as u32).unwrap();
                ln_two_point_ratio(p, q, &c).unwrap()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            found.ln_ratio >= best_discrete - 1e-9,
            "{p} {q} {gamma} {n}"
        );
    }
}
