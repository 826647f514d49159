//! Upper bounds for `P_p(v)/P_q(v)` in terms of the spread `γ = max v / min v`.
//!
//! Three families are provided:
//!
//! - [`kantorovich_bound`], the `(p, q) = (1, −1)` case `(γ+1)²/(4γ)`;
//! - the Cargo–Shisha bound `K`, both in its textbook form
//!   ([`cargo_shisha_raw`]) and in a log-sinch form that stays finite and
//!   continuous at `pq = 0`, `p = q` and `γ = 1` ([`cargo_shisha`]);
//! - [`new_bound`] `B = exp((p−q)/8 · (ln γ)²)`, which dominates `K`.
//!
//! With `L = ln γ`, `p₀ = pL/2`, `q₀ = qL/2` and `h(x) = x·ln(sinh x / x)`,
//!
//! ```text
//! ln K = (L/2) · [h(p₀) − h(q₀) − h(p₀−q₀)] / (p₀q₀)
//!      = (L/2) · [(p₀−q₀)/2 + F(p₀, q₀)],
//! F(p₀, q₀) = [g(p₀) − g(q₀) − g(p₀−q₀)] / (p₀q₀),   g(x) = x·f(x),
//! ```
//!
//! and `(L/2)(p₀−q₀)/2 = ln B`, so `ln B − ln K = −(L/2)·F ≥ 0`.
//! `F(p, q)` is exactly `−lemma_uv_lhs(p, q)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::means::RealVector;
use crate::special::{
    f_prime_unchecked, f_second_unchecked, f_third_unchecked, f_unchecked, ln_abs_expm1,
    log_sinch_prime, log_sinch_second, log_sinch_unchecked, softplus,
};

/// Both arguments of the sinch bracket below this magnitude: use the
/// bivariate polynomial expansion.
const BRACKET_POLY_CUTOFF: f64 = 0.05;
/// Arguments up to this magnitude use the `f`-form of the bracket, larger
/// ones the `ln sinch`-form (which has less cancellation there).
const BRACKET_F_FORM_LIMIT: f64 = 1.0;

/// Exponents `q ≤ p` and spread `γ ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub p: f64,
    pub q: f64,
    pub gamma: f64,
}

impl BoundInputs {
    pub fn new(p: f64, q: f64, gamma: f64) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() {
            return domain(format!("exponents must be finite (p={p}, q={q})"));
        }
        if q > p {
            return domain(format!("requires q <= p (p={p}, q={q})"));
        }
        if !(gamma >= 1.0) || !gamma.is_finite() {
            return domain(format!("requires finite gamma >= 1 (gamma={gamma})"));
        }
        Ok(Self { p, q, gamma })
    }

    /// `true` when every bound collapses to 1.
    pub fn is_degenerate(&self) -> bool {
        self.p == self.q || self.gamma == 1.0
    }
}

/// Bound values for one `(p, q, γ)`; the supremum is filled in by
/// [`crate::extremal::gap_report`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(flatten)]
    pub inputs: BoundInputs,
    pub sup_estimate: Option<f64>,
    pub cargo_shisha: f64,
    pub new_bound: f64,
    pub slack_k_over_sup: Option<f64>,
    pub slack_b_over_k: f64,
}

impl BoundReport {
    pub fn from_bounds(b: &BoundInputs) -> Self {
        let ln_k = ln_cargo_shisha(b);
        let ln_b = ln_new_bound(b);
        Self {
            inputs: *b,
            sup_estimate: None,
            cargo_shisha: ln_k.exp(),
            new_bound: ln_b.exp(),
            slack_k_over_sup: None,
            slack_b_over_k: (ln_b - ln_k).exp_m1(),
        }
    }
}

/// Kantorovich's bound `(γ+1)²/(4γ)` on the arithmetic/harmonic mean ratio.
pub fn kantorovich_bound(gamma: f64) -> Result<f64> {
    if !(gamma >= 1.0) || !gamma.is_finite() {
        return domain(format!("requires finite gamma >= 1 (gamma={gamma})"));
    }
    Ok((gamma + 1.0) * (gamma + 1.0) / (4.0 * gamma))
}

/// `ln B = (p−q)/8 · (ln γ)²`.
pub fn ln_new_bound(b: &BoundInputs) -> f64 {
    if b.is_degenerate() {
        return 0.0;
    }
    let l = b.gamma.ln();
    (b.p - b.q) / 8.0 * l * l
}

/// `B = exp((p−q)/8 · (ln γ)²)`.
pub fn new_bound(b: &BoundInputs) -> f64 {
    ln_new_bound(b).exp()
}

/// Cargo–Shisha bound in the textbook form, evaluated through logarithms.
///
/// Defined only for `pq ≠ 0`, `q < p` and `γ > 1`; [`cargo_shisha`] covers
/// the rest by continuity.
pub fn cargo_shisha_raw(b: &BoundInputs) -> Result<f64> {
    ln_cargo_shisha_raw(b).map(f64::exp)
}

/// Natural log of [`cargo_shisha_raw`].
pub fn ln_cargo_shisha_raw(b: &BoundInputs) -> Result<f64> {
    let BoundInputs { p, q, gamma } = *b;
    if p == 0.0 || q == 0.0 {
        return domain("raw Cargo-Shisha form requires p*q != 0");
    }
    if p == q {
        return domain("raw Cargo-Shisha form requires p != q");
    }
    if gamma <= 1.0 {
        return domain("raw Cargo-Shisha form requires gamma > 1");
    }
    let l = gamma.ln();
    // E(x) = γ^x − 1; both factors below are positive whatever the signs of p, q.
    let ln_abs_e = |x: f64| ln_abs_expm1(x * l);
    // ln|E(x)/E(y)|, as a direct quotient while both are finite
    let ln_e_ratio = |x: f64, y: f64| {
        if (x * l).abs() < 700.0 && (y * l).abs() < 700.0 {
            ((x * l).exp_m1() / (y * l).exp_m1()).abs().ln()
        } else {
            ln_abs_e(x) - ln_abs_e(y)
        }
    };

    // A = q(γ^p − γ^q) / ((p−q)(γ^q − 1)) → 1 as p → 0.
    let ln_a = if q < 0.0 {
        // A = (1 − p/(p−q)) · (1 − E(p)/E(q))
        let second = if p > 0.0 {
            if p * l < 700.0 {
                ((p * l).exp_m1() / -(q * l).exp_m1()).ln_1p()
            } else {
                softplus(ln_abs_e(p) - ln_abs_e(q))
            }
        } else {
            let r = (p * l).exp_m1() / (q * l).exp_m1();
            if r < 0.5 {
                (-r).ln_1p()
            } else {
                // 1 − E(p)/E(q) = γ^p E(q−p) / E(q)
                p * l + ln_e_ratio(q - p, q)
            }
        };
        (-p / (p - q)).ln_1p() + second
    } else {
        // 0 < q < p: A = (q/(p−q)) · γ^q E(p−q) / E(q)
        (q / (p - q)).ln() + q * l + ln_e_ratio(p - q, q)
    };

    // C = p(γ^p − γ^q) / ((p−q)(γ^p − 1)) → 1 as q → 0.
    let ln_c = if q > 0.5 * p {
        // 0 < q < p with q near p: C = (p/(p−q)) · γ^q E(p−q) / E(p)
        (p / (p - q)).ln() + q * l + ln_e_ratio(p - q, p)
    } else if p > 0.0 {
        // C = (1 + q/(p−q)) · (1 − E(q)/E(p))
        let ratio = if p * l < 700.0 {
            (q * l).exp_m1() / (p * l).exp_m1()
        } else {
            let mag = (ln_abs_e(q) - ln_abs_e(p)).exp();
            if q > 0.0 {
                mag
            } else {
                -mag
            }
        };
        (q / (p - q)).ln_1p() + (-ratio).ln_1p()
    } else {
        // q < p < 0: C = (−p/(p−q)) · γ^q E(p−q) / (−E(p))
        (-p / (p - q)).ln() + q * l + ln_e_ratio(p - q, p)
    };

    let ln_k = ln_a / p - ln_c / q;
    if !ln_k.is_finite() {
        return domain(format!("raw Cargo-Shisha form is not finite at {b:?}"));
    }
    Ok(ln_k)
}

/// Cargo–Shisha bound `K` for every `q ≤ p`, `γ ≥ 1`, via the log-sinch form.
///
/// Exactly 1 when `p = q` or `γ = 1`. The removable singularities at
/// `p = 0` and `q = 0` are filled by their limits.
pub fn cargo_shisha(b: &BoundInputs) -> f64 {
    ln_cargo_shisha(b).exp()
}

/// Natural log of [`cargo_shisha`].
pub fn ln_cargo_shisha(b: &BoundInputs) -> f64 {
    if b.is_degenerate() {
        return 0.0;
    }
    let half_l = 0.5 * b.gamma.ln();
    half_l * sinch_bracket(b.p * half_l, b.q * half_l)
}

/// `[h(a) − h(b) − h(a−b)] / (ab)` with `h(x) = x·ln(sinh x / x)`, extended
/// continuously to `ab = 0`.
///
/// Antisymmetric under swapping its arguments and odd under joint negation.
pub fn sinch_bracket(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (abs_a, abs_b) = (a.abs(), b.abs());
    if abs_a < BRACKET_POLY_CUTOFF && abs_b < BRACKET_POLY_CUTOFF {
        return 0.5 * (a - b) + f_bracket_poly(a, b);
    }
    if abs_b < expansion_radius(abs_a) {
        return bracket_near_axis(a, b);
    }
    if abs_a < expansion_radius(abs_b) {
        return -bracket_near_axis(b, a);
    }
    if abs_a.max(abs_b) <= BRACKET_F_FORM_LIMIT {
        let g = |x: f64| x * f_unchecked(x);
        0.5 * (a - b) + (g(a) - g(b) - g(a - b)) / (a * b)
    } else {
        let h = |x: f64| x * log_sinch_unchecked(x);
        (h(a) - h(b) - h(a - b)) / (a * b)
    }
}

/// Radius in the small argument below which [`bracket_near_axis`] replaces
/// the direct quotient, whose absolute error grows like `ε·L(other)/small`.
fn expansion_radius(other: f64) -> f64 {
    (2e-3 * other).max(1e-4)
}

/// Bracket for `|b|` small and `|a|` not.
///
/// With `m = a − b/2`, `h(a) − h(a−b) = b·h'(m) + (b³/24)·h'''(m) + O(b⁵)`,
/// and `h(b)/b = L(b)` is evaluated exactly.
fn bracket_near_axis(a: f64, b: f64) -> f64 {
    let m = a - 0.5 * b;
    let w = b * b / 24.0;
    if a.abs() <= BRACKET_F_FORM_LIMIT {
        // g' = f + x f', g''' = 3f'' + x f'''
        let g1 = f_unchecked(m) + m * f_prime_unchecked(m);
        let g3 = 3.0 * f_second_unchecked(m) + m * f_third_unchecked(m);
        0.5 * (a - b) + (g1 + w * g3 - f_unchecked(b)) / a
    } else {
        // h' = L + x L', h''' = 3L'' + x L'''
        let h1 = log_sinch_unchecked(m) + m * log_sinch_prime(m);
        let h3 = 3.0 * log_sinch_second(m) + m * f_third_unchecked(m);
        (h1 + w * h3 - log_sinch_unchecked(b)) / a
    }
}

/// `F(a, b)` for small `a`, `b`, from `g(x) = Σ c_{2k} x^{2k+1}`:
/// `[x^m − y^m − (x−y)^m]/(xy) = −Σ_{j=1}^{m−1} C(m,j) x^{m−j−1} (−1)^j y^{j−1}`.
fn f_bracket_poly(a: f64, b: f64) -> f64 {
    const COEFFS: [(u32, f64); 5] = [
        (5, -1.0 / 180.0),
        (7, 1.0 / 2835.0),
        (9, -1.0 / 37800.0),
        (11, 1.0 / 467775.0),
        (13, -691.0 / 3831077250.0),
    ];
    let mut total = 0.0;
    for (m, c) in COEFFS {
        let mut binom = 1.0;
        let mut sum = 0.0;
        for j in 1..m {
            binom = binom * f64::from(m - j + 1) / f64::from(j);
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sum += binom * sign * a.powi((m - j - 1) as i32) * b.powi(j as i32 - 1);
        }
        total += c * -sum;
    }
    total
}

/// `f(q)/p − f(p)/q + (1/q − 1/p)·f(p−q)`, evaluated as written.
///
/// Nonnegative for `q ≤ p`, nonpositive for `p ≤ q`.
pub fn lemma_uv_lhs(p: f64, q: f64) -> Result<f64> {
    if p.is_nan() || q.is_nan() {
        return domain("arguments must not be NaN");
    }
    if p == 0.0 || q == 0.0 {
        return domain("requires p != 0 and q != 0");
    }
    Ok(f_unchecked(q) / p - f_unchecked(p) / q + (1.0 / q - 1.0 / p) * f_unchecked(p - q))
}

/// Residual of `(p₀³ − q₀³ + (q₀−p₀)³)/(6p₀q₀) = (p₀−q₀)/2`; zero up to rounding.
pub fn cubic_identity_check(p0: f64, q0: f64) -> Result<f64> {
    if p0 == 0.0 || q0 == 0.0 || p0.is_nan() || q0.is_nan() {
        return domain("requires nonzero, non-NaN p0 and q0");
    }
    let d = q0 - p0;
    Ok((p0 * p0 * p0 - q0 * q0 * q0 + d * d * d) / (6.0 * p0 * q0) - 0.5 * (p0 - q0))
}

/// `(p−q)/8 · (max v − min v)²`, an upper bound for `E_p(v) − E_q(v)`.
pub fn exp_mean_diff_bound(p: f64, q: f64, v: &RealVector) -> Result<f64> {
    if !p.is_finite() || !q.is_finite() {
        return domain("exponents must be finite");
    }
    if q > p {
        return domain(format!("requires q <= p (p={p}, q={q})"));
    }
    let width = v.max() - v.min();
    Ok((p - q) / 8.0 * width * width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bi(p: f64, q: f64, g: f64) -> BoundInputs {
        BoundInputs::new(p, q, g).unwrap()
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BoundInputs::new(1.0, 2.0, 3.0).is_err());
        assert!(BoundInputs::new(1.0, 0.0, 0.5).is_err());
        assert!(BoundInputs::new(f64::NAN, 0.0, 2.0).is_err());
        assert!(BoundInputs::new(1.0, 0.0, f64::NAN).is_err());
        assert!(kantorovich_bound(0.9).is_err());
        assert!(kantorovich_bound(f64::NAN).is_err());
        assert!(cargo_shisha_raw(&bi(1.0, 0.0, 2.0)).is_err());
        assert!(cargo_shisha_raw(&bi(1.0, 1.0, 2.0)).is_err());
        assert!(cargo_shisha_raw(&bi(1.0, -1.0, 1.0)).is_err());
        assert!(lemma_uv_lhs(0.0, 1.0).is_err());
        assert!(cubic_identity_check(1.0, 0.0).is_err());
        let v = RealVector::new(vec![0.0, 1.0]).unwrap();
        assert!(exp_mean_diff_bound(-1.0, 1.0, &v).is_err());
    }

    #[test]
    fn kantorovich_examples() {
        assert_eq!(kantorovich_bound(1.0).unwrap(), 1.0);
        assert_eq!(kantorovich_bound(4.0).unwrap(), 1.5625);
        assert_relative_eq!(
            kantorovich_bound(9.0).unwrap(),
            100.0 / 36.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn cargo_shisha_reduces_to_kantorovich() {
        for g in [1.001, 1.5, 4.0, 37.0, 1e4] {
            let k = kantorovich_bound(g).unwrap();
            assert_relative_eq!(
                cargo_shisha_raw(&bi(1.0, -1.0, g)).unwrap(),
                k,
                max_relative = 1e-13
            );
            assert_relative_eq!(cargo_shisha(&bi(1.0, -1.0, g)), k, max_relative = 1e-13);
        }
    }

    #[test]
    fn cargo_shisha_degenerate_cases_are_exactly_one() {
        assert_eq!(cargo_shisha(&bi(2.0, -3.0, 1.0)), 1.0);
        assert_eq!(cargo_shisha(&bi(2.0, 2.0, 7.0)), 1.0);
        assert_eq!(new_bound(&bi(2.0, 2.0, 7.0)), 1.0);
        assert_eq!(new_bound(&bi(5.0, -3.0, 1.0)), 1.0);
    }

    #[test]
    fn raw_near_gamma_one() {
        let k = cargo_shisha_raw(&bi(1.0, -1.0, 1.0 + 1e-8)).unwrap();
        assert!((k - 1.0).abs() < 1e-15, "{k:e}");
    }

    #[test]
    fn new_bound_examples() {
        let e = std::f64::consts::E;
        assert_relative_eq!(
            new_bound(&bi(1.0, -1.0, e)),
            0.25f64.exp(),
            max_relative = 1e-15
        );
        // K(1,−1,e) = (e+1)²/(4e) = 1.2715403174076219
        assert_relative_eq!(
            cargo_shisha(&bi(1.0, -1.0, e)),
            1.271_540_317_407_621_9,
            max_relative = 1e-14
        );
        // exp((2/8)(ln 4)²) = 1.6168066722416747
        let b = new_bound(&bi(1.0, -1.0, 4.0));
        assert_relative_eq!(b, 1.616_806_672_241_674_7, max_relative = 1e-14);
        assert!(b > 1.5625);
    }

    #[test]
    fn bracket_symmetries() {
        for (a, b) in [
            (0.3, -0.2),
            (2.0, 0.7),
            (0.01, 0.04),
            (40.0, -3.0),
            (1e-7, 2.0),
        ] {
            assert_relative_eq!(
                sinch_bracket(a, b),
                -sinch_bracket(b, a),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                sinch_bracket(-a, -b),
                -sinch_bracket(a, b),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn bracket_branches_are_continuous() {
        let across = |lo: (f64, f64), hi: (f64, f64)| {
            let (x, y) = (sinch_bracket(lo.0, lo.1), sinch_bracket(hi.0, hi.1));
            assert_relative_eq!(x, y, max_relative = 1e-12);
        };
        // polynomial / direct boundary
        let c = BRACKET_POLY_CUTOFF;
        for b in [-0.03, 0.01, 0.049] {
            across((c.next_down(), b), (c, b));
        }
        // f-form / L-form boundary
        let c = BRACKET_F_FORM_LIMIT;
        for b in [-0.5, 0.2, 0.9] {
            across((c, b), (c.next_up(), b));
        }
        // small-argument expansion
        for a in [0.3, 2.0, 30.0, 300.0] {
            let r = expansion_radius(a);
            across((a, r.next_down()), (a, r));
        }
    }

    #[test]
    fn f_part_of_bracket_is_minus_lemma_lhs() {
        for (p, q) in [(2.0, 1.0), (0.7, -1.3), (-0.2, -4.0), (12.0, 0.5)] {
            let f_part = sinch_bracket(p, q) - 0.5 * (p - q);
            assert_relative_eq!(
                f_part,
                -lemma_uv_lhs(p, q).unwrap(),
                max_relative = 1e-9,
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn cargo_shisha_limit_at_q_zero_lies_below_new_bound() {
        let b = bi(3.0, 0.0, 2.0);
        let k = cargo_shisha(&b);
        assert!(k > 1.0 && k < new_bound(&b));
        // agrees with the raw form approached symmetrically
        let h = 1e-6;
        let avg = 0.5
            * (cargo_shisha_raw(&bi(3.0, h, 2.0)).unwrap()
                + cargo_shisha_raw(&bi(3.0, -h, 2.0)).unwrap());
        assert_relative_eq!(k, avg, max_relative = 1e-9);
    }

    #[test]
    fn lemma_examples() {
        for p in [-3.0, -0.1, 0.5, 7.0] {
            assert_eq!(lemma_uv_lhs(p, p).unwrap(), 0.0);
        }
        let fwd = lemma_uv_lhs(2.0, 1.0).unwrap();
        assert!(fwd >= 0.0);
        assert_relative_eq!(lemma_uv_lhs(1.0, 2.0).unwrap(), -fwd, max_relative = 1e-15);
    }

    #[test]
    fn cubic_identity_examples() {
        assert_eq!(cubic_identity_check(1.0, 1.0).unwrap(), 0.0);
        assert!(cubic_identity_check(2.0, -3.0).unwrap().abs() < 1e-12);
        assert!(cubic_identity_check(1e3, -1e3).unwrap().abs() <= 1e-12 * 1e9);
    }

    #[test]
    fn corollary_examples() {
        let c = RealVector::new(vec![1.5, 1.5]).unwrap();
        assert_eq!(exp_mean_diff_bound(3.0, -1.0, &c).unwrap(), 0.0);
        let v = RealVector::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(exp_mean_diff_bound(1.0, -1.0, &v).unwrap(), 0.25);
        assert_eq!(exp_mean_diff_bound(2.0, 2.0, &v).unwrap(), 0.0);
    }

    #[test]
    fn report_from_bounds() {
        let r = BoundReport::from_bounds(&bi(1.0, -1.0, 4.0));
        assert_relative_eq!(r.cargo_shisha, 1.5625, max_relative = 1e-14);
        assert!(r.slack_b_over_k > 0.0);
        assert!(r.sup_estimate.is_none());
    }
}
