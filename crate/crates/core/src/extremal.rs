//! Extremal analysis of `R(p, q, v) = P_p(v)/P_q(v)` over vectors with a
//! fixed spread.
//!
//! The supremum over all vectors with `max v ≤ γ·min v` is searched over
//! two-point configurations: mass `λ` on `γ` and `1 − λ` on `1`. A vector
//! of length `n` with `k` entries equal to `γ` realizes `λ = k/n`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{ln_cargo_shisha, ln_new_bound, BoundInputs, BoundReport};
use crate::error::{domain, Result};
use crate::means::{log_ratio, ExtendedExponent, PositiveVector, SMALL_EXPONENT_THRESHOLD};
use crate::special::log_cosh;

pub const GRID_POINTS: usize = 1024;
pub const LAMBDA_TOLERANCE: f64 = 1e-10;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Weighted two-point distribution on `{1, γ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPointConfig {
    pub gamma: f64,
    /// Mass on the high value `γ`.
    pub lambda: f64,
    pub n: Option<u32>,
}

impl TwoPointConfig {
    pub fn new(gamma: f64, lambda: f64) -> Result<Self> {
        let c = Self {
            gamma,
            lambda,
            n: None,
        };
        c.validate()?;
        Ok(c)
    }

    /// `λ = k/n`, the weights of an `n`-vector with `k` entries equal to `γ`.
    pub fn discrete(gamma: f64, k: u32, n: u32) -> Result<Self> {
        if n < 2 || k < 1 || k >= n {
            return domain(format!("requires 1 <= k <= n-1 and n >= 2 (k={k}, n={n})"));
        }
        let c = Self {
            gamma,
            lambda: f64::from(k) / f64::from(n),
            n: Some(n),
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<()> {
        if !(self.gamma > 1.0) || !self.gamma.is_finite() {
            return domain(format!(
                "two-point config requires finite gamma > 1 (gamma={})",
                self.gamma
            ));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return domain(format!(
                "two-point config requires 0 < lambda < 1 (lambda={})",
                self.lambda
            ));
        }
        if let Some(n) = self.n {
            let k = (self.lambda * f64::from(n)).round();
            if n < 2 || k < 1.0 || k > f64::from(n - 1) {
                return domain(format!(
                    "lambda={} does not round to 1..n-1 for n={n}",
                    self.lambda
                ));
            }
        }
        Ok(())
    }
}

/// `ln M_r` for the two-point distribution, `M_r = (λγ^r + 1 − λ)^{1/r}`.
fn ln_two_point_mean(r: f64, ln_gamma: f64, lambda: f64) -> f64 {
    if r == 0.0 {
        return lambda * ln_gamma;
    }
    let x = r * ln_gamma;
    if x.abs() < SMALL_EXPONENT_THRESHOLD {
        return lambda * ln_gamma + 0.5 * r * lambda * (1.0 - lambda) * ln_gamma * ln_gamma;
    }
    let ln_sum = if x.abs() < 1.0 {
        (lambda * x.exp_m1()).ln_1p()
    } else {
        let hi = lambda.ln() + x;
        let lo = (-lambda).ln_1p();
        let (m, d) = if hi > lo {
            (hi, lo - hi)
        } else {
            (lo, hi - lo)
        };
        m + d.exp().ln_1p()
    };
    ln_sum / r
}

fn ln_two_point_ratio_unchecked(p: f64, q: f64, ln_gamma: f64, lambda: f64) -> f64 {
    ln_two_point_mean(p, ln_gamma, lambda) - ln_two_point_mean(q, ln_gamma, lambda)
}

fn check_pair(p: f64, q: f64) -> Result<()> {
    if !p.is_finite() || !q.is_finite() {
        return domain(format!("exponents must be finite (p={p}, q={q})"));
    }
    if q >= p {
        return domain(format!("requires q < p (p={p}, q={q})"));
    }
    Ok(())
}

/// `ln(M_p / M_q)` for a two-point configuration.
pub fn ln_two_point_ratio(p: f64, q: f64, c: &TwoPointConfig) -> Result<f64> {
    check_pair(p, q)?;
    c.validate()?;
    Ok(ln_two_point_ratio_unchecked(p, q, c.gamma.ln(), c.lambda))
}

/// `M_p / M_q` for a two-point configuration.
pub fn two_point_ratio(p: f64, q: f64, c: &TwoPointConfig) -> Result<f64> {
    ln_two_point_ratio(p, q, c).map(f64::exp)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupRatio {
    pub value: f64,
    pub ln_value: f64,
    pub argmax_lambda: f64,
}

/// Maximizes `x` over `[lo, hi]` by golden-section search until the
/// bracket is narrower than `tol`. Returns `(x, f(x))`.
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Supremum of `R(p, q, ·)` over two-point configurations with spread `γ`.
///
/// A uniform grid of [`GRID_POINTS`] values of `λ` locates the best cell;
/// golden-section search then refines within the neighbouring cells.
pub fn sup_ratio(p: f64, q: f64, gamma: f64) -> Result<SupRatio> {
    check_pair(p, q)?;
    if !(gamma > 1.0) || !gamma.is_finite() {
        return domain(format!("requires finite gamma > 1 (gamma={gamma})"));
    }
    let l = gamma.ln();
    let objective = |lambda: f64| ln_two_point_ratio_unchecked(p, q, l, lambda);
    let step = 1.0 / (GRID_POINTS as f64 + 1.0);
    let mut best_i = 0;
    let mut best = f64::NEG_INFINITY;
    for i in 0..GRID_POINTS {
        let v = objective((i + 1) as f64 * step);
        // strict comparison keeps the lowest λ on ties
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let grid_lambda = (best_i + 1) as f64 * step;
    let lo = best_i as f64 * step;
    let hi = (best_i + 2) as f64 * step;
    let (lambda, refined) = golden_section_max(objective, lo, hi, LAMBDA_TOLERANCE);
    let (argmax_lambda, ln_value) = if refined > best {
        (lambda, refined)
    } else {
        (grid_lambda, best)
    };
    Ok(SupRatio {
        value: ln_value.exp(),
        ln_value,
        argmax_lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpnessProbeResult {
    pub t: f64,
    pub normalized_ratio: f64,
}

/// Evaluates `g(t) = ln cosh(tp)/p − ln cosh(tq)/q`, the log-ratio at
/// `v = (e^t, e^{−t})`, normalized by the bound's exponent `(p−q)t²/2`.
///
/// The result is at most 1 and tends to 1 as `t → 0⁺`, so no constant
/// smaller than `(p−q)/8` can replace the one in the bound.
pub fn sharpness_probe(p: f64, q: f64, t: f64) -> Result<SharpnessProbeResult> {
    check_pair(p, q)?;
    if p == 0.0 || q == 0.0 {
        return domain("sharpness probe requires p*q != 0");
    }
    if !(t > 0.0) || !t.is_finite() {
        return domain(format!("sharpness probe requires finite t > 0 (t={t})"));
    }
    let g = log_cosh(t * p) / p - log_cosh(t * q) / q;
    Ok(SharpnessProbeResult {
        t,
        normalized_ratio: 2.0 * g / (t * t * (p - q)),
    })
}

/// Supremum estimate, Cargo–Shisha bound and new bound side by side.
pub fn gap_report(p: f64, q: f64, gamma: f64) -> Result<BoundReport> {
    let b = BoundInputs::new(p, q, gamma)?;
    if b.is_degenerate() {
        return Ok(BoundReport {
            inputs: b,
            sup_estimate: Some(1.0),
            cargo_shisha: 1.0,
            new_bound: 1.0,
            slack_k_over_sup: Some(0.0),
            slack_b_over_k: 0.0,
        });
    }
    let sup = sup_ratio(p, q, gamma)?;
    let ln_k = ln_cargo_shisha(&b);
    let ln_b = ln_new_bound(&b);
    Ok(BoundReport {
        inputs: b,
        sup_estimate: Some(sup.value),
        cargo_shisha: ln_k.exp(),
        new_bound: ln_b.exp(),
        slack_k_over_sup: Some((ln_k - sup.ln_value).exp_m1()),
        slack_b_over_k: (ln_b - ln_k).exp_m1(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorSearchResult {
    pub ln_ratio: f64,
    pub vector: PositiveVector,
}

/// Random-restart coordinate ascent of `ln R(p, q, v)` over `n`-vectors with
/// entries in `[1, γ]`. Used to cross-check that two-point configurations
/// are extremal.
pub fn vector_search(
    p: f64,
    q: f64,
    gamma: f64,
    n: usize,
    restarts: usize,
    seed: u64,
) -> Result<VectorSearchResult> {
    check_pair(p, q)?;
    if !(gamma > 1.0) || !gamma.is_finite() {
        return domain(format!("requires finite gamma > 1 (gamma={gamma})"));
    }
    if n < 2 || restarts == 0 {
        return domain("vector search requires n >= 2 and restarts >= 1");
    }
    let l = gamma.ln();
    let (pe, qe) = (ExtendedExponent::Finite(p), ExtendedExponent::Finite(q));
    let eval = |u: &[f64]| {
        let v = PositiveVector::new(u.iter().map(|x| (x * l).exp()).collect())
            .expect("entries are positive");
        log_ratio(pe, qe, &v)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_u = vec![0.0; n];
    let mut best = f64::NEG_INFINITY;
    for _ in 0..restarts {
        let mut u: Vec<f64> = (0..n).map(|_| rng.gen::<f64>()).collect();
        let mut current = eval(&u);
        for _sweep in 0..60 {
            let before = current;
            for i in 0..n {
                let coord = |x: f64| {
                    let mut trial = u.clone();
                    trial[i] = x;
                    eval(&trial)
                };
                let (x, fx) = golden_section_max(coord, 0.0, 1.0, 1e-10);
                let mut candidates = [(x, fx), (0.0, 0.0), (1.0, 0.0)];
                for c in candidates.iter_mut().skip(1) {
                    let mut t = u.clone();
                    t[i] = c.0;
                    c.1 = eval(&t);
                }
                for (x, fx) in candidates {
                    if fx > current {
                        current = fx;
                        u[i] = x;
                    }
                }
            }
            if current - before <= 1e-15 {
                break;
            }
        }
        if current > best {
            best = current;
            best_u = u;
        }
    }
    let vector = PositiveVector::new(best_u.iter().map(|x| (x * l).exp()).collect())?;
    Ok(VectorSearchResult {
        ln_ratio: best,
        vector,
    })
}
