//! Seeded property campaigns.
//!
//! Every property maps a random witness to a *margin*, a real number that
//! must be `≥ −tolerance`. Sample `i` of a campaign draws its witness from a
//! ChaCha stream selected by `(seed, i)`, so reports do not depend on
//! evaluation order, and the worst witness can be replayed with
//! [`margin`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    cubic_identity_check, exp_mean_diff_bound, lemma_uv_lhs, ln_cargo_shisha, ln_new_bound,
    BoundInputs,
};
use crate::error::{Error, Result};
use crate::means::{
    exponential_mean, log_power_mean, log_ratio, spread_gamma, ExtendedExponent, PositiveVector,
    RealVector,
};
use crate::special::{f_unchecked, log_cosh};

/// Entries of random positive vectors lie in this range.
pub const ENTRY_RANGE: (f64, f64) = (1e-3, 1e3);
/// Entries of random real vectors (exponential means) lie in `[-w, w]`.
pub const REAL_ENTRY_HALF_WIDTH: f64 = 5.0;
/// Conjugacy samples use `|p|` up to this value.
pub const CONJUGACY_MAX_EXPONENT: f64 = 20.0;
/// Fraction of samples where an exponent is forced to exactly 0.
pub const ZERO_INJECTION_RATE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    MainTheorem,
    CargoShishaDominatesRatio,
    NewDominatesK,
    LemmaSubGeneric,
    LemmaFDecreasing,
    LemmaUv,
    Conjugacy,
    Corollary,
    RatioMonotone,
    CubicIdentity,
    TaylorConclusion,
}

impl Property {
    pub const ALL: [Property; 11] = [
        Property::MainTheorem,
        Property::CargoShishaDominatesRatio,
        Property::NewDominatesK,
        Property::LemmaSubGeneric,
        Property::LemmaFDecreasing,
        Property::LemmaUv,
        Property::Conjugacy,
        Property::Corollary,
        Property::RatioMonotone,
        Property::CubicIdentity,
        Property::TaylorConclusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::MainTheorem => "main_theorem",
            Property::CargoShishaDominatesRatio => "cargo_shisha_dominates_ratio",
            Property::NewDominatesK => "new_dominates_k",
            Property::LemmaSubGeneric => "lemma_sub_generic",
            Property::LemmaFDecreasing => "lemma_f_decreasing",
            Property::LemmaUv => "lemma_uv",
            Property::Conjugacy => "conjugacy",
            Property::Corollary => "corollary",
            Property::RatioMonotone => "ratio_monotone",
            Property::CubicIdentity => "cubic_identity",
            Property::TaylorConclusion => "taylor_conclusion",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Property::ALL
            .into_iter()
            .find(|p| p.name() == key || format!("p{}", *p as usize + 1) == key)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    fn sample(&self, rng: &mut impl Rng) -> f64 {
        self.lo + (self.hi - self.lo) * rng.gen::<f64>()
    }

    fn max_abs(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub seed: u64,
    pub samples: usize,
    pub p_range: Interval,
    pub q_range: Interval,
    pub gamma_max: f64,
    pub n_max: usize,
    pub tolerance: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            samples: 1000,
            p_range: Interval::new(-10.0, 10.0),
            q_range: Interval::new(-10.0, 10.0),
            gamma_max: 1e3,
            n_max: 16,
            tolerance: 1e-9,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.samples < 1 {
            return bad("samples must be >= 1");
        }
        if !(self.tolerance > 0.0) {
            return bad("tolerance must be > 0");
        }
        if !(self.gamma_max > 1.0) || !self.gamma_max.is_finite() {
            return bad("gamma_max must be finite and > 1");
        }
        if self.n_max < 2 {
            return bad("n_max must be >= 2");
        }
        for r in [self.p_range, self.q_range] {
            if !(r.lo <= r.hi) || !r.lo.is_finite() || !r.hi.is_finite() {
                return bad("exponent ranges must be finite with lo <= hi");
            }
        }
        Ok(())
    }
}

/// Input record of one sample, sufficient to recompute its margin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    RatioSample {
        p: f64,
        q: f64,
        v: Vec<f64>,
    },
    BoundSample {
        p: f64,
        q: f64,
        gamma: f64,
    },
    StepFunction {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
        x: f64,
        y: f64,
    },
    Pair {
        x: f64,
        y: f64,
    },
    Exponents {
        p: f64,
        q: f64,
    },
    Conjugacy {
        p: ExtendedExponent,
        w: Vec<f64>,
    },
    ExponentialPair {
        p: f64,
        q: f64,
        w: Vec<f64>,
    },
    Monotone {
        low: f64,
        high: f64,
        other: f64,
        v: Vec<f64>,
    },
    Point {
        x: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub property: String,
    pub samples_run: usize,
    pub violations: usize,
    pub worst_margin: f64,
    pub worst_witness: Witness,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// `(p, q)` with `q ≤ p`; occasionally one of them is exactly zero.
fn sample_exponents(rng: &mut impl Rng, cfg: &CampaignConfig) -> (f64, f64) {
    let mut p = cfg.p_range.sample(rng);
    let mut q = cfg.q_range.sample(rng);
    if rng.gen_bool(ZERO_INJECTION_RATE) {
        if rng.gen_bool(0.5) {
            p = 0.0;
        } else {
            q = 0.0;
        }
    }
    if q > p {
        std::mem::swap(&mut p, &mut q);
    }
    (p, q)
}

fn sample_nonzero(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let x = lo + (hi - lo) * rng.gen::<f64>();
        if x != 0.0 {
            return x;
        }
    }
}

/// Log-uniform entries spanning a log-uniform spread of at most `gamma_max`.
/// Half of the vectors only use the two endpoint values.
fn sample_positive(rng: &mut impl Rng, cfg: &CampaignConfig, min_len: usize) -> Vec<f64> {
    let (lo, hi) = (ENTRY_RANGE.0.ln(), ENTRY_RANGE.1.ln());
    let n = rng.gen_range(min_len..=cfg.n_max);
    let spread = rng.gen::<f64>() * cfg.gamma_max.ln().min(hi - lo);
    let base = lo + rng.gen::<f64>() * (hi - lo - spread);
    let two_point = rng.gen_bool(0.5);
    (0..n)
        .map(|_| {
            let u = if two_point {
                f64::from(u8::from(rng.gen_bool(0.5)))
            } else {
                rng.gen::<f64>()
            };
            (base + spread * u).exp()
        })
        .collect()
}

fn sample_real(rng: &mut impl Rng, cfg: &CampaignConfig) -> Vec<f64> {
    let n = rng.gen_range(1..=cfg.n_max);
    (0..n)
        .map(|_| REAL_ENTRY_HALF_WIDTH * (2.0 * rng.gen::<f64>() - 1.0))
        .collect()
}

/// Draws the witness for sample `index` of a campaign.
pub fn sample_witness(property: Property, cfg: &CampaignConfig, index: usize) -> Witness {
    let rng = &mut sample_rng(cfg.seed, index);
    match property {
        Property::MainTheorem | Property::CargoShishaDominatesRatio => {
            let (p, q) = sample_exponents(rng, cfg);
            Witness::RatioSample {
                p,
                q,
                v: sample_positive(rng, cfg, 1),
            }
        }
        Property::NewDominatesK => {
            let (p, q) = sample_exponents(rng, cfg);
            let gamma = (rng.gen::<f64>() * cfg.gamma_max.ln()).exp();
            Witness::BoundSample { p, q, gamma }
        }
        Property::LemmaSubGeneric => {
            const DOMAIN: f64 = 20.0;
            let pieces = rng.gen_range(1..=8);
            let mut breakpoints: Vec<f64> =
                (1..pieces).map(|_| DOMAIN * rng.gen::<f64>()).collect();
            breakpoints.sort_by(f64::total_cmp);
            let mut level = 10.0 * (2.0 * rng.gen::<f64>() - 1.0);
            let values = (0..pieces)
                .map(|_| {
                    let v = level;
                    level -= 3.0 * rng.gen::<f64>();
                    v
                })
                .collect();
            let x = 0.5 * DOMAIN * rng.gen::<f64>();
            let y = 0.5 * DOMAIN * rng.gen::<f64>();
            Witness::StepFunction {
                breakpoints,
                values,
                x,
                y,
            }
        }
        Property::LemmaFDecreasing => {
            let a = 50.0 * rng.gen::<f64>();
            let b = 50.0 * rng.gen::<f64>();
            Witness::Pair {
                x: a.min(b),
                y: a.max(b),
            }
        }
        Property::LemmaUv => {
            let m = cfg.p_range.max_abs().max(cfg.q_range.max_abs()).max(1e-3);
            let a = sample_nonzero(rng, 0.0, m);
            let b = sample_nonzero(rng, 0.0, m);
            let (hi, lo) = (a.max(b), a.min(b));
            // cases 0 < q < p, q < 0 < p, q < p < 0
            let (p, q) = match rng.gen_range(0..3) {
                0 => (hi, lo),
                1 => (a, -b),
                _ => (-lo, -hi),
            };
            Witness::Exponents { p, q }
        }
        Property::Conjugacy => {
            let p = match rng.gen_range(0..100) {
                0 => ExtendedExponent::PosInf,
                1 => ExtendedExponent::NegInf,
                2 => ExtendedExponent::Finite(0.0),
                _ => ExtendedExponent::Finite(
                    cfg.p_range
                        .sample(rng)
                        .clamp(-CONJUGACY_MAX_EXPONENT, CONJUGACY_MAX_EXPONENT),
                ),
            };
            Witness::Conjugacy {
                p,
                w: sample_real(rng, cfg),
            }
        }
        Property::Corollary => {
            let (p, q) = sample_exponents(rng, cfg);
            Witness::ExponentialPair {
                p,
                q,
                w: sample_real(rng, cfg),
            }
        }
        Property::RatioMonotone => {
            let a = cfg.p_range.sample(rng);
            let b = cfg.p_range.sample(rng);
            let low = a.min(b);
            let high = if a.max(b) - low < 0.1 {
                low + 0.1
            } else {
                a.max(b)
            };
            let other = cfg.q_range.sample(rng);
            Witness::Monotone {
                low,
                high,
                other,
                v: sample_positive(rng, cfg, 2),
            }
        }
        Property::CubicIdentity => {
            let p = sample_nonzero(rng, cfg.p_range.lo, cfg.p_range.hi);
            let q = sample_nonzero(rng, cfg.q_range.lo, cfg.q_range.hi);
            Witness::Exponents { p, q }
        }
        Property::TaylorConclusion => Witness::Point {
            x: 30.0 * (1.0 - rng.gen::<f64>()),
        },
    }
}

fn step_eval(breakpoints: &[f64], values: &[f64], x: f64) -> f64 {
    values[breakpoints.partition_point(|&b| b <= x)]
}

fn mismatch(property: Property, w: &Witness) -> Error {
    Error::InvalidConfig(format!(
        "witness {w:?} does not belong to property {property}"
    ))
}

/// Recomputes the margin of `property` at witness `w`.
pub fn margin(property: Property, w: &Witness) -> Result<f64> {
    let fin = ExtendedExponent::Finite;
    match (property, w) {
        (Property::MainTheorem, Witness::RatioSample { p, q, v })
        | (Property::CargoShishaDominatesRatio, Witness::RatioSample { p, q, v }) => {
            let v = PositiveVector::new(v.clone())?;
            let b = BoundInputs::new(*p, *q, spread_gamma(&v))?;
            let bound = if property == Property::MainTheorem {
                ln_new_bound(&b)
            } else {
                ln_cargo_shisha(&b)
            };
            Ok(bound - log_ratio(fin(*p), fin(*q), &v))
        }
        (Property::NewDominatesK, Witness::BoundSample { p, q, gamma }) => {
            let b = BoundInputs::new(*p, *q, *gamma)?;
            Ok(ln_new_bound(&b) - ln_cargo_shisha(&b))
        }
        (
            Property::LemmaSubGeneric,
            Witness::StepFunction {
                breakpoints,
                values,
                x,
                y,
            },
        ) => {
            if values.len() != breakpoints.len() + 1 {
                return Err(mismatch(property, w));
            }
            let g = |t: f64| t * step_eval(breakpoints, values, t);
            Ok(g(*x) + g(*y) - g(x + y))
        }
        (Property::LemmaFDecreasing, Witness::Pair { x, y }) => {
            Ok(f_unchecked(*x) - f_unchecked(*y))
        }
        (Property::LemmaUv, Witness::Exponents { p, q }) => {
            let lhs = lemma_uv_lhs(*p, *q)?;
            Ok(if q <= p { lhs } else { -lhs })
        }
        (Property::Conjugacy, Witness::Conjugacy { p, w }) => {
            let w = RealVector::new(w.clone())?;
            let direct = exponential_mean(*p, &w);
            let via_power = log_power_mean(*p, &w.exp()?);
            Ok(-(direct - via_power).abs())
        }
        (Property::Corollary, Witness::ExponentialPair { p, q, w }) => {
            let w = RealVector::new(w.clone())?;
            let diff = exponential_mean(fin(*p), &w) - exponential_mean(fin(*q), &w);
            Ok(exp_mean_diff_bound(*p, *q, &w)? - diff)
        }
        (
            Property::RatioMonotone,
            Witness::Monotone {
                low,
                high,
                other,
                v,
            },
        ) => {
            let v = PositiveVector::new(v.clone())?;
            let (lo, hi, c) = (fin(*low), fin(*high), fin(*other));
            let first = log_ratio(hi, c, &v) - log_ratio(lo, c, &v);
            let second = log_ratio(c, lo, &v) - log_ratio(c, hi, &v);
            Ok(first.min(second))
        }
        (Property::CubicIdentity, Witness::Exponents { p, q }) => {
            let scale = 1f64.max(p.abs()).max(q.abs()).powi(3);
            Ok(-cubic_identity_check(*p, *q)?.abs() / scale)
        }
        (Property::TaylorConclusion, Witness::Point { x }) => {
            // 3x·cosh x < (3 + x²)·sinh x, which is f'(x) < 0
            let lhs = (3.0 * x).ln() + log_cosh(*x);
            let rhs = (3.0 + x * x).ln() + x.sinh().ln();
            Ok(rhs - lhs)
        }
        _ => Err(mismatch(property, w)),
    }
}

fn ordering_key(m: f64) -> f64 {
    if m.is_nan() {
        f64::NEG_INFINITY
    } else {
        m
    }
}

/// Runs one property over `cfg.samples` seeded samples.
pub fn run_property(property: Property, cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let mut violations = 0;
    let mut worst: Option<(f64, Witness)> = None;
    for index in 0..cfg.samples {
        let w = sample_witness(property, cfg, index);
        let m = margin(property, &w)?;
        if !(m >= -cfg.tolerance) {
            violations += 1;
        }
        let replace = match &worst {
            None => true,
            Some((best, _)) => ordering_key(m) < ordering_key(*best),
        };
        if replace {
            worst = Some((m, w));
        }
    }
    let (worst_margin, worst_witness) = worst.expect("samples >= 1");
    Ok(CampaignReport {
        property: property.name().to_string(),
        samples_run: cfg.samples,
        violations,
        worst_margin,
        worst_witness,
    })
}

/// Runs every registered property with the same configuration.
pub fn run_all(cfg: &CampaignConfig) -> Result<Vec<CampaignReport>> {
    Property::ALL
        .into_iter()
        .map(|p| run_property(p, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(samples: usize) -> CampaignConfig {
        CampaignConfig {
            samples,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert_eq!("P7".parse::<Property>().unwrap(), Property::Conjugacy);
        assert_eq!("lemma-uv".parse::<Property>().unwrap(), Property::LemmaUv);
        assert!(matches!(
            "nope".parse::<Property>(),
            Err(Error::UnknownProperty(_))
        ));
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut c = cfg(0);
        assert!(run_property(Property::MainTheorem, &c).is_err());
        c.samples = 1;
        c.tolerance = 0.0;
        assert!(c.validate().is_err());
        c.tolerance = 1e-9;
        c.gamma_max = 1.0;
        assert!(c.validate().is_err());
        c.gamma_max = 10.0;
        c.n_max = 1;
        assert!(c.validate().is_err());
        c.n_max = 4;
        c.p_range = Interval::new(1.0, -1.0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn run_all_small_campaign_is_clean() {
        let reports = run_all(&CampaignConfig {
            seed: 1,
            ..cfg(1000)
        })
        .unwrap();
        assert_eq!(reports.len(), 11);
        for r in &reports {
            assert_eq!(r.violations, 0, "{r:?}");
        }
    }

    #[test]
    fn single_sample_campaigns() {
        for r in run_all(&cfg(1)).unwrap() {
            assert_eq!(r.samples_run, 1);
        }
    }

    #[test]
    fn campaigns_are_deterministic_and_replayable() {
        let c = cfg(300);
        for p in Property::ALL {
            let a = run_property(p, &c).unwrap();
            let b = run_property(p, &c).unwrap();
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap()
            );
            let json = serde_json::to_string(&a.worst_witness).unwrap();
            let w: Witness = serde_json::from_str(&json).unwrap();
            assert_eq!(
                margin(p, &w).unwrap().to_bits(),
                a.worst_margin.to_bits(),
                "{p}"
            );
        }
    }

    #[test]
    fn zero_exponents_are_injected() {
        let c = cfg(2000);
        let zeros = (0..c.samples)
            .filter(|&i| match sample_witness(Property::MainTheorem, &c, i) {
                Witness::RatioSample { p, q, .. } => p == 0.0 || q == 0.0,
                _ => false,
            })
            .count();
        assert!(zeros > 0 && zeros < 100, "{zeros}");
    }

    #[test]
    fn lemma_uv_covers_all_sign_cases() {
        let c = cfg(300);
        let mut seen = [false; 3];
        for i in 0..c.samples {
            if let Witness::Exponents { p, q } = sample_witness(Property::LemmaUv, &c, i) {
                assert!(q <= p);
                let case = if q > 0.0 {
                    0
                } else if p > 0.0 {
                    1
                } else {
                    2
                };
                seen[case] = true;
            }
        }
        assert_eq!(seen, [true; 3]);
    }

    #[test]
    fn broken_step_function_is_detected() {
        // an increasing step function violates subadditivity of x·f(x)
        let w = Witness::StepFunction {
            breakpoints: vec![1.0],
            values: vec![0.0, 5.0],
            x: 0.75,
            y: 0.75,
        };
        assert!(margin(Property::LemmaSubGeneric, &w).unwrap() < 0.0);
        let wrong = Witness::Point { x: 1.0 };
        assert!(margin(Property::MainTheorem, &wrong).is_err());
    }
}
