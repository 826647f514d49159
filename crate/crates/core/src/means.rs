//! Power means and exponential means, evaluated in the log domain.
//!
//! Both families share one kernel: the `p`-th exponential mean of a list of
//! reals, `(1/p)·ln(Σ e^{p·xᵢ} / n)`. A power mean is that kernel applied to
//! the logarithms of the entries, so `ln P_p(v) = E_p(ln v)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Below this value of `|p|·(max x − min x)` the kernel switches to the
/// second-order expansion `mean + (p/2)·var` around `p = 0`.
pub const SMALL_EXPONENT_THRESHOLD: f64 = 1e-6;

/// From this `|p|` on, [`power_mean`] evaluates `((Σ (vᵢ/s)^p)/n)^{1/p}·s`
/// directly, which is exact on small integer cases like `P_1(2, 4) = 3`.
const DIRECT_EXPONENT_MIN: f64 = 1.0;

/// Mean exponent on the extended real line.
///
/// Serializes as a plain number, or as the strings `"inf"` / `"-inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "ExponentRepr", try_from = "ExponentRepr")]
pub enum ExtendedExponent {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtendedExponent {
    /// Maps `±∞` to the corresponding tags. NaN is rejected.
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() {
            Err(Error::NanExponent)
        } else if p == f64::INFINITY {
            Ok(Self::PosInf)
        } else if p == f64::NEG_INFINITY {
            Ok(Self::NegInf)
        } else {
            Ok(Self::Finite(p))
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Self::NegInf => f64::NEG_INFINITY,
            Self::Finite(p) => p,
            Self::PosInf => f64::INFINITY,
        }
    }
}

impl From<f64> for ExtendedExponent {
    /// Panics on NaN; use [`ExtendedExponent::new`] for untrusted input.
    fn from(p: f64) -> Self {
        Self::new(p).expect("exponent must not be NaN")
    }
}

impl fmt::Display for ExtendedExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegInf => f.write_str("-inf"),
            Self::Finite(p) => write!(f, "{p}"),
            Self::PosInf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(Self::PosInf),
            "-inf" | "-infinity" => Ok(Self::NegInf),
            _ => {
                let p: f64 = t
                    .parse()
                    .map_err(|_| Error::Domain(format!("cannot parse exponent `{s}`")))?;
                Self::new(p)
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExponentRepr {
    Number(f64),
    Text(String),
}

impl From<ExtendedExponent> for ExponentRepr {
    fn from(p: ExtendedExponent) -> Self {
        match p {
            ExtendedExponent::Finite(x) => Self::Number(x),
            other => Self::Text(other.to_string()),
        }
    }
}

impl TryFrom<ExponentRepr> for ExtendedExponent {
    type Error = Error;

    fn try_from(r: ExponentRepr) -> Result<Self> {
        match r {
            ExponentRepr::Number(x) => Self::new(x),
            ExponentRepr::Text(s) => s.parse(),
        }
    }
}

fn check_entries(entries: &[f64], positive: bool) -> Result<()> {
    if entries.is_empty() {
        return Err(Error::EmptyVector);
    }
    for (index, &value) in entries.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteEntry { index, value });
        }
        if positive && value <= 0.0 {
            return Err(Error::NonPositiveEntry { index, value });
        }
    }
    Ok(())
}

/// Nonempty vector of finite, strictly positive reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PositiveVector(Vec<f64>);

impl PositiveVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_entries(&entries, true)?;
        Ok(Self(entries))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_constant(&self) -> bool {
        self.min() == self.max()
    }

    /// Entrywise natural logarithm.
    pub fn ln(&self) -> RealVector {
        RealVector(self.0.iter().map(|x| x.ln()).collect())
    }
}

impl TryFrom<Vec<f64>> for PositiveVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PositiveVector> for Vec<f64> {
    fn from(v: PositiveVector) -> Self {
        v.0
    }
}

/// Nonempty vector of finite reals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_entries(&entries, false)?;
        Ok(Self(entries))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Entrywise exponential. Fails if an entry overflows.
    pub fn exp(&self) -> Result<PositiveVector> {
        PositiveVector::new(self.0.iter().map(|x| x.exp()).collect())
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Self {
        v.0
    }
}

/// `(1/p)·ln(Σ e^{p·xᵢ} / n)` with the `p → 0` and `p → ±∞` limits.
///
/// `xs` is sorted ascending so the result does not depend on entry order.
fn mean_exp_sorted(p: ExtendedExponent, xs: &[f64]) -> f64 {
    let lo = xs[0];
    let hi = xs[xs.len() - 1];
    if lo == hi {
        return lo;
    }
    let p = match p {
        ExtendedExponent::NegInf => return lo,
        ExtendedExponent::PosInf => return hi,
        ExtendedExponent::Finite(p) => p,
    };
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if p == 0.0 {
        return mean.clamp(lo, hi);
    }
    if p.abs() * (hi - lo) < SMALL_EXPONENT_THRESHOLD {
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
        return (mean + 0.5 * p * var).clamp(lo, hi);
    }
    // Shift by the dominant endpoint so every exponent is ≤ 0.
    let center = if p > 0.0 { hi } else { lo };
    let s = xs.iter().map(|x| (p * (x - center)).exp_m1()).sum::<f64>() / n;
    (center + s.ln_1p() / p).clamp(lo, hi)
}

fn sorted(xs: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = xs.collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    out
}

/// `ln P_p(v)`; the kernel behind [`power_mean`] and [`ratio`].
pub fn log_power_mean(p: ExtendedExponent, v: &PositiveVector) -> f64 {
    match p {
        ExtendedExponent::NegInf => v.min().ln(),
        ExtendedExponent::PosInf => v.max().ln(),
        ExtendedExponent::Finite(_) => {
            mean_exp_sorted(p, &sorted(v.as_slice().iter().map(|x| x.ln())))
        }
    }
}

/// Power mean `P_p(v)`: min, max, geometric mean, or `((Σ vᵢ^p)/n)^{1/p}`.
pub fn power_mean(p: ExtendedExponent, v: &PositiveVector) -> f64 {
    let (lo, hi) = (v.min(), v.max());
    match p {
        ExtendedExponent::NegInf => lo,
        ExtendedExponent::PosInf => hi,
        ExtendedExponent::Finite(_) if lo == hi => lo,
        ExtendedExponent::Finite(x) if x.abs() >= DIRECT_EXPONENT_MIN => {
            // scale by the dominant endpoint so every term is in (0, 1]
            let s = if x > 0.0 { hi } else { lo };
            let xs = sorted(v.as_slice().iter().copied());
            let sum = xs.iter().map(|y| (y / s).powf(x)).sum::<f64>() / xs.len() as f64;
            (s * sum.powf(1.0 / x)).clamp(lo, hi)
        }
        ExtendedExponent::Finite(_) => log_power_mean(p, v).exp().clamp(lo, hi),
    }
}

/// Exponential mean `E_p(v) = (1/p)·ln((Σ e^{p·vᵢ})/n)`, never forming `e^{vᵢ}`.
pub fn exponential_mean(p: ExtendedExponent, v: &RealVector) -> f64 {
    mean_exp_sorted(p, &sorted(v.as_slice().iter().copied()))
}

/// `ln(P_p(v) / P_q(v))`.
pub fn log_ratio(p: ExtendedExponent, q: ExtendedExponent, v: &PositiveVector) -> f64 {
    if v.is_constant() {
        return 0.0;
    }
    log_power_mean(p, v) - log_power_mean(q, v)
}

/// `P_p(v) / P_q(v)`; exactly 1 for constant vectors.
pub fn ratio(p: ExtendedExponent, q: ExtendedExponent, v: &PositiveVector) -> f64 {
    log_ratio(p, q, v).exp()
}

/// `max v / min v`; exactly 1 only for constant input.
pub fn spread_gamma(v: &PositiveVector) -> f64 {
    let (lo, hi) = (v.min(), v.max());
    if lo == hi {
        1.0
    } else {
        hi / lo
    }
}
