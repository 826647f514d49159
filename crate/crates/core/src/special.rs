//! `sinh(x)/x`, its logarithm, and `f(x) = ln(sinh x / x) − x²/6`.
//!
//! All functions are even (or odd, for derivatives) and switch to truncated
//! Taylor series near zero, where the closed forms cancel.

use crate::error::{domain, Result};

const SINCH_SERIES_CUTOFF: f64 = 1e-2;
const LOG_SINCH_SERIES_CUTOFF: f64 = 1e-2;
const LOG_SINCH_ASYMPTOTIC_CUTOFF: f64 = 20.0;
/// Below this |x| the `f` family uses its own series; the closed forms lose
/// about `log10(30/x²)` digits to cancellation against `x²/6`.
const F_SERIES_CUTOFF: f64 = 0.1;

// ln(sinh x / x) = Σ c_k x^{2k}, k ≥ 1.
const C2: f64 = 1.0 / 6.0;
const C4: f64 = -1.0 / 180.0;
const C6: f64 = 1.0 / 2835.0;
const C8: f64 = -1.0 / 37800.0;
const C10: f64 = 1.0 / 467775.0;
const C12: f64 = -691.0 / 3831077250.0;

fn check(x: f64) -> Result<()> {
    if x.is_nan() {
        domain("argument is NaN")
    } else {
        Ok(())
    }
}

/// `sinh(x)/x`, with the removable singularity at 0 filled by 1.
///
/// Overflows to `+∞` for `|x|` beyond about 710; use [`log_sinch`] there.
pub fn sinch(x: f64) -> Result<f64> {
    check(x)?;
    let a = x.abs();
    if a < SINCH_SERIES_CUTOFF {
        let x2 = a * a;
        Ok(1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0)))
    } else {
        Ok(a.sinh() / a)
    }
}

/// `ln(sinh(x)/x)`, overflow-free for large `|x|`.
pub fn log_sinch(x: f64) -> Result<f64> {
    check(x)?;
    Ok(log_sinch_unchecked(x))
}

pub(crate) fn log_sinch_unchecked(x: f64) -> f64 {
    let a = x.abs();
    if a < LOG_SINCH_SERIES_CUTOFF {
        let x2 = a * a;
        x2 * (C2 + x2 * (C4 + x2 * C6))
    } else if a > LOG_SINCH_ASYMPTOTIC_CUTOFF {
        a + (-(-2.0 * a).exp()).ln_1p() - (2.0 * a).ln()
    } else {
        (a.sinh() / a).ln()
    }
}

/// `f(x) = ln(sinh x / x) − x²/6`, with `f(0) = 0`.
pub fn f(x: f64) -> Result<f64> {
    check(x)?;
    Ok(f_unchecked(x))
}

pub(crate) fn f_unchecked(x: f64) -> f64 {
    let a = x.abs();
    if a < F_SERIES_CUTOFF {
        let x2 = a * a;
        x2 * x2 * (C4 + x2 * (C6 + x2 * (C8 + x2 * (C10 + x2 * C12))))
    } else {
        log_sinch_unchecked(a) - a * a / 6.0
    }
}

/// `f'(x) = coth x − 1/x − x/3`.
pub fn f_prime(x: f64) -> Result<f64> {
    check(x)?;
    Ok(f_prime_unchecked(x))
}

pub(crate) fn f_prime_unchecked(x: f64) -> f64 {
    let a = x.abs();
    let d = if a < F_SERIES_CUTOFF {
        let x2 = a * a;
        a * x2
            * (4.0 * C4 + x2 * (6.0 * C6 + x2 * (8.0 * C8 + x2 * (10.0 * C10 + x2 * 12.0 * C12))))
    } else {
        1.0 / a.tanh() - 1.0 / a - a / 3.0
    };
    if x < 0.0 {
        -d
    } else {
        d
    }
}

/// `f''(x) = 1/x² − 1/sinh²x − 1/3`.
pub(crate) fn f_second_unchecked(x: f64) -> f64 {
    let a = x.abs();
    if a < F_SERIES_CUTOFF {
        let x2 = a * a;
        x2 * (12.0 * C4
            + x2 * (30.0 * C6 + x2 * (56.0 * C8 + x2 * (90.0 * C10 + x2 * 132.0 * C12))))
    } else {
        let csch = 1.0 / a.sinh();
        1.0 / (a * a) - csch * csch - 1.0 / 3.0
    }
}

/// `f'''(x) = L'''(x) = 2·coth x / sinh²x − 2/x³`.
pub(crate) fn f_third_unchecked(x: f64) -> f64 {
    let a = x.abs();
    let d = if a < F_SERIES_CUTOFF {
        let x2 = a * a;
        a * (24.0 * C4
            + x2 * (120.0 * C6 + x2 * (336.0 * C8 + x2 * (720.0 * C10 + x2 * 1320.0 * C12))))
    } else {
        let csch = 1.0 / a.sinh();
        2.0 * csch * csch / a.tanh() - 2.0 / (a * a * a)
    };
    if x < 0.0 {
        -d
    } else {
        d
    }
}

/// `L'(x)` for `L = ln sinch`, i.e. `coth x − 1/x`.
pub(crate) fn log_sinch_prime(x: f64) -> f64 {
    f_prime_unchecked(x) + x / 3.0
}

/// `L''(x) = 1/x² − 1/sinh²x`.
pub(crate) fn log_sinch_second(x: f64) -> f64 {
    f_second_unchecked(x) + 1.0 / 3.0
}

/// `ln cosh x`, overflow-free.
pub fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    if a > LOG_SINCH_ASYMPTOTIC_CUTOFF {
        a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
    } else {
        // cosh a − 1 = 2·sinh²(a/2)
        let s = (0.5 * a).sinh();
        (2.0 * s * s).ln_1p()
    }
}

/// `ln(e^x − 1)` for `x > 0`.
pub(crate) fn ln_expm1(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x > 36.0 {
        x + (-(-x).exp()).ln_1p()
    } else {
        x.exp_m1().ln()
    }
}

/// `ln(1 − e^x)` for `x < 0`.
pub(crate) fn ln_one_minus_exp(x: f64) -> f64 {
    debug_assert!(x < 0.0);
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln|e^x − 1|` for `x ≠ 0`.
pub(crate) fn ln_abs_expm1(x: f64) -> f64 {
    if x > 0.0 {
        ln_expm1(x)
    } else {
        ln_one_minus_exp(x)
    }
}

/// `ln(1 + e^y)`.
pub(crate) fn softplus(y: f64) -> f64 {
    if y > 36.0 {
        y + (-y).exp().ln_1p()
    } else {
        y.exp().ln_1p()
    }
}
