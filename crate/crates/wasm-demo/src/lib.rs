//! Browser bindings for the interactive demo in `www/`.
//!
//! Each exported function returns a flat `Float64Array` of fixed-width rows;
//! the pure `*_rows` functions behind them are plain Rust and tested natively.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use meanbound::bounds::{ln_cargo_shisha, ln_new_bound, BoundInputs};
use meanbound::extremal::{sharpness_probe, sup_ratio};
use meanbound::means::{power_mean, ExtendedExponent};
use meanbound::PositiveVector;
use wasm_bindgen::prelude::*;

/// Hard cap on sample points per curve.
pub const MAX_STEPS: usize = 2000;

fn check_steps(steps: usize) -> Result<(), String> {
    if (2..=MAX_STEPS).contains(&steps) {
        Ok(())
    } else {
        Err(format!("steps must be in 2..={MAX_STEPS} (got {steps})"))
    }
}

fn lerp(lo: f64, hi: f64, i: usize, steps: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (steps - 1) as f64
}

/// Geometric spacing with exact endpoints.
fn geomspace(lo: f64, hi: f64, i: usize, steps: usize) -> f64 {
    match i {
        0 => lo,
        _ if i == steps - 1 => hi,
        _ => lerp(lo.ln(), hi.ln(), i, steps).exp(),
    }
}

/// Rows `[γ, sup R, K, B]` for `γ` log-spaced on `[1, gamma_max]`.
pub fn bound_rows(p: f64, q: f64, gamma_max: f64, steps: usize) -> Result<Vec<f64>, String> {
    check_steps(steps)?;
    BoundInputs::new(p, q, gamma_max).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(4 * steps);
    for i in 0..steps {
        let gamma = geomspace(1.0, gamma_max, i, steps);
        let b = BoundInputs::new(p, q, gamma).map_err(|e| e.to_string())?;
        let sup = if b.is_degenerate() {
            1.0
        } else {
            sup_ratio(p, q, gamma).map_err(|e| e.to_string())?.value
        };
        out.extend([
            gamma,
            sup,
            ln_cargo_shisha(&b).exp(),
            ln_new_bound(&b).exp(),
        ]);
    }
    Ok(out)
}

/// Rows `[t, normalized ratio]` for `t` log-spaced on `[t_min, t_max]`.
pub fn sharpness_rows(
    p: f64,
    q: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<Vec<f64>, String> {
    check_steps(steps)?;
    if !(t_min > 0.0 && t_min <= t_max && t_max.is_finite()) {
        return Err(format!(
            "requires 0 < t_min <= t_max (got {t_min}, {t_max})"
        ));
    }
    let mut out = Vec::with_capacity(2 * steps);
    for i in 0..steps {
        let t = geomspace(t_min, t_max, i, steps);
        let r = sharpness_probe(p, q, t).map_err(|e| e.to_string())?;
        out.extend([t, r.normalized_ratio]);
    }
    Ok(out)
}

/// Rows `[p, P_p(v)]` for `p` evenly spaced on `[p_min, p_max]`.
pub fn power_mean_rows(
    values: &[f64],
    p_min: f64,
    p_max: f64,
    steps: usize,
) -> Result<Vec<f64>, String> {
    check_steps(steps)?;
    if !(p_min <= p_max && p_min.is_finite() && p_max.is_finite()) {
        return Err(format!(
            "requires finite p_min <= p_max (got {p_min}, {p_max})"
        ));
    }
    let v = PositiveVector::new(values.to_vec()).map_err(|e| e.to_string())?;
    let mut out = Vec::with_capacity(2 * steps);
    for i in 0..steps {
        let p = lerp(p_min, p_max, i, steps);
        out.extend([p, power_mean(ExtendedExponent::Finite(p), &v)]);
    }
    Ok(out)
}

#[wasm_bindgen(js_name = boundCurves)]
pub fn bound_curves(p: f64, q: f64, gamma_max: f64, steps: usize) -> Result<Vec<f64>, JsError> {
    bound_rows(p, q, gamma_max, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sharpnessCurve)]
pub fn sharpness_curve(
    p: f64,
    q: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    sharpness_rows(p, q, t_min, t_max, steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = powerMeanCurve)]
pub fn power_mean_curve(
    values: &[f64],
    p_min: f64,
    p_max: f64,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    power_mean_rows(values, p_min, p_max, steps).map_err(|e| JsError::new(&e))
}
