//! Number formatting shared by the CLI and report serialization.

/// Shortest decimal that parses back to the same `f64`.
///
/// Plain notation for magnitudes in `[1e-5, 1e16)`, scientific otherwise.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}
