//! Numerical tolerances shared across the crate.
//!
//! All formulas are closed-form, so tolerances only have to absorb rounding.

/// Relative tolerance for length identities.
pub const LENGTH_REL: f64 = 1e-9;

/// Absolute floor used when a quantity is expected to be zero.
pub const ABS_ZERO: f64 = 1e-12;

/// Default classification tolerance (relative residual of the case formulas).
pub const CLASSIFY: f64 = 1e-9;

/// Relative slack on discriminants and radicands.
pub const DISCRIMINANT_REL: f64 = 1e-12;

/// Planarity threshold (normalized defect).
pub const PLANARITY: f64 = 1e-10;

/// Isometry threshold (relative edge deviation).
pub const ISOMETRY: f64 = 1e-8;

/// Tip collinearity threshold (normalized distance).
pub const COLLINEARITY: f64 = 1e-10;

/// Environment variable overriding the classification tolerance.
pub const TOLERANCE_ENV: &str = "CHEDRA_TOLERANCE";

/// Reads the classification tolerance from `CHEDRA_TOLERANCE`, falling back
/// to [`CLASSIFY`] when unset or unparsable.
pub fn from_env() -> f64 {
    std::env::var(TOLERANCE_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<f64>().ok())
        .filter(|v| v.is_finite() && *v > 0.0)
        .unwrap_or(CLASSIFY)
}

/// `|x - y| <= rel * max(|x|, |y|, floor)`.
pub fn close(x: f64, y: f64, rel: f64) -> bool {
    (x - y).abs() <= rel * x.abs().max(y.abs()).max(1.0)
}
