//! Numerical tolerances shared by the verification routines.

use serde::{Deserialize, Serialize};

/// Rounding a Verlinde sum to an integer: residual and imaginary part.
pub const ROUNDING: f64 = 1e-6;
/// Relative error for identities summed over many terms.
pub const SUM: f64 = 1e-8;
/// Single contributions and cross-checks between two formulas.
pub const SINGLE: f64 = 1e-9;
/// `|D(τ)|` below this counts as zero.
pub const DENOMINATOR: f64 = 1e-9;
/// `|e(λ)| = 1` up to this.
pub const UNIT_MODULUS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rounding: f64,
    pub sum: f64,
    pub single: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rounding: ROUNDING,
            sum: SUM,
            single: SINGLE,
        }
    }
}

/// `|a - b| / (1 + |b|)`, the relative error used by the sum checks.
pub fn relative_error(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}
