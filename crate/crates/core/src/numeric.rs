//! Small numeric helpers shared by the solvers.

use std::f64::consts::LN_2;

/// `2^x - 1` without cancellation for small `x`.
pub fn pow2m1(x: f64) -> f64 {
    (x * LN_2).exp_m1()
}

/// `log2(1 + y)` without cancellation for small `y`.
pub fn log2_1p(y: f64) -> f64 {
    y.ln_1p() / LN_2
}
