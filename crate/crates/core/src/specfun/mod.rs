//! Special-function kernel.
//!
//! Modified Bessel functions `I_n`, `K_n` of integer order, and the Weber
//! parabolic cylinder combinations needed by the parabolic-cylinder
//! scattering amplitudes. Everything is real arithmetic; large and small
//! magnitudes are carried as logarithms so that ratios such as
//! `I_n(x) / K_n(x)` stay finite long after the individual factors would
//! overflow.

mod bessel;
mod pcf;

pub use bessel::{
    bessel_i, bessel_k, ln_bessel_i, ln_bessel_k, ln_k_sequence, BesselSequence, LogBessel,
    ValueAndDerivative, MAX_ORDER,
};
pub use pcf::{
    ln_weber_d_negative, pcf_ratio_e, pcf_ratio_m, weber_d_nonnegative, ParabolicRatios, SignedLog,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecFunError {
    #[error("argument {x} outside the domain of {function}")]
    Domain { function: &'static str, x: f64 },

    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    /// The unscaled value does not fit in an `f64`; `ln_value` is the
    /// natural logarithm of its magnitude.
    #[error("{function} overflows f64 (log magnitude {ln_value})")]
    Overflow {
        function: &'static str,
        ln_value: f64,
    },

    #[error("{function}: continued fraction failed to converge")]
    NoConvergence { function: &'static str },
}

/// `ln k!` for `k = 0..=n`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}
