//! Finite-temperature sums over Matsubara frequencies `κ_n = 2π n T`.

use std::f64::consts::PI;

use super::parallel::try_par_map;
use crate::error::{CasimirError, Result};
use crate::model::EnergyResult;

/// Stand-in for `κ = 0`, where the integrands are evaluated as a limit.
pub const KAPPA_MIN: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraSpec {
    pub temperature: f64,
    /// Terms evaluated per batch (including the zero mode in the first).
    pub cutoff: usize,
    /// The sum stops once a whole batch contributes less than
    /// `tolerance` relative to the running total.
    pub tolerance: f64,
    pub max_terms: usize,
}

impl MatsubaraSpec {
    pub fn new(temperature: f64) -> Self {
        Self {
            temperature,
            cutoff: 16,
            tolerance: 1e-8,
            max_terms: 4096,
        }
    }
}

/// `T [½ f(κ_min) + Σ_{n≥1} f(2π n T)]`.
pub fn matsubara_sum<F>(f: F, spec: &MatsubaraSpec) -> Result<EnergyResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let t = spec.temperature;
    if !(t > 0.0 && t.is_finite()) || spec.cutoff == 0 || !(spec.tolerance > 0.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "invalid Matsubara spec {spec:?}"
        )));
    }
    let mut total = 0.0;
    let mut start = 0usize;
    loop {
        let end = (start + spec.cutoff).min(spec.max_terms);
        let indices: Vec<usize> = (start..end).collect();
        let terms = try_par_map(&indices, |&n| {
            if n == 0 {
                Ok(0.5 * f(KAPPA_MIN)?)
            } else {
                f(2.0 * PI * n as f64 * t)
            }
        })?;
        let batch: f64 = terms.iter().sum();
        total += batch;
        if batch.abs() <= spec.tolerance * total.abs() || total == 0.0 {
            return Ok(EnergyResult {
                value: t * total,
                truncation_order: end,
                quadrature_error: t * batch.abs(),
                truncation_error: 0.0,
                converged: true,
            });
        }
        if end >= spec.max_terms {
            return Err(CasimirError::MatsubaraNotConverged {
                terms: end,
                last_term: *terms.last().unwrap_or(&f64::NAN),
            });
        }
        start = end;
    }
}
