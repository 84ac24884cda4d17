//! Convergence in the partial-wave truncation order.

use crate::error::{CasimirError, Result};
use crate::model::EnergyResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderStep {
    Doubling,
    Increment(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationSpec {
    pub start: usize,
    pub step: OrderStep,
    /// Relative change between successive orders at which to stop.
    pub tolerance: f64,
    pub max_order: usize,
    /// Apply Aitken's Δ² to the last three orders.
    pub extrapolate: bool,
}

impl TruncationSpec {
    pub fn new(start: usize, tolerance: f64) -> Self {
        Self {
            start,
            step: OrderStep::Doubling,
            tolerance,
            max_order: 4096,
            extrapolate: true,
        }
    }

    pub fn with_step(mut self, step: OrderStep) -> Self {
        self.step = step;
        self
    }

    pub fn with_max_order(mut self, max_order: usize) -> Self {
        self.max_order = max_order;
        self
    }

    pub fn with_extrapolation(mut self, on: bool) -> Self {
        self.extrapolate = on;
        self
    }

    fn next(&self, order: usize) -> usize {
        match self.step {
            OrderStep::Doubling => (2 * order).max(order + 1),
            OrderStep::Increment(k) => order + k.max(1),
        }
    }
}

/// Aitken's Δ² limit of three successive terms, if the differences shrink
/// geometrically with a common sign.
pub fn aitken(a0: f64, a1: f64, a2: f64) -> Option<f64> {
    let d1 = a1 - a0;
    let d2 = a2 - a1;
    if d1 == 0.0 || d2 == 0.0 {
        return None;
    }
    let q = d2 / d1;
    if !(q > 0.0 && q < 0.9) {
        return None;
    }
    Some(a2 + d2 * q / (1.0 - q))
}

/// Raise the truncation order until the relative change drops below
/// `spec.tolerance`, optionally extrapolating the limit.
///
/// With extrapolation, two successive Δ² limits that agree to
/// `spec.tolerance` also count as converged; this is what makes slowly
/// (algebraically) convergent sequences affordable. `truncation_error` is
/// the larger of the last change and the extrapolation shift.
pub fn converge_truncation<F>(mut solver: F, spec: &TruncationSpec) -> Result<EnergyResult>
where
    F: FnMut(usize) -> Result<EnergyResult>,
{
    if spec.start == 0 && spec.step == OrderStep::Doubling
        || !(spec.tolerance > 0.0)
        || spec.start > spec.max_order
    {
        return Err(CasimirError::InvalidParameter(format!(
            "invalid truncation spec {spec:?}"
        )));
    }
    let mut order = spec.start;
    let mut history: Vec<EnergyResult> = vec![solver(order)?];
    loop {
        let next = spec.next(order);
        if next > spec.max_order {
            let change = match history.len() {
                0 | 1 => f64::NAN,
                n => (history[n - 1].value - history[n - 2].value).abs(),
            };
            return Err(CasimirError::TruncationNotConverged { order, change });
        }
        order = next;
        history.push(solver(order)?);
        let n = history.len();
        let last = history[n - 1];
        let change = (last.value - history[n - 2].value).abs();
        let raw_converged = change <= spec.tolerance * last.value.abs();
        let limits = if spec.extrapolate && n >= 4 {
            let v = |k: usize| history[n - k].value;
            aitken(v(4), v(3), v(2)).zip(aitken(v(3), v(2), v(1)))
        } else {
            None
        };
        if let Some((before, latest)) = limits {
            let shift = (latest - before).abs();
            if shift <= spec.tolerance * latest.abs() {
                return Ok(EnergyResult {
                    value: latest,
                    truncation_order: order,
                    quadrature_error: last.quadrature_error,
                    truncation_error: shift.max((latest - last.value).abs()),
                    converged: last.converged,
                });
            }
        }
        if raw_converged {
            let mut value = last.value;
            let mut shift = 0.0;
            if spec.extrapolate && n >= 3 {
                if let Some(a) = aitken(history[n - 3].value, history[n - 2].value, last.value) {
                    shift = (a - value).abs();
                    value = a;
                }
            }
            return Ok(EnergyResult {
                value,
                truncation_order: order,
                quadrature_error: last.quadrature_error,
                truncation_error: change.max(shift),
                converged: last.converged,
            });
        }
    }
}
