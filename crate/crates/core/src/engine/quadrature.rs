//! Gauss–Legendre quadrature on `[0, ∞)` with node doubling.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::legendre::GaussLegendre;

use super::parallel::try_par_map;
use crate::error::{CasimirError, Result};
use crate::model::EnergyResult;

/// Gauss–Legendre nodes and weights on `[−1, 1]`, ascending.
#[derive(Debug, Clone)]
pub struct GaussLegendreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Cached rule of `n ≥ 1` points.
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendreRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendreRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("quadrature cache poisoned");
    map.entry(n.max(1))
        .or_insert_with(|| {
            let rule = GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap());
            let mut pairs: Vec<(f64, f64)> = rule.into_node_weight_pairs().into_vec();
            pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let (nodes, weights) = pairs.into_iter().unzip();
            Arc::new(GaussLegendreRule { nodes, weights })
        })
        .clone()
}

/// Map from `t ∈ (0, 1)` to `κ ∈ (0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// `κ = s t/(1 − t)`: algebraic tails.
    RationalStretch,
    /// `κ = −s ln(1 − t)`: exponential tails.
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes: usize,
    pub transform: Transform,
    /// Typically the inverse surface separation.
    pub scale: f64,
    /// Relative tolerance between successive doublings.
    pub tolerance: f64,
    pub max_nodes: usize,
}

impl QuadratureSpec {
    pub fn new(scale: f64) -> Self {
        Self {
            nodes: 32,
            transform: Transform::RationalStretch,
            scale,
            tolerance: 1e-8,
            max_nodes: 1024,
        }
    }

    pub fn with_nodes(mut self, nodes: usize) -> Self {
        self.nodes = nodes;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_transform(mut self, transform: Transform) -> Self {
        self.transform = transform;
        self
    }

    pub fn with_max_nodes(mut self, max_nodes: usize) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0
            || self.max_nodes < self.nodes
            || !(self.scale > 0.0 && self.scale.is_finite())
            || !(self.tolerance > 0.0)
        {
            return Err(CasimirError::InvalidParameter(format!(
                "invalid quadrature spec {self:?}"
            )));
        }
        Ok(())
    }

    /// Points `κ_i` and weights `w_i` of the `n`-point rule on `(0, ∞)`.
    pub fn points(&self, n: usize) -> Vec<(f64, f64)> {
        let rule = gauss_legendre(n);
        let s = self.scale;
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| {
                let t = 0.5 * (x + 1.0);
                let w = 0.5 * w;
                match self.transform {
                    Transform::RationalStretch => {
                        let u = 1.0 - t;
                        (s * t / u, w * s / (u * u))
                    }
                    Transform::Exponential => (-s * (-t).ln_1p(), w * s / (1.0 - t)),
                }
            })
            .collect()
    }
}

/// `∫_0^∞ f(κ) dκ` with node doubling until two successive rules agree to
/// `spec.tolerance` (relative). Nodes are evaluated in parallel and summed
/// in fixed order.
pub fn integrate_semi_infinite<F>(f: F, spec: &QuadratureSpec) -> Result<EnergyResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    spec.validate()?;
    let eval = |n: usize| -> Result<f64> {
        let pts = spec.points(n);
        let vals = try_par_map(&pts, |&(k, w)| Ok(w * f(k)?))?;
        Ok(vals.iter().sum())
    };
    let mut n = spec.nodes;
    let mut previous = eval(n)?;
    let mut before = f64::NAN;
    while 2 * n <= spec.max_nodes {
        n *= 2;
        let current = eval(n)?;
        let diff = (current - previous).abs();
        if diff <= spec.tolerance * current.abs() || diff == 0.0 {
            return Ok(EnergyResult {
                value: current,
                truncation_order: 0,
                quadrature_error: diff,
                truncation_error: 0.0,
                converged: true,
            });
        }
        before = previous;
        previous = current;
    }
    Err(CasimirError::QuadratureNotConverged {
        nodes: n,
        previous: before,
        last: previous,
    })
}

/// `(1/2π) ∫_0^∞ f(κ) dκ`, the zero-temperature frequency integral.
pub fn integrate_zero_t<F>(f: F, spec: &QuadratureSpec) -> Result<EnergyResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let mut r = integrate_semi_infinite(f, spec)?;
    r.value /= 2.0 * PI;
    r.quadrature_error /= 2.0 * PI;
    Ok(r)
}

/// `∫_0^∞ f` with exactly `spec.nodes` points, no error estimate. Smooth in
/// any parameter `f` depends on, which finite differences need.
pub fn integrate_fixed<F>(f: F, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    spec.validate()?;
    let pts = spec.points(spec.nodes);
    let vals = try_par_map(&pts, |&(k, w)| Ok(w * f(k)?))?;
    Ok(vals.iter().sum())
}

/// `∫_a^b f` by Gauss–Legendre with node doubling from `nodes` up to
/// `max_nodes`; returns the value and the last difference. With
/// `max_nodes <= nodes` the single rule is returned with a zero estimate.
/// Runs serially: it is meant for inner integrals of an already parallel
/// outer one.
pub fn integrate_interval<F>(
    f: F,
    a: f64,
    b: f64,
    nodes: usize,
    tolerance: f64,
    max_nodes: usize,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let eval = |n: usize| -> Result<f64> {
        let rule = gauss_legendre(n);
        let mut s = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            s += w * f(mid + half * x)?;
        }
        Ok(s * half)
    };
    let mut n = nodes.max(1);
    let mut previous = eval(n)?;
    if max_nodes <= n {
        return Ok((previous, 0.0));
    }
    let mut before = f64::NAN;
    while 2 * n <= max_nodes {
        n *= 2;
        let current = eval(n)?;
        let diff = (current - previous).abs();
        if diff <= tolerance * current.abs() || diff == 0.0 {
            return Ok((current, diff));
        }
        before = previous;
        previous = current;
    }
    Err(CasimirError::QuadratureNotConverged {
        nodes: n,
        previous: before,
        last: previous,
    })
}
