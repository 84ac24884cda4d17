//! Materials, media, frequency grids, polarizabilities and result records.
//!
//! Units: `ħ = c = 1`, and every length is measured in one user-chosen unit.
//! Imaginary wave numbers `κ` are therefore inverse lengths, and a
//! temperature enters only through `kT/(ħc)`, also an inverse length.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::error::{CasimirError, Result};

/// Response of a material at imaginary frequency `iκ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Response {
    /// Ideal metal; Fresnel and amplitude code use the exact limits.
    PerfectConductor,
    Dielectric {
        epsilon: f64,
        mu: f64,
    },
}

impl Response {
    /// Refractive index `sqrt(ε μ)`; `None` for a perfect conductor.
    pub fn index(&self) -> Option<f64> {
        match *self {
            Response::PerfectConductor => None,
            Response::Dielectric { epsilon, mu } => Some((epsilon * mu).sqrt()),
        }
    }
}

/// Sampled `ε(iκ)`, `μ(iκ)` with monotone cubic interpolation in `ln κ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialTable {
    ln_kappa: Vec<f64>,
    epsilon: Vec<f64>,
    mu: Vec<f64>,
    eps_slope: Vec<f64>,
    mu_slope: Vec<f64>,
    /// Clamp to the end samples instead of failing outside the table.
    pub allow_extrapolation: bool,
}

impl MaterialTable {
    /// `samples` are `(κ, ε, μ)` triples with strictly increasing `κ > 0`.
    pub fn new(samples: &[(f64, f64, f64)]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(CasimirError::MaterialTable(
                "at least two samples are required".into(),
            ));
        }
        for (i, &(k, e, m)) in samples.iter().enumerate() {
            if !(k > 0.0 && k.is_finite()) {
                return Err(CasimirError::MaterialTable(format!(
                    "sample {i}: kappa must be positive and finite, got {k}"
                )));
            }
            if !(e > 0.0 && e.is_finite() && m > 0.0 && m.is_finite()) {
                return Err(CasimirError::MaterialTable(format!(
                    "sample {i}: epsilon and mu must be positive and finite"
                )));
            }
            if i > 0 && k <= samples[i - 1].0 {
                return Err(CasimirError::MaterialTable(format!(
                    "sample {i}: kappa values must be strictly increasing"
                )));
            }
        }
        let ln_kappa: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
        let epsilon: Vec<f64> = samples.iter().map(|s| s.1).collect();
        let mu: Vec<f64> = samples.iter().map(|s| s.2).collect();
        let eps_slope = pchip_slopes(&ln_kappa, &epsilon);
        let mu_slope = pchip_slopes(&ln_kappa, &mu);
        Ok(Self {
            ln_kappa,
            epsilon,
            mu,
            eps_slope,
            mu_slope,
            allow_extrapolation: false,
        })
    }

    pub fn with_extrapolation(mut self, allow: bool) -> Self {
        self.allow_extrapolation = allow;
        self
    }

    pub fn len(&self) -> usize {
        self.ln_kappa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_kappa.is_empty()
    }

    pub fn kappa_range(&self) -> (f64, f64) {
        (
            self.ln_kappa[0].exp(),
            self.ln_kappa[self.ln_kappa.len() - 1].exp(),
        )
    }

    pub fn eval(&self, kappa: f64) -> Result<(f64, f64)> {
        let n = self.len();
        let x = kappa.ln();
        if x < self.ln_kappa[0] || x > self.ln_kappa[n - 1] {
            if !self.allow_extrapolation {
                let (min, max) = self.kappa_range();
                return Err(CasimirError::Extrapolation { kappa, min, max });
            }
            let i = if x < self.ln_kappa[0] { 0 } else { n - 1 };
            return Ok((self.epsilon[i], self.mu[i]));
        }
        let i = match self
            .ln_kappa
            .binary_search_by(|v| v.partial_cmp(&x).unwrap())
        {
            Ok(i) => return Ok((self.epsilon[i], self.mu[i])),
            Err(i) => i - 1,
        };
        Ok((
            hermite(&self.ln_kappa, &self.epsilon, &self.eps_slope, i, x),
            hermite(&self.ln_kappa, &self.mu, &self.mu_slope, i, x),
        ))
    }
}

/// Fritsch–Carlson slopes for a shape-preserving cubic Hermite interpolant.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    let mut d = vec![0.0; n];
    if n == 2 {
        d[0] = delta[0];
        d[1] = delta[0];
        return d;
    }
    for i in 1..n - 1 {
        if delta[i - 1] * delta[i] > 0.0 {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

fn hermite(x: &[f64], y: &[f64], d: &[f64], i: usize, t: f64) -> f64 {
    let h = x[i + 1] - x[i];
    let s = (t - x[i]) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    y[i] * (2.0 * s3 - 3.0 * s2 + 1.0)
        + h * d[i] * (s3 - 2.0 * s2 + s)
        + y[i + 1] * (3.0 * s2 - 2.0 * s3)
        + h * d[i + 1] * (s3 - s2)
}

impl FromStr for MaterialTable {
    type Err = CasimirError;

    /// Whitespace-separated `κ ε [μ]` rows; `#` starts a comment and a
    /// missing `μ` defaults to 1.
    fn from_str(text: &str) -> Result<Self> {
        let mut samples = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(CasimirError::MaterialTable(format!(
                    "line {}: expected 2 or 3 columns, found {}",
                    lineno + 1,
                    fields.len()
                )));
            }
            let mut vals = [0.0, 0.0, 1.0];
            for (v, f) in vals.iter_mut().zip(&fields) {
                *v = f.parse::<f64>().map_err(|e| {
                    CasimirError::MaterialTable(format!("line {}: {f:?}: {e}", lineno + 1))
                })?;
            }
            samples.push((vals[0], vals[1], vals[2]));
        }
        MaterialTable::new(&samples)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MaterialModel {
    PerfectConductor,
    Constant { epsilon: f64, mu: f64 },
    Tabulated(MaterialTable),
}

impl MaterialModel {
    pub fn constant(epsilon: f64, mu: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite() && mu > 0.0 && mu.is_finite()) {
            return Err(CasimirError::InvalidParameter(format!(
                "constant material needs epsilon > 0 and mu > 0, got ({epsilon}, {mu})"
            )));
        }
        Ok(MaterialModel::Constant { epsilon, mu })
    }

    pub fn is_perfect(&self) -> bool {
        matches!(self, MaterialModel::PerfectConductor)
    }
}

/// `ε(iκ)`, `μ(iκ)` of a material.
pub fn eval_material(m: &MaterialModel, kappa: f64) -> Result<Response> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(CasimirError::InvalidParameter(format!(
            "kappa must be positive, got {kappa}"
        )));
    }
    match m {
        MaterialModel::PerfectConductor => Ok(Response::PerfectConductor),
        &MaterialModel::Constant { epsilon, mu } => Ok(Response::Dielectric { epsilon, mu }),
        MaterialModel::Tabulated(t) => {
            let (epsilon, mu) = t.eval(kappa)?;
            Ok(Response::Dielectric { epsilon, mu })
        }
    }
}

/// The medium filling the space between the objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Medium {
    model: MaterialModel,
}

impl Default for Medium {
    fn default() -> Self {
        Self::vacuum()
    }
}

impl Medium {
    pub fn vacuum() -> Self {
        Self {
            model: MaterialModel::Constant {
                epsilon: 1.0,
                mu: 1.0,
            },
        }
    }

    pub fn new(model: MaterialModel) -> Result<Self> {
        if model.is_perfect() {
            return Err(CasimirError::InvalidParameter(
                "the medium cannot be a perfect conductor".into(),
            ));
        }
        Ok(Self { model })
    }

    pub fn model(&self) -> &MaterialModel {
        &self.model
    }

    pub fn is_vacuum(&self) -> bool {
        self.model
            == MaterialModel::Constant {
                epsilon: 1.0,
                mu: 1.0,
            }
    }

    /// `(ε_M, μ_M)` at `iκ`.
    pub fn response(&self, kappa: f64) -> Result<(f64, f64)> {
        match eval_material(&self.model, kappa)? {
            Response::Dielectric { epsilon, mu } => Ok((epsilon, mu)),
            Response::PerfectConductor => unreachable!("rejected in Medium::new"),
        }
    }

    /// `n_M(iκ) = sqrt(ε_M μ_M)`.
    pub fn index(&self, kappa: f64) -> Result<f64> {
        let (e, m) = self.response(kappa)?;
        Ok((e * m).sqrt())
    }

    /// Constant refractive index, if the medium is dispersionless.
    pub fn constant_index(&self) -> Option<f64> {
        match self.model {
            MaterialModel::Constant { epsilon, mu } => Some((epsilon * mu).sqrt()),
            _ => None,
        }
    }
}

/// How the frequency integral or sum is discretized.
#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyGrid {
    /// Quadrature nodes and weights on `κ ∈ (0, ∞)`.
    ZeroTemperature { nodes: Vec<f64>, weights: Vec<f64> },
    /// `κ_n = 2πn T` with `T = kT/(ħc)`; the `n = 0` term has weight 1/2.
    Matsubara { temperature: f64, count: usize },
}

impl FrequencyGrid {
    pub fn zero_temperature(nodes: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if nodes.len() != weights.len() || nodes.is_empty() {
            return Err(CasimirError::InvalidParameter(
                "nodes and weights must be non-empty and of equal length".into(),
            ));
        }
        if nodes.iter().chain(&weights).any(|v| !(*v > 0.0)) {
            return Err(CasimirError::InvalidParameter(
                "quadrature nodes and weights must be positive".into(),
            ));
        }
        Ok(Self::ZeroTemperature { nodes, weights })
    }

    pub fn matsubara(temperature: f64, count: usize) -> Result<Self> {
        if !(temperature > 0.0 && temperature.is_finite()) || count == 0 {
            return Err(CasimirError::InvalidParameter(format!(
                "Matsubara grid needs T > 0 and at least one term, got T = {temperature}"
            )));
        }
        Ok(Self::Matsubara { temperature, count })
    }

    /// `(κ, weight)` pairs. Matsubara weights exclude the overall factor `T`.
    pub fn points(&self) -> Vec<(f64, f64)> {
        match self {
            FrequencyGrid::ZeroTemperature { nodes, weights } => {
                nodes.iter().copied().zip(weights.iter().copied()).collect()
            }
            &FrequencyGrid::Matsubara { temperature, count } => (0..count)
                .map(|n| {
                    let w = if n == 0 { 0.5 } else { 1.0 };
                    (2.0 * PI * n as f64 * temperature, w)
                })
                .collect(),
        }
    }
}

pub type Matrix3 = [[f64; 3]; 3];

/// Static electric (`α`) and magnetic (`β`) polarizabilities, units length³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizabilityTensor {
    pub electric: Matrix3,
    pub magnetic: Matrix3,
}

impl PolarizabilityTensor {
    pub fn isotropic(alpha: f64, beta: f64) -> Self {
        Self {
            electric: diag([alpha; 3]),
            magnetic: diag([beta; 3]),
        }
    }

    /// `R α Rᵀ`, `R β Rᵀ`, symmetrized so the result is exactly symmetric.
    pub fn rotated(&self, r: &Matrix3) -> Self {
        Self {
            electric: conjugate(r, &self.electric),
            magnetic: conjugate(r, &self.magnetic),
        }
    }

    /// Orientation used for spheroids: the symmetry axis (initially `z`) is
    /// rotated by `theta` about `x` and then by `psi` about `z`.
    pub fn oriented(&self, theta: f64, psi: f64) -> Self {
        self.rotated(&matmul(&rotation_z(psi), &rotation_x(theta)))
    }
}

pub fn diag(d: [f64; 3]) -> Matrix3 {
    [[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]]
}

pub fn trace(m: &Matrix3) -> f64 {
    m[0][0] + m[1][1] + m[2][2]
}

pub fn rotation_x(t: f64) -> Matrix3 {
    let (s, c) = t.sin_cos();
    [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]
}

pub fn rotation_y(t: f64) -> Matrix3 {
    let (s, c) = t.sin_cos();
    [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
}

pub fn rotation_z(t: f64) -> Matrix3 {
    let (s, c) = t.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

pub fn matmul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn conjugate(r: &Matrix3, m: &Matrix3) -> Matrix3 {
    let mut rt = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            rt[i][j] = r[j][i];
        }
    }
    let mut out = matmul(&matmul(r, m), &rt);
    for i in 0..3 {
        for j in 0..i {
            let v = 0.5 * (out[i][j] + out[j][i]);
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    out
}

/// Static response used for the polarizability of a small object.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticResponse {
    PerfectConductor,
    Dielectric { epsilon: f64, mu: f64 },
}

/// Depolarizing factors `(n₁, n₂, n₃)` of a spheroid with equatorial radius
/// `r` and symmetry-axis length `l`.
pub fn depolarizing_factors(r: f64, l: f64) -> Result<[f64; 3]> {
    if !(r > 0.0 && l > 0.0 && r.is_finite() && l.is_finite()) {
        return Err(CasimirError::InvalidParameter(format!(
            "spheroid needs R > 0 and L > 0, got R = {r}, L = {l}"
        )));
    }
    let a = l / (2.0 * r);
    let n3 = if a >= 1.0 {
        // prolate: 1 - e² = 1/a²
        let one_minus_e2 = 1.0 / (a * a);
        let e = (1.0 - one_minus_e2).sqrt();
        if e < 0.05 {
            // artanh(e) - e = Σ_{k≥1} e^{2k+1}/(2k+1)
            let e2 = e * e;
            let mut term = 1.0;
            let mut sum = 0.0;
            for k in 1..30 {
                sum += term / (2 * k + 1) as f64;
                term *= e2;
            }
            one_minus_e2 * sum
        } else {
            // ln((1+e)/(1-e)) = ln((1+e)² a²)
            let log = 2.0 * ((1.0 + e).ln() + a.ln());
            one_minus_e2 / (2.0 * e * e * e) * (log - 2.0 * e)
        }
    } else {
        // oblate: e = i g, n₃ = (1+g²)/g³ (g - arctan g)
        let g2 = 1.0 / (a * a) - 1.0;
        let g = g2.sqrt();
        if g < 0.05 {
            let mut term = 1.0;
            let mut sum = 0.0;
            for k in 1..30 {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sum += sign * term / (2 * k + 1) as f64;
                term *= g2;
            }
            (1.0 + g2) * sum
        } else {
            (1.0 + g2) / (g2 * g) * (g - g.atan())
        }
    };
    let n1 = 0.5 * (1.0 - n3);
    Ok([n1, n1, n3])
}

/// Static polarizabilities of a spheroid in its principal frame.
pub fn spheroid_polarizability(
    r: f64,
    l: f64,
    material: StaticResponse,
) -> Result<PolarizabilityTensor> {
    let n = depolarizing_factors(r, l)?;
    let v_over_4pi = r * r * l / 6.0;
    let (electric, magnetic): ([f64; 3], [f64; 3]) = match material {
        StaticResponse::PerfectConductor => (
            n.map(|ni| v_over_4pi / ni),
            n.map(|ni| -v_over_4pi / (1.0 - ni)),
        ),
        StaticResponse::Dielectric { epsilon, mu } => {
            if !(epsilon > 0.0 && mu > 0.0) {
                return Err(CasimirError::InvalidParameter(format!(
                    "static response needs epsilon > 0 and mu > 0, got ({epsilon}, {mu})"
                )));
            }
            let f = |x: f64| n.map(|ni| v_over_4pi * (x - 1.0) / (1.0 + (x - 1.0) * ni));
            (f(epsilon), f(mu))
        }
    };
    Ok(PolarizabilityTensor {
        electric: diag(electric),
        magnetic: diag(magnetic),
    })
}

/// An energy with its error budget.
///
/// `value` is dimensionless; each solver documents its normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    pub truncation_order: usize,
    pub quadrature_error: f64,
    pub truncation_error: f64,
    /// False when a tolerance was not met and `value` is the best estimate.
    pub converged: bool,
}

impl EnergyResult {
    pub fn total_error(&self) -> f64 {
        self.quadrature_error + self.truncation_error
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometryDescriptor {
    /// Radii `r`, center-to-center distance `d`.
    TwoCylinders { r: f64, d: f64 },
    /// Radius `r`, axis-to-plate distance `h`.
    CylinderPlate { r: f64, h: f64 },
    /// Curvature radius `r` (0 for a half-plane), focus-to-plate distance
    /// `d`, tilt `theta`.
    ParabolaPlate { r: f64, d: f64, theta: f64 },
}

impl GeometryDescriptor {
    pub fn validate(&self) -> Result<()> {
        let finite_pos = |v: f64| v > 0.0 && v.is_finite();
        match *self {
            GeometryDescriptor::TwoCylinders { r, d } => {
                if !(finite_pos(r) && d.is_finite() && d > 2.0 * r) {
                    return Err(CasimirError::Geometry(format!(
                        "two cylinders need R > 0 and d > 2R, got R = {r}, d = {d}"
                    )));
                }
            }
            GeometryDescriptor::CylinderPlate { r, h } => {
                if !(finite_pos(r) && h.is_finite() && h > r) {
                    return Err(CasimirError::Geometry(format!(
                        "cylinder and plate need R > 0 and H > R, got R = {r}, H = {h}"
                    )));
                }
            }
            GeometryDescriptor::ParabolaPlate { r, d, theta } => {
                if !(theta.abs() < PI / 2.0) {
                    return Err(CasimirError::Geometry(format!(
                        "tilt must lie in (-pi/2, pi/2), got {theta}"
                    )));
                }
                if !(r >= 0.0
                    && r.is_finite()
                    && d.is_finite()
                    && parabola_plate_gap(r, d, theta) > 0.0)
                {
                    return Err(CasimirError::Geometry(format!(
                        "parabola and plate need R >= 0 and d - R/(2 cos theta) > 0, got R = {r}, d = {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Closest surface-to-surface distance.
    pub fn separation(&self) -> f64 {
        match *self {
            GeometryDescriptor::TwoCylinders { r, d } => d - 2.0 * r,
            GeometryDescriptor::CylinderPlate { r, h } => h - r,
            GeometryDescriptor::ParabolaPlate { r, d, theta } => parabola_plate_gap(r, d, theta),
        }
    }
}

/// Minimum distance between the tilted parabola and the plate.
///
/// The parabola `y = (x² - R²)/(2R)` has its focus at the origin and tip at
/// `y = -R/2`; tilting about the focus by `theta` brings the closest point
/// to height `R/(2 cos θ)` below it, so the gap is `d - R/(2 cos θ)`.
fn parabola_plate_gap(r: f64, d: f64, theta: f64) -> f64 {
    d - 0.5 * r / theta.cos()
}
