//! Full scattering solvers for cylinders, plates and parabolic cylinders.
//!
//! All energies are per unit length in units of `ħc/length²` (lengths in
//! the caller's unit), negative for attraction.

mod cylinder_plate;
mod cylinders;
mod parabola;

pub use cylinder_plate::{cylinder_plate_energy, cylinder_plate_integrand};
pub use cylinders::{two_cylinders_energy, two_cylinders_integrand};
pub use parabola::{parabola_plate_energy, parabola_plate_integrand};

use std::f64::consts::PI;

use crate::engine::{
    converge_truncation, integrate_fixed, integrate_interval, integrate_semi_infinite,
    matsubara_sum, MatsubaraSpec, OrderStep, QuadratureSpec, TruncationSpec, KAPPA_MIN,
};
use crate::error::{CasimirError, Result};
use crate::model::{EnergyResult, GeometryDescriptor, MaterialModel, Medium};

/// Which polarization channels enter the energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationSelector {
    E,
    M,
    Total,
}

impl PolarizationSelector {
    pub(crate) fn combine(
        self,
        e: impl FnOnce() -> Result<f64>,
        m: impl FnOnce() -> Result<f64>,
    ) -> Result<f64> {
        Ok(match self {
            PolarizationSelector::E => e()?,
            PolarizationSelector::M => m()?,
            PolarizationSelector::Total => e()? + m()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemperatureMode {
    Zero,
    Matsubara(MatsubaraSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub truncation: TruncationSpec,
    /// Skip the convergence loop and use this order.
    pub fixed_order: Option<usize>,
    /// `scale` is relative: the solver multiplies it by the inverse surface
    /// separation.
    pub quadrature: QuadratureSpec,
    /// Use exactly `quadrature.nodes` points without doubling.
    pub fixed_nodes: bool,
    pub polarization: PolarizationSelector,
    pub temperature: TemperatureMode,
    /// Plate material for the cylinder–plate solver.
    pub plate: MaterialModel,
    pub medium: Medium,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            truncation: TruncationSpec::new(8, 1e-6)
                .with_step(OrderStep::Increment(8))
                .with_max_order(512),
            fixed_order: None,
            quadrature: QuadratureSpec::new(1.0).with_tolerance(1e-7),
            fixed_nodes: false,
            polarization: PolarizationSelector::Total,
            temperature: TemperatureMode::Zero,
            plate: MaterialModel::PerfectConductor,
            medium: Medium::vacuum(),
        }
    }
}

impl SolveOptions {
    /// Defaults for the parabolic cylinder, whose truncation error falls off
    /// algebraically: orders 40, 80, 160, ... up to 640 with Δ²
    /// extrapolation.
    pub fn parabola() -> Self {
        Self {
            truncation: TruncationSpec::new(40, 1e-4).with_max_order(640),
            quadrature: QuadratureSpec::new(1.0).with_tolerance(1e-6),
            ..Self::default()
        }
    }

    pub fn with_polarization(mut self, p: PolarizationSelector) -> Self {
        self.polarization = p;
        self
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.fixed_order = Some(order);
        self
    }

    pub fn with_truncation(mut self, t: TruncationSpec) -> Self {
        self.truncation = t;
        self
    }

    pub fn with_quadrature(mut self, q: QuadratureSpec) -> Self {
        self.quadrature = q;
        self
    }

    pub fn with_plate(mut self, plate: MaterialModel) -> Self {
        self.plate = plate;
        self
    }

    pub fn with_medium(mut self, medium: Medium) -> Self {
        self.medium = medium;
        self
    }

    pub fn with_temperature(mut self, t: TemperatureMode) -> Self {
        self.temperature = t;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.truncation.tolerance > 0.0) {
            return Err(CasimirError::InvalidParameter(
                "truncation tolerance must be positive".into(),
            ));
        }
        if self.fixed_order.is_none() && self.truncation.start > self.truncation.max_order {
            return Err(CasimirError::InvalidParameter(format!(
                "maximum order {} is below the starting order {}",
                self.truncation.max_order, self.truncation.start
            )));
        }
        self.quadrature.validate()
    }
}

/// A point on the imaginary-frequency plane. `kappa_m = n_M(κ) κ` is the
/// wavenumber inside the medium and `p = sqrt(κ_M² + k_z²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub kappa: f64,
    pub kappa_m: f64,
    pub kz: f64,
    pub p: f64,
}

impl SpectralPoint {
    pub fn polar(p: f64, beta: f64, index: f64) -> Self {
        let kappa_m = p * beta.cos();
        Self {
            kappa: kappa_m / index,
            kappa_m,
            kz: p * beta.sin(),
            p,
        }
    }

    pub fn cartesian(kappa: f64, kz: f64, medium: &Medium) -> Result<Self> {
        let kappa_m = medium.index(kappa)? * kappa;
        Ok(Self {
            kappa,
            kappa_m,
            kz,
            p: kappa_m.hypot(kz),
        })
    }
}

/// How an integrand depends on the spectral point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Symmetry {
    /// Only through `p`.
    Radial,
    /// Through `(κ, k_z)` separately.
    General,
}

/// `E/L` from the round-trip integrand `ln det(...)` at a spectral point.
///
/// Zero temperature: `(1/2π²) ∫_0^∞ dκ ∫_0^∞ dk_z L`, which in polar
/// coordinates with a constant index `n` becomes `(1/(2π² n)) ∫ p dp ∫_0^{π/2} dβ L`
/// and `(1/(4π n)) ∫ p dp L` for radial integrands. Finite temperature:
/// `T Σ'_n (1/π) ∫_0^∞ dk_z L(κ_n, k_z)`.
pub(crate) fn frequency_integral<F>(
    f: F,
    symmetry: Symmetry,
    separation: f64,
    order: usize,
    opts: &SolveOptions,
) -> Result<EnergyResult>
where
    F: Fn(SpectralPoint) -> Result<f64> + Sync,
{
    let mut spec = opts.quadrature;
    spec.scale /= separation;
    let outer = |g: &(dyn Fn(f64) -> Result<f64> + Sync)| -> Result<(f64, f64)> {
        if opts.fixed_nodes {
            Ok((integrate_fixed(g, &spec)?, 0.0))
        } else {
            let r = integrate_semi_infinite(g, &spec)?;
            Ok((r.value, r.quadrature_error))
        }
    };
    let inner_tol = spec.tolerance;
    let inner_max = spec.max_nodes.min(512);
    let kz_integral = |kappa: f64| -> Result<f64> {
        let g = |kz: f64| f(SpectralPoint::cartesian(kappa, kz, &opts.medium)?);
        if opts.fixed_nodes {
            integrate_fixed_serial(&g, &spec)
        } else {
            integrate_serial(&g, &spec, inner_tol, inner_max)
        }
    };
    let (value, error) = match (opts.temperature, opts.medium.constant_index()) {
        (TemperatureMode::Zero, Some(n)) => match symmetry {
            Symmetry::Radial => {
                let (v, e) = outer(&|p| Ok(p * f(SpectralPoint::polar(p, 0.0, n))?))?;
                let c = 1.0 / (4.0 * PI * n);
                (c * v, c * e)
            }
            Symmetry::General => {
                let beta_integral = |p: f64| -> Result<f64> {
                    let nodes = if opts.fixed_nodes { 32 } else { 8 };
                    let max = if opts.fixed_nodes { 32 } else { 256 };
                    let (v, _) = integrate_interval(
                        |b| f(SpectralPoint::polar(p, b, n)),
                        0.0,
                        0.5 * PI,
                        nodes,
                        inner_tol,
                        max,
                    )?;
                    Ok(p * v)
                };
                let (v, e) = outer(&beta_integral)?;
                let c = 1.0 / (2.0 * PI * PI * n);
                (c * v, c * e)
            }
        },
        (TemperatureMode::Zero, None) => {
            let (v, e) = outer(&|kappa| kz_integral(kappa))?;
            let c = 1.0 / (2.0 * PI * PI);
            (c * v, c * e)
        }
        (TemperatureMode::Matsubara(m), _) => {
            let r = matsubara_sum(|kappa| Ok(kz_integral(kappa.max(KAPPA_MIN))? / PI), &m)?;
            (r.value, r.quadrature_error)
        }
    };
    Ok(EnergyResult {
        value,
        truncation_order: order,
        quadrature_error: error,
        truncation_error: 0.0,
        converged: true,
    })
}

fn integrate_serial(
    g: &dyn Fn(f64) -> Result<f64>,
    spec: &QuadratureSpec,
    tol: f64,
    max: usize,
) -> Result<f64> {
    // [0, s] with k = s e^{−u} (the E amplitudes go like 1/ln k at κ = 0),
    // [s, ∞) with k = s/(1 − t)
    let s = spec.scale;
    let (low, _) = integrate_interval(
        |t| {
            let u = 1.0 - t;
            let k = s * (-t / u).exp();
            Ok(g(k)? * k / (u * u))
        },
        0.0,
        1.0,
        spec.nodes,
        tol,
        max,
    )?;
    let (high, _) = integrate_interval(
        |t| {
            let u = 1.0 - t;
            Ok(g(s / u)? * s / (u * u))
        },
        0.0,
        1.0,
        spec.nodes,
        tol,
        max,
    )?;
    Ok(low + high)
}

fn integrate_fixed_serial(g: &dyn Fn(f64) -> Result<f64>, spec: &QuadratureSpec) -> Result<f64> {
    let mut s = 0.0;
    for (k, w) in spec.points(spec.nodes) {
        s += w * g(k)?;
    }
    Ok(s)
}

/// Run `solve(order)` at a fixed order or until the truncation converges.
pub(crate) fn truncated<F>(opts: &SolveOptions, solve: F) -> Result<EnergyResult>
where
    F: FnMut(usize) -> Result<EnergyResult>,
{
    opts.validate()?;
    match opts.fixed_order {
        Some(order) => {
            let mut solve = solve;
            solve(order)
        }
        None => converge_truncation(solve, &opts.truncation),
    }
}

/// Energy of a geometry with the given options.
pub fn energy(geometry: &GeometryDescriptor, opts: &SolveOptions) -> Result<EnergyResult> {
    match *geometry {
        GeometryDescriptor::TwoCylinders { r, d } => two_cylinders_energy(r, d, opts),
        GeometryDescriptor::CylinderPlate { r, h } => cylinder_plate_energy(r, h, opts),
        GeometryDescriptor::ParabolaPlate { r, d, theta } => {
            parabola_plate_energy(r, d, theta, opts)
        }
    }
}

fn shifted(geometry: &GeometryDescriptor, delta: f64) -> GeometryDescriptor {
    match *geometry {
        GeometryDescriptor::TwoCylinders { r, d } => {
            GeometryDescriptor::TwoCylinders { r, d: d + delta }
        }
        GeometryDescriptor::CylinderPlate { r, h } => {
            GeometryDescriptor::CylinderPlate { r, h: h + delta }
        }
        GeometryDescriptor::ParabolaPlate { r, d, theta } => GeometryDescriptor::ParabolaPlate {
            r,
            d: d + delta,
            theta,
        },
    }
}

/// Force per unit length `−dE/da` along the separation parameter (`d`, `H`
/// or `d`), negative when attractive.
///
/// The truncation order is converged at the base point and then frozen, and
/// the frequency rule is fixed, so the energy is a smooth function of the
/// separation. Central differences with `h = 10⁻³ a` and `h/2` are combined
/// by one Richardson step.
pub fn force(geometry: &GeometryDescriptor, opts: &SolveOptions) -> Result<f64> {
    geometry.validate()?;
    let base = energy(geometry, opts)?;
    let mut fixed = opts.clone();
    fixed.fixed_order = Some(base.truncation_order);
    fixed.fixed_nodes = true;
    fixed.quadrature.nodes =
        (4 * opts.quadrature.nodes).min(opts.quadrature.max_nodes.max(opts.quadrature.nodes));
    let h = 1e-3 * geometry.separation();
    let e = |delta: f64| -> Result<f64> { Ok(energy(&shifted(geometry, delta), &fixed)?.value) };
    let (ep, em) = (e(h)?, e(-h)?);
    let (ep2, em2) = (e(0.5 * h)?, e(-0.5 * h)?);
    let noise = 64.0 * f64::EPSILON * base.value.abs();
    if (ep - em).abs() < 10.0 * noise {
        return Err(CasimirError::StepTooSmall {
            difference: (ep - em).abs(),
            noise,
        });
    }
    let d1 = (ep - em) / (2.0 * h);
    let d2 = (ep2 - em2) / h;
    Ok(-(4.0 * d2 - d1) / 3.0)
}
