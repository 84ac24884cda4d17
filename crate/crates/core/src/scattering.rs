//! Single-object scattering amplitudes on the imaginary frequency axis.
//!
//! Cylinders are described in the cylindrical-wave basis, the plate in
//! plane waves and the parabolic cylinder in parabolic-cylinder waves. All
//! amplitudes are diagonal in their channel index (and in `k_z`), so only
//! the scalar channel ratios are returned; the `2π/L δ(k_z − k_z')`
//! normalizations are absorbed into the round-trip assembly.

use crate::error::{CasimirError, Result};
use crate::model::{eval_material, MaterialModel, Medium, Response};
use crate::specfun::{self, BesselSequence, ParabolicRatios};

/// Field polarization: `E` is TM (Dirichlet for perfect mirrors), `M` is
/// TE (Neumann).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Polarization {
    E,
    M,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::E, Polarization::M];
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelAmplitude {
    pub polarization: Polarization,
    /// Cylindrical `n` or parabolic `ν`.
    pub channel: i64,
    pub value: f64,
}

/// Perfectly reflecting cylinder: `−I_n(pR)/K_n(pR)` for `E` and
/// `−I'_n(pR)/K'_n(pR)` for `M`, with `p = sqrt(κ² + k_z²)`.
pub fn cylinder_amplitude(n: i64, p: f64, r: f64, pol: Polarization) -> Result<ChannelAmplitude> {
    check_positive("p", p)?;
    check_positive("R", r)?;
    let order = n.unsigned_abs() as usize;
    let seq = BesselSequence::new(order, p * r)?;
    let i = seq.i(order);
    let k = seq.k(order);
    let value = match pol {
        Polarization::E => -(i.ln_value - k.ln_value).exp(),
        Polarization::M => -(i.ln_value - k.ln_value).exp() * (i.log_derivative / k.log_derivative),
    };
    if !value.is_finite() {
        return Err(specfun::SpecFunError::Overflow {
            function: "cylinder_amplitude",
            ln_value: seq.ln_ratio_dirichlet(order),
        }
        .into());
    }
    Ok(ChannelAmplitude {
        polarization: pol,
        channel: n,
        value,
    })
}

/// `ln |T_n|` for `n = 0..=n_max` of a perfect cylinder, both polarizations.
///
/// This is the form used by the solvers; it never overflows.
#[derive(Debug, Clone)]
pub struct CylinderLogAmplitudes {
    pub e: Vec<f64>,
    pub m: Vec<f64>,
}

impl CylinderLogAmplitudes {
    pub fn new(n_max: usize, p: f64, r: f64) -> Result<Self> {
        check_positive("p", p)?;
        check_positive("R", r)?;
        let seq = BesselSequence::new(n_max, p * r)?;
        Ok(Self {
            e: (0..=n_max).map(|n| seq.ln_ratio_dirichlet(n)).collect(),
            m: (0..=n_max).map(|n| seq.ln_ratio_neumann(n)).collect(),
        })
    }

    pub fn get(&self, pol: Polarization) -> &[f64] {
        match pol {
            Polarization::E => &self.e,
            Polarization::M => &self.m,
        }
    }
}

/// Dielectric cylinder amplitudes mix polarizations and are not provided.
pub fn dielectric_cylinder_amplitude(
    _n: i64,
    _kappa: f64,
    _kz: f64,
    _r: f64,
    _material: &MaterialModel,
) -> Result<[[f64; 2]; 2]> {
    Err(CasimirError::Unsupported(
        "scattering amplitude of a dielectric cylinder",
    ))
}

/// Fresnel coefficient of a planar interface at imaginary frequency.
///
/// `x = κ / sqrt(κ² + k⊥²)`. Inside a medium, ε, μ and n are taken
/// relative to the medium. A perfect conductor gives exactly `r^M = −1`,
/// `r^E = +1`.
pub fn fresnel(
    pol: Polarization,
    kappa: f64,
    x: f64,
    plate: &MaterialModel,
    medium: &Medium,
) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "Fresnel argument x must lie in (0, 1], got {x}"
        )));
    }
    let (eps, mu) = match eval_material(plate, kappa)? {
        Response::PerfectConductor => {
            return Ok(match pol {
                Polarization::M => -1.0,
                Polarization::E => 1.0,
            })
        }
        Response::Dielectric { epsilon, mu } => (epsilon, mu),
    };
    let (eps, mu) = if medium.is_vacuum() {
        (eps, mu)
    } else {
        let (em, mm) = medium.response(kappa)?;
        (eps / em, mu / mm)
    };
    Ok(fresnel_coefficient(pol, eps, mu, x))
}

/// Fresnel formula for relative `ε`, `μ`.
pub fn fresnel_coefficient(pol: Polarization, eps: f64, mu: f64, x: f64) -> f64 {
    let root = (1.0 + (eps * mu - 1.0) * x * x).sqrt();
    let a = match pol {
        Polarization::M => mu,
        Polarization::E => eps,
    };
    (a - root) / (a + root)
}

/// `μ̃₀ = sqrt(2 R sqrt(κ² + k_z²))`.
pub fn parabola_argument(kappa: f64, kz: f64, r: f64) -> f64 {
    (2.0 * r * kappa.hypot(kz)).sqrt()
}

/// Parabolic-cylinder amplitude `f_{k_z ν P}` of a perfect mirror.
///
/// `E`: `i^ν D_ν(iμ̃₀)/D_{−ν−1}(μ̃₀)`, `M`: `i^{ν+1} D'_ν(iμ̃₀)/D'_{−ν−1}(μ̃₀)`.
/// `R = 0` is the half-plane.
pub fn parabola_amplitude(
    nu: usize,
    kappa: f64,
    kz: f64,
    r: f64,
    pol: Polarization,
) -> Result<ChannelAmplitude> {
    check_positive("kappa", kappa)?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(CasimirError::InvalidParameter(format!(
            "R must be non-negative, got {r}"
        )));
    }
    let u = parabola_argument(kappa, kz, r);
    let pr = ParabolicRatios::new(nu, u)?;
    let value = match pol {
        Polarization::E => pr.e(nu).to_f64("parabola_amplitude")?,
        Polarization::M => pr.m(nu).to_f64("parabola_amplitude")?,
    };
    Ok(ChannelAmplitude {
        polarization: pol,
        channel: nu as i64,
        value,
    })
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(CasimirError::InvalidParameter(format!(
            "{name} must be positive and finite, got {v}"
        )));
    }
    Ok(())
}
