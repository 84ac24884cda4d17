use nalgebra::DMatrix;

use super::cylinders::coupling_matrix;
use super::{
    frequency_integral, truncated, PolarizationSelector, SolveOptions, SpectralPoint, Symmetry,
};
use crate::engine::{logdet_identity_minus, logdet_identity_plus};
use crate::error::Result;
use crate::model::{EnergyResult, GeometryDescriptor};
use crate::scattering::{CylinderLogAmplitudes, Polarization};
use crate::specfun::ln_k_sequence;
use crate::translation::PlateCoupling;

/// Round-trip integrand of a perfect cylinder (radius `r`, axis at height
/// `h`) above a plate, at the spectral point `s`.
///
/// Perfect plate: `ln det(I − A_P)` with `A_P = |T_P|^{1/2} K_{n+n'}(2pH)
/// |T_P|^{1/2}` and the channels decouple. Dielectric plate: the plate
/// mixes polarizations and the integrand is `ln det(I + B)` with
/// `B_{(P,n),(P',n')} = σ_P |T_{Pn}|^{1/2} W^{PP'}_{n+n'} |T_{P'n'}|^{1/2}`,
/// `σ_E = 1`, `σ_M = −1`. For a dielectric plate the single-channel
/// selectors keep only the corresponding diagonal block.
pub fn cylinder_plate_integrand(
    r: f64,
    h: f64,
    n_max: usize,
    s: SpectralPoint,
    opts: &SolveOptions,
) -> Result<f64> {
    let amps = CylinderLogAmplitudes::new(n_max, s.p, r)?;
    if opts.plate.is_perfect() {
        let ln_k = ln_k_sequence(2 * n_max, 2.0 * s.p * h)?;
        return opts.polarization.combine(
            || logdet_identity_minus(&coupling_matrix(&amps.e, &ln_k, n_max)),
            || logdet_identity_minus(&coupling_matrix(&amps.m, &ln_k, n_max)),
        );
    }
    let w = PlateCoupling::dielectric(
        2 * n_max,
        s.kappa,
        s.kappa_m,
        s.kz,
        h,
        &opts.plate,
        &opts.medium,
    )?;
    let dim = 2 * n_max + 1;
    let pols: &[Polarization] = match opts.polarization {
        PolarizationSelector::E => &[Polarization::E],
        PolarizationSelector::M => &[Polarization::M],
        PolarizationSelector::Total => &Polarization::BOTH,
    };
    let half = |pol: Polarization, i: usize| {
        0.5 * amps.get(pol)[(i as i64 - n_max as i64).unsigned_abs() as usize]
    };
    let b = DMatrix::from_fn(pols.len() * dim, pols.len() * dim, |row, col| {
        let (pa, i) = (pols[row / dim], row % dim);
        let (pb, j) = (pols[col / dim], col % dim);
        let m = (i + j) as i64 - 2 * n_max as i64;
        let (ln_k, ratio) = w.element(pa, pb, m);
        let sign = match pa {
            Polarization::E => 1.0,
            Polarization::M => -1.0,
        };
        sign * ratio * (half(pa, i) + half(pb, j) + ln_k).exp()
    });
    logdet_identity_plus(&b)
}

/// Casimir energy per unit length of a perfect cylinder of radius `r`
/// whose axis is at height `h` above a plate (`opts.plate`).
pub fn cylinder_plate_energy(r: f64, h: f64, opts: &SolveOptions) -> Result<EnergyResult> {
    GeometryDescriptor::CylinderPlate { r, h }.validate()?;
    let symmetry = if opts.plate.is_perfect() {
        Symmetry::Radial
    } else {
        Symmetry::General
    };
    truncated(opts, |n_max| {
        frequency_integral(
            |s| cylinder_plate_integrand(r, h, n_max, s, opts),
            symmetry,
            h - r,
            n_max,
            opts,
        )
    })
}
