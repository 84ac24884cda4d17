use nalgebra::DMatrix;

use super::{frequency_integral, truncated, SolveOptions, Symmetry};
use crate::engine::{logdet_identity_minus, logdet_identity_plus};
use crate::error::Result;
use crate::model::{EnergyResult, GeometryDescriptor};
use crate::scattering::{CylinderLogAmplitudes, Polarization};
use crate::specfun::ln_k_sequence;

/// `ln det(I − N^P)` for two perfect cylinders at `p`, `P = E, M`.
///
/// `N = T K T K` with `K_{nn'} = K_{n+n'}(pd)`, `n ∈ [−n_max, n_max]`. With
/// `A = |T|^{1/2} K |T|^{1/2}` the round trip is similar to `A²`, so
/// `ln det(I − N) = ln det(I − A) + ln det(I + A)`.
pub fn two_cylinders_integrand(
    r: f64,
    d: f64,
    n_max: usize,
    p: f64,
    pol: Polarization,
) -> Result<f64> {
    let amps = CylinderLogAmplitudes::new(n_max, p, r)?;
    let ln_k = ln_k_sequence(2 * n_max, p * d)?;
    let a = coupling_matrix(amps.get(pol), &ln_k, n_max);
    Ok(logdet_identity_minus(&a)? + logdet_identity_plus(&a)?)
}

/// `|T_n|^{1/2} K_{|n+n'|} |T_{n'}|^{1/2}` over `n, n' ∈ [−n_max, n_max]`.
pub(crate) fn coupling_matrix(ln_t: &[f64], ln_k: &[f64], n_max: usize) -> DMatrix<f64> {
    let dim = 2 * n_max + 1;
    let half: Vec<f64> = (0..dim)
        .map(|i| 0.5 * ln_t[(i as i64 - n_max as i64).unsigned_abs() as usize])
        .collect();
    DMatrix::from_fn(dim, dim, |i, j| {
        let m = (i + j) as i64 - 2 * n_max as i64;
        (half[i] + half[j] + ln_k[m.unsigned_abs() as usize]).exp()
    })
}

/// Casimir energy per unit length of two parallel perfect cylinders of
/// radius `r` at center distance `d`:
/// `E/L = (1/4π) ∫ p dp [ln det(I − N^E) + ln det(I − N^M)]`.
pub fn two_cylinders_energy(r: f64, d: f64, opts: &SolveOptions) -> Result<EnergyResult> {
    GeometryDescriptor::TwoCylinders { r, d }.validate()?;
    let sep = d - 2.0 * r;
    truncated(opts, |n_max| {
        frequency_integral(
            |s| {
                opts.polarization.combine(
                    || two_cylinders_integrand(r, d, n_max, s.p, Polarization::E),
                    || two_cylinders_integrand(r, d, n_max, s.p, Polarization::M),
                )
            },
            Symmetry::Radial,
            sep,
            n_max,
            opts,
        )
    })
}
