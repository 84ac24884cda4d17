use nalgebra::DMatrix;

use super::{frequency_integral, truncated, PolarizationSelector, SolveOptions, Symmetry};
use crate::engine::logdet_identity_minus;
use crate::error::{CasimirError, Result};
use crate::model::{EnergyResult, GeometryDescriptor};
use crate::specfun::{ln_factorials, ParabolicRatios};
use crate::translation::parabola_scaled_kernel;

/// Points of the `χ` rule used for the plate kernel at truncation `ν_max`.
pub(crate) fn chi_nodes(nu_max: usize) -> usize {
    2 * nu_max + 100
}

/// `ln det(I − M^P)` for a perfect parabolic cylinder (curvature radius
/// `r`, focus at distance `d` from a perfect plate, tilt `theta`) at
/// `q = sqrt(κ² + k_z²)`, summed over the selected channels.
///
/// `M_{νν'} = exp(a_ν + a_ν') K̃_{νν'}` with
/// `a_ν = ½ (ln|f_ν| − ln ν!) − q d`, where `f_ν` is the parabolic
/// amplitude and `K̃` the `k_x`-integrated plate kernel. The alternating
/// signs of the amplitudes, of the plate reflection and of the kernel
/// pairing cancel, so every channel enters as `I − M` with `M ≥ 0` on the
/// diagonal.
pub fn parabola_plate_integrand(
    r: f64,
    d: f64,
    theta: f64,
    nu_max: usize,
    q: f64,
    selector: PolarizationSelector,
) -> Result<f64> {
    let u = (2.0 * r * q).sqrt();
    let ratios = ParabolicRatios::new(nu_max, u)?;
    let ln_fact = ln_factorials(nu_max);
    let dim = nu_max + 1;
    let channel = |lg: &dyn Fn(usize) -> f64| -> Result<f64> {
        let a: Vec<f64> = (0..dim)
            .map(|nu| 0.5 * (lg(nu) - ln_fact[nu]) - q * d)
            .collect();
        let m = parabola_scaled_kernel(q, d, theta, &a, chi_nodes(nu_max));
        logdet_identity_minus(&DMatrix::from_row_slice(dim, dim, &m))
    };
    selector.combine(
        || channel(&|nu| ratios.e(nu).ln_abs),
        || channel(&|nu| ratios.m(nu).ln_abs),
    )
}

/// Casimir energy per unit length of a perfect parabolic cylinder above a
/// perfect plate: `E/L = (1/4π) ∫ q dq Σ_P ln det(I − M^P)`. `r = 0` is the
/// knife edge (half-plane); `d` is the focus-to-plate distance, so the gap
/// at `θ = 0` is `H = d − R/2`.
pub fn parabola_plate_energy(
    r: f64,
    d: f64,
    theta: f64,
    opts: &SolveOptions,
) -> Result<EnergyResult> {
    let geometry = GeometryDescriptor::ParabolaPlate { r, d, theta };
    geometry.validate()?;
    if !opts.plate.is_perfect() {
        return Err(CasimirError::Unsupported(
            "parabolic cylinder above a dielectric plate",
        ));
    }
    let gap = geometry.separation();
    truncated(opts, |nu_max| {
        frequency_integral(
            |s| parabola_plate_integrand(r, d, theta, nu_max, s.p, opts.polarization),
            Symmetry::Radial,
            gap,
            nu_max,
            opts,
        )
    })
}
