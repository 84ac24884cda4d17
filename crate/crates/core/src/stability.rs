//! Material classification for the no-stable-levitation theorem and a
//! finite-difference Laplacian to check it on computed energies.

use crate::engine::try_par_map;
use crate::error::{CasimirError, Result};
use crate::model::{eval_material, MaterialModel, Medium, Response};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaterialClass {
    /// `ε > ε_M` and `μ ≤ μ_M` at every sampled frequency.
    PositivePotential,
    /// `ε < ε_M` and `μ ≥ μ_M` at every sampled frequency.
    NegativePotential,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    StableEquilibriumExcluded,
    NotExcluded,
}

impl std::fmt::Display for MaterialClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MaterialClass::PositivePotential => "PositivePotential",
            MaterialClass::NegativePotential => "NegativePotential",
            MaterialClass::Indeterminate => "Indeterminate",
        })
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::StableEquilibriumExcluded => "StableEquilibriumExcluded",
            Verdict::NotExcluded => "NotExcluded",
        })
    }
}

/// 41 log-spaced imaginary frequencies over `[1/(100 a), 100/a]` for a
/// typical separation `a`.
pub fn kappa_samples(separation: f64) -> Vec<f64> {
    let lo = (0.01 / separation).ln();
    let hi = (100.0 / separation).ln();
    (0..41)
        .map(|i| (lo + (hi - lo) * i as f64 / 40.0).exp())
        .collect()
}

/// Class of an object's material relative to the medium over the sampled
/// frequencies. A perfect conductor counts as `ε → ∞`, `μ → 0`.
pub fn classify(
    object: &MaterialModel,
    medium: &Medium,
    kappa_samples: &[f64],
) -> Result<MaterialClass> {
    if kappa_samples.is_empty() {
        return Err(CasimirError::InvalidParameter(
            "classification needs at least one frequency".into(),
        ));
    }
    let mut positive = true;
    let mut negative = true;
    for &k in kappa_samples {
        let (em, mm) = medium.response(k)?;
        let (pos, neg) = match eval_material(object, k)? {
            Response::PerfectConductor => (true, false),
            Response::Dielectric { epsilon, mu } => {
                (epsilon > em && mu <= mm, epsilon < em && mu >= mm)
            }
        };
        positive &= pos;
        negative &= neg;
    }
    Ok(if positive {
        MaterialClass::PositivePotential
    } else if negative {
        MaterialClass::NegativePotential
    } else {
        MaterialClass::Indeterminate
    })
}

/// Stable equilibrium is excluded when every object is in the same definite
/// class.
pub fn verdict(classes: &[MaterialClass]) -> Verdict {
    let all = |c: MaterialClass| !classes.is_empty() && classes.iter().all(|&x| x == c);
    if all(MaterialClass::PositivePotential) || all(MaterialClass::NegativePotential) {
        Verdict::StableEquilibriumExcluded
    } else {
        Verdict::NotExcluded
    }
}

/// Directions included in the Laplacian. For translation-invariant
/// (cylindrical) geometries the axial second derivative vanishes by
/// symmetry and only the two transverse ones are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Full,
    Transverse,
}

/// `Σᵢ (E(x + h eᵢ) − 2E(x) + E(x − h eᵢ))/h²` over the selected axes
/// (`x`, `y`, then `z`; `Transverse` uses `x` and `y`).
///
/// `tolerance` is the absolute accuracy of one energy evaluation. When
/// `|∇²E| h² < 10·tolerance` the stencil is noise-dominated and
/// `StepTooSmall` is returned. Pass `0` for exact closed forms.
pub fn laplacian_check<F>(
    energy: F,
    point: [f64; 3],
    step: f64,
    stencil: Stencil,
    tolerance: f64,
) -> Result<f64>
where
    F: Fn([f64; 3]) -> Result<f64> + Sync,
{
    if !(step > 0.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "stencil step must be positive, got {step}"
        )));
    }
    let axes = match stencil {
        Stencil::Full => 3,
        Stencil::Transverse => 2,
    };
    let mut points = vec![point];
    for axis in 0..axes {
        for sign in [1.0, -1.0] {
            let mut p = point;
            p[axis] += sign * step;
            points.push(p);
        }
    }
    let e = try_par_map(&points, |&p| energy(p))?;
    let centre = e[0];
    let sum: f64 = (0..axes)
        .map(|a| e[1 + 2 * a] - 2.0 * centre + e[2 + 2 * a])
        .sum();
    let noise = 10.0 * tolerance;
    if sum.abs() < noise {
        return Err(CasimirError::StepTooSmall {
            difference: sum.abs(),
            noise,
        });
    }
    Ok(sum / (step * step))
}
