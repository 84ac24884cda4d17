//! Closed-form large-distance and proximity results.
//!
//! Energies are in units of `ħc` (per unit length for the cylinder and
//! parabola geometries), negative for attraction. Lengths may be in any
//! unit as long as all arguments share it.

use std::f64::consts::PI;

use crate::engine::integrate_interval;
use crate::error::{CasimirError, Result};
use crate::model::{Matrix3, PolarizabilityTensor};
use crate::scattering::{fresnel_coefficient, Polarization};

/// Orientation of a spheroid: the symmetry axis (initially along the line
/// joining the objects) is rotated by `θ` about `x`, then by `ψ` about `z`.
/// `psi` is the difference `ψ₁ − ψ₂`; only it enters the pair energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationAngles {
    pub theta1: f64,
    pub theta2: f64,
    pub psi: f64,
}

impl OrientationAngles {
    pub fn new(theta1: f64, theta2: f64, psi: f64) -> Self {
        Self {
            theta1,
            theta2,
            psi,
        }
    }
}

/// Two perfect cylinders of radius `r`, axes a distance `d` apart, `d ≫ r`.
///
/// `E`: `−1/(8π d² ln²(d/R)) (1 − 2/ln(d/R))`; `M`: `−(7/5π) R⁴/d⁶`.
pub fn cyl_pair_asym(r: f64, d: f64, pol: Polarization) -> f64 {
    match pol {
        Polarization::E => {
            let l = (d / r).ln();
            -(1.0 - 2.0 / l) / (8.0 * PI * d * d * l * l)
        }
        Polarization::M => -7.0 / (5.0 * PI) * r.powi(4) / d.powi(6),
    }
}

/// Perfect cylinder of radius `r` at height `h ≫ r` above a perfect plate.
///
/// `E`: `−1/(16π H² ln(H/R))`; `M`: `−(5/32π) R²/H⁴`.
pub fn cyl_plate_asym(r: f64, h: f64, pol: Polarization) -> f64 {
    match pol {
        Polarization::E => -1.0 / (16.0 * PI * h * h * (h / r).ln()),
        Polarization::M => -5.0 / (32.0 * PI) * r * r / h.powi(4),
    }
}

/// Material combinations with a closed-form cylinder–plate asymptote.
/// All permittivities and permeabilities are static values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricCylinderPlate {
    /// Dielectric cylinder with `μ = 1` above a dielectric plate.
    DielectricBoth {
        eps_cyl: f64,
        eps_plate: f64,
        mu_plate: f64,
    },
    DielectricCylinderPerfectPlate {
        eps_cyl: f64,
        mu_cyl: f64,
    },
    PerfectCylinderDielectricPlate {
        eps_plate: f64,
        mu_plate: f64,
    },
}

/// Leading large-`H` energy per unit length of a cylinder of radius `r` at
/// height `h` above a plate.
pub fn dielectric_cyl_plate_asym(
    variant: DielectricCylinderPlate,
    r: f64,
    h: f64,
) -> Result<f64> {
    Ok(match variant {
        DielectricCylinderPlate::DielectricBoth {
            eps_cyl,
            eps_plate,
            mu_plate,
        } => {
            let contrast = (eps_cyl - 1.0) / (eps_cyl + 1.0);
            let integral = unit_integral(|x| {
                let re = fresnel_coefficient(Polarization::E, eps_plate, mu_plate, x);
                let rm = fresnel_coefficient(Polarization::M, eps_plate, mu_plate, x);
                (7.0 + eps_cyl - 4.0 * x * x) * re - (3.0 + eps_cyl) * x * x * rm
            }, 1.0 / (eps_plate * mu_plate).sqrt())?;
            -3.0 * r * r / (128.0 * PI * h.powi(4)) * contrast * integral
        }
        DielectricCylinderPlate::DielectricCylinderPerfectPlate { eps_cyl, mu_cyl } => {
            -r * r / (32.0 * PI * h.powi(4)) * (eps_cyl - mu_cyl)
                * (9.0 + eps_cyl + mu_cyl + eps_cyl * mu_cyl)
                / ((1.0 + eps_cyl) * (1.0 + mu_cyl))
        }
        DielectricCylinderPlate::PerfectCylinderDielectricPlate {
            eps_plate,
            mu_plate,
        } => phi_e(eps_plate, mu_plate)? / (16.0 * PI * h * h * (r / h).ln()),
    })
}

/// `φ^E = ∫₀¹ dx/(1+x) [r^E(0,x) − x r^M(0,x)]` with static Fresnel
/// coefficients of the plate. Equals 1 for a perfect mirror.
pub fn phi_e(eps: f64, mu: f64) -> Result<f64> {
    if !(eps > 0.0 && mu > 0.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "static response must be positive, got eps = {eps}, mu = {mu}"
        )));
    }
    if eps.is_infinite() {
        return Ok(1.0);
    }
    unit_integral(
        |x| {
            let re = fresnel_coefficient(Polarization::E, eps, mu, x);
            let rm = fresnel_coefficient(Polarization::M, eps, mu, x);
            (re - x * rm) / (1.0 + x)
        },
        1.0 / (eps * mu).sqrt(),
    )
}

/// `∫₀¹ f` on panels refined geometrically towards `x = 0` down to
/// `feature`, the width of the Fresnel transition `x ~ 1/n`.
fn unit_integral(f: impl Fn(f64) -> f64, feature: f64) -> Result<f64> {
    let mut breaks = vec![1.0];
    let mut x = 0.25;
    while x > feature.min(1.0) * 0.25 {
        breaks.push(x);
        x *= 0.25;
    }
    breaks.push(0.0);
    let mut total = 0.0;
    for w in breaks.windows(2) {
        total += integrate_interval(|x| Ok(f(x)), w[1], w[0], 16, 1e-14, 1024)?.0;
    }
    Ok(total)
}

/// Casimir–Polder energy of two anisotropic dipolar objects a distance `d`
/// apart, `z` pointing from one to the other.
pub fn cp_two_objects(a: &PolarizabilityTensor, b: &PolarizabilityTensor, d: f64) -> f64 {
    let same = |x: &Matrix3, y: &Matrix3| {
        13.0 * (x[0][0] * y[0][0] + x[1][1] * y[1][1] + 2.0 * x[0][1] * y[0][1])
            + 20.0 * x[2][2] * y[2][2]
            - 30.0 * (x[0][2] * y[0][2] + x[1][2] * y[1][2])
    };
    let cross = |x: &Matrix3, y: &Matrix3| {
        -7.0 * (x[0][0] * y[1][1] + x[1][1] * y[0][0] - 2.0 * x[0][1] * y[0][1])
    };
    let bracket = same(&a.electric, &b.electric)
        + same(&a.magnetic, &b.magnetic)
        + cross(&a.electric, &b.magnetic)
        + cross(&b.electric, &a.magnetic);
    -bracket / (8.0 * PI * d.powi(7))
}

/// Uniaxial static polarizabilities with the symmetry axis normal to a wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialPolarizability {
    pub alpha_z: f64,
    pub alpha_par: f64,
    pub beta_z: f64,
    pub beta_par: f64,
}

impl AxialPolarizability {
    fn swapped(self) -> Self {
        Self {
            alpha_z: self.beta_z,
            alpha_par: self.beta_par,
            beta_z: self.alpha_z,
            beta_par: self.alpha_par,
        }
    }
}

/// Casimir–Polder energy of two identical objects at distance `d` in free
/// space.
pub fn cp_pair(p: AxialPolarizability, d: f64) -> f64 {
    let half = |p: AxialPolarizability| {
        33.0 * p.alpha_par.powi(2) + 13.0 * p.alpha_z.powi(2) - 14.0 * p.alpha_par * p.beta_z
    };
    -(half(p) + half(p.swapped())) / (8.0 * PI * d.powi(7))
}

/// `d`-dependent energy of two identical objects at distance `d`, both at
/// height `h` above a perfect wall: direct pair, pair with the image and
/// the three-body term.
pub fn cp_with_wall(p: AxialPolarizability, d: f64, h: f64) -> f64 {
    let big_d = d.hypot(2.0 * h);
    let l = d / big_d;
    let l2 = l * l;
    let diag_half = |p: AxialPolarizability| {
        let (az, ap) = (p.alpha_z, p.alpha_par);
        26.0 * ap * ap + 20.0 * az * az - 14.0 * l2 * (4.0 * ap * ap - 9.0 * ap * az + 5.0 * az * az)
            + 63.0 * l2 * l2 * (ap - az).powi(2)
            - 14.0 * (ap * p.beta_par * (1.0 - l2) + l2 * ap * p.beta_z)
    };
    let e_diag = -(diag_half(p) + diag_half(p.swapped())) / (8.0 * PI * big_d.powi(7));
    let poly = |c: &[f64]| c.iter().rev().fold(0.0, |acc, &v| acc * l + v);
    let e3 = 4.0 / (PI * d.powi(3) * big_d.powi(4) * (l + 1.0).powi(5))
        * (poly(&[-1.0, -5.0, 6.0, 20.0, 28.0, 15.0, 3.0])
            * (p.alpha_par.powi(2) - p.beta_par.powi(2))
            - poly(&[-1.0, -5.0, -10.0, 0.0, 24.0, 15.0, 3.0])
                * (p.alpha_z.powi(2) - p.beta_z.powi(2))
            + 4.0 * poly(&[0.0, 0.0, 1.0, 5.0, 1.0])
                * (p.alpha_z * p.beta_par - p.alpha_par * p.beta_z));
    cp_pair(p, d) + e_diag + e3
}

/// Large-`h` form of [`cp_with_wall`], exact through `h⁻⁶`.
pub fn cp_with_wall_large_h(p: AxialPolarizability, d: f64, h: f64) -> f64 {
    let term = |p: AxialPolarizability| {
        let (az, ap) = (p.alpha_z, p.alpha_par);
        (az * az - ap * ap) / (4.0 * d.powi(3) * h.powi(4))
            + (9.0 * ap * ap - az * az - 2.0 * ap * p.beta_z) / (8.0 * d * h.powi(6))
    };
    cp_pair(p, d) + (term(p) - term(p.swapped())) / PI
}

/// Regime of the quoted expansions of the sphere–sphere–wall force
/// functions `f_j(h)`, `h = H/d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WallRegime {
    LargeH,
    SmallH,
}

/// Truncated `f_6` and `f_8`. The two regimes are independent truncations
/// and do not join continuously.
pub fn sphere_wall_f_limits(j: u32, regime: WallRegime, h: f64) -> Result<f64> {
    Ok(match (j, regime) {
        (6, WallRegime::LargeH) => -1001.0 / 16.0 + 3.0 / (4.0 * h.powi(6)),
        (8, WallRegime::LargeH) => -71523.0 / 160.0 + 39.0 / (80.0 * h.powi(6)),
        (6, WallRegime::SmallH) => -791.0 / 8.0 + 6741.0 * h * h / 8.0,
        (8, WallRegime::SmallH) => -60939.0 / 80.0 + 582879.0 * h * h / 80.0,
        _ => {
            return Err(CasimirError::InvalidParameter(format!(
                "f_j is tabulated for j = 6 and 8 only, got {j}"
            )))
        }
    })
}

const ANGLE_EPS: f64 = 1e-12;

fn is_angle(x: f64, target: f64) -> bool {
    (x - target).abs() <= ANGLE_EPS
}

/// Two perfect prolate spheroids (needles of length `l`, radius `r ≪ l`)
/// at distance `d`.
///
/// Returns the `L⁶/ln²` term, except in the configurations where it
/// vanishes identically (one needle normal to the joining line and the
/// other along it or turned by `ψ = π/2`), where the `L⁴R²/ln` term is
/// returned. Angles within 1e-12 rad count as degenerate; close to, but
/// outside, that window the leading term is small and the next order is
/// not included.
pub fn prolate_pair_energy(angles: OrientationAngles, l: f64, r: f64, d: f64) -> f64 {
    let OrientationAngles {
        theta1,
        theta2,
        psi,
    } = angles;
    let log = (l / r).ln() - 1.0;
    let half_pi = 0.5 * PI;
    let degenerate = |t1: f64, t2: f64| {
        is_angle(t1.abs(), half_pi) && (is_angle(t2, 0.0) || is_angle(psi.abs(), half_pi))
    };
    let crossed = |t2: f64| {
        -l.powi(4) * r * r / (1152.0 * PI * d.powi(7) * log) * (73.0 + 7.0 * (2.0 * t2).cos())
    };
    if degenerate(theta1, theta2) {
        return crossed(theta2);
    }
    if degenerate(theta2, theta1) {
        return crossed(theta1);
    }
    let (s1, c1) = theta1.sin_cos();
    let (s2, c2) = theta2.sin_cos();
    let bracket = c1 * c1 * c2 * c2 + 13.0 / 20.0 * psi.cos().powi(2) * s1 * s1 * s2 * s2
        - 3.0 / 8.0 * psi.cos() * (2.0 * theta1).sin() * (2.0 * theta2).sin();
    -5.0 * l.powi(6) / (1152.0 * PI * log * log * d.powi(7)) * bracket
}

/// Two perfect oblate spheroids (disks of radius `r`) at distance `d`.
pub fn oblate_pair_energy(angles: OrientationAngles, r: f64, d: f64) -> f64 {
    let OrientationAngles {
        theta1,
        theta2,
        psi,
    } = angles;
    let (c1, c2) = ((2.0 * theta1).cos(), (2.0 * theta2).cos());
    let bracket = 765.0 - 5.0 * (c1 + c2)
        + 237.0 * c1 * c2
        + 372.0 * (2.0 * psi).cos() * theta1.sin().powi(2) * theta2.sin().powi(2)
        - 300.0 * psi.cos() * (2.0 * theta1).sin() * (2.0 * theta2).sin();
    -r.powi(6) / (144.0 * PI.powi(3) * d.powi(7)) * bracket
}

/// Shape perturbation `R → R + δ Y₂₀` of a perfect sphere, with its
/// symmetry axis at angle `theta` to the wall normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distortion {
    pub delta: f64,
    pub radius: f64,
    pub theta: f64,
}

/// Object at distance `d` from a perfect mirror: `−tr(α − β)/(8π d⁴)`, plus
/// the leading orientation-dependent term of a distorted sphere.
pub fn object_wall_energy(
    p: &PolarizabilityTensor,
    d: f64,
    distortion: Option<Distortion>,
) -> f64 {
    let tr = |m: &Matrix3| m[0][0] + m[1][1] + m[2][2];
    let leading = -(tr(&p.electric) - tr(&p.magnetic)) / (8.0 * PI * d.powi(4));
    leading + distortion.map_or(0.0, |s| distortion_energy(s, d))
}

/// `−1607/(640 √5 π^{3/2}) δR⁴/d⁶ cos 2θ`.
pub fn distortion_energy(s: Distortion, d: f64) -> f64 {
    -1607.0 / (640.0 * 5f64.sqrt() * PI.powf(1.5)) * s.delta * s.radius.powi(4) / d.powi(6)
        * (2.0 * s.theta).cos()
}

/// Proximity-force and curvature-correction formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PfaKind {
    /// Energy per length of a parabolic cylinder (radius of curvature `r`)
    /// at gap `h` from a plate: `−π³/(960√2) √(R/H⁵)`.
    Parabola { r: f64, h: f64 },
    /// `lim d³F` for spheres of radii `r` and `big_r` (negative `big_r`
    /// for a sphere inside a cavity): `−π³/360 · rR/(r+R)`.
    TwoSpheres { r: f64, big_r: f64 },
    /// Energy per length of two cylinders of radius `r` at surface gap
    /// `a`: `−(π³/1920) √(R/a⁵)`. Its derivative is the force
    /// `(5/2)(π³/1920) √(R/a⁷)` in magnitude.
    CylinderPair { r: f64, a: f64 },
    /// Cylinder of radius `r` at surface gap `a` from a plate:
    /// `−π³/(960√2) √(R/a⁵)`.
    CylinderPlate { r: f64, a: f64 },
    /// `r`-based PFA estimate of `θ₁(x)`, `x = r/R`.
    Theta1R { x: f64 },
    /// `R`-based PFA estimate of `θ₁(x)`.
    Theta1BigR { x: f64 },
    /// Fit `−(k₁x + k₂x/(1+x) + k₃)` with `k = (1.05, 1.08, 1.38)`.
    Theta1Fit { x: f64 },
}

pub const THETA1_FIT: [f64; 3] = [1.05, 1.08, 1.38];

pub fn pfa_suite(kind: PfaKind) -> f64 {
    let pi3 = PI.powi(3);
    match kind {
        PfaKind::Parabola { r, h } | PfaKind::CylinderPlate { r, a: h } => {
            -pi3 / (960.0 * 2f64.sqrt()) * (r / h.powi(5)).sqrt()
        }
        PfaKind::TwoSpheres { r, big_r } => -pi3 / 360.0 * r * big_r / (r + big_r),
        PfaKind::CylinderPair { r, a } => -pi3 / 1920.0 * (r / a.powi(5)).sqrt(),
        PfaKind::Theta1R { x } => -(x + x / (1.0 + x) + 3.0),
        PfaKind::Theta1BigR { x } => -(3.0 * x + x / (1.0 + x) + 1.0),
        PfaKind::Theta1Fit { x } => {
            let [k1, k2, k3] = THETA1_FIT;
            -(k1 * x + k2 * x / (1.0 + x) + k3)
        }
    }
}
