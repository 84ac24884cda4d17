//! Translation and basis-conversion elements between the two objects.
//!
//! Conventions. A plane wave below the cylinder axis is labelled by
//! `k_x = p sinh t` and decays as `e^{−γ|y|}` with `γ = p cosh t`,
//! `p = sqrt(κ² + k_z²)`. The outgoing cylindrical wave
//! `K_n(pρ) e^{inφ}` expands as `½ ∫ dt e^{i p x sinh t − p |y| cosh t}
//! (i e^{−t})^n` and the regular wave conversely picks up `(−i e^{−t})^n`.
//! After the constant phases `i^{n'−n}` are removed by a similarity
//! transformation, every matrix element is real.

use std::f64::consts::PI;

use crate::engine::quadrature::gauss_legendre;
use crate::error::{CasimirError, Result};
use crate::model::{eval_material, MaterialModel, Medium, Response};
use crate::scattering::{fresnel_coefficient, Polarization};
use crate::specfun::{bessel_k, ln_factorials, ln_k_sequence};

/// Cylinder-to-cylinder translation `K_{n+n'}(p d)`.
///
/// Underflow for large `p d` yields 0.
pub fn cyl_translation(n: i64, n_prime: i64, p: f64, d: f64) -> Result<f64> {
    let order = (n + n_prime).unsigned_abs() as usize;
    Ok(bessel_k(order, p * d)?.value)
}

/// Plane-wave propagation factor `exp(−sqrt(k⊥² + κ²) H)`.
pub fn plane_wave_propagator(k_perp: f64, kappa: f64, h: f64) -> f64 {
    (-(k_perp.hypot(kappa)) * h).exp()
}

/// Coefficient of the plane wave `k_x` in the expansion of the cylindrical
/// wave of order `n`: `((sqrt(p² + k_x²) − k_x)/p)^n = e^{−n t}`.
///
/// For a perfect cylinder in the `E`/`M` (TM_z/TE_z) basis the conversion
/// does not depend on polarization; `pol` is accepted for symmetry with the
/// dielectric case.
pub fn cyl_to_plane(n: i64, kx: f64, p: f64, _pol: Polarization) -> f64 {
    let t = (kx / p).asinh();
    (-(n as f64) * t).exp()
}

/// Reflection matrix of the plate in the `(E, M)` = (TM_z, TE_z) basis for
/// the plane wave `(κ, k_x, k_z)`; rows are reflected, columns incident
/// polarization.
///
/// With `c = γ k_z/(p k⊥)`, `s = κ k_x/(p k⊥)` (so `c² + s² = 1`):
/// `R_EE = s² r^M − c² r^E`, `R_MM = −c² r^M + s² r^E`,
/// `R_EM = c s (r^M + r^E) = −R_ME`. The antisymmetric off-diagonal keeps
/// `det R = r^M r^E` basis independent.
pub fn plate_reflection_z(rm: f64, re: f64, kappa: f64, kx: f64, kz: f64) -> [[f64; 2]; 2] {
    let p = kappa.hypot(kz);
    let k_perp = kx.hypot(kz);
    if k_perp == 0.0 {
        // normal incidence: pure TM_z ↔ s-wave
        return [[rm, 0.0], [0.0, re]];
    }
    let gamma = p.hypot(kx);
    let c = gamma * kz / (p * k_perp);
    let s = kappa * kx / (p * k_perp);
    let (c2, s2, cs) = (c * c, s * s, c * s);
    [
        [s2 * rm - c2 * re, cs * (rm + re)],
        [-cs * (rm + re), -c2 * rm + s2 * re],
    ]
}

/// Translation from the parabolic cylinder (focus at the origin, tilted by
/// `θ`) to the plane wave `(k_x, k_z)` at distance `d`, on the imaginary
/// axis. Returned as `(re, im)`.
///
/// `sqrt(i/(2k_y ν! √(2π))) tan^ν((φ+θ)/2) / cos((φ+θ)/2) e^{i k_y d}` with
/// `k_y = iγ`, `γ = sqrt(κ² + k_x² + k_z²)` and `tan φ = k_x/k_y`, i.e.
/// `φ = −iχ` with `k_x = q sinh χ`, `q = sqrt(κ² + k_z²)`.
pub fn parabola_plane_u(
    nu: usize,
    kx: f64,
    kz: f64,
    kappa: f64,
    d: f64,
    theta: f64,
) -> Result<(f64, f64)> {
    if !(kappa > 0.0 && d > 0.0) {
        return Err(CasimirError::InvalidParameter(format!(
            "parabola_plane_u needs kappa > 0 and d > 0, got {kappa}, {d}"
        )));
    }
    let q = kappa.hypot(kz);
    let gamma = q.hypot(kx);
    let chi = (kx / q).asinh();
    // tan((θ − iχ)/2) = (sin θ − i sinh χ)/(cos θ + cosh χ)
    let den = theta.cos() + chi.cosh();
    let (zr, zi) = (theta.sin() / den, -chi.sinh() / den);
    let w = zr.hypot(zi);
    let psi = zi.atan2(zr);
    // cos((θ − iχ)/2) = cos(θ/2)cosh(χ/2) + i sin(θ/2)sinh(χ/2)
    let (cr, ci) = (
        (0.5 * theta).cos() * (0.5 * chi).cosh(),
        (0.5 * theta).sin() * (0.5 * chi).sinh(),
    );
    let cabs2 = cr * cr + ci * ci;
    let ln_fact = ln_factorials(nu)[nu];
    let ln_w = if nu == 0 { 0.0 } else { nu as f64 * w.ln() };
    let modulus =
        (-0.5 * ((2.0 * gamma).ln() + ln_fact + 0.5 * (2.0 * PI).ln()) + ln_w - gamma * d).exp();
    // z^ν / c = modulus e^{iνψ} (cr − i ci)/|c|²
    let (pr, pi) = ((nu as f64 * psi).cos(), (nu as f64 * psi).sin());
    let re = modulus * (pr * cr + pi * ci) / cabs2;
    let im = modulus * (pi * cr - pr * ci) / cabs2;
    Ok((re, im))
}

/// `χ`-quadrature rule for the parabola–plate kernel: Gauss–Legendre on
/// `[0, χ_max]`, where `χ_max` is the point beyond the peak at which the
/// highest-power integrand `|w|^k e^{−2qd(cosh χ − 1)}/(cos θ + cosh χ)`,
/// `k = 2ν_max`, has fallen to 1e-16 of its maximum. Lower powers peak
/// earlier and are covered by the same range.
pub fn parabola_chi_rule(
    q: f64,
    d: f64,
    theta: f64,
    max_power: usize,
    nodes: usize,
) -> (Vec<f64>, Vec<f64>) {
    let (st, ct) = theta.sin_cos();
    let k = max_power as f64;
    let qd = q * d;
    let g = |c: f64| {
        let den = ct + c.cosh();
        let ln_w = if k == 0.0 {
            0.0
        } else {
            0.5 * k * (st * st + c.sinh().powi(2)).ln() - k * den.ln()
        };
        ln_w - 2.0 * qd * (c.cosh() - 1.0) - den.ln()
    };
    // the θ = 0 stationary point bounds the peak from the right
    let right = (k / (2.0 * qd)).sqrt().asinh().max(1e-3);
    let peak = golden_max(&g, 0.0, 2.0 * right + 1.0);
    let target = g(peak) - 36.8;
    let mut hi = peak.max(1e-3);
    while g(hi) > target {
        hi *= 2.0;
    }
    let mut lo = peak;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let chi_max = hi;
    let rule = gauss_legendre(nodes);
    let half = 0.5 * chi_max;
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(x, w)| (half * (x + 1.0), half * w))
        .unzip()
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut e = a + r * (b - a);
    let (mut fc, mut fe) = (f(c), f(e));
    for _ in 0..100 {
        if fc > fe {
            b = e;
            e = c;
            fe = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = e;
            fc = fe;
            e = a + r * (b - a);
            fe = f(e);
        }
    }
    0.5 * (a + b)
}

/// The `k_x`-integrated pair `∫ dk_x U_ν(d, θ) U_ν'(d, −θ)` in real form.
///
/// Returns `K̃` with
/// `∫ dk_x U_ν(θ) U_ν'(−θ) = (−1)^{ν'} e^{−2qd} K̃_{νν'} / sqrt(ν! ν'!)`,
/// `K̃_{νν'} = (2/√(2π)) ∫_0^∞ dχ w^{ν+ν'} cos((ν−ν')ψ)
/// e^{−2qd(cosh χ − 1)} / (cos θ + cosh χ)`, where
/// `w e^{iψ} = (sin θ + i sinh χ)/(cos θ + cosh χ)`.
/// The sign `(−1)^{ν'}` cancels against the sign of the parabolic
/// amplitudes. Row-major, dimension `ν_max + 1`.
pub fn parabola_pair_kernel(
    q: f64,
    d: f64,
    theta: f64,
    nu_max: usize,
    chi_nodes: usize,
) -> Vec<f64> {
    parabola_scaled_kernel(q, d, theta, &vec![0.0; nu_max + 1], chi_nodes)
}

/// `exp(s_ν + s_ν') K̃_{νν'}` for `ν, ν' = 0..s.len()`, evaluated in log
/// form so that huge scale factors against tiny kernel entries neither
/// overflow nor underflow. Row-major.
pub fn parabola_scaled_kernel(
    q: f64,
    d: f64,
    theta: f64,
    ln_scale: &[f64],
    chi_nodes: usize,
) -> Vec<f64> {
    let dim = ln_scale.len();
    let nu_max = dim.saturating_sub(1);
    let (chi, wts) = parabola_chi_rule(q, d, theta, 2 * nu_max, chi_nodes);
    let ln_norm = (2.0 / (2.0 * PI).sqrt()).ln();
    let (st, ct) = theta.sin_cos();
    let ln_weight: Vec<f64> = chi
        .iter()
        .zip(&wts)
        .map(|(&c, &w)| {
            let ch = c.cosh();
            ln_norm + w.ln() - 2.0 * q * d * (ch - 1.0) - (ct + ch).ln()
        })
        .collect();
    let power = |nu: usize, ln_abs: f64| if nu == 0 { 0.0 } else { nu as f64 * ln_abs };
    let mut out = vec![0.0; dim * dim];
    if theta == 0.0 {
        // w = tanh(χ/2), ψ = π/2: depends on ν+ν' and the parity of ν−ν'
        let ln_w: Vec<f64> = chi.iter().map(|c| (0.5 * c).tanh().ln()).collect();
        let ln_sums: Vec<f64> = (0..2 * dim.max(1) - 1)
            .map(|k| {
                let terms = ln_w.iter().zip(&ln_weight).map(|(&lw, &lg)| power(k, lw) + lg);
                log_sum_exp(terms)
            })
            .collect();
        for i in 0..dim {
            for j in 0..dim {
                let diff = i.abs_diff(j);
                if diff % 2 == 0 {
                    let sign = if (diff / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    out[i * dim + j] = sign * (ln_scale[i] + ln_scale[j] + ln_sums[i + j]).exp();
                }
            }
        }
        return out;
    }
    let n = chi.len();
    let mut a = nalgebra::DMatrix::<f64>::zeros(dim, n);
    let mut b = nalgebra::DMatrix::<f64>::zeros(dim, n);
    for (k, &c) in chi.iter().enumerate() {
        let den = ct + c.cosh();
        let (zr, zi) = (st / den, c.sinh() / den);
        let ln_z = zr.hypot(zi).ln();
        let phase = zi.atan2(zr);
        for nu in 0..dim {
            let m = (ln_scale[nu] + power(nu, ln_z) + 0.5 * ln_weight[k]).exp();
            let (s, co) = (nu as f64 * phase).sin_cos();
            a[(nu, k)] = m * co;
            b[(nu, k)] = m * s;
        }
    }
    let k = &a * a.transpose() + &b * b.transpose();
    for i in 0..dim {
        for j in 0..dim {
            out[i * dim + j] = k[(i, j)];
        }
    }
    out
}

fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Plate coupling for the cylinder–plate round trip:
/// `W^{PP'}_m = ½ ∫ dt ρ_{PP'}(t) e^{−m t − 2pH cosh t}`, stored as
/// `ln K_{|m|}(2pH)` and the ratio `W^{PP'}_m / K_{|m|}(2pH)`.
///
/// `ρ` is the plate reflection in the z-basis with the perfect-mirror signs
/// folded in, so that for a perfect plate `W^{EE} = −K_m`, `W^{MM} = K_m`
/// and the mixed blocks vanish.
#[derive(Debug, Clone)]
pub struct PlateCoupling {
    pub m_max: usize,
    /// `ln K_m(2pH)` for `m = 0..=m_max`
    pub ln_k: Vec<f64>,
    /// `[P][P']`, each indexed by `m + m_max` for `m ∈ [−m_max, m_max]`
    pub ratio: [[Vec<f64>; 2]; 2],
}

impl PlateCoupling {
    /// Perfectly reflecting plate; independent of the `k_z` direction.
    pub fn perfect(m_max: usize, p: f64, h: f64) -> Result<Self> {
        let ln_k = ln_k_sequence(m_max, 2.0 * p * h)?;
        let len = 2 * m_max + 1;
        Ok(Self {
            m_max,
            ln_k,
            ratio: [
                [vec![-1.0; len], vec![0.0; len]],
                [vec![0.0; len], vec![1.0; len]],
            ],
        })
    }

    /// Dielectric plate at imaginary frequency `κ`; `κ_M = n_M κ` is the
    /// wavenumber in the medium and `p = sqrt(κ_M² + k_z²)`.
    pub fn dielectric(
        m_max: usize,
        kappa: f64,
        kappa_m: f64,
        kz: f64,
        h: f64,
        plate: &MaterialModel,
        medium: &Medium,
    ) -> Result<Self> {
        let p = kappa_m.hypot(kz);
        let (eps, mu) = match eval_material(plate, kappa)? {
            Response::PerfectConductor => return Self::perfect(m_max, p, h),
            Response::Dielectric { epsilon, mu } => {
                if medium.is_vacuum() {
                    (epsilon, mu)
                } else {
                    let (em, mm) = medium.response(kappa)?;
                    (epsilon / em, mu / mm)
                }
            }
        };
        let x = 2.0 * p * h;
        let ln_k = ln_k_sequence(m_max, x)?;
        let len = 2 * m_max + 1;
        let mut ratio = [
            [vec![0.0; len], vec![0.0; len]],
            [vec![0.0; len], vec![0.0; len]],
        ];
        let rule = gauss_legendre(16);
        // scale of the polarization-mixing feature near k_x = 0
        let feature = (kz.abs() / p).asinh().max(1e-8);
        for m in 0..=m_max {
            let mf = m as f64;
            let t_star = -(mf / x).asinh();
            let g = |t: f64| -mf * t - x * t.cosh();
            let g_star = g(t_star);
            let lo = solve_drop(&g, t_star, -1.0, g_star - 46.0);
            let hi = solve_drop(&g, t_star, 1.0, g_star - 46.0);
            let sigma = (mf * mf + x * x).powf(-0.25).min(0.5);
            let breaks = panel_breaks(lo, hi, sigma, feature);
            let mut acc = [[0.0f64; 2]; 2];
            let mut norm = 0.0;
            for w in breaks.windows(2) {
                let (a, b) = (w[0], w[1]);
                let half = 0.5 * (b - a);
                let mid = 0.5 * (a + b);
                for (xi, wi) in rule.nodes.iter().zip(&rule.weights) {
                    let t = mid + half * xi;
                    let e = (g(t) - g_star).exp() * wi * half;
                    let kx = p * t.sinh();
                    let gamma = p * t.cosh();
                    let xf = kappa_m / gamma;
                    let rm = fresnel_coefficient(Polarization::M, eps, mu, xf);
                    let re = fresnel_coefficient(Polarization::E, eps, mu, xf);
                    let r = plate_reflection_z(rm, re, kappa_m, kx, kz);
                    norm += e;
                    for (a, row) in acc.iter_mut().zip(&r) {
                        for (v, rv) in a.iter_mut().zip(row) {
                            *v += e * rv;
                        }
                    }
                }
            }
            for pi in 0..2 {
                for pj in 0..2 {
                    let v = acc[pi][pj] / norm;
                    ratio[pi][pj][m_max + m] = v;
                    // t → −t flips k_x: diagonal even, mixed odd
                    let parity = if pi == pj { 1.0 } else { -1.0 };
                    ratio[pi][pj][m_max - m] = parity * v;
                }
            }
        }
        Ok(Self { m_max, ln_k, ratio })
    }

    /// `W^{PP'}_m` split as `(ln K_{|m|}, ratio)`.
    pub fn element(&self, pol: Polarization, pol2: Polarization, m: i64) -> (f64, f64) {
        let idx = |p: Polarization| match p {
            Polarization::E => 0,
            Polarization::M => 1,
        };
        let k = m.unsigned_abs() as usize;
        (
            self.ln_k[k],
            self.ratio[idx(pol)][idx(pol2)][(m + self.m_max as i64) as usize],
        )
    }
}

/// First `t` from `start` in direction `dir` where the concave `g` drops to
/// `level`.
fn solve_drop(g: &impl Fn(f64) -> f64, start: f64, dir: f64, level: f64) -> f64 {
    let mut step = 0.25;
    let mut inside = start;
    let mut outside = start + dir * step;
    while g(outside) > level {
        inside = outside;
        step *= 2.0;
        outside = start + dir * step;
    }
    for _ in 0..60 {
        let mid = 0.5 * (inside + outside);
        if g(mid) > level {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    outside
}

/// Panel boundaries on `[lo, hi]` with widths at most `width`, refined
/// geometrically toward `t = 0` down to `feature`.
fn panel_breaks(lo: f64, hi: f64, width: f64, feature: f64) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    let n = ((hi - lo) / width).ceil() as usize;
    for i in 1..n {
        pts.push(lo + (hi - lo) * i as f64 / n as f64);
    }
    if lo < 0.0 && hi > 0.0 {
        pts.push(0.0);
        let mut s = feature;
        while s < width {
            for v in [-s, s] {
                if v > lo && v < hi {
                    pts.push(v);
                }
            }
            s *= 3.0;
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    pts
}
