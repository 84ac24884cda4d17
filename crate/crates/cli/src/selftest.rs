//! Acceptance suite: one report per criterion, each made of named checks.

use std::f64::consts::PI;
use std::ffi::OsString;

use casimir_core::asymptotics::*;
use casimir_core::engine::{
    aitken, logdet_identity_minus, logdet_identity_plus, with_threads, OrderStep, QuadratureSpec,
    TruncationSpec,
};
use casimir_core::geometries::{
    cylinder_plate_energy, parabola_plate_energy, two_cylinders_energy, PolarizationSelector,
    SolveOptions,
};
use casimir_core::model::{diag, MaterialModel, Medium, PolarizabilityTensor};
use casimir_core::scattering::Polarization;
use casimir_core::specfun::{ln_bessel_i, ln_bessel_k};
use casimir_core::stability::{
    classify, kappa_samples, laplacian_check, verdict, MaterialClass, Stencil, Verdict,
};
use casimir_core::Result;
use nalgebra::DMatrix;

pub const CRITERIA: [u8; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

/// π²/1440: half the parallel-plate coefficient.
pub const HALF_PARALLEL: f64 = PI * PI / 1440.0;
pub const C_PERP: f64 = 0.0067415;
pub const C_EDGE: f64 = 0.0009;

#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    /// Informational checks are reported but do not decide the criterion.
    pub required: bool,
    pub detail: String,
}

impl Check {
    fn run(label: &str, f: impl FnOnce() -> Result<(bool, String)>) -> Self {
        let (passed, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        Self {
            label: label.into(),
            passed,
            required: true,
            detail,
        }
    }

    fn optional(mut self) -> Self {
        self.required = false;
        self
    }

    pub fn line(&self) -> String {
        let mark = match (self.passed, self.required) {
            (true, _) => "ok",
            (false, true) => "FAIL",
            (false, false) => "miss",
        };
        let tag = if self.required { "" } else { " (informational)" };
        format!("[{mark}] {}{tag}: {}", self.label, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.passed)
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!("criterion {} {status} {}", self.id, self.title)
    }
}

pub fn title(id: u8) -> &'static str {
    match id {
        1 => "knife-edge constant",
        2 => "parallel-plate recovery of c(theta)",
        3 => "proximity limits",
        4 => "asymptotic matching",
        5 => "closed-form exactness",
        6 => "consistency ladder",
        7 => "instability theorem",
        8 => "numerical hygiene",
        _ => "unknown",
    }
}

pub fn run_criterion(id: u8) -> Report {
    let checks = match id {
        1 => vec![knife_edge()],
        2 => tilted_half_plane(),
        3 => vec![parabola_pfa(), cylinder_pair_pfa()],
        4 => vec![cylinder_pair_far(), cylinder_plate_far()],
        5 => closed_forms(),
        6 => wall_ladder(),
        7 => vec![cylinder_laplacian(), power_law_laplacian(), truth_table()],
        8 => hygiene(),
        _ => vec![Check::run("criterion", || Ok((false, format!("no criterion {id}"))))],
    };
    Report {
        id,
        title: title(id),
        checks,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn at_order(order: usize) -> SolveOptions {
    SolveOptions::default()
        .with_order(order)
        .with_quadrature(QuadratureSpec::new(1.0).with_tolerance(1e-6))
}

/// Δ² limit of the last three values, or the last value when the sequence
/// is not geometric.
fn extrapolate(v: &[f64]) -> f64 {
    let n = v.len();
    aitken(v[n - 3], v[n - 2], v[n - 1]).unwrap_or(v[n - 1])
}

/// `C(θ) = −E H²` for a half-plane (R = 0) at H = 1, extrapolated from the
/// given orders.
fn half_plane_coefficient(theta: f64, orders: &[usize]) -> Result<(f64, f64)> {
    let mut v = Vec::new();
    for &n in orders {
        v.push(-parabola_plate_energy(0.0, 1.0, theta, &at_order(n))?.value);
    }
    Ok((extrapolate(&v), v[v.len() - 1]))
}

fn knife_edge() -> Check {
    Check::run("C_perp from nu_max = 25, 50, 100 with extrapolation", || {
        let (c, raw) = half_plane_coefficient(0.0, &[25, 50, 100])?;
        let r = rel(c, C_PERP);
        Ok((
            r <= 5e-3,
            format!("C = {c:.7} (order 100: {raw:.7}), target {C_PERP}, rel {r:.1e} <= 5e-3"),
        ))
    })
}

fn tilted_half_plane() -> Vec<Check> {
    let degrees = [80.0, 82.0, 84.0, 86.0, 88.0];
    let mut values: Vec<f64> = Vec::new();
    let computed = Check::run("c(theta) = cos(theta) C(theta), orders 80/160/320", || {
        for deg in degrees {
            let theta: f64 = f64::to_radians(deg);
            values.push(theta.cos() * half_plane_coefficient(theta, &[80, 160, 320])?.0);
        }
        let list: Vec<String> = degrees
            .iter()
            .zip(&values)
            .map(|(d, c)| format!("{d}:{c:.7}"))
            .collect();
        let monotone = values.windows(2).all(|w| w[1] > w[0]);
        Ok((monotone, format!("increasing = {monotone} [{}]", list.join(" "))))
    });
    let mut checks = vec![computed];
    if values.len() != degrees.len() {
        return checks;
    }
    let last = values[values.len() - 1];
    checks.push(Check::run("c(88 deg) against pi^2/1440", || {
        let r = rel(last, HALF_PARALLEL);
        Ok((r <= 0.05, format!("{last:.7} vs {HALF_PARALLEL:.7}, rel {r:.2e} <= 5e-2")))
    }));
    checks.push(
        Check::run("edge coefficient, stretch goal", || {
            // least squares for c = c_par/2 + (theta − pi/2) c_edge
            let (mut num, mut den) = (0.0, 0.0);
            for (d, c) in degrees.iter().zip(&values) {
                let x = d.to_radians() - 0.5 * PI;
                num += (c - HALF_PARALLEL) * x;
                den += x * x;
            }
            let edge = num / den;
            let r = rel(edge, C_EDGE);
            Ok((r <= 0.5, format!("c_edge = {edge:.5} vs {C_EDGE}, rel {r:.2} <= 0.5")))
        })
        .optional(),
    );
    checks
}

fn parabola_pfa() -> Check {
    Check::run("parabola at H/R = 0.01 against PFA", || {
        let (r, h) = (1.0, 0.01);
        let mut v = Vec::new();
        for n in [80, 160, 320, 640] {
            v.push(parabola_plate_energy(r, h + 0.5 * r, 0.0, &at_order(n))?.value);
        }
        let e = extrapolate(&v);
        let ratio = e / pfa_suite(PfaKind::Parabola { r, h });
        let dev = (ratio - 1.0).abs();
        Ok((
            dev <= 0.05,
            format!("E/E_pfa = {ratio:.4} (orders 160/320/640 extrapolated), |1 - ratio| <= 5e-2"),
        ))
    })
}

fn cylinder_pair_pfa() -> Check {
    Check::run("two cylinders at (d-2R)/R = 0.1, n_max >= 40", || {
        let opts = SolveOptions::default().with_truncation(
            TruncationSpec::new(40, 1e-6)
                .with_step(OrderStep::Increment(8))
                .with_max_order(512),
        );
        let e = two_cylinders_energy(1.0, 2.1, &opts)?;
        let ratio = e.value / pfa_suite(PfaKind::CylinderPair { r: 1.0, a: 0.1 });
        let dev = (ratio - 1.0).abs();
        Ok((
            dev <= 0.15,
            format!("E/E_pfa = {ratio:.4} at n_max = {}, |1 - ratio| <= 0.15", e.truncation_order),
        ))
    })
}

fn cylinder_pair_far() -> Check {
    Check::run("two cylinders, E mode, d/R = 1000", || {
        let opts = SolveOptions::default().with_polarization(PolarizationSelector::E);
        let e = two_cylinders_energy(1.0, 1000.0, &opts)?.value;
        let a = cyl_pair_asym(1.0, 1000.0, Polarization::E);
        let r = rel(e, a);
        Ok((r <= 0.05, format!("E/E_asym = {:.4}, rel {r:.3} <= 0.05", e / a)))
    })
}

fn cylinder_plate_far() -> Check {
    Check::run("cylinder and plate, E mode, H/R = 100", || {
        let opts = SolveOptions::default().with_polarization(PolarizationSelector::E);
        let e = cylinder_plate_energy(1.0, 100.0, &opts)?.value;
        let a = cyl_plate_asym(1.0, 100.0, Polarization::E);
        let r = rel(e, a);
        Ok((r <= 0.10, format!("E/E_asym = {:.4}, rel {r:.3} <= 0.10", e / a)))
    })
}

fn worst(pairs: &[(f64, f64)]) -> f64 {
    pairs.iter().map(|&(a, b)| rel(a, b)).fold(0.0, f64::max)
}

fn exact(label: &str, pairs: Vec<(f64, f64)>) -> Check {
    Check::run(label, || {
        let w = worst(&pairs);
        Ok((w <= 1e-12, format!("max rel {w:.1e} <= 1e-12 over {} values", pairs.len())))
    })
}

fn closed_forms() -> Vec<Check> {
    let pi3 = PI.powi(3);
    let h = 0.5 * PI;
    let d: f64 = 3.0;
    let oblate = |t1, t2| -oblate_pair_energy(OrientationAngles::new(t1, t2, 0.0), 1.0, d) * d.powi(7);
    // needle: α = a n nᵀ along the joining line
    let (l, r) = (100.0f64, 1.0);
    let lg = (l / r).ln() - 1.0;
    let a = l.powi(3) / (24.0 * lg);
    let needle = PolarizabilityTensor {
        electric: diag([0.0, 0.0, a]),
        magnetic: diag([0.0; 3]),
    };
    let prolate = prolate_pair_energy(OrientationAngles::new(0.0, 0.0, 0.0), l, r, d);
    let sphere = PolarizabilityTensor::isotropic(1.0, -0.5);
    let sphere_pair = cp_two_objects(&sphere, &sphere, d) * d.powi(7);
    let pfa = |k| pfa_suite(k);
    let f = |j, regime, h| sphere_wall_f_limits(j, regime, h).unwrap_or(f64::NAN);
    vec![
        exact(
            "oblate 173/18pi^3, 62/9pi^3, 11/3pi^3",
            vec![
                (oblate(h, h), 173.0 / (18.0 * pi3)),
                (oblate(0.0, 0.0), 62.0 / (9.0 * pi3)),
                (oblate(h, 0.0), 11.0 / (3.0 * pi3)),
            ],
        ),
        exact(
            "prolate parallel 5/1152pi",
            vec![
                (prolate * d.powi(7) * lg * lg / l.powi(6), -5.0 / (1152.0 * PI)),
                (prolate, cp_two_objects(&needle, &needle, d)),
            ],
        ),
        exact("sphere pair 143/16pi", vec![(sphere_pair, -143.0 / (16.0 * PI))]),
        Check::run("phi_E in the perfect-plate limit", || {
            let v = phi_e(f64::INFINITY, 1.0)?;
            Ok((v == 1.0, format!("phi_E(inf, 1) = {v}")))
        }),
        exact(
            "PFA and theta_1 spot values",
            vec![
                (pfa(PfaKind::Parabola { r: 1.0, h: 1.0 }), -pi3 / (960.0 * 2f64.sqrt())),
                (pfa(PfaKind::CylinderPlate { r: 4.0, a: 1.0 }), -pi3 / (480.0 * 2f64.sqrt())),
                (pfa(PfaKind::CylinderPair { r: 1.0, a: 1.0 }), -pi3 / 1920.0),
                (pfa(PfaKind::TwoSpheres { r: 1.0, big_r: 1.0 }), -pi3 / 720.0),
                (pfa(PfaKind::Theta1R { x: 0.0 }), -3.0),
                (pfa(PfaKind::Theta1BigR { x: 0.0 }), -1.0),
                (pfa(PfaKind::Theta1R { x: 1.0 }), -4.5),
                (pfa(PfaKind::Theta1BigR { x: 1.0 }), -4.5),
                (pfa(PfaKind::Theta1Fit { x: 1.0 }), -(1.05 + 0.54 + 1.38)),
            ],
        ),
        exact(
            "f_6, f_8 limits",
            vec![
                (f(6, WallRegime::LargeH, 1e10), -1001.0 / 16.0),
                (f(8, WallRegime::LargeH, 1e10), -71523.0 / 160.0),
                (f(6, WallRegime::SmallH, 0.0), -791.0 / 8.0),
                (f(8, WallRegime::SmallH, 0.0), -60939.0 / 80.0),
            ],
        ),
    ]
}

fn wall_ladder() -> Vec<Check> {
    let p = AxialPolarizability {
        alpha_z: 1.0,
        alpha_par: 0.8,
        beta_z: -0.5,
        beta_par: -0.3,
    };
    let image = AxialPolarizability {
        alpha_z: 2.0 * p.alpha_z,
        alpha_par: 0.0,
        beta_z: 0.0,
        beta_par: 2.0 * p.beta_par,
    };
    let d = 1.0;
    let near = |h: f64| cp_with_wall(p, d, h * d);
    vec![
        Check::run("H -> infinity reaches the free pair", || {
            let r = rel(cp_with_wall(p, d, 5e3), cp_pair(p, d));
            Ok((r <= 1e-10, format!("H/d = 5e3: rel {r:.1e} <= 1e-10")))
        }),
        Check::run("H << d equals the image substitution", || {
            let r = rel(near(1e-4), cp_pair(image, d));
            Ok((r <= 1e-8, format!("H/d = 1e-4: rel {r:.2e} <= 1e-8")))
        }),
        Check::run("approach to the image rule is O((H/d)^2)", || {
            let ratio = rel(near(1e-4), cp_pair(image, d)) / rel(near(5e-5), cp_pair(image, d));
            let limit = (4.0 * near(5e-5) - near(1e-4)) / 3.0;
            let r = rel(limit, cp_pair(image, d));
            Ok((
                (ratio - 4.0).abs() < 1e-3 && r < 1e-12,
                format!("deviation ratio for halved H = {ratio:.4}, h^2-extrapolated rel {r:.1e}"),
            ))
        })
        .optional(),
    ]
}

fn cylinder_laplacian() -> Check {
    Check::run("transverse Laplacian of the two-cylinder energy", || {
        let mut opts = SolveOptions::default()
            .with_order(24)
            .with_quadrature(QuadratureSpec::new(1.0).with_nodes(96));
        opts.fixed_nodes = true;
        let energy = |x: [f64; 3]| Ok(two_cylinders_energy(1.0, x[0].hypot(x[1]), &opts)?.value);
        let mut parts = Vec::new();
        let mut ok = true;
        for d in [3.0, 5.0, 10.0] {
            let noise = 1e-12 * energy([d, 0.0, 0.0])?.abs();
            let lap = laplacian_check(energy, [d, 0.0, 0.0], 0.02 * d, Stencil::Transverse, noise)?;
            ok &= lap <= 0.0;
            parts.push(format!("d/R={d}: {lap:.3e}"));
        }
        Ok((ok, format!("{} (all <= 0)", parts.join(", "))))
    })
}

fn power_law_laplacian() -> Check {
    Check::run("Laplacian of -C/r^7", || {
        let c = 1.7;
        let energy = |p: [f64; 3]| Ok(-c / (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).powf(3.5));
        let r = 3.0f64;
        let lap = laplacian_check(energy, [1.0, 2.0, 2.0], 1e-3 * r, Stencil::Full, 0.0)?;
        let e = rel(lap, -42.0 * c / r.powi(9));
        Ok((e <= 0.01, format!("rel {e:.1e} <= 1e-2 against -42C/r^9")))
    })
}

fn truth_table() -> Check {
    Check::run("classification and verdict table", || {
        let k = kappa_samples(1.0);
        let vac = Medium::vacuum();
        let fluid = |e: f64| Medium::new(MaterialModel::constant(e, 1.0)?);
        let c = |eps: f64, m: &Medium| classify(&MaterialModel::constant(eps, 1.0)?, m, &k);
        use MaterialClass::*;
        use Verdict::*;
        let rows = [
            (verdict(&[c(2.0, &vac)?, c(3.0, &vac)?]), StableEquilibriumExcluded),
            (verdict(&[c(1.0, &fluid(2.0)?)?, c(1.5, &fluid(2.0)?)?]), StableEquilibriumExcluded),
            (verdict(&[c(2.0, &fluid(3.0)?)?, c(4.0, &fluid(3.0)?)?]), NotExcluded),
            (
                verdict(&[classify(&MaterialModel::PerfectConductor, &vac, &k)?, c(2.0, &vac)?]),
                StableEquilibriumExcluded,
            ),
        ];
        let classes = [
            (c(2.0, &vac)?, PositivePotential),
            (c(1.0, &fluid(2.0)?)?, NegativePotential),
            (c(2.0, &fluid(2.0)?)?, Indeterminate),
            (classify(&MaterialModel::constant(3.0, 2.0)?, &vac, &k)?, Indeterminate),
        ];
        let ok = rows.iter().all(|(a, b)| a == b) && classes.iter().all(|(a, b)| a == b);
        Ok((ok, format!("{} verdicts and {} classes reproduced", rows.len(), classes.len())))
    })
}

fn hygiene() -> Vec<Check> {
    vec![
        bessel_wronskian(),
        bessel_recurrence(),
        logdet_oracle(),
        sweeps_negative_and_monotone(),
        csv_determinism(),
    ]
}

const ORDERS: [usize; 9] = [0, 1, 2, 5, 10, 20, 50, 100, 200];
const ARGS: [f64; 7] = [0.01, 0.1, 1.0, 5.0, 20.0, 100.0, 500.0];

fn bessel_wronskian() -> Check {
    Check::run("Wronskian I_n K_n' - I_n' K_n = -1/x", || {
        let mut w: f64 = 0.0;
        for n in ORDERS {
            for x in ARGS {
                let (i, k) = (ln_bessel_i(n, x)?, ln_bessel_k(n, x)?);
                // x I K (K'/K − I'/I) = −1
                let v = (i.ln_value + k.ln_value + x.ln()).exp() * (k.log_derivative - i.log_derivative);
                w = w.max((v + 1.0).abs());
            }
        }
        Ok((w <= 1e-11, format!("max deviation {w:.1e} <= 1e-11")))
    })
}

fn bessel_recurrence() -> Check {
    Check::run("three-term recurrences for I_n and K_n", || {
        let mut w: f64 = 0.0;
        for n in ORDERS.iter().filter(|&&n| n > 0) {
            for x in ARGS {
                let li = |m| ln_bessel_i(m, x).map(|b| b.ln_value);
                let lk = |m| ln_bessel_k(m, x).map(|b| b.ln_value);
                let t = 2.0 * *n as f64 / x;
                // I_{n−1} − I_{n+1} = (2n/x) I_n and K_{n+1} − K_{n−1} = (2n/x) K_n
                let i = (li(n - 1)? - li(*n)?).exp() - (li(n + 1)? - li(*n)?).exp();
                let k = (lk(n + 1)? - lk(*n)?).exp() - (lk(n - 1)? - lk(*n)?).exp();
                w = w.max(rel(i, t)).max(rel(k, t));
            }
        }
        Ok((w <= 1e-11, format!("max rel residual {w:.1e} <= 1e-11")))
    })
}

/// `Q diag(λ) Qᵀ` with a Householder reflector `Q`.
fn reflected(lambda: &[f64]) -> DMatrix<f64> {
    let n = lambda.len();
    let v: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * i as f64 - 0.05 * (i * i) as f64).collect();
    let vv: f64 = v.iter().map(|x| x * x).sum();
    let q = DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(i == j)) - 2.0 * v[i] * v[j] / vv);
    &q * DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(lambda)) * q.transpose()
}

fn logdet_oracle() -> Check {
    Check::run("ln det(I -+ M) against eigenvalues", || {
        let mut w: f64 = 0.0;
        for (n, scale) in [(5, 0.9), (12, 0.5), (30, 0.99), (8, 1e-3), (20, 1e-7)] {
            let lambda: Vec<f64> = (0..n)
                .map(|i| scale * ((i as f64 * 1.3).sin()))
                .collect();
            let m = reflected(&lambda);
            let minus: f64 = lambda.iter().map(|l| (-l).ln_1p()).sum();
            let plus: f64 = lambda.iter().map(|l| l.ln_1p()).sum();
            w = w
                .max(rel(logdet_identity_minus(&m)?, minus))
                .max(rel(logdet_identity_plus(&m)?, plus));
        }
        Ok((w <= 1e-10, format!("max rel {w:.1e} <= 1e-10")))
    })
}

fn negative_and_monotone(v: &[f64]) -> bool {
    v.iter().all(|&e| e < 0.0) && v.windows(2).all(|w| w[1].abs() < w[0].abs())
}

fn sweeps_negative_and_monotone() -> Check {
    Check::run("energies negative and monotone on sweep grids", || {
        let opts = SolveOptions::default();
        let mut pair = Vec::new();
        for d in [2.2, 2.5, 3.0, 4.0, 6.0, 10.0] {
            pair.push(two_cylinders_energy(1.0, d, &opts)?.value);
        }
        let mut plate = Vec::new();
        for h in [1.1, 1.25, 1.5, 2.0, 4.0, 10.0] {
            plate.push(cylinder_plate_energy(1.0, h, &opts)?.value);
        }
        let mut parabola = Vec::new();
        for h in [0.25, 0.5, 1.0, 2.0] {
            parabola.push(parabola_plate_energy(1.0, h + 0.5, 0.0, &at_order(24))?.value);
        }
        let flags = [
            negative_and_monotone(&pair),
            negative_and_monotone(&plate),
            negative_and_monotone(&parabola),
        ];
        Ok((
            flags.iter().all(|&f| f),
            format!("cylinders {}, cylinder-plate {}, parabola-plate {}", flags[0], flags[1], flags[2]),
        ))
    })
}

fn csv_for(threads: usize, args: &[&str]) -> (i32, Vec<u8>) {
    let argv: Vec<OsString> = std::iter::once("casimir-scatter")
        .chain(args.iter().copied())
        .map(OsString::from)
        .collect();
    with_threads(threads, || {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = crate::run(&argv, &mut out, &mut err);
        (code, out)
    })
}

fn csv_determinism() -> Check {
    Check::run("CSV bit-identical across worker counts", || {
        let runs: [&[&str]; 2] = [
            &["cyl-cyl", "--sweep", "d", "--from", "2.5", "--to", "4", "--points", "3"],
            &["parabola-plate", "--R", "1", "--H", "0.5", "--theta", "20", "--order", "16"],
        ];
        let mut same = true;
        let mut bytes = 0;
        for args in runs {
            let (c1, a) = csv_for(1, args);
            let (c4, b) = csv_for(4, args);
            same &= c1 == 0 && c4 == 0 && a == b && !a.is_empty();
            bytes += a.len();
        }
        Ok((same, format!("1 vs 4 workers, {bytes} bytes compared")))
    })
}
