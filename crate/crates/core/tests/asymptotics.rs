use std::f64::consts::PI;

use casimir_core::asymptotics::*;
use casimir_core::model::{
    depolarizing_factors, diag, spheroid_polarizability, PolarizabilityTensor, StaticResponse,
};
use casimir_core::scattering::Polarization;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn cylinder_pair_substitution_and_scaling() {
    let d = 10f64.exp();
    let e = cyl_pair_asym(1.0, d, Polarization::E);
    assert!(rel(e, -(1.0 / (800.0 * PI)) * 0.8 / (d * d)) < 1e-14);
    let m1 = cyl_pair_asym(1.0, 50.0, Polarization::M);
    let m2 = cyl_pair_asym(0.5, 50.0, Polarization::M);
    assert!(rel(m2, m1 / 16.0) < 1e-15);
}

#[test]
fn cylinder_pair_crossover_is_stable_under_bisection() {
    let gap = |x: f64| {
        let d = x.exp();
        cyl_pair_asym(1.0, d, Polarization::E).abs() - cyl_pair_asym(1.0, d, Polarization::M).abs()
    };
    let bisect = |iters: usize| {
        // the E form changes sign at d/R = e²
        let (mut lo, mut hi) = (2.001, 100f64.ln());
        assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
        for _ in 0..iters {
            let mid = 0.5 * (lo + hi);
            if gap(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let (a, b) = (bisect(40), bisect(60));
    assert!((a - b).abs() < 1e-10);
    // E dominates everywhere beyond the crossover
    for i in 1..200 {
        assert!(gap(b + 0.05 * i as f64) > 0.0);
    }
}

#[test]
fn cylinder_plate_forms() {
    let h = 4f64.exp();
    let e = cyl_plate_asym(1.0, h, Polarization::E);
    assert!(rel(e, -1.0 / (64.0 * PI * 8f64.exp())) < 1e-14);
    let m = cyl_plate_asym(2.0, 30.0, Polarization::M);
    assert!(rel(m, 4.0 * cyl_plate_asym(1.0, 30.0, Polarization::M)) < 1e-15);
    for h in [1.5, 3.0, 100.0] {
        assert!(cyl_plate_asym(1.0, h, Polarization::E) < 0.0);
        assert!(cyl_plate_asym(1.0, h, Polarization::M) < 0.0);
    }
}

#[test]
fn phi_e_limits() {
    assert!((phi_e(f64::INFINITY, 1.0).unwrap() - 1.0).abs() < 1e-15);
    // r^E → 1, r^M → −1 pointwise as ε → ∞ at fixed μ = 1 except near x = 0
    assert!((phi_e(1e12, 1.0).unwrap() - 1.0).abs() < 1e-5);
    assert_eq!(phi_e(1.0, 1.0).unwrap(), 0.0);
}

#[test]
fn phi_e_against_independent_quadrature() {
    // composite Simpson on a graded grid, and reference values from an
    // adaptive Gauss–Kronrod integration
    let simpson = |eps: f64, mu: f64| {
        let n = 200_000;
        let f = |t: f64| {
            let x = t * t;
            let root = (1.0 + (eps * mu - 1.0) * x * x).sqrt();
            let re = (eps - root) / (eps + root);
            let rm = (mu - root) / (mu + root);
            2.0 * t * (re - x * rm) / (1.0 + x)
        };
        let h = 1.0 / n as f64;
        (0..n)
            .map(|i| {
                let a = i as f64 * h;
                h / 6.0 * (f(a) + 4.0 * f(a + 0.5 * h) + f(a + h))
            })
            .sum::<f64>()
    };
    for (eps, mu) in [(3.0, 1.0), (10.0, 1.0), (3.0, 2.0), (1.0, 5.0), (40.0, 40.0)] {
        let v = phi_e(eps, mu).unwrap();
        assert!((v - simpson(eps, mu)).abs() < 1e-12, "{eps} {mu}: {v}");
    }
    assert!((phi_e(3.0, 1.0).unwrap() - 0.3381960422454353).abs() < 1e-12);
    assert!((phi_e(10.0, 1.0).unwrap() - 0.5952501305355).abs() < 1e-12);
}

#[test]
fn dielectric_variants_agree_on_the_shared_limit() {
    // dielectric cylinder (μ = 1) above a perfect plate: the general
    // formula with r^E = 1, r^M = −1 must equal the perfect-plate form.
    for eps in [1.5, 4.0, 80.0] {
        let both = dielectric_cyl_plate_asym(
            DielectricCylinderPlate::DielectricBoth {
                eps_cyl: eps,
                eps_plate: 1e15,
                mu_plate: 1.0,
            },
            1.0,
            20.0,
        )
        .unwrap();
        let perfect = dielectric_cyl_plate_asym(
            DielectricCylinderPlate::DielectricCylinderPerfectPlate {
                eps_cyl: eps,
                mu_cyl: 1.0,
            },
            1.0,
            20.0,
        )
        .unwrap();
        assert!(rel(both, perfect) < 1e-6, "{eps}: {both} {perfect}");
        let hand = -(eps - 1.0) * (eps + 5.0) / ((eps + 1.0) * 32.0 * PI * 20f64.powi(4));
        assert!(rel(perfect, hand) < 1e-14);
    }
    let zero = dielectric_cyl_plate_asym(
        DielectricCylinderPlate::DielectricCylinderPerfectPlate {
            eps_cyl: 3.0,
            mu_cyl: 3.0,
        },
        1.0,
        5.0,
    )
    .unwrap();
    assert_eq!(zero, 0.0);
    let perfect = dielectric_cyl_plate_asym(
        DielectricCylinderPlate::PerfectCylinderDielectricPlate {
            eps_plate: f64::INFINITY,
            mu_plate: 1.0,
        },
        1.0,
        50.0,
    )
    .unwrap();
    assert!(rel(perfect, cyl_plate_asym(1.0, 50.0, Polarization::E)) < 1e-15);
}

fn sphere() -> PolarizabilityTensor {
    spheroid_polarizability(1.0, 2.0, StaticResponse::PerfectConductor).unwrap()
}

#[test]
fn perfect_sphere_pair_coefficient() {
    let s = sphere();
    let e = cp_two_objects(&s, &s, 3.0);
    assert!(rel(e, -143.0 / (16.0 * PI) / 3f64.powi(7)) < 1e-13);
}

#[test]
fn isotropic_and_axial_forms_coincide() {
    // uniaxial tensors with the axis normal to a wall that is parallel to
    // the joining line; the joining line is z here, the wall normal x.
    let p = AxialPolarizability {
        alpha_z: 0.7,
        alpha_par: 1.3,
        beta_z: -0.2,
        beta_par: -0.45,
    };
    let t = PolarizabilityTensor {
        electric: diag([p.alpha_z, p.alpha_par, p.alpha_par]),
        magnetic: diag([p.beta_z, p.beta_par, p.beta_par]),
    };
    assert!(rel(cp_two_objects(&t, &t, 2.0), cp_pair(p, 2.0)) < 1e-14);
    let iso = PolarizabilityTensor::isotropic(0.9, 0.0);
    let e = cp_two_objects(&iso, &iso, 1.0);
    assert!(rel(e, -46.0 * 0.81 / (8.0 * PI)) < 1e-14);
}

#[test]
fn pair_energy_is_exchange_symmetric() {
    let a = spheroid_polarizability(1.0, 5.0, StaticResponse::PerfectConductor)
        .unwrap()
        .oriented(0.4, 1.1);
    let b = spheroid_polarizability(
        1.0,
        0.3,
        StaticResponse::Dielectric {
            epsilon: 4.0,
            mu: 1.5,
        },
    )
    .unwrap()
    .oriented(1.2, -0.3);
    assert!(rel(cp_two_objects(&a, &b, 4.0), cp_two_objects(&b, &a, 4.0)) < 1e-14);
}

#[test]
fn rarefied_spheroids_are_orientation_independent() {
    let de = 1e-6;
    let p = spheroid_polarizability(
        1.0,
        4.0,
        StaticResponse::Dielectric {
            epsilon: 1.0 + de,
            mu: 1.0,
        },
    )
    .unwrap();
    let mut values = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            let a = p.oriented(0.4 * i as f64, 0.0);
            let b = p.oriented(0.4 * j as f64, 0.7 * i as f64);
            values.push(cp_two_objects(&a, &b, 10.0));
        }
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    assert!(spread / mean.abs() < 10.0 * de, "{}", spread / mean.abs());
}

#[test]
fn wall_energy_limits() {
    let p = AxialPolarizability {
        alpha_z: 1.0,
        alpha_par: 0.8,
        beta_z: -0.5,
        beta_par: -0.3,
    };
    let d = 1.0;
    let far = cp_with_wall(p, d, 5e3);
    assert!(rel(far, cp_pair(p, d)) < 1e-10);
    let image = AxialPolarizability {
        alpha_z: 2.0 * p.alpha_z,
        alpha_par: 0.0,
        beta_z: 0.0,
        beta_par: 2.0 * p.beta_par,
    };
    // the approach is quadratic in H/d
    let dev = |h: f64| rel(cp_with_wall(p, d, h * d), cp_pair(image, d));
    assert!(dev(1e-4) < 1e-7);
    assert!((dev(1e-4) / dev(5e-5) - 4.0).abs() < 1e-3);
    let extrapolated = (4.0 * cp_with_wall(p, d, 5e-5) - cp_with_wall(p, d, 1e-4)) / 3.0;
    assert!(rel(extrapolated, cp_pair(image, d)) < 1e-12);
}

#[test]
fn large_wall_distance_form_error_decays_faster_than_h6() {
    let p = AxialPolarizability {
        alpha_z: 1.0,
        alpha_par: 0.6,
        beta_z: -0.5,
        beta_par: -0.2,
    };
    let err = |h: f64| (cp_with_wall(p, 1.0, h) - cp_with_wall_large_h(p, 1.0, h)).abs();
    let hs: Vec<f64> = (0..6).map(|i| 1.5 * 2f64.powi(i)).collect();
    // slope of ln err vs ln h over the last octaves
    let slope = (err(hs[5]).ln() - err(hs[3]).ln()) / (hs[5].ln() - hs[3].ln());
    assert!(slope < -6.5, "slope {slope}");
}

#[test]
fn sphere_wall_quoted_values() {
    assert_eq!(
        sphere_wall_f_limits(6, WallRegime::LargeH, 1e10).unwrap(),
        -1001.0 / 16.0
    );
    assert_eq!(
        sphere_wall_f_limits(8, WallRegime::SmallH, 0.0).unwrap(),
        -60939.0 / 80.0
    );
    assert_eq!(
        sphere_wall_f_limits(6, WallRegime::SmallH, 0.0).unwrap(),
        -791.0 / 8.0
    );
    assert!(sphere_wall_f_limits(7, WallRegime::SmallH, 0.1).is_err());
}

#[test]
fn prolate_pair_limits() {
    let (l, r, d): (f64, f64, f64) = (100.0, 1.0, 1000.0);
    let lg = (l / r).ln() - 1.0;
    let aligned = prolate_pair_energy(OrientationAngles::new(0.0, 0.0, 0.0), l, r, d);
    assert!(rel(aligned, -5.0 * l.powi(6) / (1152.0 * PI * lg * lg * d.powi(7))) < 1e-14);
    let h = 0.5 * PI;
    let crossed = prolate_pair_energy(OrientationAngles::new(h, h, h), l, r, d);
    assert!(rel(crossed, -66.0 * l.powi(4) * r * r / (1152.0 * PI * d.powi(7) * lg)) < 1e-14);
    // swapped roles hit the same branch
    let a = prolate_pair_energy(OrientationAngles::new(h, 0.0, 0.3), l, r, d);
    let b = prolate_pair_energy(OrientationAngles::new(0.0, h, 0.3), l, r, d);
    assert!(rel(a, b) < 1e-15);
    assert!(rel(a, -80.0 * l.powi(4) * r * r / (1152.0 * PI * d.powi(7) * lg)) < 1e-14);
}

#[test]
fn prolate_minimum_is_aligned_with_the_joining_line() {
    let mut best = (f64::INFINITY, 0.0, 0.0, 0.0);
    let n = 24;
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                let t1 = PI * i as f64 / n as f64;
                let t2 = PI * j as f64 / n as f64;
                let psi = 2.0 * PI * k as f64 / n as f64;
                let e = prolate_pair_energy(OrientationAngles::new(t1, t2, psi), 50.0, 1.0, 100.0);
                if e < best.0 {
                    best = (e, t1, t2, psi);
                }
            }
        }
    }
    assert!(best.1.sin().abs() < 1e-12 && best.2.sin().abs() < 1e-12, "{best:?}");
}

#[test]
fn prolate_bracket_matches_needle_dipoles() {
    // Leading L⁶ term from a uniaxial α = a n nᵀ with the needle's axial
    // polarizability a = L³/(24(ln(L/R) − 1)).
    let (l, r, d): (f64, f64, f64) = (100.0, 1.0, 7.0);
    let a = l.powi(3) / (24.0 * ((l / r).ln() - 1.0));
    let needle = PolarizabilityTensor {
        electric: diag([0.0, 0.0, a]),
        magnetic: diag([0.0; 3]),
    };
    for (t1, t2, psi) in [(0.3, 1.1, 0.4), (1.0, 2.0, 2.5), (0.0, 0.7, 0.0), (1.4, 1.4, 1.0)] {
        let e = cp_two_objects(&needle.oriented(t1, psi), &needle.oriented(t2, 0.0), d);
        let f = prolate_pair_energy(OrientationAngles::new(t1, t2, psi), l, r, d);
        assert!(rel(f, e) < 1e-12, "{t1} {t2} {psi}: {f} vs {e}");
    }
}

#[test]
fn oblate_quoted_coefficients() {
    let h = 0.5 * PI;
    let d: f64 = 2.0;
    let c = |e: f64| -e * d.powi(7);
    let coplanar = oblate_pair_energy(OrientationAngles::new(h, h, 0.0), 1.0, d);
    let stacked = oblate_pair_energy(OrientationAngles::new(0.0, 0.0, 0.0), 1.0, d);
    let crossed = oblate_pair_energy(OrientationAngles::new(h, 0.0, 0.0), 1.0, d);
    let pi3 = PI.powi(3);
    assert!(rel(c(coplanar), 173.0 / (18.0 * pi3)) < 1e-12);
    assert!(rel(c(stacked), 62.0 / (9.0 * pi3)) < 1e-12);
    assert!(rel(c(crossed), 11.0 / (3.0 * pi3)) < 1e-12);
}

#[test]
fn oblate_bracket_matches_thin_disk_polarizabilities() {
    let (r, d) = (1.0, 3.0);
    let n = depolarizing_factors(r, 1e-9).unwrap();
    assert!(n[2] > 1.0 - 1e-8);
    let disk = spheroid_polarizability(r, 1e-9, StaticResponse::PerfectConductor).unwrap();
    for (t1, t2, psi) in [(0.3, 1.1, 0.4), (1.0, 2.0, 2.5), (0.0, 0.7, 0.0), (1.4, 1.4, 1.0)] {
        let e = cp_two_objects(&disk.oriented(t1, psi), &disk.oriented(t2, 0.0), d);
        let f = oblate_pair_energy(OrientationAngles::new(t1, t2, psi), r, d);
        assert!(rel(f, e) < 1e-6, "{t1} {t2} {psi}: {f} vs {e}");
    }
}

#[test]
fn pair_energies_are_negative_on_a_dense_grid() {
    let n = 16;
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                let a = OrientationAngles::new(
                    PI * i as f64 / n as f64,
                    PI * j as f64 / n as f64,
                    2.0 * PI * k as f64 / n as f64,
                );
                assert!(oblate_pair_energy(a, 1.0, 3.0) < 0.0);
                assert!(prolate_pair_energy(a, 50.0, 1.0, 100.0) <= 0.0);
            }
        }
    }
}

#[test]
fn object_wall_energy_cases() {
    let iso = PolarizabilityTensor::isotropic(0.6, 0.6);
    assert_eq!(object_wall_energy(&iso, 2.0, None), 0.0);
    let s = sphere();
    let e = object_wall_energy(&s.oriented(0.9, 0.2), 2.0, None);
    assert!(rel(e, -(3.0 + 1.5) / (8.0 * PI * 16.0)) < 1e-14);
    let at = |delta: f64, theta: f64| {
        distortion_energy(
            Distortion {
                delta,
                radius: 1.0,
                theta,
            },
            3.0,
        )
    };
    for i in 0..20 {
        let t = 0.1 * i as f64;
        assert!((at(0.1, t) + at(0.1, t + 0.5 * PI)).abs() < 1e-16);
        assert!(at(0.1, 0.0) <= at(0.1, t));
        assert!(at(-0.1, 0.5 * PI) <= at(-0.1, t) + 1e-18);
    }
}

#[test]
fn pfa_spot_values() {
    let pi3 = PI.powi(3);
    assert!(rel(pfa_suite(PfaKind::TwoSpheres { r: 2.0, big_r: 2.0 }), -pi3 / 720.0 * 2.0) < 1e-15);
    assert_eq!(pfa_suite(PfaKind::Theta1R { x: 0.0 }), -3.0);
    assert_eq!(pfa_suite(PfaKind::Theta1BigR { x: 0.0 }), -1.0);
    assert!(rel(pfa_suite(PfaKind::Theta1Fit { x: 1.0 }), -(1.05 + 0.54 + 1.38)) < 1e-15);
    assert!(rel(pfa_suite(PfaKind::Theta1R { x: 1.0 }), -4.5) < 1e-15);
    assert!(rel(pfa_suite(PfaKind::Theta1BigR { x: 1.0 }), -4.5) < 1e-15);
    // E ∝ R^{1/2} H^{−5/2}
    let p = |r: f64, h: f64| pfa_suite(PfaKind::Parabola { r, h });
    assert!(rel(p(4.0, 1.0), 2.0 * p(1.0, 1.0)) < 1e-15);
    assert!(rel(p(1.0, 4.0), p(1.0, 1.0) / 32.0) < 1e-15);
    assert!(rel(p(1.0, 1.0), -pi3 / (960.0 * 2f64.sqrt())) < 1e-15);
}

#[test]
fn pfa_closed_forms_match_direct_integration() {
    // E/L = −(π²/720) ∫ dx / g(x)³ with the local gap g(x)
    let strip = |gap: &dyn Fn(f64) -> f64, width: f64| {
        let n = 400_000;
        let h = 2.0 * width / n as f64;
        (0..n)
            .map(|i| {
                let x = -width + (i as f64 + 0.5) * h;
                h / gap(x).powi(3)
            })
            .sum::<f64>()
            * (-PI * PI / 720.0)
    };
    let (r, a) = (1.0, 1e-3);
    let parabola = strip(&|x| a + x * x / (2.0 * r), 0.5);
    assert!(rel(parabola, pfa_suite(PfaKind::Parabola { r, h: a })) < 1e-4);
    let pair = strip(&|x| a + x * x / r, 0.5);
    assert!(rel(pair, pfa_suite(PfaKind::CylinderPair { r, a })) < 1e-4);
    // the force normalization follows from d/da of the energy
    let f = -(pfa_suite(PfaKind::CylinderPair { r, a: a * (1.0 + 1e-6) })
        - pfa_suite(PfaKind::CylinderPair { r, a: a * (1.0 - 1e-6) }))
        / (2e-6 * a);
    let caption = -2.5 * PI.powi(3) / 1920.0 * (r / a.powi(7)).sqrt();
    assert!(rel(f, caption) < 1e-8);
}
