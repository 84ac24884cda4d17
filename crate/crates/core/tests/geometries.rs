use casimir_core::asymptotics::{cyl_plate_asym, phi_e};
use casimir_core::engine::{MatsubaraSpec, QuadratureSpec};
use casimir_core::geometries::*;
use casimir_core::model::{GeometryDescriptor, MaterialModel, MaterialTable, Medium};
use casimir_core::scattering::Polarization;
use casimir_core::CasimirError;

const C_PERP: f64 = 0.0067415;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn assert_negative_and_monotone(values: &[f64]) {
    for w in values.windows(2) {
        assert!(w[0] < 0.0 && w[1] < 0.0, "{values:?}");
        assert!(w[1].abs() < w[0].abs(), "{values:?}");
    }
}

#[test]
fn two_cylinders_sweep() {
    let opts = SolveOptions::default();
    let e: Vec<f64> = [2.2, 2.5, 3.0, 4.0, 6.0, 10.0]
        .iter()
        .map(|&d| two_cylinders_energy(1.0, d, &opts).unwrap().value)
        .collect();
    assert_negative_and_monotone(&e);
}

#[test]
fn cylinder_plate_sweep() {
    let opts = SolveOptions::default();
    let e: Vec<f64> = [1.1, 1.25, 1.5, 2.0, 4.0, 10.0]
        .iter()
        .map(|&h| cylinder_plate_energy(1.0, h, &opts).unwrap().value)
        .collect();
    assert_negative_and_monotone(&e);
}

#[test]
fn parabola_sweep() {
    let opts = SolveOptions::default().with_order(24);
    let e: Vec<f64> = [0.8, 1.0, 1.5, 2.5]
        .iter()
        .map(|&d| parabola_plate_energy(1.0, d, 0.0, &opts).unwrap().value)
        .collect();
    assert_negative_and_monotone(&e);
}

#[test]
fn channels_add_up() {
    let at = |p: PolarizationSelector, f: &dyn Fn(&SolveOptions) -> f64| {
        f(&SolveOptions::default().with_order(12).with_polarization(p))
    };
    type Solver = Box<dyn Fn(&SolveOptions) -> f64>;
    let diel = MaterialModel::constant(5.0, 1.0).unwrap();
    let solvers: Vec<Solver> = vec![
        Box::new(|o| two_cylinders_energy(1.0, 4.0, o).unwrap().value),
        Box::new(|o| cylinder_plate_energy(1.0, 2.0, o).unwrap().value),
        Box::new(|o| parabola_plate_energy(1.0, 1.2, 0.4, o).unwrap().value),
        Box::new(move |o| {
            cylinder_plate_energy(1.0, 30.0, &o.clone().with_plate(diel.clone()))
                .unwrap()
                .value
        }),
    ];
    for (k, f) in solvers.iter().enumerate() {
        let e = at(PolarizationSelector::E, f);
        let m = at(PolarizationSelector::M, f);
        let t = at(PolarizationSelector::Total, f);
        assert!(e < 0.0 && m < 0.0, "{k}: {e} {m}");
        // the dielectric plate couples the channels: additive only far away
        let tol = if k == 3 { 1e-2 } else { 1e-12 };
        assert!(rel(e + m, t) < tol, "{k}: {e} + {m} vs {t}");
    }
}

#[test]
fn parabola_mirror_symmetry() {
    let opts = SolveOptions::default().with_order(16);
    for theta in [0.2, 0.7, 1.3] {
        let a = parabola_plate_energy(1.0, 2.5, theta, &opts).unwrap().value;
        let b = parabola_plate_energy(1.0, 2.5, -theta, &opts).unwrap().value;
        assert!(rel(a, b) < 1e-13, "{theta}: {a} {b}");
    }
}

#[test]
fn knife_edge_is_scale_free() {
    let opts = SolveOptions::default().with_order(40);
    let e1 = parabola_plate_energy(0.0, 1.0, 0.0, &opts).unwrap().value;
    let e2 = parabola_plate_energy(0.0, 2.5, 0.0, &opts).unwrap().value;
    assert!(rel(e2 * 6.25, e1) < 1e-6, "{e1} {e2}");
    assert!(rel(-e1, C_PERP) < 0.01);
}

#[test]
fn parabola_rejects_dielectric_plate() {
    let opts = SolveOptions::default()
        .with_order(8)
        .with_plate(MaterialModel::constant(4.0, 1.0).unwrap());
    assert!(matches!(
        parabola_plate_energy(1.0, 1.0, 0.0, &opts),
        Err(CasimirError::Unsupported(_))
    ));
}

#[test]
fn dielectric_plate_approaches_the_mirror() {
    let base = SolveOptions::default().with_order(8);
    let mirror = cylinder_plate_energy(1.0, 1.5, &base).unwrap().value;
    let ratios: Vec<f64> = [1e1, 1e2, 1e3]
        .iter()
        .map(|&eps| {
            let o = base.clone().with_plate(MaterialModel::constant(eps, 1.0).unwrap());
            cylinder_plate_energy(1.0, 1.5, &o).unwrap().value / mirror
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] > w[0]), "{ratios:?}");
    assert!(ratios[2] < 1.0 && ratios[2] > 0.85, "{ratios:?}");
}

#[test]
fn dielectric_plate_far_field_matches_phi() {
    // E-dominated far field: E_diel/E_mirror → φ^E(ε, 1)
    let h = 1000.0;
    let base = SolveOptions::default()
        .with_order(1)
        .with_polarization(PolarizationSelector::E)
        .with_quadrature(QuadratureSpec::new(1.0).with_tolerance(1e-6));
    let mirror = cylinder_plate_energy(1.0, h, &base).unwrap().value;
    for eps in [3.0, 10.0] {
        let o = base.clone().with_plate(MaterialModel::constant(eps, 1.0).unwrap());
        let ratio = cylinder_plate_energy(1.0, h, &o).unwrap().value / mirror;
        let phi = phi_e(eps, 1.0).unwrap();
        assert!(rel(ratio, phi) < 0.03, "{eps}: {ratio} vs {phi}");
    }
}

#[test]
fn cylinder_plate_m_mode_far_field() {
    let o = SolveOptions::default().with_polarization(PolarizationSelector::M);
    let e = cylinder_plate_energy(1.0, 100.0, &o).unwrap().value;
    assert!(rel(e, cyl_plate_asym(1.0, 100.0, Polarization::M)) < 1e-3);
}

#[test]
fn medium_rescales_perfect_conductors() {
    let opts = SolveOptions::default().with_order(12);
    let vac = cylinder_plate_energy(1.0, 1.5, &opts).unwrap().value;
    let water = Medium::new(MaterialModel::constant(1.77, 1.0).unwrap()).unwrap();
    let e = cylinder_plate_energy(1.0, 1.5, &opts.clone().with_medium(water)).unwrap().value;
    assert!(rel(e * 1.77f64.sqrt(), vac) < 1e-10);
    // a flat table takes the dispersive path
    let flat: MaterialTable = "1e-9 4\n1e9 4\n".parse().unwrap();
    let o = opts.with_medium(Medium::new(MaterialModel::Tabulated(flat)).unwrap());
    let e = cylinder_plate_energy(1.0, 1.5, &o).unwrap().value;
    assert!(rel(2.0 * e, vac) < 1e-5, "{e} {vac}");
}

#[test]
fn matsubara_sum_approaches_zero_temperature() {
    let opts = SolveOptions::default().with_order(12);
    let cold = cylinder_plate_energy(1.0, 1.5, &opts).unwrap().value;
    let at = |t: f64| {
        let o = opts
            .clone()
            .with_temperature(TemperatureMode::Matsubara(MatsubaraSpec::new(t)));
        cylinder_plate_energy(1.0, 1.5, &o).unwrap().value
    };
    let (warm, cool) = (at(0.1), at(0.01));
    assert!(rel(cool, cold) < 1e-4, "{cool} {cold}");
    assert!(rel(warm, cold) > rel(cool, cold));
}

#[test]
fn forces_are_attractive() {
    let opts = SolveOptions::default();
    for g in [
        GeometryDescriptor::TwoCylinders { r: 1.0, d: 3.0 },
        GeometryDescriptor::CylinderPlate { r: 1.0, h: 2.0 },
    ] {
        assert!(force(&g, &opts).unwrap() < 0.0, "{g:?}");
    }
}

#[test]
fn knife_edge_force() {
    let h = 1.0;
    let g = GeometryDescriptor::ParabolaPlate { r: 0.0, d: h, theta: 0.0 };
    let f = force(&g, &SolveOptions::parabola()).unwrap();
    let exact = -2.0 * C_PERP / (h * h * h);
    assert!(rel(f, exact) < 0.01, "{f} {exact}");
}

#[test]
fn far_cylinder_force_scaling() {
    let opts = SolveOptions::default().with_polarization(PolarizationSelector::E);
    let f = |d: f64| force(&GeometryDescriptor::TwoCylinders { r: 1.0, d }, &opts).unwrap();
    let (f1, f2) = (f(100.0), f(200.0));
    assert!(f2 / f1 > 0.0625 && f2 / f1 < 0.125, "{}", f2 / f1);
    // E ∝ 1/(d² ln² d) gives F d / E = 2 + 2/ln d
    for (d, fd) in [(100.0f64, f1), (200.0, f2)] {
        let e = two_cylinders_energy(1.0, d, &opts).unwrap().value;
        let expect = 2.0 + 2.0 / d.ln();
        assert!(rel(fd * d / e, expect) < 0.02, "{d}: {} {expect}", fd * d / e);
    }
}

#[test]
fn invalid_geometries_are_rejected() {
    let opts = SolveOptions::default();
    assert!(two_cylinders_energy(1.0, 2.0, &opts).is_err());
    assert!(cylinder_plate_energy(1.0, 0.5, &opts).is_err());
    assert!(parabola_plate_energy(2.0, 1.0, 0.0, &opts).is_err());
    assert!(parabola_plate_energy(1.0, 1.0, 1.6, &opts).is_err());
}
