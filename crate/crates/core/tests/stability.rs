use casimir_core::asymptotics::{cp_pair, cp_with_wall, AxialPolarizability};
use casimir_core::engine::QuadratureSpec;
use casimir_core::geometries::{two_cylinders_energy, SolveOptions};
use casimir_core::model::{MaterialModel, MaterialTable, Medium};
use casimir_core::stability::*;
use casimir_core::CasimirError;
use proptest::prelude::*;

fn dielectric(eps: f64) -> MaterialModel {
    MaterialModel::constant(eps, 1.0).unwrap()
}

fn medium(eps: f64) -> Medium {
    Medium::new(dielectric(eps)).unwrap()
}

#[test]
fn classification_truth_table() {
    let k = kappa_samples(1.0);
    let vac = Medium::vacuum();
    let c = |m: &MaterialModel, med: &Medium| classify(m, med, &k).unwrap();
    assert_eq!(c(&dielectric(2.0), &vac), MaterialClass::PositivePotential);
    assert_eq!(c(&dielectric(3.0), &vac), MaterialClass::PositivePotential);
    assert_eq!(c(&MaterialModel::PerfectConductor, &vac), MaterialClass::PositivePotential);
    // a bubble in a denser fluid
    assert_eq!(c(&dielectric(1.0), &medium(2.0)), MaterialClass::NegativePotential);
    // matched index: neither strictly above nor below
    assert_eq!(c(&dielectric(2.0), &medium(2.0)), MaterialClass::Indeterminate);
    // a magnetic dielectric sits on neither side
    let mag = MaterialModel::constant(3.0, 2.0).unwrap();
    assert_eq!(c(&mag, &vac), MaterialClass::Indeterminate);
    let dia = MaterialModel::constant(1.5, 2.5).unwrap();
    assert_eq!(c(&dia, &medium(2.0)), MaterialClass::NegativePotential);
}

#[test]
fn verdicts() {
    use MaterialClass::*;
    let v = |c: &[MaterialClass]| verdict(c);
    assert_eq!(v(&[PositivePotential, PositivePotential]), Verdict::StableEquilibriumExcluded);
    assert_eq!(v(&[NegativePotential, NegativePotential]), Verdict::StableEquilibriumExcluded);
    assert_eq!(v(&[PositivePotential, NegativePotential]), Verdict::NotExcluded);
    assert_eq!(v(&[PositivePotential, Indeterminate]), Verdict::NotExcluded);
    assert_eq!(v(&[Indeterminate, Indeterminate]), Verdict::NotExcluded);
    assert_eq!(v(&[]), Verdict::NotExcluded);
    assert_eq!(Verdict::StableEquilibriumExcluded.to_string(), "StableEquilibriumExcluded");
}

#[test]
fn two_dielectrics_in_vacuum_and_fluid() {
    let k = kappa_samples(1.0);
    let classes = |a: f64, b: f64, m: &Medium| {
        [a, b].map(|e| classify(&dielectric(e), m, &k).unwrap())
    };
    assert_eq!(
        verdict(&classes(2.0, 3.0, &Medium::vacuum())),
        Verdict::StableEquilibriumExcluded
    );
    // ε_a < ε_M < ε_b: the classic levitation setup
    assert_eq!(verdict(&classes(2.0, 4.0, &medium(3.0))), Verdict::NotExcluded);
    assert_eq!(
        verdict(&classes(1.5, 2.0, &medium(3.0))),
        Verdict::StableEquilibriumExcluded
    );
}

#[test]
fn dispersive_crossing_is_indeterminate() {
    // ε(iκ) falls through the medium value inside the sampled window
    let table: MaterialTable = "# kappa eps\n0.001 5\n1 3\n1000 1.5\n".parse().unwrap();
    let k = kappa_samples(1.0);
    let class = classify(&MaterialModel::Tabulated(table), &medium(2.0), &k).unwrap();
    assert_eq!(class, MaterialClass::Indeterminate);
    assert!(matches!(
        classify(&dielectric(2.0), &Medium::vacuum(), &[]),
        Err(CasimirError::InvalidParameter(_))
    ));
}

#[test]
fn samples_span_four_decades() {
    let k = kappa_samples(2.0);
    assert_eq!(k.len(), 41);
    assert!((k[0] - 0.005).abs() < 1e-15 && (k[40] - 50.0).abs() < 1e-12);
    assert!(k.windows(2).all(|w| w[1] > w[0]));
}

proptest! {
    #[test]
    fn verdict_ignores_order(seed in proptest::collection::vec(0u8..3, 1..6)) {
        let map = |s: &u8| match s {
            0 => MaterialClass::PositivePotential,
            1 => MaterialClass::NegativePotential,
            _ => MaterialClass::Indeterminate,
        };
        let a: Vec<_> = seed.iter().map(map).collect();
        let mut b = a.clone();
        b.reverse();
        b.rotate_left(seed.len() / 2);
        prop_assert_eq!(verdict(&a), verdict(&b));
    }

    #[test]
    fn class_tracks_the_contrast(eps in 1.0f64..20.0, eps_m in 1.0f64..20.0) {
        prop_assume!((eps - eps_m).abs() > 1e-9);
        let c = classify(&dielectric(eps), &medium(eps_m), &kappa_samples(1.0)).unwrap();
        let expect = if eps > eps_m {
            MaterialClass::PositivePotential
        } else {
            MaterialClass::NegativePotential
        };
        prop_assert_eq!(c, expect);
    }
}

#[test]
fn inverse_seventh_power_laplacian() {
    let c = 2.7;
    let energy = |p: [f64; 3]| {
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        Ok(-c / r.powi(7))
    };
    for point in [[3.0, 0.0, 0.0], [1.0, 2.0, 2.0], [0.5, -4.0, 1.5]] {
        let r: f64 = point.iter().map(|x| x * x).sum::<f64>().sqrt();
        let lap = laplacian_check(energy, point, 1e-3 * r, Stencil::Full, 0.0).unwrap();
        let exact = -42.0 * c / r.powi(9);
        assert!(((lap - exact) / exact).abs() < 1e-2, "{lap} {exact}");
    }
}

#[test]
fn flat_energy_and_bad_step() {
    let flat = |_: [f64; 3]| Ok(-1.0);
    assert_eq!(laplacian_check(flat, [1.0; 3], 0.1, Stencil::Full, 0.0).unwrap(), 0.0);
    assert!(matches!(
        laplacian_check(flat, [1.0; 3], 0.1, Stencil::Full, 1e-12),
        Err(CasimirError::StepTooSmall { .. })
    ));
    assert!(matches!(
        laplacian_check(flat, [1.0; 3], 0.0, Stencil::Full, 0.0),
        Err(CasimirError::InvalidParameter(_))
    ));
}

#[test]
fn closed_form_dipole_energies_are_superharmonic() {
    let p = AxialPolarizability {
        alpha_z: 1.3,
        alpha_par: 0.7,
        beta_z: -0.4,
        beta_par: -0.2,
    };
    // two objects, one fixed at the origin
    let pair = |x: [f64; 3]| Ok(cp_pair(p, (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()));
    for d in [2.0, 5.0, 20.0] {
        let lap = laplacian_check(pair, [d, 0.0, 0.0], 1e-3 * d, Stencil::Full, 0.0).unwrap();
        assert!(lap < 0.0, "{d} {lap}");
    }
    // lateral motion of one object at fixed height above the wall
    for (d, h) in [(3.0, 1.0), (1.0, 4.0), (10.0, 0.5)] {
        let wall = |x: [f64; 3]| Ok(cp_with_wall(p, x[0].hypot(x[1]), h));
        let lap = laplacian_check(wall, [d, 0.0, 0.0], 1e-3 * d, Stencil::Transverse, 0.0)
            .unwrap();
        assert!(lap < 0.0, "{d} {h} {lap}");
    }
}

#[test]
fn two_cylinder_transverse_laplacian_is_negative() {
    let mut opts = SolveOptions::default()
        .with_order(24)
        .with_quadrature(QuadratureSpec::new(1.0).with_nodes(96));
    opts.fixed_nodes = true;
    let energy = |x: [f64; 3]| Ok(two_cylinders_energy(1.0, x[0].hypot(x[1]), &opts)?.value);
    for d in [3.0, 5.0, 10.0] {
        let e0 = energy([d, 0.0, 0.0]).unwrap();
        let lap = laplacian_check(
            energy,
            [d, 0.0, 0.0],
            0.02 * d,
            Stencil::Transverse,
            1e-12 * e0.abs(),
        )
        .unwrap();
        assert!(lap < 0.0, "d/R = {d}: {lap}");
    }
}
