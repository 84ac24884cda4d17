use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use casimir_core::asymptotics::{
    cp_pair, cp_with_wall, cp_with_wall_large_h, oblate_pair_energy, pfa_suite, phi_e,
    prolate_pair_energy, AxialPolarizability, OrientationAngles, PfaKind,
};
use casimir_core::engine::MatsubaraSpec;
use casimir_core::geometries::{
    cylinder_plate_energy, parabola_plate_energy, two_cylinders_energy, PolarizationSelector,
    SolveOptions, TemperatureMode,
};
use casimir_core::model::{EnergyResult, GeometryDescriptor, MaterialModel, MaterialTable, Medium};
use casimir_core::stability::{classify, kappa_samples, verdict};
use casimir_core::CasimirError;

use crate::args::*;
use crate::output::{Cell, CsvSink};
use crate::selftest;
use crate::{Parsed, RunError};

pub(crate) fn io_args(c: &Command) -> &IoArgs {
    match c {
        Command::CylCyl(a) => &a.io,
        Command::CylPlate(a) => &a.io,
        Command::ParabolaPlate(a) => &a.io,
        Command::Cp(a) => &a.io,
        Command::Spheroid(a) => &a.io,
        Command::Pfa(a) => &a.io,
        Command::Stability(a) => &a.io,
        Command::Selftest(a) => &a.io,
    }
}

pub(crate) fn execute(parsed: &Parsed, stdout: &mut dyn Write) -> Result<(), RunError> {
    let command = &parsed.config.command;
    let mut file;
    let out: &mut dyn Write = match &io_args(command).output {
        Some(path) => {
            file = BufWriter::new(File::create(path)?);
            &mut file
        }
        None => stdout,
    };
    let mut sink = CsvSink::new(out);
    if !matches!(command, Command::Selftest(_)) {
        sink.header(command.name(), &parsed.params);
    }
    match command {
        Command::CylCyl(a) => cyl_cyl(a, &mut sink),
        Command::CylPlate(a) => cyl_plate(a, &mut sink),
        Command::ParabolaPlate(a) => parabola(a, &mut sink),
        Command::Cp(a) => cp(a, &mut sink),
        Command::Spheroid(a) => spheroid(a, &mut sink),
        Command::Pfa(a) => pfa(a, &mut sink),
        Command::Stability(a) => stability(a, &mut sink),
        Command::Selftest(a) => run_selftest(a, &mut sink),
    }
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

fn grid(var: &str, from: Option<f64>, to: Option<f64>, n: usize, spacing: Spacing) -> Result<Vec<f64>, RunError> {
    let (Some(a), Some(b)) = (from, to) else {
        return Err(usage(format!("sweeping `{var}` needs --from and --to")));
    };
    if !(a.is_finite() && b.is_finite()) {
        return Err(usage("sweep bounds must be finite"));
    }
    if n == 0 {
        return Err(usage("--points must be at least 1"));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let t = |i: usize| i as f64 / (n - 1) as f64;
    Ok(match spacing {
        Spacing::Lin => (0..n).map(|i| if i == n - 1 { b } else { a + (b - a) * t(i) }).collect(),
        Spacing::Log => {
            if !(a > 0.0 && b > 0.0) {
                return Err(usage("log spacing needs positive bounds"));
            }
            let (la, lb) = (a.ln(), b.ln());
            (0..n)
                .map(|i| if i == n - 1 { b } else { (la + (lb - la) * t(i)).exp() })
                .collect()
        }
    })
}

/// The points of a sweep: `(column name, values)`; a single point at the
/// current value of `default` when no sweep is requested.
fn sweep_points(
    s: &SweepArgs,
    allowed: &[&str],
    default: &str,
    current: impl Fn(&str) -> f64,
) -> Result<(String, Vec<f64>), RunError> {
    if s.sweep == "none" {
        return Ok((default.into(), vec![current(default)]));
    }
    if !allowed.contains(&s.sweep.as_str()) {
        return Err(usage(format!(
            "cannot sweep `{}`; choose one of {}",
            s.sweep,
            allowed.join(", ")
        )));
    }
    Ok((s.sweep.clone(), grid(&s.sweep, s.from, s.to, s.points, s.spacing)?))
}

fn read_table(path: &Path) -> Result<MaterialTable, RunError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: CasimirError| usage(format!("{}: {e}", path.display())))
}

fn material(spec: &str, mu: f64, table: Option<&Path>) -> Result<MaterialModel, RunError> {
    if let Some(p) = table {
        return Ok(MaterialModel::Tabulated(read_table(p)?));
    }
    match spec.trim() {
        "perfect" | "pec" | "inf" => Ok(MaterialModel::PerfectConductor),
        s => {
            let eps: f64 = s
                .parse()
                .map_err(|_| usage(format!("expected a permittivity or `perfect`, got `{s}`")))?;
            MaterialModel::constant(eps, mu).map_err(|e| usage(e.to_string()))
        }
    }
}

fn medium(spec: &str, mu: f64, table: Option<&Path>) -> Result<Medium, RunError> {
    if table.is_none() && spec.trim() == "vacuum" {
        return Ok(Medium::vacuum());
    }
    Medium::new(material(spec, mu, table)?).map_err(|e| usage(e.to_string()))
}

fn solve_options(mut o: SolveOptions, s: &SolverArgs) -> Result<SolveOptions, RunError> {
    if let Some(n) = s.order {
        o = o.with_order(n);
    }
    if let Some(t) = s.tol {
        o.truncation.tolerance = t;
    }
    if let Some(m) = s.max_order {
        o.truncation.max_order = m;
    }
    if let Some(t) = s.quad_tol {
        o.quadrature.tolerance = t;
    }
    o.polarization = match s.polarization {
        PolarizationArg::E => PolarizationSelector::E,
        PolarizationArg::M => PolarizationSelector::M,
        PolarizationArg::Total => PolarizationSelector::Total,
    };
    if !(s.temperature >= 0.0 && s.temperature.is_finite()) {
        return Err(usage("--temperature must be finite and non-negative"));
    }
    if s.temperature > 0.0 {
        o.temperature = TemperatureMode::Matsubara(MatsubaraSpec::new(s.temperature));
    }
    o.medium = medium(&s.medium, s.medium_mu, s.medium_table.as_deref())?;
    o.validate().map_err(|e| usage(e.to_string()))?;
    Ok(o)
}

const ENERGY_COLUMNS: [&str; 4] = ["energy", "quadrature_error", "truncation_error", "order"];

fn energy_cells(e: &EnergyResult) -> Vec<Cell> {
    vec![
        Cell::Float(e.value),
        Cell::Float(e.quadrature_error),
        Cell::Float(e.truncation_error),
        Cell::Int(e.truncation_order),
    ]
}

/// Validate every point, then evaluate them in order. A failure after the
/// first row keeps the rows and marks the output incomplete.
fn run_points<P: Clone>(
    sink: &mut CsvSink,
    base: &P,
    var: &str,
    values: &[f64],
    columns: &[&str],
    set: impl Fn(&mut P, &str, f64),
    check: impl Fn(&P) -> Result<(), String>,
    eval: impl Fn(&P) -> Result<Vec<Cell>, CasimirError>,
) -> Result<(), RunError> {
    let mut points = Vec::with_capacity(values.len());
    for &v in values {
        let mut p = base.clone();
        set(&mut p, var, v);
        check(&p).map_err(|e| usage(format!("{var} = {v}: {e}")))?;
        points.push((v, p));
    }
    let mut names = vec![var];
    names.extend_from_slice(columns);
    sink.columns(&names)?;
    for (v, p) in &points {
        match eval(p) {
            Ok(cells) => {
                let mut row = vec![Cell::Float(*v)];
                row.extend(cells);
                sink.row(&row)?;
            }
            Err(e) => {
                sink.incomplete(&e.to_string())?;
                return Err(RunError::Solver(e));
            }
        }
    }
    Ok(())
}

fn cyl_cyl(a: &CylCylArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    let opts = solve_options(SolveOptions::default(), &a.solver)?;
    let (var, values) = sweep_points(&a.sweep, &["d", "R"], "d", |v| match v {
        "R" => a.r,
        _ => a.d,
    })?;
    let mut columns = ENERGY_COLUMNS.to_vec();
    match a.normalize {
        Normalize::None => {}
        Normalize::Pfa => columns.push("energy_over_pfa"),
        Normalize::CTheta => return Err(usage("c-theta applies to parabola-plate only")),
    }
    run_points(
        sink,
        a,
        &var,
        &values,
        &columns,
        |p, v, x| match v {
            "R" => p.r = x,
            _ => p.d = x,
        },
        |p| {
            GeometryDescriptor::TwoCylinders { r: p.r, d: p.d }
                .validate()
                .map_err(|e| e.to_string())
        },
        |p| {
            let e = two_cylinders_energy(p.r, p.d, &opts)?;
            let mut cells = energy_cells(&e);
            if a.normalize == Normalize::Pfa {
                let pfa = pfa_suite(PfaKind::CylinderPair { r: p.r, a: p.d - 2.0 * p.r });
                cells.push(Cell::Float(e.value / pfa));
            }
            Ok(cells)
        },
    )
}

fn cyl_plate(a: &CylPlateArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    if a.mode == CylPlateMode::PhiE {
        let (var, values) = sweep_points(&a.sweep, &["eps", "plate-mu"], "eps", |v| match v {
            "plate-mu" => a.plate_mu,
            _ => a.eps,
        })?;
        return run_points(
            sink,
            &(a.eps, a.plate_mu),
            &var,
            &values,
            &["phi_e"],
            |p, v, x| match v {
                "plate-mu" => p.1 = x,
                _ => p.0 = x,
            },
            |p| {
                if p.0 >= 1.0 && p.1 > 0.0 {
                    Ok(())
                } else {
                    Err("need eps >= 1 and plate-mu > 0".into())
                }
            },
            |p| Ok(vec![Cell::Float(phi_e(p.0, p.1)?)]),
        );
    }
    let mut opts = solve_options(SolveOptions::default(), &a.solver)?;
    opts.plate = material(&a.plate, a.plate_mu, a.plate_table.as_deref())?;
    let (var, values) = sweep_points(&a.sweep, &["H", "R"], "H", |v| match v {
        "R" => a.r,
        _ => a.h,
    })?;
    let mut columns = ENERGY_COLUMNS.to_vec();
    match a.normalize {
        Normalize::None => {}
        Normalize::Pfa => columns.push("energy_over_pfa"),
        Normalize::CTheta => return Err(usage("c-theta applies to parabola-plate only")),
    }
    run_points(
        sink,
        a,
        &var,
        &values,
        &columns,
        |p, v, x| match v {
            "R" => p.r = x,
            _ => p.h = x,
        },
        |p| {
            GeometryDescriptor::CylinderPlate { r: p.r, h: p.h }
                .validate()
                .map_err(|e| e.to_string())
        },
        |p| {
            let e = cylinder_plate_energy(p.r, p.h, &opts)?;
            let mut cells = energy_cells(&e);
            if a.normalize == Normalize::Pfa {
                let pfa = pfa_suite(PfaKind::CylinderPlate { r: p.r, a: p.h - p.r });
                cells.push(Cell::Float(e.value / pfa));
            }
            Ok(cells)
        },
    )
}

fn parabola(a: &ParabolaArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    let opts = solve_options(SolveOptions::parabola(), &a.solver)?;
    let (var, values) = sweep_points(&a.sweep, &["H", "R", "theta"], "H", |v| match v {
        "R" => a.r,
        "theta" => a.theta,
        _ => a.h,
    })?;
    let mut columns = ENERGY_COLUMNS.to_vec();
    match a.normalize {
        Normalize::None => {}
        Normalize::Pfa => columns.push("energy_over_pfa"),
        Normalize::CTheta => columns.push("c_theta"),
    }
    let descriptor = |p: &ParabolaArgs| {
        let theta = p.theta.to_radians();
        GeometryDescriptor::ParabolaPlate {
            r: p.r,
            d: p.h + p.r / (2.0 * theta.cos()),
            theta,
        }
    };
    run_points(
        sink,
        a,
        &var,
        &values,
        &columns,
        |p, v, x| match v {
            "R" => p.r = x,
            "theta" => p.theta = x,
            _ => p.h = x,
        },
        |p| {
            if !(p.h > 0.0) {
                return Err("H must be positive".into());
            }
            descriptor(p).validate().map_err(|e| e.to_string())
        },
        |p| {
            let GeometryDescriptor::ParabolaPlate { r, d, theta } = descriptor(p) else {
                unreachable!()
            };
            let e = parabola_plate_energy(r, d, theta, &opts)?;
            let mut cells = energy_cells(&e);
            match a.normalize {
                Normalize::Pfa => {
                    let pfa = pfa_suite(PfaKind::Parabola { r: p.r, h: p.h });
                    cells.push(Cell::Float(e.value / pfa));
                }
                Normalize::CTheta => {
                    cells.push(Cell::Float(-theta.cos() * e.value * p.h * p.h));
                }
                Normalize::None => {}
            }
            Ok(cells)
        },
    )
}

fn cp(a: &CpArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    let (var, values) = sweep_points(&a.sweep, &["d", "H"], "d", |v| match v {
        "H" => a.h,
        _ => a.d,
    })?;
    let pol = AxialPolarizability {
        alpha_z: a.alpha_z,
        alpha_par: a.alpha_par,
        beta_z: a.beta_z,
        beta_par: a.beta_par,
    };
    run_points(
        sink,
        &(a.d, a.h),
        &var,
        &values,
        &["energy"],
        |p, v, x| match v {
            "H" => p.1 = x,
            _ => p.0 = x,
        },
        |p| {
            if p.0 > 0.0 && p.1 > 0.0 {
                Ok(())
            } else {
                Err("d and H must be positive".into())
            }
        },
        |&(d, h)| {
            let e = match a.kind {
                CpKind::Pair => cp_pair(pol, d),
                CpKind::Wall => cp_with_wall(pol, d, h),
                CpKind::WallLargeH => cp_with_wall_large_h(pol, d, h),
            };
            Ok(vec![Cell::Float(e)])
        },
    )
}

fn spheroid(a: &SpheroidArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    const VARS: [&str; 4] = ["d", "theta1", "theta2", "psi"];
    let get = |v: &str| match v {
        "theta1" => a.theta1,
        "theta2" => a.theta2,
        "psi" => a.psi,
        _ => a.d,
    };
    let set = |p: &mut SpheroidArgs, v: &str, x: f64| match v {
        "theta1" => p.theta1 = x,
        "theta2" => p.theta2 = x,
        "psi" => p.psi = x,
        _ => p.d = x,
    };
    let (var, values) = sweep_points(&a.sweep, &VARS, "d", get)?;
    let inner = if a.sweep2 == "none" {
        None
    } else {
        if !VARS.contains(&a.sweep2.as_str()) || a.sweep2 == var {
            return Err(usage(format!("cannot use `{}` as the second sweep axis", a.sweep2)));
        }
        Some(grid(&a.sweep2, a.from2, a.to2, a.points2, Spacing::Lin)?)
    };
    let check = |p: &SpheroidArgs| {
        if !(p.d > 0.0 && p.r > 0.0) {
            return Err("d and R must be positive".to_string());
        }
        if a.shape == Shape::Prolate && !(p.l > p.r) {
            return Err("a prolate spheroid needs L > R".to_string());
        }
        Ok(())
    };
    let energy = |p: &SpheroidArgs| {
        let angles = OrientationAngles::new(
            p.theta1.to_radians(),
            p.theta2.to_radians(),
            p.psi.to_radians(),
        );
        match a.shape {
            Shape::Prolate => prolate_pair_energy(angles, p.l, p.r, p.d),
            Shape::Oblate => oblate_pair_energy(angles, p.r, p.d),
        }
    };
    let Some(inner) = inner else {
        return run_points(sink, a, &var, &values, &["energy"], set, check, |p| {
            Ok(vec![Cell::Float(energy(p))])
        });
    };
    let mut points = Vec::new();
    for &x in &values {
        for &y in &inner {
            let mut p = a.clone();
            set(&mut p, &var, x);
            set(&mut p, &a.sweep2, y);
            check(&p).map_err(|e| usage(format!("{var} = {x}, {} = {y}: {e}", a.sweep2)))?;
            points.push((x, y, energy(&p)));
        }
    }
    sink.columns(&[&var, &a.sweep2, "energy"])?;
    for (x, y, e) in points {
        sink.row(&[Cell::Float(x), Cell::Float(y), Cell::Float(e)])?;
    }
    Ok(())
}

fn pfa(a: &PfaArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    let default = match a.kind {
        PfaKindArg::Theta1PfaR | PfaKindArg::Theta1PfaBigR | PfaKindArg::Theta1Fit => "x",
        PfaKindArg::TwoSpheres => "r",
        _ => "a",
    };
    let (var, values) = sweep_points(&a.sweep, &["x", "r", "R", "a"], default, |v| match v {
        "x" => a.x,
        "r" => a.r,
        "R" => a.big_r,
        _ => a.a,
    })?;
    let kind = |p: &PfaArgs| match a.kind {
        PfaKindArg::Parabola => PfaKind::Parabola { r: p.big_r, h: p.a },
        PfaKindArg::TwoSpheres => PfaKind::TwoSpheres { r: p.r, big_r: p.big_r },
        PfaKindArg::CylPair => PfaKind::CylinderPair { r: p.big_r, a: p.a },
        PfaKindArg::CylPlate => PfaKind::CylinderPlate { r: p.big_r, a: p.a },
        PfaKindArg::Theta1PfaR => PfaKind::Theta1R { x: p.x },
        PfaKindArg::Theta1PfaBigR => PfaKind::Theta1BigR { x: p.x },
        PfaKindArg::Theta1Fit => PfaKind::Theta1Fit { x: p.x },
    };
    run_points(
        sink,
        a,
        &var,
        &values,
        &["value"],
        |p, v, x| match v {
            "x" => p.x = x,
            "r" => p.r = x,
            "R" => p.big_r = x,
            _ => p.a = x,
        },
        |p| {
            let ok = match a.kind {
                PfaKindArg::Theta1PfaR | PfaKindArg::Theta1PfaBigR | PfaKindArg::Theta1Fit => {
                    p.x > -1.0 && p.x.is_finite()
                }
                PfaKindArg::TwoSpheres => p.r > 0.0 && p.big_r != 0.0 && p.r + p.big_r != 0.0,
                _ => p.big_r > 0.0 && p.a > 0.0,
            };
            if ok {
                Ok(())
            } else {
                Err("parameters outside the formula's domain".into())
            }
        },
        |p| Ok(vec![Cell::Float(pfa_suite(kind(p)))]),
    )
}

fn stability(a: &StabilityArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    if !(a.separation > 0.0 && a.separation.is_finite()) {
        return Err(usage("--separation must be positive"));
    }
    let objects = [
        ("a", material(&a.eps_a, a.mu_a, a.table_a.as_deref())?),
        ("b", material(&a.eps_b, a.mu_b, a.table_b.as_deref())?),
    ];
    let m = medium(&a.medium, a.medium_mu, a.medium_table.as_deref())?;
    let samples = kappa_samples(a.separation);
    let mut classes = Vec::new();
    for (_, obj) in &objects {
        classes.push(classify(obj, &m, &samples).map_err(RunError::Solver)?);
    }
    sink.columns(&["object", "class"])?;
    for ((name, _), c) in objects.iter().zip(&classes) {
        sink.row(&[Cell::Text(name.to_string()), Cell::Text(c.to_string())])?;
    }
    sink.row(&[Cell::Text("verdict".into()), Cell::Text(verdict(&classes).to_string())])?;
    Ok(())
}

fn run_selftest(a: &SelftestArgs, sink: &mut CsvSink) -> Result<(), RunError> {
    let ids: Vec<u8> = if a.criteria.is_empty() {
        selftest::CRITERIA.to_vec()
    } else {
        a.criteria.clone()
    };
    if let Some(bad) = ids.iter().find(|i| !selftest::CRITERIA.contains(i)) {
        return Err(usage(format!("no acceptance criterion {bad}")));
    }
    let mut failed = 0;
    for id in ids {
        let report = selftest::run_criterion(id);
        if !report.passed() {
            failed += 1;
        }
        sink.line(&report.line())?;
        for check in &report.checks {
            sink.line(&format!("    {}", check.line()))?;
        }
    }
    if failed > 0 {
        return Err(RunError::Failed(failed));
    }
    Ok(())
}
