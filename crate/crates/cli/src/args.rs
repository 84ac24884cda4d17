//! Command-line surface. Lengths share one arbitrary unit; angles are in
//! degrees.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "casimir-scatter",
    version,
    about = "Casimir energies from scattering log-determinants, closed-form asymptotics and stability checks",
    args_override_self = true
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Two parallel perfect cylinders. With `--normalize pfa` and a sweep
    /// over d this is the energy-over-PFA curve for equal cylinders.
    CylCyl(CylCylArgs),
    /// Perfect cylinder above a plate. `--normalize pfa` gives the
    /// energy-over-PFA curve; `--mode phi-e` tabulates φ^E(ε, μ) of the
    /// dielectric-plate far field.
    CylPlate(CylPlateArgs),
    /// Perfect parabolic cylinder above a perfect plate. Sweeping H at
    /// θ = 0 gives E·H² versus H/R; sweeping theta at R = 0 with
    /// `--normalize c-theta` gives c(θ).
    ParabolaPlate(ParabolaArgs),
    /// Dipole-level Casimir–Polder energies of two uniaxial objects, in
    /// free space or next to a perfect wall.
    Cp(CpArgs),
    /// Orientation dependence of two perfect spheroids at large distance.
    /// `--sweep theta1 --sweep2 theta2` writes a contour grid.
    Spheroid(SpheroidArgs),
    /// Proximity-force estimates and curvature-correction formulas.
    Pfa(PfaArgs),
    /// Material classification and the verdict on stable equilibrium.
    Stability(StabilityArgs),
    /// Run the acceptance suite and print one line per criterion.
    Selftest(SelftestArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CylCyl(_) => "cyl-cyl",
            Command::CylPlate(_) => "cyl-plate",
            Command::ParabolaPlate(_) => "parabola-plate",
            Command::Cp(_) => "cp",
            Command::Spheroid(_) => "spheroid",
            Command::Pfa(_) => "pfa",
            Command::Stability(_) => "stability",
            Command::Selftest(_) => "selftest",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct IoArgs {
    /// key = value file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the CSV here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Lin,
    Log,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Parameter to sweep, or `none` for a single point.
    #[arg(long, default_value = "none")]
    pub sweep: String,
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 11)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Lin)]
    pub spacing: Spacing,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationArg {
    E,
    M,
    Total,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    /// Fixed truncation order (no convergence loop).
    #[arg(long)]
    pub order: Option<usize>,
    /// Relative truncation tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_order: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    pub quad_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = PolarizationArg::Total)]
    pub polarization: PolarizationArg,
    /// Temperature in units of ħc/(k_B · length); 0 integrates over κ.
    #[arg(long, default_value_t = 0.0)]
    pub temperature: f64,
    /// `vacuum` or a constant permittivity.
    #[arg(long, default_value = "vacuum")]
    pub medium: String,
    #[arg(long, default_value_t = 1.0)]
    pub medium_mu: f64,
    /// Tabulated medium response (`κ ε [μ]` per line); overrides --medium.
    #[arg(long)]
    pub medium_table: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalize {
    None,
    Pfa,
    CTheta,
}

#[derive(Args, Debug, Clone)]
pub struct CylCylArgs {
    #[arg(long = "R", default_value_t = 1.0)]
    pub r: f64,
    /// Axis-to-axis distance.
    #[arg(long, default_value_t = 3.0)]
    pub d: f64,
    #[arg(long, value_enum, default_value_t = Normalize::None)]
    pub normalize: Normalize,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CylPlateMode {
    Full,
    PhiE,
}

#[derive(Args, Debug, Clone)]
pub struct CylPlateArgs {
    #[arg(long = "R", default_value_t = 1.0)]
    pub r: f64,
    /// Height of the axis above the plate.
    #[arg(long = "H", default_value_t = 2.0)]
    pub h: f64,
    /// `perfect` or a constant plate permittivity.
    #[arg(long, default_value = "perfect")]
    pub plate: String,
    #[arg(long, default_value_t = 1.0)]
    pub plate_mu: f64,
    #[arg(long)]
    pub plate_table: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = CylPlateMode::Full)]
    pub mode: CylPlateMode,
    /// Plate permittivity for `--mode phi-e` (sweep variable `eps`).
    #[arg(long, default_value_t = 10.0)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Normalize::None)]
    pub normalize: Normalize,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ParabolaArgs {
    /// Radius of curvature at the tip; 0 is a half-plane.
    #[arg(long = "R", default_value_t = 0.0)]
    pub r: f64,
    /// Closest distance between tip and plate.
    #[arg(long = "H", default_value_t = 1.0)]
    pub h: f64,
    /// Tilt of the parabola axis from the plate normal, degrees.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, value_enum, default_value_t = Normalize::None)]
    pub normalize: Normalize,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum CpKind {
    Pair,
    Wall,
    WallLargeH,
}

#[derive(Args, Debug, Clone)]
pub struct CpArgs {
    #[arg(long, value_enum, default_value_t = CpKind::Pair)]
    pub kind: CpKind,
    #[arg(long, default_value_t = 5.0)]
    pub d: f64,
    /// Height of both objects above the wall.
    #[arg(long = "H", default_value_t = 1.0)]
    pub h: f64,
    /// Defaults describe a perfect sphere of unit radius.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha_z: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha_par: f64,
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    pub beta_z: f64,
    #[arg(long, default_value_t = -0.5, allow_negative_numbers = true)]
    pub beta_par: f64,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Prolate,
    Oblate,
}

#[derive(Args, Debug, Clone)]
pub struct SpheroidArgs {
    #[arg(long, value_enum, default_value_t = Shape::Prolate)]
    pub shape: Shape,
    /// Length of a prolate spheroid.
    #[arg(long = "L", default_value_t = 10.0)]
    pub l: f64,
    /// Radius (transverse for prolate, disk radius for oblate).
    #[arg(long = "R", default_value_t = 1.0)]
    pub r: f64,
    #[arg(long, default_value_t = 100.0)]
    pub d: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub psi: f64,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Second sweep axis for grids.
    #[arg(long, default_value = "none")]
    pub sweep2: String,
    #[arg(long, allow_negative_numbers = true)]
    pub from2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to2: Option<f64>,
    #[arg(long, default_value_t = 11)]
    pub points2: usize,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfaKindArg {
    Parabola,
    TwoSpheres,
    CylPair,
    CylPlate,
    Theta1PfaR,
    Theta1PfaBigR,
    Theta1Fit,
}

#[derive(Args, Debug, Clone)]
pub struct PfaArgs {
    #[arg(long, value_enum)]
    pub kind: PfaKindArg,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub big_r: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r: f64,
    /// Surface gap.
    #[arg(long, default_value_t = 0.1)]
    pub a: f64,
    /// `r/R` for the θ₁ formulas.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub x: f64,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug, Clone)]
pub struct StabilityArgs {
    /// Permittivity of object a, or `perfect`.
    #[arg(long, default_value = "2")]
    pub eps_a: String,
    #[arg(long, default_value_t = 1.0)]
    pub mu_a: f64,
    #[arg(long)]
    pub table_a: Option<PathBuf>,
    #[arg(long, default_value = "2")]
    pub eps_b: String,
    #[arg(long, default_value_t = 1.0)]
    pub mu_b: f64,
    #[arg(long)]
    pub table_b: Option<PathBuf>,
    /// `vacuum` or a constant permittivity.
    #[arg(long, default_value = "vacuum")]
    pub medium: String,
    #[arg(long, default_value_t = 1.0)]
    pub medium_mu: f64,
    #[arg(long)]
    pub medium_table: Option<PathBuf>,
    /// Typical separation that sets the sampled frequency window.
    #[arg(long, default_value_t = 1.0)]
    pub separation: f64,
    #[command(flatten)]
    pub io: IoArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SelftestArgs {
    /// Comma-separated subset of criteria, e.g. `1,5,8`.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<u8>,
    #[command(flatten)]
    pub io: IoArgs,
}
