//! `ln det(I − N)` of a real round-trip matrix.

use nalgebra::DMatrix;

use crate::error::{CasimirError, Result};

/// Spectral label of a round-trip block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralParameter {
    /// `p = sqrt(κ² + k_z²)` for geometries that depend on it only.
    Radial(f64),
    Planar {
        kappa: f64,
        kz: f64,
    },
}

/// Dense round-trip matrix `N` with its channel labels.
#[derive(Debug, Clone)]
pub struct RoundTripBlock {
    matrix: DMatrix<f64>,
    channels: Vec<i64>,
    spectral: SpectralParameter,
}

impl RoundTripBlock {
    pub fn new(
        matrix: DMatrix<f64>,
        channels: Vec<i64>,
        spectral: SpectralParameter,
    ) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() != channels.len() {
            return Err(CasimirError::InvalidParameter(format!(
                "round-trip block is {}x{} with {} channel labels",
                matrix.nrows(),
                matrix.ncols(),
                channels.len()
            )));
        }
        check_finite(&matrix)?;
        Ok(Self {
            matrix,
            channels,
            spectral,
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn channels(&self) -> &[i64] {
        &self.channels
    }

    pub fn spectral(&self) -> SpectralParameter {
        self.spectral
    }

    pub fn dim(&self) -> usize {
        self.channels.len()
    }
}

/// `ln det(I − N)`.
pub fn logdet_i_minus(n: &RoundTripBlock) -> Result<f64> {
    logdet_identity_minus(&n.matrix)
}

/// `ln det(I − M)` by LU with partial pivoting. The determinant must be
/// positive; a zero or negative value means `I − M` is singular or was
/// assembled wrongly.
pub fn logdet_identity_minus(m: &DMatrix<f64>) -> Result<f64> {
    if let Some(v) = small_norm_series(m, -1.0)? {
        return Ok(v);
    }
    let a = DMatrix::identity(m.nrows(), m.ncols()) - m;
    logdet_positive(a)
}

/// `ln det(I + M)`.
pub fn logdet_identity_plus(m: &DMatrix<f64>) -> Result<f64> {
    if let Some(v) = small_norm_series(m, 1.0)? {
        return Ok(v);
    }
    let a = DMatrix::identity(m.nrows(), m.ncols()) + m;
    logdet_positive(a)
}

/// `tr ln(I + sM) = Σ_k (−1)^{k+1} s^k tr M^k / k` when `‖M‖_F < 1/4`.
/// LU of `I ± M` loses every digit of `ln det` below machine epsilon; the
/// series keeps them.
fn small_norm_series(m: &DMatrix<f64>, s: f64) -> Result<Option<f64>> {
    check_finite(m)?;
    let norm = m.norm();
    if !(norm < 0.25) || m.nrows() == 0 {
        return Ok(None);
    }
    let x = m * s;
    let mut power = x.clone();
    let mut sum = 0.0;
    let mut bound = norm;
    for k in 1..=64 {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * power.trace() / k as f64;
        bound *= norm;
        if bound / (k + 1) as f64 <= 1e-17 * sum.abs() || bound == 0.0 {
            break;
        }
        power = &power * &x;
    }
    Ok(Some(sum))
}

fn logdet_positive(a: DMatrix<f64>) -> Result<f64> {
    check_finite(&a)?;
    if a.nrows() == 0 {
        return Ok(0.0);
    }
    let lu = a.lu();
    let mut sign = lu.p().determinant::<f64>();
    let mut acc = 0.0;
    let u = lu.u();
    for i in 0..u.nrows() {
        let d = u[(i, i)];
        if d == 0.0 {
            return Err(CasimirError::SingularDeterminant(f64::NEG_INFINITY));
        }
        sign *= d.signum();
        acc += d.abs().ln();
    }
    if sign < 0.0 || !acc.is_finite() {
        return Err(CasimirError::SingularDeterminant(acc));
    }
    Ok(acc)
}

fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if !m[(i, j)].is_finite() {
                return Err(CasimirError::NonFiniteMatrix { row: i, col: j });
            }
        }
    }
    Ok(())
}
