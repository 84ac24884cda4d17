//! Weber parabolic cylinder functions for the parabolic-mirror amplitudes.
//!
//! Only two real families are needed:
//!
//! * `i^ν D_ν(iu)` for integer `ν >= 0`. With `D_ν(z) = e^{-z²/4} He_ν(z)`,
//!   this equals `(-1)^ν e^{u²/4} h_ν(u)` where `h_0 = 1`, `h_1 = u`,
//!   `h_{n+1} = u h_n + n h_{n-1}`. Every term of `h_ν` is positive for
//!   `u >= 0`, so the recurrence has no cancellation.
//! * `D_{-n}(u)` for `n >= 1`, `u >= 0`, which is positive. `D_{-1}` is
//!   `sqrt(π/2) e^{-u²/4} erfcx(u/√2)`, and higher orders are carried as
//!   ratios `r_n = D_{-n-1}/D_{-n}` obeying `r_{n-1} = 1/(u + n r_n)`.
//!
//! The ratio recurrence is run upward from the closed forms when
//! `u sqrt(n_max) <= 2` (error growth at most `e^4`) and downward from a
//! distant starting order otherwise (where it contracts).

use errorfunctions::RealErrorFunctions;

use super::{SpecFunError, MAX_ORDER};

/// Largest `u sqrt(n)` for which the ratios are recurred upward.
const FORWARD_LIMIT: f64 = 2.0;
/// Required decay `exp(-BACKWARD_DECAY)` of the starting-value error.
const BACKWARD_DECAY: f64 = 36.0;

/// A real number stored as `sign * exp(ln_abs)`; zero has `sign == 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub sign: f64,
    pub ln_abs: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        sign: 0.0,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn new(sign: f64, ln_abs: f64) -> Self {
        if sign == 0.0 || ln_abs == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self { sign, ln_abs }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0.0
    }

    /// Unscaled value; an error if it does not fit in an `f64`.
    pub fn to_f64(self, function: &'static str) -> Result<f64, SpecFunError> {
        if self.is_zero() {
            return Ok(0.0);
        }
        if self.ln_abs > f64::MAX.ln() {
            return Err(SpecFunError::Overflow {
                function,
                ln_value: self.ln_abs,
            });
        }
        Ok(self.sign * self.ln_abs.exp())
    }
}

fn check(function: &'static str, order: usize, u: f64) -> Result<(), SpecFunError> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(SpecFunError::Domain { function, x: u });
    }
    if order > MAX_ORDER {
        return Err(SpecFunError::OrderTooLarge {
            order,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

/// `ln D_{-1}(u)` for `u >= 0`.
fn ln_d_minus_one(u: f64) -> f64 {
    0.5 * (std::f64::consts::PI / 2.0).ln() - 0.25 * u * u
        + (u / std::f64::consts::SQRT_2).erfcx().ln()
}

/// `r_n = D_{-n-1}(u) / D_{-n}(u)` for `n = 0..=n_max`; `r_0` is unused and
/// set to `D_{-1}(u)/D_0(u)`.
fn d_ratios(n_max: usize, u: f64) -> Vec<f64> {
    let mut r = vec![0.0; n_max + 1];
    let d0_over = (std::f64::consts::PI / 2.0).sqrt() * (u / std::f64::consts::SQRT_2).erfcx();
    r[0] = d0_over;
    if n_max == 0 {
        return r;
    }
    if u * (n_max as f64).sqrt() <= FORWARD_LIMIT {
        // D_{-2}/D_{-1} = D_0/D_{-1} - u
        r[1] = 1.0 / d0_over - u;
        for n in 2..=n_max {
            r[n] = (1.0 / r[n - 1] - u) / n as f64;
        }
    } else {
        let root_top = (n_max as f64).sqrt() + BACKWARD_DECAY / (2.0 * u);
        let n_top = (root_top * root_top).ceil() as usize + 1;
        let nf = n_top as f64;
        let mut rn = (-u + (u * u + 4.0 * nf).sqrt()) / (2.0 * nf);
        for n in (n_max + 1..=n_top).rev() {
            rn = 1.0 / (u + n as f64 * rn);
        }
        r[n_max] = rn;
        for n in (2..=n_max).rev() {
            r[n - 1] = 1.0 / (u + n as f64 * r[n]);
        }
    }
    r
}

/// `ln D_{-n}(u)` for `n >= 1`, `u >= 0`.
pub fn ln_weber_d_negative(n: usize, u: f64) -> Result<f64, SpecFunError> {
    check("weber_d_negative", n, u)?;
    if n == 0 {
        return Err(SpecFunError::Domain {
            function: "weber_d_negative",
            x: u,
        });
    }
    let r = d_ratios(n - 1, u);
    Ok(ln_d_minus_one(u) + r[1..].iter().map(|v| v.ln()).sum::<f64>())
}

/// `D_ν(u)` for integer `ν >= 0` and any finite real `u`.
pub fn weber_d_nonnegative(nu: usize, u: f64) -> Result<SignedLog, SpecFunError> {
    if !u.is_finite() {
        return Err(SpecFunError::Domain {
            function: "weber_d_nonnegative",
            x: u,
        });
    }
    if nu > MAX_ORDER {
        return Err(SpecFunError::OrderTooLarge {
            order: nu,
            max: MAX_ORDER,
        });
    }
    // He_{n+1} = u He_n - n He_{n-1}, rescaled to stay in range.
    let mut prev = 1.0;
    let mut cur = u;
    let mut ln_scale = 0.0;
    if nu == 0 {
        cur = 1.0;
    } else {
        for n in 1..nu {
            let next = u * cur - n as f64 * prev;
            prev = cur;
            cur = next;
            let m = cur.abs().max(prev.abs());
            if m > 1e100 {
                prev /= m;
                cur /= m;
                ln_scale += m.ln();
            }
        }
    }
    if cur == 0.0 {
        return Ok(SignedLog::ZERO);
    }
    Ok(SignedLog::new(
        cur.signum(),
        cur.abs().ln() + ln_scale - 0.25 * u * u,
    ))
}

/// Electric and magnetic parabolic amplitudes for `ν = 0..=ν_max` at one
/// argument `u`.
///
/// `e(ν) = i^ν D_ν(iu) / D_{-ν-1}(u)`,
/// `m(ν) = i^{ν+1} D'_ν(iu) / D'_{-ν-1}(u)`.
/// Signs are `(-1)^ν` and `-(-1)^ν` respectively.
#[derive(Debug, Clone)]
pub struct ParabolicRatios {
    u: f64,
    /// `ln h_ν(u)`; `-inf` where `h_ν` vanishes (odd `ν` at `u = 0`)
    ln_h: Vec<f64>,
    /// `ln D_{-ν-1}(u)` for `ν = 0..=ν_max`
    ln_d: Vec<f64>,
    /// `D_{-n-1}/D_{-n}` for `n = 0..=ν_max+1`
    r: Vec<f64>,
}

impl ParabolicRatios {
    pub fn new(nu_max: usize, u: f64) -> Result<Self, SpecFunError> {
        check("parabolic_ratios", nu_max, u)?;
        let u = if u < f64::MIN_POSITIVE { 0.0 } else { u };
        let r = d_ratios(nu_max + 1, u);
        let mut ln_d = Vec::with_capacity(nu_max + 1);
        let mut acc = ln_d_minus_one(u);
        ln_d.push(acc);
        for n in 1..=nu_max {
            acc += r[n].ln();
            ln_d.push(acc);
        }

        let mut ln_h = Vec::with_capacity(nu_max + 1);
        ln_h.push(0.0);
        if u == 0.0 {
            // h_{2m}(0) = (2m-1)!!, h_{odd}(0) = 0
            let mut even = 0.0;
            for n in 1..=nu_max {
                if n % 2 == 1 {
                    ln_h.push(f64::NEG_INFINITY);
                } else {
                    even += ((n - 1) as f64).ln();
                    ln_h.push(even);
                }
            }
        } else {
            // s_n = h_n / h_{n-1}
            let mut s = u;
            let mut acc = 0.0;
            for n in 1..=nu_max {
                if n > 1 {
                    s = u + (n - 1) as f64 / s;
                }
                acc += s.ln();
                ln_h.push(acc);
            }
        }
        Ok(Self { u, ln_h, ln_d, r })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn nu_max(&self) -> usize {
        self.ln_h.len() - 1
    }

    fn parity(nu: usize) -> f64 {
        if nu % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `i^ν D_ν(iu) / D_{-ν-1}(u)`.
    pub fn e(&self, nu: usize) -> SignedLog {
        let u = self.u;
        SignedLog::new(
            Self::parity(nu),
            0.25 * u * u + self.ln_h[nu] - self.ln_d[nu],
        )
    }

    /// `i^{ν+1} D'_ν(iu) / D'_{-ν-1}(u)`.
    pub fn m(&self, nu: usize) -> SignedLog {
        let u = self.u;
        // d/du h-part: ν h_{ν-1} + (u/2) h_ν
        let ln_num = if nu == 0 {
            if u == 0.0 {
                return SignedLog::ZERO;
            }
            (0.5 * u).ln()
        } else if u == 0.0 {
            if nu % 2 == 0 {
                return SignedLog::ZERO;
            }
            (nu as f64).ln() + self.ln_h[nu - 1]
        } else {
            let s = (self.ln_h[nu] - self.ln_h[nu - 1]).exp();
            self.ln_h[nu - 1] + (nu as f64 + 0.5 * u * s).ln()
        };
        // |D'_{-ν-1}(u)| = D_{-ν-1}(u) (u/2 + (ν+1) r_{ν+1})
        let ln_den = self.ln_d[nu] + (0.5 * u + (nu + 1) as f64 * self.r[nu + 1]).ln();
        SignedLog::new(-Self::parity(nu), 0.25 * u * u + ln_num - ln_den)
    }
}

/// `i^ν D_ν(iu) / D_{-ν-1}(u)` as a real number.
pub fn pcf_ratio_e(nu: usize, u: f64) -> Result<f64, SpecFunError> {
    ParabolicRatios::new(nu, u)?.e(nu).to_f64("pcf_ratio_e")
}

/// `i^{ν+1} D'_ν(iu) / D'_{-ν-1}(u)` as a real number.
pub fn pcf_ratio_m(nu: usize, u: f64) -> Result<f64, SpecFunError> {
    ParabolicRatios::new(nu, u)?.m(nu).to_f64("pcf_ratio_m")
}
