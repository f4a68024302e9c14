//! Model constants and the closed-form quantization functions.
//!
//! Real eigenvalues are parametrized by the complex wavenumber `k = t + i s`
//! of the right half-circle, with `E = s² - t²` and `2 s t = Z`. Three
//! equivalent forms of the quantization condition are provided:
//!
//! * [`secular_t`]: expressed through `t` only (oscillates as `t → 0+`),
//! * [`secular_s`]: expressed through `s` only (well suited to small `Z`),
//! * [`secular_factor`]: the factored form `t sinh t ± s sin s`, which is the
//!   one used for root finding.
//!
//! `secular_t = 16 F₊ F₋` and `secular_s = 16 F₊ F₋` identically on the
//! constraint curve; the `*_residual` functions measure that agreement.

use crate::error::{domain, Result};
use std::f64::consts::{LN_2, PI};
use std::fmt;

/// Hyperbolic arguments beyond this are evaluated in the log domain.
const LOG_DOMAIN_ARG: f64 = 350.0;

/// Strength `Z ≥ 0` of the imaginary step `iZ sign(x)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(z: f64) -> Result<Self> {
        if !z.is_finite() || z < 0.0 {
            return Err(domain("coupling must be finite and non-negative", z));
        }
        Ok(Coupling(z))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Real and imaginary part of the right-piece wavenumber `k = t + i s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactParams {
    pub t: f64,
    pub s: f64,
}

impl ExactParams {
    pub fn new(t: f64, s: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(domain("t must be finite and non-negative", t));
        }
        if !s.is_finite() || s < 0.0 {
            return Err(domain("s must be finite and non-negative", s));
        }
        Ok(ExactParams { t, s })
    }

    /// The point on the constraint curve `2 s t = Z` with the given `s > 0`.
    pub fn on_curve(s: f64, z: Coupling) -> Result<Self> {
        if !(s > 0.0) || !s.is_finite() {
            return Err(domain("s must be positive", s));
        }
        Ok(ExactParams {
            t: z.value() / (2.0 * s),
            s,
        })
    }

    /// Inverts `E = s² - t²`, `2 s t = Z` for a real energy.
    pub fn from_energy(energy: f64, z: Coupling) -> Result<Self> {
        let z = z.value();
        if !energy.is_finite() || (energy <= 0.0 && z == 0.0) {
            return Err(domain("energy has no (t, s) preimage", energy));
        }
        let s2 = 0.5 * (energy + energy.hypot(z));
        let s = s2.sqrt();
        Ok(ExactParams { t: z / (2.0 * s), s })
    }

    pub fn coupling(&self) -> f64 {
        2.0 * self.s * self.t
    }

    pub fn energy(&self) -> f64 {
        energy_of(self)
    }
}

/// Which factor of `(t sinh t + s sin s)(t sinh t - s sin s)` vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SecularBranch {
    /// `t sinh t + s sin s = 0`
    FactorPlus,
    /// `t sinh t - s sin s = 0`
    FactorMinus,
}

impl SecularBranch {
    pub const ALL: [SecularBranch; 2] = [SecularBranch::FactorMinus, SecularBranch::FactorPlus];

    /// Sign multiplying `s sin s` in the factor.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            SecularBranch::FactorPlus => 1.0,
            SecularBranch::FactorMinus => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SecularBranch::FactorPlus => "plus",
            SecularBranch::FactorMinus => "minus",
        }
    }
}

impl fmt::Display for SecularBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One real eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralPoint {
    pub z: Coupling,
    pub branch: SecularBranch,
    /// Nearest unperturbed level, `round(s / π)`.
    pub n: u32,
    pub params: ExactParams,
    pub energy: f64,
    /// `|F_branch(t, s)|` at the returned root.
    pub residual: f64,
}

/// `t sinh t`, saturating at `f64::MAX` instead of overflowing. Even in `t`.
pub fn t_sinh_t(t: f64) -> f64 {
    let a = t.abs();
    if a <= LOG_DOMAIN_ARG {
        a * a.sinh()
    } else {
        let log = a.ln() + a - LN_2 + (-(-2.0 * a).exp()).ln_1p();
        exp_saturating(log)
    }
}

fn exp_saturating(log: f64) -> f64 {
    if log >= f64::MAX.ln() {
        f64::MAX
    } else {
        log.exp()
    }
}

/// `c · 4 e^{-2x} (e^{2x} - 1)² = 16 c sinh² x` for `c > 0`, written the way it
/// appears in the t- and s-representations, with a log-domain tail.
fn growth_term(x: f64, c: f64) -> f64 {
    if x <= LOG_DOMAIN_ARG {
        let w = (2.0 * x).exp_m1() * (-x).exp();
        let v = 4.0 * w * w * c;
        if v.is_finite() {
            return v;
        }
    }
    exp_saturating(c.ln() + (4.0f64).ln() + 2.0 * x + 2.0 * (-(-2.0 * x).exp()).ln_1p())
}

/// Quantization condition in the t-representation:
/// `4 e^{-2t} (e^{2t} - 1)² t² + (2Z²/t²)(cos(Z/t) - 1)`.
pub fn secular_t(t: f64, z: Coupling) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("t must be positive", t));
    }
    let z = z.value();
    let first = growth_term(t, t * t);
    let second = 2.0 * z * z / (t * t) * ((z / t).cos() - 1.0);
    Ok(first + second)
}

/// Quantization condition in the s-representation:
/// `8 s² (cos 2s - 1) + e^{-Z/s} (e^{Z/s} - 1)² Z²/s²`.
pub fn secular_s(s: f64, z: Coupling) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain("s must be positive", s));
    }
    let z = z.value();
    let first = 8.0 * s * s * ((2.0 * s).cos() - 1.0);
    // e^{-x}(e^x - 1)² = growth_term(x / 2, 1) / 4
    let second = if z == 0.0 {
        0.0
    } else {
        growth_term(0.5 * z / s, 0.25 * z * z / (s * s))
    };
    Ok(first + second)
}

/// `t sinh t ± s sin s` for arbitrary real `t`, `s`.
#[inline]
pub fn factor_value(t: f64, s: f64, branch: SecularBranch) -> f64 {
    t_sinh_t(t) + branch.sign() * s * s.sin()
}

/// Factored quantization condition; a real eigenvalue sits where one factor
/// vanishes on the curve `2 s t = Z`.
pub fn secular_factor(params: &ExactParams, branch: SecularBranch) -> f64 {
    factor_value(params.t, params.s, branch)
}

/// `|secular_t - 16 F₊ F₋|` with `s = Z / (2t)`, relative to the larger of
/// the two cancelling terms `16 (t sinh t)²` and `16 (s sin s)²` (at least 1).
pub fn representation_identity_residual(t: f64, z: Coupling) -> Result<f64> {
    let lhs = secular_t(t, z)?;
    let s = z.value() / (2.0 * t);
    let plus = factor_value(t, s, SecularBranch::FactorPlus);
    let minus = factor_value(t, s, SecularBranch::FactorMinus);
    Ok((lhs - 16.0 * plus * minus).abs() / term_scale(t, s))
}

/// `|secular_s - 16((t sinh t)² - (s sin s)²)|` with `t = Z / (2s)`, scaled as
/// in [`representation_identity_residual`].
pub fn s_representation_residual(s: f64, z: Coupling) -> Result<f64> {
    let lhs = secular_s(s, z)?;
    let t = z.value() / (2.0 * s);
    let a = t_sinh_t(t);
    let b = s * s.sin();
    let rhs = 16.0 * a * a - 16.0 * b * b;
    Ok((lhs - rhs).abs() / term_scale(t, s))
}

fn term_scale(t: f64, s: f64) -> f64 {
    let a = t_sinh_t(t);
    let b = s * s.sin();
    (16.0 * a * a).max(16.0 * b * b).max(1.0)
}

/// `E = s² - t²`.
#[inline]
pub fn energy_of(params: &ExactParams) -> f64 {
    params.s * params.s - params.t * params.t
}

/// A factor and its first two `s`-derivatives along `t = Z / (2s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveFactor {
    pub value: f64,
    pub ds: f64,
    pub dss: f64,
}

/// Evaluates `F(s) = F_branch(Z / (2s), s)` with analytic derivatives.
pub fn factor_on_curve(s: f64, z: f64, branch: SecularBranch) -> CurveFactor {
    let t = z / (2.0 * s);
    let sign = branch.sign();
    let (sh, ch) = (t.sinh(), t.cosh());
    let g1 = sh + t * ch;
    let g2 = 2.0 * ch + t * sh;
    let (sn, cs) = s.sin_cos();
    let h1 = sn + s * cs;
    let h2 = 2.0 * cs - s * sn;
    let dt = -t / s;
    CurveFactor {
        value: factor_value(t, s, branch),
        ds: g1 * dt + sign * h1,
        dss: g2 * dt * dt + g1 * 2.0 * t / (s * s) + sign * h2,
    }
}

/// `∂F/∂Z` at fixed `s` along `t = Z / (2s)`.
pub fn factor_dz(s: f64, z: f64) -> f64 {
    let t = z / (2.0 * s);
    (t.sinh() + t * t.cosh()) / (2.0 * s)
}

/// `dE/ds` along the constraint curve.
pub fn energy_ds(s: f64, z: f64) -> f64 {
    let t = z / (2.0 * s);
    2.0 * s + 2.0 * t * t / s
}

/// Unperturbed level closest to `s`.
pub fn level_index(s: f64) -> u32 {
    (s / PI).round().max(0.0) as u32
}
