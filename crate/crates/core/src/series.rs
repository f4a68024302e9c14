//! Small-coupling expansion of the two level families.
//!
//! Near the unperturbed level `s = nπ` write `s = nπ + ρ(t)`. With
//! `sin(nπ + ρ) = (-1)ⁿ sin ρ` the branch equation becomes
//!
//! ```text
//! t sinh t = σ (-1)ⁿ (nπ + ρ) sin ρ,   σ = +1 for F₋, -1 for F₊
//! ```
//!
//! which is even in `t`, so `ρ = Σ c₂ᵢ t²ⁱ`. The coefficients follow from
//! matching powers of `u = t²` in formal power series.

use crate::error::{domain, Error, Result};
use crate::roots::brent;
use crate::secular::{t_sinh_t, SecularBranch};
use nalgebra::{DMatrix, DVector};
use std::f64::consts::PI;

pub const MAX_SERIES_ORDER: usize = 20;

/// Even-power coefficients of `ρ(t)` for one level and branch.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    pub n: u32,
    pub branch: SecularBranch,
    /// `coeffs[i]` multiplies `t^(2i + 2)`.
    pub coeffs: Vec<f64>,
    pub max_order: usize,
}

impl SeriesCoefficients {
    /// Coefficient of `t^order`; zero for odd or out-of-range orders.
    pub fn coefficient(&self, order: usize) -> f64 {
        if order < 2 || order % 2 == 1 {
            return 0.0;
        }
        self.coeffs.get(order / 2 - 1).copied().unwrap_or(0.0)
    }

    /// `ρ(t)` by Horner in `t²`.
    pub fn rho(&self, t: f64) -> f64 {
        let u = t * t;
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c) * u
    }
}

/// `σ (-1)ⁿ`: the sign in front of `(nπ + ρ) sin ρ`.
fn level_sign(n: u32, branch: SecularBranch) -> f64 {
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    -branch.sign() * parity
}

fn check_order(max_order: usize) -> Result<usize> {
    if max_order < 2 || max_order % 2 == 1 || max_order > MAX_SERIES_ORDER {
        return Err(domain("max_order must be even and within [2, 20]", max_order as f64));
    }
    Ok(max_order / 2)
}

fn check_level(n: u32) -> Result<()> {
    if n == 0 {
        return Err(domain("the expansion needs n >= 1", 0.0));
    }
    Ok(())
}

/// Truncated product of two series in `u` (index = power).
fn mul(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `sin ρ` for a series with zero constant term, truncated to `len` terms.
fn sin_series(rho: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    let rho2 = mul(rho, rho, len);
    let mut term = rho[..len].to_vec();
    let mut k = 0usize;
    while term.iter().any(|&x| x != 0.0) {
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        for (o, &x) in out.iter_mut().zip(&term) {
            *o += sign * x;
        }
        let denom = ((2 * k + 2) * (2 * k + 3)) as f64;
        term = mul(&term, &rho2, len).into_iter().map(|x| x / denom).collect();
        k += 1;
    }
    out
}

/// Coefficients `c₂ … c_{max_order}` by order-by-order matching.
pub fn series_coefficients(n: u32, branch: SecularBranch, max_order: usize) -> Result<SeriesCoefficients> {
    check_level(n)?;
    let m = check_order(max_order)?;
    let a = n as f64 * PI;
    let sign = level_sign(n, branch);
    let len = m + 1;

    // t sinh t = Σ_{j≥0} u^{j+1} / (2j+1)!
    let mut lhs = vec![0.0; len];
    let mut fact = 1.0;
    for j in 0..m {
        if j > 0 {
            fact *= ((2 * j) * (2 * j + 1)) as f64;
        }
        lhs[j + 1] = 1.0 / fact;
    }

    // rho[0] = 0; rho[k] = c_{2k}
    let mut rho = vec![0.0; len];
    for order in 1..=m {
        // Coefficient of u^order in (a + ρ) sin ρ with c_{2·order} still zero;
        // c_{2·order} enters only through the linear term a·c.
        let sin_rho = sin_series(&rho, len);
        let mut a_plus = rho.clone();
        a_plus[0] += a;
        let rhs = mul(&a_plus, &sin_rho, len);
        rho[order] = (sign * lhs[order] - rhs[order]) / a;
    }
    Ok(SeriesCoefficients {
        n,
        branch,
        coeffs: rho[1..].to_vec(),
        max_order,
    })
}

/// Coefficients `[c₂, c₄, c₆]` exactly as printed in the original derivation
/// (upper sign ↔ [`SecularBranch::FactorMinus`]).
///
/// The printed `t⁴` term, `-1/(nπ)³ ± (-1)ⁿ/(nπ)`, does not survive the
/// order-by-order expansion, which gives `± (-1)ⁿ/(6nπ) - 1/(nπ)³`; the
/// `t²` and `t⁶` terms agree with it. Kept for comparison only.
pub fn printed_coefficients(n: u32, branch: SecularBranch) -> Result<[f64; 3]> {
    check_level(n)?;
    let a = n as f64 * PI;
    let pm = -branch.sign();
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok([
        pm * parity / a,
        -1.0 / a.powi(3) + pm * parity / a,
        parity * (pm * 2.0 / a.powi(5) - parity / (3.0 * a.powi(3)) + pm / (6.0 * a.powi(3)) + pm / (120.0 * a)),
    ])
}

/// Solves the branch equation for `ρ = s - nπ` at fixed small `t`.
///
/// Works in `ρ` rather than `s` so the deviation keeps full relative precision.
pub fn solve_level_shift(n: u32, branch: SecularBranch, t: f64) -> Result<f64> {
    let a = n as f64 * PI;
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let lhs = t_sinh_t(t);
    // F = t sinh t + sign·(nπ + ρ)·sin(nπ + ρ)
    let f = |rho: f64| lhs + branch.sign() * parity * (a + rho) * rho.sin();
    Ok(brent(f, -0.5, 0.5, 0.0, 400)?.x)
}

/// Exact `E - (nπ)²` of the level `(n, branch)` at coupling `z`, solved in
/// `ρ = s - nπ` with `t = Z / (2(nπ + ρ))`.
pub fn numeric_shift(n: u32, branch: SecularBranch, z: f64) -> Result<f64> {
    check_level(n)?;
    let a = n as f64 * PI;
    if !(z > 0.0) || z > a / 2.0 {
        return Err(domain("numeric shift needs 0 < Z <= n*pi/2", z));
    }
    let parity = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let f = |rho: f64| {
        let t = z / (2.0 * (a + rho));
        t_sinh_t(t) + branch.sign() * parity * (a + rho) * rho.sin()
    };
    let rho = brent(f, -0.5, 0.5, 0.0, 400)?.x;
    let t = z / (2.0 * (a + rho));
    Ok(2.0 * a * rho + rho * rho - t * t)
}

/// Least-squares fit of the even expansion to numerically solved shifts.
///
/// A few more terms than requested are fitted so that truncation does not
/// leak into the returned low-order coefficients.
pub fn fit_series_numeric(
    n: u32,
    branch: SecularBranch,
    t_samples: &[f64],
    max_order: usize,
) -> Result<SeriesCoefficients> {
    check_level(n)?;
    let m = check_order(max_order)?;
    if let Some(&bad) = t_samples.iter().find(|&&t| !(t > 0.0 && t <= 0.2)) {
        return Err(domain("fit samples must lie in (0, 0.2]", bad));
    }
    let mut distinct: Vec<f64> = t_samples.to_vec();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < m + 2 {
        return Err(Error::FitConditioning(format!(
            "{} distinct samples, need at least {}",
            distinct.len(),
            m + 2
        )));
    }
    let terms = (m + 3).min(distinct.len() - 1).max(m);
    let u_max = distinct.iter().fold(0.0f64, |acc, &t| acc.max(t * t));

    let rows = distinct.len();
    let mut design = DMatrix::<f64>::zeros(rows, terms);
    let mut rhs = DVector::<f64>::zeros(rows);
    for (i, &t) in distinct.iter().enumerate() {
        let u = t * t;
        let rho = solve_level_shift(n, branch, t)?;
        rhs[i] = rho / u;
        let x = u / u_max;
        let mut p = 1.0;
        for j in 0..terms {
            design[(i, j)] = p;
            p *= x;
        }
    }
    let svd = design.svd(true, true);
    let (smax, smin) = svd
        .singular_values
        .iter()
        .fold((0.0f64, f64::INFINITY), |(hi, lo), &v| (hi.max(v), lo.min(v)));
    if !(smin > 1e-13 * smax) {
        return Err(Error::FitConditioning(format!("condition number {:e}", smax / smin)));
    }
    let beta = svd
        .solve(&rhs, 0.0)
        .map_err(|e| Error::FitConditioning(e.to_string()))?;
    let coeffs = (0..m).map(|j| beta[j] / u_max.powi(j as i32)).collect();
    Ok(SeriesCoefficients {
        n,
        branch,
        coeffs,
        max_order,
    })
}

/// Closure of `2 s t = Z` with `s = nπ + ρ(t)`: returns `(t, ρ)`.
fn close_constraint(coeffs: &SeriesCoefficients, z: f64) -> Result<(f64, f64)> {
    let a = coeffs.n as f64 * PI;
    if !(z >= 0.0) || z > a / 2.0 {
        return Err(domain("perturbative energy needs 0 <= Z <= n*pi/2", z));
    }
    let mut t = z / (2.0 * a);
    for _ in 0..100 {
        let next = z / (2.0 * (a + coeffs.rho(t)));
        let done = (next - t).abs() <= 1e-14;
        t = next;
        if done {
            return Ok((t, coeffs.rho(t)));
        }
    }
    Err(Error::NonConvergence {
        routine: "perturbative_energy",
        detail: format!("fixed point at Z = {z} did not settle in 100 steps"),
    })
}

/// `E = (nπ + ρ(t))² - t²` with `t` fixed by `2 (nπ + ρ(t)) t = Z`.
pub fn perturbative_energy(n: u32, branch: SecularBranch, z: f64, max_order: usize) -> Result<f64> {
    let coeffs = series_coefficients(n, branch, max_order)?;
    let (t, rho) = close_constraint(&coeffs, z)?;
    let s = n as f64 * PI + rho;
    Ok(s * s - t * t)
}

/// `E - (nπ)² = 2nπρ + ρ² - t²`, accurate to full relative precision even
/// when the shift is far below the level spacing.
pub fn perturbative_shift(n: u32, branch: SecularBranch, z: f64, max_order: usize) -> Result<f64> {
    let coeffs = series_coefficients(n, branch, max_order)?;
    let (t, rho) = close_constraint(&coeffs, z)?;
    let a = n as f64 * PI;
    Ok(2.0 * a * rho + rho * rho - t * t)
}
