//! Exceptional points and the broken-symmetry regime.
//!
//! A pair of real levels of the same factor merges where
//! `F(s; Z) = ∂F/∂s(s; Z) = 0` along `t = Z / (2s)`; beyond that coupling the
//! pair continues as complex-conjugate energies `E = K² ± iε`.
//!
//! In the broken regime the wavenumbers of the two half-circles are written
//! `k = s - i t` and `l = p - i q` with
//!
//! ```text
//! s = K sinh α,  t = K cosh α,  p = K sinh β,  q = K cosh β,
//! K² = 2Z / (sinh 2α + sinh 2β),  Re E = K²,  ε = K²/2 (sinh 2β - sinh 2α)
//! ```
//!
//! Note the role swap with [`crate::secular`], where `k = t + i s`. Only
//! `(α, β, K, Re E, ε)` cross this module's boundary; [`BrokenParams::from_energy`]
//! and [`exact_to_broken`] do the conversions explicitly.

use crate::error::{domain, Error, Result};
use crate::secular::{energy_ds, factor_dz, factor_on_curve, Coupling, ExactParams, SecularBranch, SpectralPoint};
use crate::spectrum::{branch_roots, refine_root};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Dirichlet-well critical intervals quoted for comparison (not computed here).
pub const DIRICHLET_CRITICAL: [(f64, f64); 2] = [(4.4748, 4.4754), (12.80154, 12.80156)];
/// Rounded Dirichlet threshold.
pub const DIRICHLET_THRESHOLD: f64 = 4.475;

pub const MAX_CRITICAL_COUNT: usize = 16;

const FOLD_TOL: f64 = 1e-10;
const MIN_CURVATURE: f64 = 1e-4;
const BROKEN_TOL: f64 = 1e-12;
const FD_REL_STEP: f64 = 1e-7;

/// A coalescence of two real levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    /// Position in the increasing sequence of critical couplings. Zero when
    /// produced by [`find_double_root`] on its own.
    pub nu: usize,
    pub z_crit: f64,
    pub s_merge: f64,
    pub t_merge: f64,
    pub e_merge: f64,
    pub branch: SecularBranch,
    /// `∂²F/∂s²` at the fold.
    pub curvature: f64,
    /// `∂F/∂Z` at the fold.
    pub dz: f64,
    /// Final `|F|` and `|∂F/∂s|`.
    pub residual: (f64, f64),
}

impl CriticalPoint {
    /// Half distance in `s` between the two real roots at `z < z_crit`, to
    /// leading order.
    fn half_gap(&self, z: f64) -> f64 {
        (2.0 * (self.dz / self.curvature).abs() * (z - self.z_crit).abs()).sqrt()
    }
}

fn curve_value(s: f64, z: f64, branch: SecularBranch) -> (f64, f64) {
    let c = factor_on_curve(s, z, branch);
    (c.value, c.ds)
}

/// Polishes a fold `{F = 0, ∂F/∂s = 0}` by two-dimensional Newton in `(Z, s)`.
pub fn find_double_root(z_guess: f64, s_guess: f64, branch: SecularBranch) -> Result<CriticalPoint> {
    if !(z_guess > 0.0) || !(s_guess > 0.0) {
        return Err(domain("fold search needs Z > 0 and s > 0", z_guess.min(s_guess)));
    }
    let (mut z, mut s) = (z_guess, s_guess);
    let norm = |f: f64, fs: f64| f.hypot(fs);
    for _ in 0..100 {
        let cf = factor_on_curve(s, z, branch);
        let (f, fs, fss) = (cf.value, cf.ds, cf.dss);
        let h = 1e-6 * z.max(1.0);
        let (fp, fsp) = curve_value(s, z + h, branch);
        let (fm, fsm) = curve_value(s, z - h, branch);
        let fz = (fp - fm) / (2.0 * h);
        let fsz = (fsp - fsm) / (2.0 * h);
        let det = fz * fss - fs * fsz;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::SingularJacobian {
                routine: "find_double_root",
                det,
            });
        }
        let dz = (f * fss - fs * fs) / det;
        let ds = (fz * fs - fsz * f) / det;
        let r0 = norm(f, fs);
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (zn, sn) = (z - lambda * dz, s - lambda * ds);
            if zn > 0.0 && sn > 0.0 {
                let (fn_, fsn) = curve_value(sn, zn, branch);
                if norm(fn_, fsn) < r0 || r0 < 1e-14 {
                    z = zn;
                    s = sn;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        let small_step = (lambda * dz).abs() <= 1e-14 * z && (lambda * ds).abs() <= 1e-14 * s;
        if !accepted || small_step {
            break;
        }
    }
    let cf = factor_on_curve(s, z, branch);
    if cf.value.abs() > FOLD_TOL || cf.ds.abs() > FOLD_TOL {
        return Err(Error::NonConvergence {
            routine: "find_double_root",
            detail: format!(
                "|F| = {:e}, |F_s| = {:e} at Z = {z}, s = {s}",
                cf.value.abs(),
                cf.ds.abs()
            ),
        });
    }
    if cf.dss.abs() < MIN_CURVATURE {
        return Err(Error::NotAFold {
            curvature: cf.dss.abs(),
        });
    }
    let params = ExactParams::on_curve(s, Coupling::new(z)?)?;
    Ok(CriticalPoint {
        nu: 0,
        z_crit: z,
        s_merge: s,
        t_merge: params.t,
        e_merge: params.energy(),
        branch,
        curvature: cf.dss,
        dz: factor_dz(s, z),
        residual: (cf.value.abs(), cf.ds.abs()),
    })
}

const TRACK_START: f64 = 0.25;
const TRACK_STEP: f64 = 0.1;
const TRACK_CLOSE_GAP: f64 = 0.1;
const TRACK_Z_LIMIT: f64 = 5000.0;

fn min_gap(roots: &[f64]) -> f64 {
    roots.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// First `count` critical couplings, found by marching all real roots upward
/// in `Z` and polishing every vanishing pair with [`find_double_root`].
///
/// Raising `Z` increases both factors pointwise, so real roots can only
/// disappear in pairs; any other change in the root count is a tracking loss.
pub fn critical_sequence(count: usize) -> Result<Vec<CriticalPoint>> {
    if count == 0 || count > MAX_CRITICAL_COUNT {
        return Err(domain("count must be within [1, 16]", count as f64));
    }
    let s_max = (count as f64 + 4.5) * PI;
    let grid = PI / 64.0;
    let roots_at = |z: f64| -> Result<[Vec<f64>; 2]> {
        Ok([
            branch_roots(z, s_max, grid, SecularBranch::ALL[0])?,
            branch_roots(z, s_max, grid, SecularBranch::ALL[1])?,
        ])
    };

    let mut folds: Vec<CriticalPoint> = Vec::new();
    let mut z = TRACK_START;
    let mut prev = roots_at(z)?;
    while folds.len() < count {
        let gap = prev.iter().map(|r| min_gap(r)).fold(f64::INFINITY, f64::min);
        let mut dz = TRACK_STEP;
        if gap < TRACK_CLOSE_GAP {
            let halvings = ((TRACK_CLOSE_GAP / gap).log2().ceil() as i32 + 1).min(20);
            dz /= 2f64.powi(halvings);
        }
        let z_next = z + dz;
        if z_next > TRACK_Z_LIMIT {
            return Err(Error::TrackingLoss {
                z,
                detail: "coupling limit reached".into(),
            });
        }
        let cur = roots_at(z_next)?;
        for (b, branch) in SecularBranch::ALL.into_iter().enumerate() {
            let (before, after) = (prev[b].len(), cur[b].len());
            if after == before {
                continue;
            }
            if after > before || (before - after) % 2 == 1 {
                return Err(Error::TrackingLoss {
                    z: z_next,
                    detail: format!("{branch} root count went from {before} to {after}"),
                });
            }
            let mut pairs: Vec<(f64, usize)> = prev[b].windows(2).enumerate().map(|(i, w)| (w[1] - w[0], i)).collect();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            for &(_, i) in pairs.iter().take((before - after) / 2) {
                let s_mid = 0.5 * (prev[b][i] + prev[b][i + 1]);
                let fold = find_double_root(0.5 * (z + z_next), s_mid, branch).map_err(|e| Error::TrackingLoss {
                    z: z_next,
                    detail: format!("fold polish failed: {e}"),
                })?;
                let window = (z - dz - 1e-9)..=(z_next + dz + 1e-9);
                let known = folds.iter().any(|f| (f.z_crit - fold.z_crit).abs() < 1e-8);
                if !window.contains(&fold.z_crit) || known {
                    return Err(Error::TrackingLoss {
                        z: z_next,
                        detail: format!("polished fold at Z = {} lies outside the step", fold.z_crit),
                    });
                }
                folds.push(fold);
            }
        }
        prev = cur;
        z = z_next;
    }
    folds.sort_by(|a, b| a.z_crit.total_cmp(&b.z_crit));
    folds.truncate(count);
    for (nu, f) in folds.iter_mut().enumerate() {
        f.nu = nu;
    }
    Ok(folds)
}

/// The two real members of a merging pair at `z < z_crit`, lower energy first.
pub fn real_pair_near_fold(cp: &CriticalPoint, z: f64) -> Result<(SpectralPoint, SpectralPoint)> {
    if !(z < cp.z_crit) {
        return Err(domain("real pair exists only below the critical coupling", z));
    }
    let coupling = Coupling::new(z)?;
    let f = |s: f64| factor_on_curve(s, z, cp.branch).value;
    let centre = f(cp.s_merge);
    let mut w = 2.0 * cp.half_gap(z) + 1e-9;
    for _ in 0..30 {
        let (lo, hi) = (cp.s_merge - w, cp.s_merge + w);
        if lo > 0.0 && f(lo) * centre < 0.0 && f(hi) * centre < 0.0 {
            let a = refine_root((lo, cp.s_merge), coupling, cp.branch)?;
            let b = refine_root((cp.s_merge, hi), coupling, cp.branch)?;
            return Ok(if a.energy <= b.energy { (a, b) } else { (b, a) });
        }
        w *= 1.5;
    }
    Err(Error::NonConvergence {
        routine: "real_pair_near_fold",
        detail: format!("no bracket around s = {} at Z = {z}", cp.s_merge),
    })
}

/// `(α, β, K)` for the broken-regime wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrokenParams {
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
}

/// `E = re_e + i eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexEnergy {
    pub re_e: f64,
    pub eps: f64,
}

impl BrokenParams {
    pub fn new(alpha: f64, beta: f64, z: Coupling) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(domain("alpha must be positive", alpha));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(domain("beta must be positive", beta));
        }
        if !(z.value() > 0.0) {
            return Err(domain("broken regime needs Z > 0", z.value()));
        }
        let k = (2.0 * z.value() / ((2.0 * alpha).sinh() + (2.0 * beta).sinh())).sqrt();
        Ok(BrokenParams { alpha, beta, k })
    }

    /// Parameters of the complex energy `re_e + i eps` at coupling `z`.
    pub fn from_energy(re_e: f64, eps: f64, z: Coupling) -> Result<Self> {
        let zv = z.value();
        if !(re_e > 0.0) {
            return Err(domain("Re E must be positive", re_e));
        }
        if !(eps.abs() < zv) {
            return Err(domain("|eps| must stay below Z", eps));
        }
        let right = Complex64::new(re_e, zv - eps).sqrt();
        let left = Complex64::new(re_e, zv + eps).sqrt();
        let alpha = (right.im / right.re).atanh();
        let beta = (left.im / left.re).atanh();
        BrokenParams::new(alpha, beta, z)
    }

    pub fn energy(&self) -> ComplexEnergy {
        let k2 = self.k * self.k;
        ComplexEnergy {
            re_e: k2,
            eps: 0.5 * k2 * ((2.0 * self.beta).sinh() - (2.0 * self.alpha).sinh()),
        }
    }

    /// The conjugate partner, `ε → -ε`.
    pub fn swapped(&self) -> Self {
        BrokenParams {
            alpha: self.beta,
            beta: self.alpha,
            k: self.k,
        }
    }

    /// `(k, l*)` with `k = s - i t`, `l* = p + i q`.
    pub fn wavenumbers(&self) -> (Complex64, Complex64) {
        let (s, t) = (self.k * self.alpha.sinh(), self.k * self.alpha.cosh());
        let (p, q) = (self.k * self.beta.sinh(), self.k * self.beta.cosh());
        (Complex64::new(s, -t), Complex64::new(p, q))
    }
}

/// Maps a real eigenvalue onto the broken parametrization (`α = β`).
pub fn exact_to_broken(point: &SpectralPoint) -> Result<BrokenParams> {
    BrokenParams::from_energy(point.energy, 0.0, point.z)
}

/// Complex quantization residual together with the magnitude of its largest
/// term, both multiplied by `e^{-(Re k + Re l*)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrokenResidual {
    pub value: Complex64,
    pub scale: f64,
    /// `Re k + Re l*`; the unscaled residual is `value · e^{exponent}`.
    pub exponent: f64,
}

impl BrokenResidual {
    pub fn scaled(&self) -> f64 {
        self.value.norm() / self.scale
    }
}

/// `cosh z · e^{-|Re z|}` and `sinh z · e^{-|Re z|}`.
fn scaled_hyperbolic(z: Complex64) -> (Complex64, Complex64) {
    let a = z.re.abs();
    let up = (z - a).exp();
    let down = (-z - a).exp();
    ((up + down) * 0.5, (up - down) * 0.5)
}

pub fn broken_residual(params: &BrokenParams) -> BrokenResidual {
    let (k, l) = params.wavenumbers();
    let (chk, shk) = scaled_hyperbolic(k);
    let (chl, shl) = scaled_hyperbolic(l);
    let exponent = k.re.abs() + l.re.abs();
    let t1 = 2.0 * k * (-exponent).exp();
    let t2 = 2.0 * k * chk * chl;
    let t3 = (k * k + l * l) / l * shk * shl;
    BrokenResidual {
        value: t1 - t2 - t3,
        scale: t1.norm().max(t2.norm()).max(t3.norm()),
        exponent,
    }
}

/// `2k(1 - cosh k cosh l*) - ((k² + l*²)/l*) sinh k sinh l*`.
pub fn broken_secular(params: &BrokenParams, z: Coupling) -> Complex64 {
    debug_assert!({
        let again = BrokenParams::new(params.alpha, params.beta, z).map(|p| p.k);
        again.map_or(true, |k| (k - params.k).abs() <= 1e-12 * k)
    });
    let r = broken_residual(params);
    r.value * r.exponent.exp()
}

fn newton_target(alpha: f64, beta: f64, z: Coupling) -> Result<(Complex64, f64)> {
    let p = BrokenParams::new(alpha, beta, z)?;
    let r = broken_residual(&p);
    Ok((r.value, r.scaled()))
}

/// Damped Newton for `(α, β)` with a central finite-difference Jacobian.
pub fn solve_broken(z: Coupling, init: BrokenParams) -> Result<(BrokenParams, ComplexEnergy)> {
    let (mut a, mut b) = (init.alpha, init.beta);
    let (mut g, mut res) = newton_target(a, b, z)?;
    for _ in 0..100 {
        if res <= BROKEN_TOL {
            let p = BrokenParams::new(a, b, z)?;
            return Ok((p, p.energy()));
        }
        let ha = FD_REL_STEP * a.abs().max(1e-3);
        let hb = FD_REL_STEP * b.abs().max(1e-3);
        let ga = (newton_target(a + ha, b, z)?.0 - newton_target(a - ha, b, z)?.0) / (2.0 * ha);
        let gb = (newton_target(a, b + hb, z)?.0 - newton_target(a, b - hb, z)?.0) / (2.0 * hb);
        // [ga.re gb.re; ga.im gb.im] (da, db) = (g.re, g.im)
        let det = ga.re * gb.im - gb.re * ga.im;
        let jnorm = ga.norm().max(gb.norm());
        if !(det.abs() > 1e-14 * jnorm * jnorm) {
            return Err(Error::SingularJacobian {
                routine: "solve_broken",
                det,
            });
        }
        let da = (g.re * gb.im - gb.re * g.im) / det;
        let db = (ga.re * g.im - g.re * ga.im) / det;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let (an, bn) = (a - lambda * da, b - lambda * db);
            if an > 0.0 && bn > 0.0 {
                if let Ok((gn, rn)) = newton_target(an, bn, z) {
                    if rn < res {
                        a = an;
                        b = bn;
                        g = gn;
                        res = rn;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if res <= BROKEN_TOL {
        let p = BrokenParams::new(a, b, z)?;
        return Ok((p, p.energy()));
    }
    Err(Error::NonConvergence {
        routine: "solve_broken",
        detail: format!("scaled residual {res:e} at alpha = {a}, beta = {b}"),
    })
}

/// Seed for [`solve_broken`] from the local square-root unfolding of a fold.
///
/// Above the fold the pair is `E ≈ E_f ± i (dE/ds) δs` with
/// `δs = sqrt(2 |F_Z / F_ss| (Z - Z_c))`; the `+iε` member is returned. Below
/// the fold the lower real member is returned.
pub fn seed_from_fold(cp: &CriticalPoint, z: f64) -> Result<BrokenParams> {
    let coupling = Coupling::new(z)?;
    let offset = energy_ds(cp.s_merge, cp.z_crit) * cp.half_gap(z);
    if z > cp.z_crit {
        BrokenParams::from_energy(cp.e_merge, offset, coupling)
    } else {
        BrokenParams::from_energy(cp.e_merge - offset, 0.0, coupling)
    }
}

/// One solved point along a continuation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchSample {
    pub z: f64,
    pub params: BrokenParams,
    pub energy: ComplexEnergy,
}

fn solve_at(z: f64, seed: &BrokenParams) -> Result<BranchSample> {
    let coupling = Coupling::new(z)?;
    let seed = BrokenParams::new(seed.alpha, seed.beta, coupling)?;
    let (params, energy) = solve_broken(coupling, seed).map_err(|e| Error::AtCoupling { z, source: Box::new(e) })?;
    Ok(BranchSample { z, params, energy })
}

/// Natural-parameter continuation on a uniform grid in `Z`, each point seeded
/// by the previous solution.
pub fn continue_in_z(z_from: f64, z_to: f64, steps: usize, start: BrokenParams) -> Result<Vec<BranchSample>> {
    let mut path = Vec::with_capacity(steps + 1);
    let mut seed = start;
    let n = if z_from == z_to { 0 } else { steps.max(1) };
    for i in 0..=n {
        let z = if n == 0 {
            z_from
        } else {
            z_from + (z_to - z_from) * i as f64 / n as f64
        };
        let sample = solve_at(z, &seed)?;
        seed = sample.params;
        path.push(sample);
    }
    Ok(path)
}

/// Follows the `+iε` member from just above a fold to `z_to`.
///
/// Points are spaced quadratically in `Z - Z_c` so that `(α, β)`, which move
/// like `sqrt(Z - Z_c)`, advance evenly; seeds are extrapolated linearly in
/// that square-root variable.
pub fn continue_from_fold(cp: &CriticalPoint, z_to: f64, steps: usize) -> Result<Vec<BranchSample>> {
    if !(z_to > cp.z_crit) {
        return Err(Error::BelowFold {
            z: z_to,
            z_crit: cp.z_crit,
        });
    }
    let steps = steps.max(1);
    let span = (z_to - cp.z_crit).sqrt();
    let mut path: Vec<BranchSample> = Vec::with_capacity(steps);
    let mut roots: Vec<f64> = Vec::with_capacity(steps);
    for i in 1..=steps {
        let r = span * i as f64 / steps as f64;
        let z = if i == steps { z_to } else { cp.z_crit + r * r };
        let seed = match path.len() {
            0 => seed_from_fold(cp, z)?,
            1 => path[0].params,
            m => {
                let (p0, p1) = (&path[m - 2].params, &path[m - 1].params);
                let w = (r - roots[m - 1]) / (roots[m - 1] - roots[m - 2]);
                let alpha = p1.alpha + w * (p1.alpha - p0.alpha);
                let beta = p1.beta + w * (p1.beta - p0.beta);
                if alpha > 0.0 && beta > 0.0 {
                    BrokenParams { alpha, beta, k: p1.k }
                } else {
                    *p1
                }
            }
        };
        let sample = solve_at(z, &seed)?;
        if sample.energy.eps <= 0.0 {
            return Err(Error::AtCoupling {
                z,
                source: Box::new(Error::NonConvergence {
                    routine: "continue_from_fold",
                    detail: format!("left the +eps branch (eps = {:e})", sample.energy.eps),
                }),
            });
        }
        path.push(sample);
        roots.push(r);
    }
    Ok(path)
}

/// Broken-regime solution of pair `cp` at coupling `z > z_crit`.
pub fn broken_pair_at(cp: &CriticalPoint, z: f64) -> Result<BranchSample> {
    let path = continue_from_fold(cp, z, 24)?;
    Ok(*path.last().expect("continuation path is never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(z: f64) -> Coupling {
        Coupling::new(z).unwrap()
    }

    #[test]
    fn params_energy_relations() {
        let p = BrokenParams::new(0.358129, 0.622216, c(6.0)).unwrap();
        let (k, l) = p.wavenumbers();
        // E = t² - s² = q² - p² = K²
        assert!(((k.im * k.im - k.re * k.re) - p.k * p.k).abs() < 1e-12);
        assert!(((l.im * l.im - l.re * l.re) - p.k * p.k).abs() < 1e-12);
        // ε = pq - st
        let eps = l.re * l.im - k.re * (-k.im);
        assert!((p.energy().eps - eps).abs() < 1e-12);
        // st + pq = Z
        assert!((k.re * (-k.im) + l.re * l.im - 6.0).abs() < 1e-12);
    }

    #[test]
    fn from_energy_round_trip() {
        let p = BrokenParams::new(0.318347, 0.693565, c(6.5)).unwrap();
        let e = p.energy();
        let q = BrokenParams::from_energy(e.re_e, e.eps, c(6.5)).unwrap();
        assert!((p.alpha - q.alpha).abs() < 1e-12);
        assert!((p.beta - q.beta).abs() < 1e-12);
    }

    #[test]
    fn epsilon_regression_at_z6() {
        // Substituting the printed alpha, beta at Z = 6:
        // K² = 5.062179361054..., eps = 2.056099614122...
        let p = BrokenParams::new(0.358129, 0.622216, c(6.0)).unwrap();
        let e = p.energy();
        assert!((e.re_e - 5.062_179_361_054).abs() < 1e-10);
        assert!((e.eps - 2.056_099_614_122).abs() < 1e-10);
    }

    #[test]
    fn swap_conjugates() {
        let p = BrokenParams::new(0.3, 0.45, c(5.8)).unwrap();
        let q = p.swapped();
        assert_eq!(p.energy().re_e, q.energy().re_e);
        assert_eq!(p.energy().eps, -q.energy().eps);
        // G(β, α) = (l / k*) · conj(G(α, β))
        let (k, lc) = p.wavenumbers();
        let g = broken_secular(&p, c(5.8));
        let gs = broken_secular(&q, c(5.8));
        let expect = lc.conj() / k.conj() * g.conj();
        assert!((gs - expect).norm() <= 1e-12 * gs.norm().max(expect.norm()));
    }

    #[test]
    fn printed_rows_nearly_solve_the_equation() {
        for &(z, a, b) in &[(5.542309, 0.474944, 0.474944), (6.0, 0.358129, 0.622216)] {
            let p = BrokenParams::new(a, b, c(z)).unwrap();
            assert!(broken_residual(&p).scaled() <= 1e-6);
        }
    }

    #[test]
    fn invalid_params() {
        assert!(BrokenParams::new(0.0, 0.3, c(1.0)).is_err());
        assert!(BrokenParams::new(0.3, 0.3, c(0.0)).is_err());
    }
}
