//! Real eigenvalues at a fixed coupling.
//!
//! Each factor `F±(Z / (2s), s)` is sampled on a grid in `s`, sign changes
//! (and close pairs inside one cell) are bracketed, and every bracket is
//! refined with Brent's method.

use crate::error::{domain, Error, Result};
use crate::roots::{brent, grid_brackets};
use crate::secular::{
    energy_of, factor_on_curve, factor_value, level_index, Coupling, ExactParams, SecularBranch, SpectralPoint,
};
use std::f64::consts::PI;

/// Largest `t` at which the low-`s` geometric grid starts; beyond it
/// `t sinh t` dwarfs `s sin s` for any coupling of interest.
const T_CEILING: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Absolute residual on the factor at which refinement stops.
    pub root_tol: f64,
    /// Largest grid step in `s`.
    pub grid_step: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            root_tol: 1e-12,
            grid_step: PI / 64.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumRequest {
    pub z: Coupling,
    pub s_max: f64,
    pub options: ScanOptions,
}

impl SpectrumRequest {
    pub fn new(z: Coupling, s_max: f64) -> Result<Self> {
        if !(s_max >= PI) || !s_max.is_finite() {
            return Err(domain("s_max must be at least pi", s_max));
        }
        Ok(SpectrumRequest {
            z,
            s_max,
            options: ScanOptions::default(),
        })
    }
}

/// Largest residual a refined root may carry before it is rejected.
const MAX_RESIDUAL: f64 = 1e-10;
const MAX_ITER: usize = 200;

/// Sampling nodes in `(0, s_max]`: geometric below one grid step (where the
/// lowest root of `F₋` hides at small `Z`), uniform above.
pub(crate) fn scan_nodes(z: f64, s_max: f64, step: f64) -> Vec<f64> {
    let cells = (s_max / step).ceil().max(1.0) as usize;
    let h = s_max / cells as f64;
    let mut nodes = Vec::with_capacity(cells + 64);
    let s_lo = if z > 0.0 { z / (2.0 * T_CEILING) } else { h * 1e-3 };
    if s_lo < h {
        let mut s = s_lo;
        while s < h {
            nodes.push(s);
            s *= 1.05;
        }
    }
    let first = ((s_lo / h).floor() as usize).max(1);
    nodes.extend((first..=cells).map(|i| i as f64 * h));
    nodes
}

/// All real eigenvalues with `s ∈ (0, s_max]`, sorted by energy.
pub fn scan_roots(req: &SpectrumRequest) -> Result<Vec<SpectralPoint>> {
    let z = req.z.value();
    let nodes = scan_nodes(z, req.s_max, req.options.grid_step);
    let mut points = Vec::new();
    for branch in SecularBranch::ALL {
        let f = |s: f64| factor_value(z / (2.0 * s), s, branch);
        let values: Vec<f64> = nodes.iter().map(|&s| f(s)).collect();
        for (lo, hi) in grid_brackets(&nodes, &values, f) {
            points.push(refine_with(lo, hi, req.z, branch, req.options.root_tol)?);
        }
    }
    sort_points(&mut points);
    Ok(points)
}

pub(crate) fn sort_points(points: &mut [SpectralPoint]) {
    points.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then(a.branch.cmp(&b.branch).reverse())
            .then(a.params.s.total_cmp(&b.params.s))
    });
}

/// Refines one bracket `(s_lo, s_hi)` of the given factor along `t = Z / (2s)`.
pub fn refine_root(bracket: (f64, f64), z: Coupling, branch: SecularBranch) -> Result<SpectralPoint> {
    let (lo, hi) = bracket;
    if !(lo > 0.0) || !(hi >= lo) {
        return Err(domain("bracket must satisfy 0 < s_lo <= s_hi", lo));
    }
    refine_with(lo, hi, z, branch, 1e-12)
}

fn refine_with(lo: f64, hi: f64, z: Coupling, branch: SecularBranch, tol: f64) -> Result<SpectralPoint> {
    let zv = z.value();
    let f = |s: f64| factor_value(zv / (2.0 * s), s, branch);
    let s = if lo == hi {
        if f(lo) != 0.0 {
            return Err(Error::NoSignChange { lo, hi });
        }
        lo
    } else {
        brent(f, lo, hi, tol, MAX_ITER)?.x
    };
    let params = ExactParams::on_curve(s, z)?;
    let residual = factor_value(params.t, params.s, branch).abs();
    if residual > MAX_RESIDUAL.max(tol) {
        return Err(Error::NonConvergence {
            routine: "refine_root",
            detail: format!("residual {residual:e} at s = {s}"),
        });
    }
    Ok(SpectralPoint {
        z,
        branch,
        n: level_index(s),
        params,
        energy: energy_of(&params),
        residual,
    })
}

/// Sorted roots of one branch in `s`, used by the coupling tracker.
pub(crate) fn branch_roots(z: f64, s_max: f64, step: f64, branch: SecularBranch) -> Result<Vec<f64>> {
    let nodes = scan_nodes(z, s_max, step);
    let f = |s: f64| factor_value(z / (2.0 * s), s, branch);
    let values: Vec<f64> = nodes.iter().map(|&s| f(s)).collect();
    let coupling = Coupling::new(z)?;
    let mut out = Vec::new();
    for (lo, hi) in grid_brackets(&nodes, &values, f) {
        out.push(refine_with(lo, hi, coupling, branch, 1e-12)?.params.s);
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Slope of the factor at a root, handy for labelling a root as the lower or
/// upper member of a merging pair.
pub fn root_slope(point: &SpectralPoint) -> f64 {
    factor_on_curve(point.params.s, point.z.value(), point.branch).ds
}
