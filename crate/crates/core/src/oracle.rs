//! First-principles check through the 4x4 matching matrix.
//!
//! The wavefunction is built piecewise from free solutions, the four periodic
//! matching conditions `ψ₁(1) = ψ₂(-1)`, `ψ₁'(1) = ψ₂'(-1)`, `ψ₁(0) = ψ₂(0)`,
//! `ψ₁'(0) = ψ₂'(0)` give a linear system `W (A₁, A₂, B₁, B₂)ᵀ = 0`, and
//! eigenvalues are the zeros of `det W`. None of this uses the closed-form
//! quantization functions, so agreement of zero sets is a genuine cross-check.
//!
//! Physical wavenumbers are `κ = sqrt(-E + iZ)` on `(0, 1)` and
//! `λ = sqrt(-E - iZ)` on `(-1, 0)`.
//!
//! * Real `E` ([`Regime::Exact`]): `ψ₁ = A₁e^{κx} + A₂e^{-κx}`,
//!   `ψ₂ = B₁e^{κ*(x+1)} + B₂e^{-κ*(x+1)}` (for real `E`, `λ = κ*`).
//! * Complex `E` ([`Regime::Broken`]): `ψ₁ = A₁ sinh κ(1-x) + A₂ cosh κ(1-x)`,
//!   `ψ₂ = B₁ sinh λ(1+x) + B₂ cosh λ(1+x)`.

use crate::error::{Error, Result};
use crate::roots::{brent, grid_brackets};
use crate::secular::Coupling;
use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

pub type BoundaryMatrix = Matrix4<Complex64>;

pub const RANK_THRESHOLD: f64 = 1e-8;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Exact,
    Broken,
}

impl Regime {
    pub fn of(e: Complex64) -> Regime {
        if e.im == 0.0 {
            Regime::Exact
        } else {
            Regime::Broken
        }
    }
}

/// Which square root is used for the right-piece wavenumber.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootBranch {
    Principal,
    /// `-sqrt(·)`; the zero set of `det W` must not depend on this.
    Flipped,
}

/// `(κ, λ)` for energy `e`.
pub fn wavenumbers(e: Complex64, z: Coupling, branch: RootBranch) -> (Complex64, Complex64) {
    let zi = I * z.value();
    let mut kr = (-e + zi).sqrt();
    let mut kl = match Regime::of(e) {
        Regime::Exact => kr.conj(),
        Regime::Broken => (-e - zi).sqrt(),
    };
    if branch == RootBranch::Flipped {
        kr = -kr;
        kl = -kl;
    }
    (kr, kl)
}

#[rustfmt::skip]
fn exact_matrix(k: Complex64, kc: Complex64) -> BoundaryMatrix {
    let (ep, em) = (k.exp(), (-k).exp());
    let (cp, cm) = (kc.exp(), (-kc).exp());
    let one = Complex64::new(1.0, 0.0);
    Matrix4::new(
        ep, em, -one, -one,
        k * ep, -k * em, -kc, kc,
        one, one, -cp, -cm,
        k, -k, -kc * cp, kc * cm,
    )
}

#[rustfmt::skip]
fn broken_matrix(k: Complex64, l: Complex64) -> BoundaryMatrix {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let (shk, chk) = (k.sinh(), k.cosh());
    let (shl, chl) = (l.sinh(), l.cosh());
    Matrix4::new(
        zero, one, zero, -one,
        -k, zero, -l, zero,
        shk, chk, -shl, -chl,
        -k * chk, -k * shk, -l * chl, -l * shl,
    )
}

/// Matching matrix with columns `(A₁, A₂, B₁, B₂)`.
pub fn boundary_matrix(e: Complex64, z: Coupling) -> BoundaryMatrix {
    boundary_matrix_on(e, z, RootBranch::Principal)
}

pub fn boundary_matrix_on(e: Complex64, z: Coupling, branch: RootBranch) -> BoundaryMatrix {
    let (kr, kl) = wavenumbers(e, z, branch);
    match Regime::of(e) {
        Regime::Exact => exact_matrix(kr, kl),
        Regime::Broken => broken_matrix(kr, kl),
    }
}

/// Product of row norms (Hadamard bound on `|det W|`).
pub fn matrix_scale(w: &BoundaryMatrix) -> f64 {
    w.row_iter().map(|r| r.norm()).product()
}

pub fn boundary_determinant(e: Complex64, z: Coupling) -> Complex64 {
    boundary_matrix(e, z).full_piv_lu().determinant()
}

/// `det W / (product of row norms)`.
pub fn scaled_determinant(e: Complex64, z: Coupling) -> Complex64 {
    let w = boundary_matrix(e, z);
    w.full_piv_lu().determinant() / matrix_scale(&w)
}

/// Amplitudes of a matching solution, normalized to unit max modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSolution {
    pub amplitudes: [Complex64; 4],
    pub k_right: Complex64,
    pub k_left: Complex64,
    pub regime: Regime,
    /// Dimension of the numerical null space.
    pub multiplicity: usize,
}

impl WaveSolution {
    /// Wraps given amplitudes (normalized here) for energy `e`.
    pub fn new(amplitudes: [Complex64; 4], e: Complex64, z: Coupling) -> Self {
        let (k_right, k_left) = wavenumbers(e, z, RootBranch::Principal);
        let max = amplitudes.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let amplitudes = if max > 0.0 {
            amplitudes.map(|a| a / max)
        } else {
            amplitudes
        };
        WaveSolution {
            amplitudes,
            k_right,
            k_left,
            regime: Regime::of(e),
            multiplicity: 1,
        }
    }

    /// `(ψ, ψ')` from the piece containing `x`; `right` selects the piece at
    /// `x = 0`.
    pub fn eval_piece(&self, x: f64, right: bool) -> (Complex64, Complex64) {
        let [a1, a2, b1, b2] = self.amplitudes;
        match (self.regime, right) {
            (Regime::Exact, true) => {
                let k = self.k_right;
                let (ep, em) = ((k * x).exp(), (-k * x).exp());
                (a1 * ep + a2 * em, k * (a1 * ep - a2 * em))
            }
            (Regime::Exact, false) => {
                let k = self.k_left;
                let (ep, em) = ((k * (x + 1.0)).exp(), (-k * (x + 1.0)).exp());
                (b1 * ep + b2 * em, k * (b1 * ep - b2 * em))
            }
            (Regime::Broken, true) => {
                let k = self.k_right;
                let arg = k * (1.0 - x);
                let (sh, ch) = (arg.sinh(), arg.cosh());
                (a1 * sh + a2 * ch, -k * (a1 * ch + a2 * sh))
            }
            (Regime::Broken, false) => {
                let l = self.k_left;
                let arg = l * (1.0 + x);
                let (sh, ch) = (arg.sinh(), arg.cosh());
                (b1 * sh + b2 * ch, l * (b1 * ch + b2 * sh))
            }
        }
    }

    pub fn psi(&self, x: f64) -> Complex64 {
        self.eval_piece(x, x >= 0.0).0
    }

    /// `ψ''` from the piece containing `x` (each piece is a free solution,
    /// so `ψ'' = κ² ψ`).
    pub fn psi_second(&self, x: f64) -> Complex64 {
        let k = if x >= 0.0 { self.k_right } else { self.k_left };
        k * k * self.psi(x)
    }
}

fn lu_pivots(
    w: &BoundaryMatrix,
) -> (
    nalgebra::linalg::FullPivLU<Complex64, nalgebra::U4, nalgebra::U4>,
    [f64; 4],
) {
    let lu = w.full_piv_lu();
    let u = lu.u();
    let piv = [u[(0, 0)].norm(), u[(1, 1)].norm(), u[(2, 2)].norm(), u[(3, 3)].norm()];
    (lu, piv)
}

/// Smallest-to-largest pivot ratio of a full-pivoting elimination of `W`.
pub fn pivot_ratio(e: Complex64, z: Coupling) -> f64 {
    let (_, piv) = lu_pivots(&boundary_matrix(e, z));
    if piv[0] == 0.0 {
        0.0
    } else {
        piv[3] / piv[0]
    }
}

/// Null vector of `W(e)`, ignoring the rank test.
pub fn least_pivot_solution(e: Complex64, z: Coupling) -> WaveSolution {
    let w = boundary_matrix(e, z);
    let (lu, piv) = lu_pivots(&w);
    let rank = piv.iter().filter(|&&p| p > RANK_THRESHOLD * piv[0]).count().min(3);
    let u = lu.u();
    let mut y = Vector4::<Complex64>::zeros();
    y[rank] = Complex64::new(1.0, 0.0);
    for i in (0..rank).rev() {
        let mut acc = u[(i, rank)];
        for j in i + 1..rank {
            acc += u[(i, j)] * y[j];
        }
        y[i] = -acc / u[(i, i)];
    }
    lu.q().inv_permute_rows(&mut y);
    let mut sol = WaveSolution::new([y[0], y[1], y[2], y[3]], e, z);
    sol.multiplicity = 4 - rank;
    sol
}

/// Null vector of `W(e)`; fails unless `W` is numerically singular
/// (pivot ratio ≤ [`RANK_THRESHOLD`]).
pub fn nullspace_solution(e: Complex64, z: Coupling) -> Result<WaveSolution> {
    let ratio = pivot_ratio(e, z);
    if !(ratio <= RANK_THRESHOLD) {
        return Err(Error::NotAnEigenvalue {
            re: e.re,
            im: e.im,
            pivot_ratio: ratio,
        });
    }
    Ok(least_pivot_solution(e, z))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// `max |−ψ'' + iVψ − Eψ| / max|ψ|` with the analytic `ψ''`.
    pub ode_residual: f64,
    /// Same with a five-point finite-difference `ψ''`.
    pub fd_residual: f64,
    pub bc_residuals: [f64; 4],
    /// `|det W| / (product of row norms)`.
    pub det_modulus: f64,
}

impl ResidualReport {
    pub fn max_bc(&self) -> f64 {
        self.bc_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Residuals of `sol` as an eigenfunction at energy `e`.
///
/// `grid_n` is the number of intervals per piece (≥ 64). Derivative
/// conditions are divided by `max(1, |κ|)`.
pub fn residual_check(sol: &WaveSolution, e: Complex64, z: Coupling, grid_n: usize) -> Result<ResidualReport> {
    if grid_n < 64 {
        return Err(crate::error::domain("grid_n must be at least 64", grid_n as f64));
    }
    let zv = z.value();
    let h = 1.0 / grid_n as f64;
    let mut max_psi: f64 = 0.0;
    let mut ode: f64 = 0.0;
    let mut fd: f64 = 0.0;
    for right in [true, false] {
        let sgn = if right { 1.0 } else { -1.0 };
        let v = I * zv * sgn;
        let at = |x: f64| sol.eval_piece(x, right).0;
        for j in 0..=grid_n {
            // x runs over [0, 1] or [-1, 0]
            let x = sgn * j as f64 * h;
            let psi = at(x);
            max_psi = max_psi.max(psi.norm());
            let k = if right { sol.k_right } else { sol.k_left };
            let d2 = k * k * psi;
            ode = ode.max((-d2 + v * psi - e * psi).norm());
            if (2..=grid_n - 2).contains(&j) {
                let d2fd = (-at(x - 2.0 * h) + 16.0 * at(x - h) - 30.0 * psi + 16.0 * at(x + h) - at(x + 2.0 * h))
                    / (12.0 * h * h);
                fd = fd.max((-d2fd + v * psi - e * psi).norm());
            }
        }
    }
    let dscale = sol.k_right.norm().max(sol.k_left.norm()).max(1.0);
    let (p1_1, d1_1) = sol.eval_piece(1.0, true);
    let (p2_m1, d2_m1) = sol.eval_piece(-1.0, false);
    let (p1_0, d1_0) = sol.eval_piece(0.0, true);
    let (p2_0, d2_0) = sol.eval_piece(0.0, false);
    let norm = if max_psi > 0.0 { max_psi } else { 1.0 };
    let bc = [
        (p1_1 - p2_m1).norm() / norm,
        (d1_1 - d2_m1).norm() / (norm * dscale),
        (p1_0 - p2_0).norm() / norm,
        (d1_0 - d2_0).norm() / (norm * dscale),
    ];
    Ok(ResidualReport {
        ode_residual: ode / norm,
        fd_residual: fd / norm,
        bc_residuals: bc,
        det_modulus: scaled_determinant(e, z).norm(),
    })
}

const PT_GRID: usize = 256;

/// `min_{|λ|=1} max_x |ψ(-x)* − λψ(x)| / max|ψ|` on a symmetric grid.
pub fn pt_symmetry_check(sol: &WaveSolution) -> f64 {
    let xs: Vec<f64> = (0..PT_GRID)
        .map(|j| -1.0 + (2 * j + 1) as f64 / PT_GRID as f64)
        .collect();
    let v: Vec<Complex64> = xs.iter().map(|&x| sol.psi(x)).collect();
    let u: Vec<Complex64> = xs.iter().map(|&x| sol.psi(-x).conj()).collect();
    let norm = v.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if norm == 0.0 {
        return 0.0;
    }
    let cost = |theta: f64| {
        let lam = Complex64::from_polar(1.0, theta);
        u.iter().zip(&v).map(|(a, b)| (a - lam * b).norm()).fold(0.0, f64::max) / norm
    };
    let steps = 720;
    let dtheta = std::f64::consts::TAU / steps as f64;
    let (best, _) = (0..steps)
        .map(|i| (i as f64 * dtheta, cost(i as f64 * dtheta)))
        .fold((0.0, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
    let (_, val) = crate::roots::golden_min(cost, best - dtheta, best + dtheta, 200);
    val.min(cost(best))
}

/// Real zeros of `det W` in `[e_min, e_max]` by a sweep with step `0.01`
/// and Brent refinement of `Re(det W)/scale`.
pub fn determinant_real_roots(z: Coupling, e_min: f64, e_max: f64) -> Result<Vec<f64>> {
    if !(e_max > e_min) {
        return Err(crate::error::domain("empty energy window", e_max - e_min));
    }
    let g = |e: f64| scaled_determinant(Complex64::new(e, 0.0), z).re;
    let n = ((e_max - e_min) / 0.01).ceil() as usize;
    let es: Vec<f64> = (0..=n).map(|i| e_min + (e_max - e_min) * i as f64 / n as f64).collect();
    let gs: Vec<f64> = es.iter().map(|&e| g(e)).collect();
    let mut roots = Vec::new();
    for (lo, hi) in grid_brackets(&es, &gs, g) {
        let r = if lo == hi { lo } else { brent(g, lo, hi, 0.0, 300)?.x };
        roots.push(r);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * a.abs().max(1.0));
    Ok(roots)
}
