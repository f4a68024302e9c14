//! Bracketed scalar root refinement and grid bracketing.
//!
//! Brent's method (inverse quadratic interpolation, secant, bisection) with a
//! residual stopping rule, plus a grid scanner that reports sign changes and
//! resolves close root pairs hiding inside a single grid cell.

use crate::error::{Error, Result};

const GOLDEN: f64 = 0.381_966_011_250_105_1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
}

/// Refines a root of `f` inside `[lo, hi]`.
///
/// Stops once `|f(x)| <= ftol` or the bracket has shrunk to neighbouring
/// floats; in the latter case the endpoint with the smaller residual is
/// returned and the caller decides whether the residual is acceptable.
pub fn brent<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, ftol: f64, max_iter: usize) -> Result<Refined> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(Refined {
            x: a,
            fx: 0.0,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Ok(Refined {
            x: b,
            fx: 0.0,
            iterations: 0,
        });
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + f64::MIN_POSITIVE;
        let m = 0.5 * (c - b);
        if fb.abs() <= ftol || m.abs() <= tol || fb == 0.0 {
            return Ok(Refined {
                x: b,
                fx: fb,
                iterations: iter,
            });
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::IterationLimit {
        routine: "brent",
        iterations: max_iter,
    })
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, iterations: usize) -> (f64, f64) {
    let mut x1 = a + GOLDEN * (b - a);
    let mut x2 = b - GOLDEN * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..iterations {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - GOLDEN * (b - a);
            f2 = f(x2);
        }
        if b - a <= 4.0 * f64::EPSILON * (a.abs() + b.abs()) {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Returns sign-change brackets of `f` sampled at `xs` (with values `fs`).
///
/// Besides plain sign changes, a local dip of `|f|` between same-signed samples
/// is searched with golden section; if `f` crosses zero there the two roots are
/// returned as separate brackets. An exact zero at a node is returned as a
/// degenerate bracket `(x, x)`.
pub fn grid_brackets<F: Fn(f64) -> f64>(xs: &[f64], fs: &[f64], f: F) -> Vec<(f64, f64)> {
    debug_assert_eq!(xs.len(), fs.len());
    let mut out = Vec::new();
    let n = xs.len();
    for i in 0..n {
        if fs[i] == 0.0 {
            out.push((xs[i], xs[i]));
        }
        if i + 1 < n && fs[i] * fs[i + 1] < 0.0 {
            out.push((xs[i], xs[i + 1]));
        }
        if i == 0 || i + 1 >= n {
            continue;
        }
        let (l, m, r) = (fs[i - 1], fs[i], fs[i + 1]);
        let same = l.signum() == m.signum() && m.signum() == r.signum() && m != 0.0;
        if same && m.abs() < l.abs() && m.abs() <= r.abs() {
            let sign = m.signum();
            let (xm, fm) = golden_min(|x| sign * f(x), xs[i - 1], xs[i + 1], 200);
            if fm < 0.0 {
                out.push((xs[i - 1], xm));
                out.push((xm, xs[i + 1]));
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out.dedup();
    out
}
