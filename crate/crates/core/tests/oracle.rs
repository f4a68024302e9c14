use num_complex::Complex64;
use ptcircle_core::oracle::*;
use ptcircle_core::secular::{Coupling, SecularBranch};
use ptcircle_core::spectrum::{scan_roots, SpectrumRequest};
use ptcircle_core::transition::{broken_pair_at, critical_sequence};
use std::f64::consts::PI;

fn c(z: f64) -> Coupling {
    Coupling::new(z).unwrap()
}
fn re(e: f64) -> Complex64 {
    Complex64::new(e, 0.0)
}

fn scanned(z: f64, s_max: f64) -> Vec<f64> {
    scan_roots(&SpectrumRequest::new(c(z), s_max).unwrap())
        .unwrap()
        .into_iter()
        .map(|p| p.energy)
        .collect()
}

#[test]
fn zero_sets_coincide() {
    for &z in &[0.5, 3.0, 5.0, 10.0, 17.0] {
        let sec = scanned(z, 4.5 * PI);
        let e_max = (4.5 * PI).powi(2) - 1.0;
        let det = determinant_real_roots(c(z), -z - 1.0, e_max).unwrap();
        let sec: Vec<f64> = sec.into_iter().filter(|&e| e <= e_max).collect();
        assert_eq!(sec.len(), det.len(), "Z = {z}: {sec:?} vs {det:?}");
        for (a, b) in sec.iter().zip(&det) {
            assert!((a - b).abs() <= 1e-8, "Z = {z}: {a} vs {b}");
        }
        for &e in &sec {
            let sol = nullspace_solution(re(e), c(z)).unwrap();
            let r = residual_check(&sol, re(e), c(z), 64).unwrap();
            assert!(r.max_bc() <= 1e-8, "Z = {z}, E = {e}: {r:?}");
            assert!(r.ode_residual <= 1e-12 * e.abs().max(1.0) * 10.0, "{r:?}");
        }
    }
}

#[test]
fn scanned_roots_make_matrix_singular() {
    for e in scanned(5.0, 4.5 * PI) {
        assert!(scaled_determinant(re(e), c(5.0)).norm() <= 1e-8, "E = {e}");
    }
}

#[test]
fn perturbed_energy_is_detected() {
    let e = scanned(5.0, 2.5 * PI)[0];
    let sol = least_pivot_solution(re(e + 1e-3), c(5.0));
    let r = residual_check(&sol, re(e + 1e-3), c(5.0), 64).unwrap();
    assert!(r.max_bc() >= 1e-5, "{r:?}");
}

#[test]
fn degeneracy_is_lifted() {
    for n in 1..=3 {
        let sol = nullspace_solution(re((n as f64 * PI).powi(2)), c(0.0)).unwrap();
        assert_eq!(sol.multiplicity, 2);
    }
    for &z in &[1.0, 3.0, 5.0] {
        for e in scanned(z, 3.5 * PI) {
            assert_eq!(
                nullspace_solution(re(e), c(z)).unwrap().multiplicity,
                1,
                "Z = {z}, E = {e}"
            );
        }
    }
    let pts = scan_roots(&SpectrumRequest::new(c(1.0), 1.5 * PI).unwrap()).unwrap();
    let p = pts
        .iter()
        .find(|p| p.n == 1 && p.branch == SecularBranch::FactorMinus)
        .unwrap();
    assert_eq!(nullspace_solution(re(p.energy), c(1.0)).unwrap().multiplicity, 1);
}

#[test]
fn branch_choice_does_not_move_zeros() {
    for e in scanned(3.0, 3.5 * PI) {
        for b in [RootBranch::Principal, RootBranch::Flipped] {
            let w = boundary_matrix_on(re(e), c(3.0), b);
            let d = w.full_piv_lu().determinant().norm() / matrix_scale(&w);
            assert!(d <= 1e-8, "E = {e}, {b:?}");
        }
    }
    let w = boundary_matrix_on(re(7.0), c(3.0), RootBranch::Flipped);
    assert!(w.full_piv_lu().determinant().norm() / matrix_scale(&w) > 1e-4);
}

#[test]
fn determinant_conjugation() {
    for &(er, ei) in &[(3.0, 0.5), (12.0, -2.0), (40.0, 1.0)] {
        let e = Complex64::new(er, ei);
        let a = boundary_determinant(e.conj(), c(4.0));
        let b = boundary_determinant(e, c(4.0)).conj();
        assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0), "{a} vs {b}");
    }
    // real on the real axis
    for e in [1.0, 7.5, 30.0] {
        let d = boundary_determinant(re(e), c(4.0));
        assert!(d.im.abs() <= 1e-10 * d.norm().max(1.0));
    }
}

#[test]
fn fd_residual_is_fourth_order() {
    // third doublet gives a visibly curved eigenfunction
    let pts = scan_roots(&SpectrumRequest::new(c(2.0), 3.5 * PI).unwrap()).unwrap();
    let p = pts.iter().find(|p| p.n == 3).unwrap();
    let e = re(p.energy);
    let sol = nullspace_solution(e, c(2.0)).unwrap();
    let grids = [64usize, 128, 256, 512];
    let errs: Vec<f64> = grids
        .iter()
        .map(|&n| residual_check(&sol, e, c(2.0), n).unwrap().fd_residual)
        .collect();
    let xs: Vec<f64> = grids.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / 4.0;
    let my = ys.iter().sum::<f64>() / 4.0;
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((slope + 4.0).abs() <= 0.3, "slope {slope}, errors {errs:?}");
}

#[test]
fn unbroken_eigenfunctions_are_pt_symmetric() {
    for e in scanned(2.0, 4.5 * PI) {
        let sol = nullspace_solution(re(e), c(2.0)).unwrap();
        let d = pt_symmetry_check(&sol);
        assert!(d <= 1e-8, "E = {e}: {d}");
    }
}

#[test]
fn broken_pair_eigenfunction_is_not() {
    let cp = critical_sequence(1).unwrap()[0];
    let s = broken_pair_at(&cp, 6.0).unwrap();
    for sign in [1.0, -1.0] {
        let e = Complex64::new(s.energy.re_e, sign * s.energy.eps);
        let sol = nullspace_solution(e, c(6.0)).unwrap();
        let r = residual_check(&sol, e, c(6.0), 64).unwrap();
        assert!(r.max_bc() <= 1e-8, "{r:?}");
        assert!(pt_symmetry_check(&sol) >= 0.1);
    }
}
