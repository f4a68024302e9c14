use num_complex::Complex64;
use proptest::prelude::*;
use ptcircle_core::oracle::boundary_determinant;
use ptcircle_core::roots::brent;
use ptcircle_core::secular::*;
use ptcircle_core::transition::{broken_secular, BrokenParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn t_representation_factorizes(t in 1e-3f64..20.0, z in 0.0f64..100.0) {
        let r = representation_identity_residual(t, Coupling::new(z).unwrap()).unwrap();
        prop_assert!(r <= 1e-9, "t = {t}, Z = {z}: {r:e}");
    }

    #[test]
    fn s_representation_factorizes(t in 1e-3f64..20.0, z in 1e-6f64..100.0) {
        let s = z / (2.0 * t);
        let r = s_representation_residual(s, Coupling::new(z).unwrap()).unwrap();
        prop_assert!(r <= 1e-9, "s = {s}, Z = {z}: {r:e}");
    }

    #[test]
    fn factors_are_even(t in -20.0f64..20.0, s in -40.0f64..40.0) {
        for b in SecularBranch::ALL {
            prop_assert_eq!(factor_value(t, s, b), factor_value(-t, s, b));
            prop_assert_eq!(factor_value(t, s, b), factor_value(t, -s, b));
        }
    }

    #[test]
    fn energy_round_trip(e in -50.0f64..500.0, z in 1e-3f64..80.0) {
        let c = Coupling::new(z).unwrap();
        let p = ExactParams::from_energy(e, c).unwrap();
        prop_assert!((2.0 * p.s * p.t - z).abs() <= 1e-12 * z.max(1.0));
        prop_assert!((p.energy() - e).abs() <= 1e-11 * e.abs().max(z).max(1.0));
    }

    #[test]
    fn swapping_alpha_beta_conjugates(a in 0.05f64..1.5, b in 0.05f64..1.5, z in 0.5f64..40.0) {
        let c = Coupling::new(z).unwrap();
        let p = BrokenParams::new(a, b, c).unwrap();
        let q = p.swapped();
        prop_assert_eq!(p.energy().re_e, q.energy().re_e);
        prop_assert_eq!(p.energy().eps, -q.energy().eps);
        let g = broken_secular(&p, c);
        let h = broken_secular(&q, c);
        let (k, lc) = p.wavenumbers();
        let expect = lc.conj() / k.conj() * g.conj();
        prop_assert!((h - expect).norm() <= 1e-10 * h.norm().max(expect.norm()).max(1e-300));
    }

    #[test]
    fn broken_params_round_trip(a in 0.05f64..1.5, b in 0.05f64..1.5, z in 0.5f64..40.0) {
        let c = Coupling::new(z).unwrap();
        let p = BrokenParams::new(a, b, c).unwrap();
        let e = p.energy();
        let q = BrokenParams::from_energy(e.re_e, e.eps, c).unwrap();
        prop_assert!((p.alpha - q.alpha).abs() <= 1e-9);
        prop_assert!((p.beta - q.beta).abs() <= 1e-9);
    }

    #[test]
    fn determinant_is_real_on_real_axis(e in -5.0f64..150.0, z in 0.0f64..20.0) {
        let d = boundary_determinant(Complex64::new(e, 0.0), Coupling::new(z).unwrap());
        prop_assert!(d.im.abs() <= 1e-9 * d.norm().max(1.0), "{d}");
    }

    #[test]
    fn brent_brackets_are_respected(root in -3.0f64..3.0, w in 0.1f64..2.0) {
        let r = brent(|x| (x - root).powi(3) + (x - root), root - w, root + 0.5 * w, 0.0, 200).unwrap();
        prop_assert!((r.x - root).abs() <= 1e-12);
    }
}
