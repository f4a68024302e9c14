use ptcircle_core::secular::SecularBranch;
use ptcircle_core::series::*;
use ptcircle_core::verify::convergence_slope;

fn fit_samples() -> Vec<f64> {
    (1..=16).map(|i| i as f64 * 0.0125).collect()
}

#[test]
fn derived_coefficients_match_numeric_fit() {
    for n in 1..=3 {
        for b in SecularBranch::ALL {
            let derived = series_coefficients(n, b, 4).unwrap();
            let fit = fit_series_numeric(n, b, &fit_samples(), 4).unwrap();
            for order in [2, 4] {
                let (d, f) = (derived.coefficient(order), fit.coefficient(order));
                assert!((d - f).abs() <= 1e-6 * d.abs(), "n={n} {b:?} t^{order}: {d} vs {f}");
            }
        }
    }
}

#[test]
fn leading_term_matches_printed_exactly() {
    for n in 1..=3 {
        for b in SecularBranch::ALL {
            let printed = printed_coefficients(n, b).unwrap();
            let derived = series_coefficients(n, b, 2).unwrap();
            assert_eq!(printed[0], derived.coefficient(2));
        }
    }
}

#[test]
fn truncation_error_order() {
    for b in SecularBranch::ALL {
        for m in 1..=3 {
            let slope = convergence_slope(b, m).unwrap();
            let want = 2.0 * m as f64 + 2.0;
            assert!((slope - want).abs() <= 0.3, "{b:?} M={m}: slope {slope}");
        }
    }
}

#[test]
fn numeric_shift_guards() {
    assert!(numeric_shift(0, SecularBranch::FactorMinus, 0.1).is_err());
    assert!(numeric_shift(1, SecularBranch::FactorMinus, 2.0).is_err());
    assert!(numeric_shift(1, SecularBranch::FactorMinus, 0.0).is_err());
}
