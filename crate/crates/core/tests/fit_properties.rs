mod common;

use moonshine_core::frobenius::recover_hauptmodul;
use moonshine_core::linalg::{nullspace_with, PivotRule};
use moonshine_core::moonshine::{extend_coefficients, Registry};
use moonshine_core::poly::Polynomial;
use moonshine_core::qvalue::QValue;
use moonshine_core::rational::rat;
use moonshine_core::schwarzfit::corpus::{bundled_corpus, CorpusStatus};
use moonshine_core::schwarzfit::{
    fit_qvalue, fit_reciprocal, fit_system, functional_residual, hauptmodul_reciprocal, FitOptions,
    FitStrategy,
};

const CLASSES: [&str; 6] = ["2B", "3C", "5A", "8D", "13B", "25A"];

fn opts(order: i64) -> FitOptions {
    FitOptions {
        series_order: order,
        ..Default::default()
    }
}

fn coordinate(reg: &Registry, label: &str, order: i64) -> moonshine_core::series::LaurentSeries {
    hauptmodul_reciprocal(&extend_coefficients(reg, label, order).unwrap().to_series()).unwrap()
}

#[test]
fn fits_are_consistent_and_normalized() {
    let reg = Registry::bundled();
    for label in CLASSES {
        let rep = fit_qvalue(&reg, label, &opts(120)).unwrap();
        assert_eq!(rep.nullspace_dim, 1);
        assert_eq!(
            rep.qvalue.g_series(1).coeff(0).unwrap(),
            rat(1),
            "{label}: 4z^2 Q -> 1"
        );
        let z = coordinate(&reg, label, 120);
        let res = functional_residual(&z, &rep.qvalue).unwrap();
        assert!(
            res.is_zero() && res.truncation_order() >= 120 - rep.degrees.1 as i64 - 2,
            "{label}"
        );
        if let Some(b) = &rep.square_factored {
            assert_eq!(&(b * b), rep.qvalue.den_core(), "{label}");
        }
    }
}

#[test]
fn fit_is_independent_of_pivoting_and_strategy() {
    let reg = Registry::bundled();
    for label in ["2B", "3C", "8D"] {
        let base = fit_qvalue(&reg, label, &opts(80)).unwrap();
        for (strategy, pivot) in [
            (FitStrategy::Structural, PivotRule::FirstNonzero),
            (FitStrategy::Exhaustive, PivotRule::SmallestMagnitude),
        ] {
            let other = fit_qvalue(
                &reg,
                label,
                &FitOptions {
                    strategy,
                    pivot,
                    ..opts(80)
                },
            )
            .unwrap();
            assert_eq!(other.qvalue, base.qvalue, "{label}");
            assert_eq!(other.degrees, base.degrees, "{label}");
        }
    }
}

#[test]
fn larger_bounds_give_multiples_of_the_same_solution() {
    let reg = Registry::bundled();
    for label in CLASSES {
        let rep = fit_qvalue(&reg, label, &opts(120)).unwrap();
        let (r, s) = rep.degrees;
        let z = coordinate(&reg, label, 120);
        let orders = (r + s) as i64 + 42;
        let basis = nullspace_with(
            &fit_system(&z, r + 1, s + 1, orders).unwrap(),
            PivotRule::default(),
        )
        .unwrap();
        assert_eq!(basis.len(), 2, "{label}");
        for v in basis {
            let q = QValue::new(
                Polynomial::new(v[..=r + 1].to_vec()),
                Polynomial::new(v[r + 2..].to_vec()),
            )
            .unwrap();
            assert_eq!(q, rep.qvalue, "{label}");
        }
        if r > 0 && s > 0 {
            let below = nullspace_with(
                &fit_system(&z, r - 1, s, orders).unwrap(),
                PivotRule::default(),
            )
            .unwrap();
            assert!(below.is_empty(), "{label}");
        }
    }
}

#[test]
fn fitted_values_recover_the_expansions() {
    let reg = Registry::bundled();
    for label in CLASSES {
        let rep = fit_qvalue(&reg, label, &opts(100)).unwrap();
        let t = recover_hauptmodul(&rep.qvalue, 30).unwrap();
        let ext = extend_coefficients(&reg, label, 30).unwrap();
        assert_eq!(t.dense_from(-1)[2..], ext.coeffs()[2..], "{label}");
    }
}

#[test]
fn printed_values_survive_recovery_and_refit() {
    let corpus = bundled_corpus();
    for label in ["1A", "3C", "7A", "10E", "27A"] {
        let entry = corpus.iter().find(|e| e.label == label).unwrap();
        assert_eq!(entry.status, CorpusStatus::Verified);
        let q = entry.qvalue.as_ref().unwrap();
        let z = recover_hauptmodul(q, 90).unwrap().recip().unwrap();
        let rep = fit_reciprocal(&z, &FitOptions::default()).unwrap();
        assert_eq!(&rep.qvalue, q, "{label}");
    }
}
