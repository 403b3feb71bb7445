//! Randomized checks of the hypergeometric module.

use moonshine_core::frobenius::recover_hauptmodul;
use moonshine_core::hyper::{gauss_q, hypergeometric_series, HypergeometricParams};
use moonshine_core::qvalue::QValue;
use moonshine_core::rational::{int, rat, Rational};
use moonshine_core::schwarzfit::{fit_reciprocal, FitOptions};
use moonshine_core::series::LaurentSeries;
use num_traits::Signed;
use rand::Rng;

use super::*;

pub fn params(rng: &mut impl Rng) -> HypergeometricParams {
    loop {
        let (a, b, c) = (
            small_rational(rng),
            small_rational(rng),
            small_rational(rng),
        );
        if c.is_integer() && !c.is_positive() {
            assert!(HypergeometricParams::new(a, b, c).is_err());
            continue;
        }
        return HypergeometricParams::new(a, b, c).unwrap();
    }
}

/// Successive coefficients obey the term ratio; a zero term stays zero.
pub fn ratio_law(seed: u64, triples: usize, order: i64) -> usize {
    let mut r = rng(seed);
    for i in 0..triples {
        let p = params(&mut r);
        let a0 = nonzero_rational(&mut r);
        let s = hypergeometric_series(&p, &a0, order).unwrap();
        assert_eq!(s.coeff(0).unwrap(), a0, "case {i}");
        for n in 0..order - 1 {
            let (cn, cn1) = (s.coeff(n).unwrap(), s.coeff(n + 1).unwrap());
            let k = int(n);
            let lhs = &cn1 * (&k + rat(1)) * (&k + &p.c);
            let rhs = &cn * (&k + &p.a) * (&k + &p.b);
            assert_eq!(lhs, rhs, "case {i}, n = {n}, params {p:?}");
        }
    }
    triples
}

/// `z(1-z) u'' + (c - (a+b+1) z) u' - ab u` vanishes through `z^order`.
pub fn gauss_ode_residual(p: &HypergeometricParams, order: i64) -> LaurentSeries {
    let u = hypergeometric_series(p, &rat(1), order + 2).unwrap();
    let (d1, d2) = (u.derivative(), u.derivative().derivative());
    let prec = order + 1;
    let z_one_minus_z = LaurentSeries::from_ints(1, &[1, -1], prec + 2);
    let lin = LaurentSeries::new(0, vec![p.c.clone(), -(&p.a + &p.b + rat(1))], prec + 2);
    let ab = &p.a * &p.b;
    let res = &(&(&z_one_minus_z * &d2) + &(&lin * &d1)) - &u.scale(&ab);
    assert!(
        res.truncation_order() >= prec,
        "residual known through z^{order}"
    );
    res.truncate(prec)
}

pub fn gauss_ode(seed: u64, triples: usize, order: i64) -> usize {
    let mut r = rng(seed);
    for i in 0..triples {
        let p = params(&mut r);
        assert!(
            gauss_ode_residual(&p, order).is_zero(),
            "case {i}, params {p:?}"
        );
    }
    triples
}

/// The Q-value of `gauss_q(a, b, 1)` survives recovery and refitting.
pub fn gauss_q_round_trip(a: Rational, b: Rational) {
    let p = HypergeometricParams::new(a, b, rat(1)).unwrap();
    let q = QValue::from_rational_function(&gauss_q(&p)).unwrap();
    let t = recover_hauptmodul(&q, 60).unwrap();
    let z = t.recip().unwrap();
    let rep = fit_reciprocal(&z, &FitOptions::with_bounds(4, 4)).unwrap();
    assert_eq!(rep.qvalue, q, "params {p:?}");
    assert_eq!(rep.nullspace_dim, 1);
}
