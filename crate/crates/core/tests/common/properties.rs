//! Randomized checks of the series calculus, shared by the property tests
//! and the acceptance suite. Each returns the number of cases checked.

use moonshine_core::rational::{int, Rational};
use moonshine_core::series::LaurentSeries;
use num_traits::Zero;
use rand::Rng;

use super::*;

/// Equality on the common known range.
pub fn agree(f: &LaurentSeries, g: &LaurentSeries) -> bool {
    let prec = f.truncation_order().min(g.truncation_order());
    f.truncate(prec) == g.truncate(prec)
}

fn compares_constant(f: &LaurentSeries, g: &LaurentSeries) -> bool {
    f.truncation_order().min(g.truncation_order()) >= 1
}

/// `[q^n] revert(f) = (1/n) [w^{n-1}] (w / f(w))^n`.
pub fn lagrange_revert(f: &LaurentSeries) -> LaurentSeries {
    let phi = f.shift(-1).recip().expect("unit");
    let prec = f.relative_precision() + 1;
    let mut coeffs = Vec::new();
    for n in 1..prec {
        let c = phi
            .pow(n)
            .expect("unit power")
            .coeff(n - 1)
            .expect("in range");
        coeffs.push(c / int(n));
    }
    LaurentSeries::new(1, coeffs, prec)
}

fn mobius(
    w: &LaurentSeries,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> LaurentSeries {
    let prec = w.truncation_order();
    let num = &w.scale(a) + &LaurentSeries::constant(b.clone(), prec);
    let den = &w.scale(c) + &LaurentSeries::constant(d.clone(), prec);
    num.div(&den).expect("denominator is a unit")
}

pub fn ring_axioms(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for i in 0..cases {
        let (f, g, h) = (laurent(&mut r), laurent(&mut r), laurent(&mut r));
        assert_eq!(
            &(&f * &g) * &h,
            &f * &(&g * &h),
            "case {i}: associativity of *"
        );
        assert_eq!(
            &(&f + &g) + &h,
            &f + &(&g + &h),
            "case {i}: associativity of +"
        );
        assert_eq!(&f * &g, &g * &f, "case {i}: commutativity of *");
        assert_eq!(&f + &g, &g + &f, "case {i}: commutativity of +");
        assert!(
            agree(&(&f * &(&g + &h)), &(&(&f * &g) + &(&f * &h))),
            "case {i}: distributivity"
        );
        #[allow(clippy::eq_op)]
        let diff = &f - &f;
        assert!(diff.is_zero(), "case {i}: f - f");
    }
    cases
}

pub fn exp_log_round_trips(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for i in 0..cases {
        let len = r.gen_range(1..=7);
        let f = valuation_one(&mut r, len);
        let e = f.exp_series().unwrap();
        assert_eq!(
            e.leading_coefficient().cloned(),
            Some(int(1)),
            "case {i}: exp constant"
        );
        assert!(agree(&e.log_series().unwrap(), &f), "case {i}: log(exp f)");
        let g = &LaurentSeries::one(f.truncation_order()) + &f;
        assert!(
            agree(&g.log_series().unwrap().exp_series().unwrap(), &g),
            "case {i}: exp(log g)"
        );
    }
    cases
}

pub fn revert_round_trips(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for i in 0..cases {
        let len = r.gen_range(1..=7);
        let f = valuation_one(&mut r, len);
        let g = f.revert().unwrap();
        assert_eq!(
            g.truncation_order(),
            f.truncation_order(),
            "case {i}: precision"
        );
        assert_eq!(g, lagrange_revert(&f), "case {i}: Lagrange oracle");
        assert_eq!(g.revert().unwrap(), f, "case {i}: revert twice");
        let q = LaurentSeries::var(f.truncation_order());
        assert!(agree(&f.compose(&g).unwrap(), &q), "case {i}: f(g(q))");
        assert!(agree(&g.compose(&f).unwrap(), &q), "case {i}: g(f(q))");
    }
    cases
}

pub fn mobius_invariance(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    let mut done = 0;
    while done < cases {
        let len = r.gen_range(4..=8);
        let w = schwarzian_input(&mut r, len);
        let [a, b, c, d] = [0; 4].map(|_| small_rational(&mut r));
        if (&a * &d - &b * &c).is_zero() || (&c * w.term_at(0) + &d).is_zero() {
            continue;
        }
        let lhs = mobius(&w, &a, &b, &c, &d).schwarzian().unwrap();
        let rhs = w.schwarzian().unwrap();
        assert!(
            compares_constant(&lhs, &rhs),
            "case {done}: nothing compared"
        );
        assert!(
            agree(&lhs, &rhs),
            "case {done}: {{(aw+b)/(cw+d)}} = {{w}} for w = {w}"
        );
        done += 1;
    }
    cases
}

pub fn schwarzian_cocycle(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for i in 0..cases {
        let (lw, ly) = (r.gen_range(4..=7), r.gen_range(3..=7));
        let w = schwarzian_input(&mut r, lw);
        let y = valuation_one(&mut r, ly);
        let lhs = w.compose(&y).unwrap().schwarzian().unwrap();
        let dy = y.derivative();
        let rhs = &(&w.schwarzian().unwrap().compose(&y).unwrap() * &(&dy * &dy))
            + &y.schwarzian().unwrap();
        assert!(compares_constant(&lhs, &rhs), "case {i}: nothing compared");
        assert!(agree(&lhs, &rhs), "case {i}: cocycle for w = {w}, y = {y}");
    }
    cases
}

pub fn derivation_rule(seed: u64, cases: usize) -> usize {
    let mut r = rng(seed);
    for i in 0..cases {
        let (f, g) = (laurent(&mut r), laurent(&mut r));
        let lhs = (&f * &g).derivative();
        let rhs = &(&f * &g.derivative()) + &(&g * &f.derivative());
        assert!(agree(&lhs, &rhs), "case {i}: Leibniz rule");
    }
    cases
}

pub trait TermAt {
    fn term_at(&self, n: i64) -> Rational;
}

impl TermAt for LaurentSeries {
    fn term_at(&self, n: i64) -> Rational {
        self.coeff(n).unwrap_or_else(|_| Rational::zero())
    }
}
