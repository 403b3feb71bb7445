//! Gauss hypergeometric series with rational parameters.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::rational::{format_rational, int, rat, Rational};
use crate::series::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HypergeometricParams {
    /// Rejects `c ∈ {0, -1, -2, ...}`.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if c.is_integer() && !c.is_positive() {
            return Err(Error::InvalidParameters(format!(
                "c = {} is a nonpositive integer",
                format_rational(&c)
            )));
        }
        Ok(HypergeometricParams { a, b, c })
    }
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &Rational, n: i64) -> Result<Rational> {
    if n < 0 {
        return Err(Error::InvalidParameters(format!("negative length {n}")));
    }
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..n {
        acc *= &x;
        x += Rational::one();
    }
    Ok(acc)
}

/// `a0 · 2F1(a, b; c; z) + O(z^order)`, built from the term ratio
/// `(n+a)(n+b) / ((n+1)(n+c))`.
pub fn hypergeometric_series(
    p: &HypergeometricParams,
    a0: &Rational,
    order: i64,
) -> Result<LaurentSeries> {
    if order < 1 {
        return Err(Error::InvalidParameters(format!("order {order} < 1")));
    }
    let mut coeffs = Vec::with_capacity(order as usize);
    let mut term = a0.clone();
    for n in 0..order {
        coeffs.push(term.clone());
        if term.is_zero() {
            continue;
        }
        let n = int(n);
        term = term * (&n + &p.a) * (&n + &p.b) / ((&n + rat(1)) * (&n + &p.c));
    }
    Ok(LaurentSeries::new(0, coeffs, order))
}

/// Q-value of the Gauss equation after removing its first-derivative term:
///
/// `(-c² + z(2ab(z-2) + z - a²z - b²z) + 2c(1 + (a+b-1)z)) / (4 (z-1)² z²)`.
pub fn gauss_q(p: &HypergeometricParams) -> RationalFunction {
    let HypergeometricParams { a, b, c } = p;
    let two = rat(2);
    let ab2 = &two * a * b;
    let c0 = -(c * c) + &two * c;
    let c1 = -(&two * &ab2) + &two * c * (a + b - rat(1));
    let c2 = &ab2 + rat(1) - a * a - b * b;
    let num = Polynomial::new(vec![c0, c1, c2]);
    let den = Polynomial::from_ints([0, 0, 4, -8, 4]);
    RationalFunction::new(num, den).expect("nonzero denominator")
}
