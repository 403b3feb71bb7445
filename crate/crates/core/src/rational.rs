//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds the reduced fraction `n / d`.
pub fn rational_canonicalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n.into(), d))
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    rational_canonicalize(n, d).expect("nonzero denominator")
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses `"p"` or `"p/q"` in decimal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::parse(0, format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            rational_canonicalize(n, d)
        }
        None => Ok(int(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a row of rationals by the lcm of its denominators and returns the
/// resulting integers.
pub fn clear_denominators(values: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(values);
    values
        .iter()
        .map(|v| v.numer() * (&l / v.denom()))
        .collect()
}

pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Decimal rendering, `p` or `p/q`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub(crate) fn abs_bits(value: &BigInt) -> u64 {
    value.abs().bits()
}

/// A growing list of rationals kept as integers over one shared
/// denominator, so sums of products need a single reduction.
#[derive(Clone, Debug)]
pub(crate) struct CommonDenominator {
    scale: BigInt,
    nums: Vec<BigInt>,
}

impl CommonDenominator {
    pub(crate) fn new() -> Self {
        CommonDenominator {
            scale: BigInt::one(),
            nums: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, v: &Rational) {
        let d = v.denom();
        if !(&self.scale % d).is_zero() {
            let factor = d / self.scale.gcd(d);
            self.scale *= &factor;
            for n in &mut self.nums {
                *n *= &factor;
            }
        }
        self.nums.push(v.numer() * (&self.scale / d));
    }

    /// `Σ w_j x_{i_j}` as a rational, for integer weights `w`.
    pub(crate) fn weighted_sum<'a>(
        &self,
        terms: impl IntoIterator<Item = (&'a BigInt, usize)>,
    ) -> Rational {
        let mut acc = BigInt::zero();
        for (w, i) in terms {
            acc += w * &self.nums[i];
        }
        Rational::new(acc, self.scale.clone())
    }
}
