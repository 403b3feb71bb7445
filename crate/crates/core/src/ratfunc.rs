//! Rational functions `num / den` in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, Polynomial};
use crate::rational::Rational;

/// Invariants: `den != 0`, `gcd(num, den) = 1`, and the lowest nonzero
/// coefficient of `den` is positive.
///
/// Equality is equality of functions, i.e. `f.num * g.den == g.num * f.den`.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Polynomial::one(),
            });
        }
        let g = poly_gcd(&num, &den)?;
        let (mut num, _) = num.div_rem(&g)?;
        let (mut den, _) = den.div_rem(&g)?;
        if den.trailing().is_some_and(Signed::is_negative) {
            num = -&num;
            den = -&den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        let bottom = &self.den * &self.den;
        RationalFunction::new(top, bottom).expect("nonzero square")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalFunction::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }
}

/// True iff `f` and `g` are the same function.
pub fn ratfunc_equal(f: &RationalFunction, g: &RationalFunction) -> bool {
    &f.num * &g.den == &g.num * &f.den
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        ratfunc_equal(self, other)
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero product")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero product")
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0) == Rational::from_integer(1.into()) {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        RationalFunction::constant(Rational::zero())
    }
}
