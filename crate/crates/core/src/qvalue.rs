//! The rational function `Q(z) = N(z) / (4 z² M(z))`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, Polynomial};
use crate::ratfunc::RationalFunction;
use crate::rational::{format_rational, parse_rational};
use crate::series::LaurentSeries;

/// Invariants: `N(0) = M(0) = 1` and `gcd(N, M) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QValue {
    num: Polynomial,
    den_core: Polynomial,
}

fn four_z2() -> Polynomial {
    Polynomial::from_ints([0, 0, 4])
}

impl QValue {
    /// Reduces `num / den_core` and normalizes both constant terms to 1.
    /// Fails unless the reduced constant terms agree and are nonzero.
    pub fn new(num: Polynomial, den_core: Polynomial) -> Result<Self> {
        if num.is_zero() || den_core.is_zero() {
            return Err(Error::InvalidQValue("zero numerator or denominator".into()));
        }
        let g = poly_gcd(&num, &den_core)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den_core.div_rem(&g)?;
        let (n0, m0) = (num.coeff(0), den.coeff(0));
        if n0.is_zero() || m0.is_zero() {
            return Err(Error::InvalidQValue(
                "4z^2 Q has a zero or pole at z = 0".into(),
            ));
        }
        if n0 != m0 {
            return Err(Error::InvalidQValue(format!(
                "4z^2 Q tends to {} at z = 0, not 1",
                format_rational(&(&n0 / &m0))
            )));
        }
        let inv = n0.recip();
        Ok(QValue {
            num: num.scale(&inv),
            den_core: den.scale(&inv),
        })
    }

    /// `Q = N / (4 z² M)`.
    pub fn from_rational_function(q: &RationalFunction) -> Result<Self> {
        let g = q * &RationalFunction::from_polynomial(four_z2());
        QValue::new(g.num().clone(), g.den().clone())
    }

    pub fn from_ints(num: &[i64], den_core: &[i64]) -> Result<Self> {
        QValue::new(
            Polynomial::from_ints(num.iter().copied()),
            Polynomial::from_ints(den_core.iter().copied()),
        )
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den_core(&self) -> &Polynomial {
        &self.den_core
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.num.clone(), &four_z2() * &self.den_core)
            .expect("nonzero denominator")
    }

    /// `B` with `M = B²` and `B(0) = 1`, when it exists.
    pub fn square_factor(&self) -> Option<Polynomial> {
        self.den_core.sqrt_exact()
    }

    /// `G = 4 z² Q = N / M` as a power series to `order`.
    pub fn g_series(&self, order: i64) -> LaurentSeries {
        let n = LaurentSeries::from_polynomial(&self.num, order);
        let m = LaurentSeries::from_polynomial(&self.den_core, order);
        n.div(&m).expect("M(0) = 1")
    }

    /// Whether the defining coefficients are all integers.
    pub fn is_integral(&self) -> bool {
        self.num
            .coeffs()
            .iter()
            .chain(self.den_core.coeffs())
            .all(|c| c.denom().is_one())
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    if p.degree().unwrap_or(0) == 0 {
        write!(f, "{p}")
    } else {
        write!(f, "({p})")
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.num)?;
        write!(f, " / (4z^2")?;
        match self.square_factor() {
            Some(b) if b.degree().unwrap_or(0) > 0 => write!(f, " ({b})^2")?,
            _ if self.den_core == Polynomial::one() => {}
            _ => write!(f, " ({})", self.den_core)?,
        }
        write!(f, ")")
    }
}

/// Space-separated coefficients `c_0 c_1 ...` as a polynomial.
pub(crate) fn parse_coeff_list(field: &str, lineno: usize) -> Result<Polynomial> {
    let coeffs = field
        .split_whitespace()
        .map(|t| {
            parse_rational(t).map_err(|_| Error::parse(lineno, format!("bad coefficient {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(Error::parse(lineno, "empty coefficient list"));
    }
    Ok(Polynomial::new(coeffs))
}

/// Reads a Q-value from two lines of coefficients, `N` then `M`. Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_qvalue(text: &str) -> Result<QValue> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (Some((ln, n)), Some((lm, m)), None) = (lines.next(), lines.next(), lines.next()) else {
        return Err(Error::parse(
            0,
            "expected exactly two coefficient lines, N then M",
        ));
    };
    let (n, m) = (parse_coeff_list(n, ln)?, parse_coeff_list(m, lm)?);
    QValue::new(n, m).map_err(|e| Error::parse(lm, e.to_string()))
}

/// Inverse of [`parse_qvalue`].
pub fn qvalue_to_text(q: &QValue) -> String {
    format!(
        "{}\n{}\n",
        format_coeffs(&q.num),
        format_coeffs(&q.den_core)
    )
}

/// Coefficients rendered as space-separated decimals.
pub fn format_coeffs(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    p.coeffs()
        .iter()
        .map(format_rational)
        .collect::<Vec<_>>()
        .join(" ")
}
