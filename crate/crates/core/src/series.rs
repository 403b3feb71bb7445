//! Truncated formal Laurent series over [`Rational`].
//!
//! A series is `Σ_{i} coeffs[i] q^(val + i) + O(q^prec)`. Coefficients of
//! `q^n` for `n >= prec` are unknown. Every operation derives the order to
//! which its output is provably correct from the orders of its inputs and
//! never reports anything past it.
//!
//! Representation is canonical: the first stored coefficient is nonzero,
//! trailing zeros are trimmed and nothing at or beyond `prec` is kept. The
//! series that vanishes to its truncation order has no coefficients and
//! `val == prec`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{denominator_lcm, format_rational, int, CommonDenominator, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentSeries {
    val: i64,
    coeffs: Vec<Rational>,
    prec: i64,
}

/// The four field operations, for callers that dispatch on a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(kind: ArithKind, f: &LaurentSeries, g: &LaurentSeries) -> Result<LaurentSeries> {
    Ok(match kind {
        ArithKind::Add => f + g,
        ArithKind::Sub => f - g,
        ArithKind::Mul => f * g,
        ArithKind::Div => f.div(g)?,
    })
}

/// Scales a rational vector to integers; returns the integers and the scale.
fn to_ints(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = denominator_lcm(v);
    let ints = v.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (ints, d)
}

/// First `len` coefficients of the product of two dense coefficient vectors.
fn convolve(f: &[Rational], g: &[Rational], len: usize) -> Vec<Rational> {
    let f = &f[..f.len().min(len)];
    let g = &g[..g.len().min(len)];
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let (fi, df) = to_ints(f);
    let (gi, dg) = to_ints(g);
    let n = len.min(f.len() + g.len() - 1);
    let mut out = vec![BigInt::zero(); n];
    for (i, a) in fi.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in gi.iter().enumerate().take(n - i) {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    let d = df * dg;
    out.into_iter()
        .map(|c| Rational::new(c, d.clone()))
        .collect()
}

/// Inverse of a unit power series to `len` terms, computed over the integers:
/// with `u = U / d` and `b_n = B_n / U_0^(n+1)`,
/// `B_n = -Σ_{i=1}^{n} U_i B_{n-i} U_0^(i-1)`.
fn unit_inverse(u: &[Rational], len: usize) -> Vec<Rational> {
    let (ui, d) = to_ints(&u[..u.len().min(len)]);
    let u0 = ui[0].clone();
    let mut u0_pow = vec![BigInt::one()];
    for i in 1..=len {
        let next = &u0_pow[i - 1] * &u0;
        u0_pow.push(next);
    }
    let mut b: Vec<BigInt> = Vec::with_capacity(len);
    b.push(BigInt::one());
    for n in 1..len {
        let mut acc = BigInt::zero();
        for i in 1..=n.min(ui.len() - 1) {
            if !ui[i].is_zero() {
                acc += &ui[i] * &b[n - i] * &u0_pow[i - 1];
            }
        }
        b.push(-acc);
    }
    b.into_iter()
        .enumerate()
        .map(|(n, bn)| Rational::new(bn * &d, u0_pow[n + 1].clone()))
        .collect()
}

impl LaurentSeries {
    /// Builds `Σ coeffs[i] q^(val+i) + O(q^prec)`; coefficients at or past
    /// `prec` are dropped.
    pub fn new(val: i64, mut coeffs: Vec<Rational>, prec: i64) -> Self {
        let keep = (prec - val).max(0) as usize;
        coeffs.truncate(keep);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => LaurentSeries::zero(prec),
            Some(i) => {
                coeffs.drain(..i);
                while coeffs.last().is_some_and(Zero::is_zero) {
                    coeffs.pop();
                }
                LaurentSeries {
                    val: val + i as i64,
                    coeffs,
                    prec,
                }
            }
        }
    }

    pub fn from_ints<T: Into<BigInt> + Clone>(val: i64, coeffs: &[T], prec: i64) -> Self {
        LaurentSeries::new(
            val,
            coeffs.iter().cloned().map(|c| int(c.into())).collect(),
            prec,
        )
    }

    /// `O(q^prec)`.
    pub fn zero(prec: i64) -> Self {
        LaurentSeries {
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(c: Rational, prec: i64) -> Self {
        LaurentSeries::new(0, vec![c], prec)
    }

    pub fn one(prec: i64) -> Self {
        LaurentSeries::constant(Rational::one(), prec)
    }

    /// `c q^k + O(q^prec)`.
    pub fn monomial(c: Rational, k: i64, prec: i64) -> Self {
        LaurentSeries::new(k, vec![c], prec)
    }

    /// The variable `q`.
    pub fn var(prec: i64) -> Self {
        LaurentSeries::monomial(Rational::one(), 1, prec)
    }

    pub fn from_polynomial(p: &Polynomial, prec: i64) -> Self {
        LaurentSeries::new(0, p.coeffs().to_vec(), prec)
    }

    pub fn leading_exponent(&self) -> i64 {
        self.val
    }

    pub fn truncation_order(&self) -> i64 {
        self.prec
    }

    /// Number of known terms counted from the leading one.
    pub fn relative_precision(&self) -> i64 {
        self.prec - self.val
    }

    /// Stored coefficients, starting at `q^leading_exponent`. Positions past
    /// the end (and below `truncation_order`) are zero.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Result<Rational> {
        if n >= self.prec {
            return Err(Error::InsufficientOrder {
                needed: n + 1,
                available: self.prec,
            });
        }
        Ok(self.term(n))
    }

    /// Coefficient of `q^n` for `n < prec`, zero outside the stored range.
    pub(crate) fn term(&self, n: i64) -> Rational {
        if n < self.val {
            return Rational::zero();
        }
        self.coeffs
            .get((n - self.val) as usize)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Dense coefficients of `q^from .. q^(prec-1)`.
    pub fn dense_from(&self, from: i64) -> Vec<Rational> {
        (from..self.prec).map(|n| self.term(n)).collect()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        LaurentSeries::new(self.val, self.coeffs.clone(), self.prec.min(prec))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        LaurentSeries::new(
            self.val,
            self.coeffs.iter().map(|a| a * c).collect(),
            self.prec,
        )
    }

    /// Known part as a polynomial; requires no pole part.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        if self.val < 0 && !self.is_zero() {
            return Err(Error::domain("to_polynomial", "series has a pole part"));
        }
        Ok(Polynomial::new(self.dense_from(0)))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let rel = self.relative_precision();
        let inv = unit_inverse(&self.coeffs, rel as usize);
        Ok(LaurentSeries::new(-self.val, inv, -self.val + rel))
    }

    pub fn div(&self, g: &LaurentSeries) -> Result<Self> {
        Ok(self * &g.recip()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = LaurentSeries::one(base.relative_precision().max(1));
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(self.val + i as i64))
            .collect();
        LaurentSeries::new(self.val - 1, coeffs, self.prec - 1)
    }

    /// Formal antiderivative with zero constant term; fails on a `q^-1` term.
    fn integral(&self) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.val + i as i64 + 1;
            if e == 0 {
                if !c.is_zero() {
                    return Err(Error::domain("integral", "residue term q^-1"));
                }
                coeffs.push(Rational::zero());
            } else {
                coeffs.push(c / int(e));
            }
        }
        Ok(LaurentSeries::new(self.val + 1, coeffs, self.prec + 1))
    }

    /// `self(g(q))`. Requires `g` to have positive valuation. A pole part in
    /// `self` is allowed when `g` is nonzero.
    pub fn compose(&self, g: &LaurentSeries) -> Result<Self> {
        let vg = g.val;
        if vg < 1 {
            return Err(Error::domain(
                "compose",
                "inner series must have positive valuation",
            ));
        }
        if self.val < 0 {
            if g.is_zero() {
                return Err(Error::ZeroSeries);
            }
            let unit = self.shift(-self.val).compose(g)?;
            return Ok(&unit * &g.pow(self.val)?);
        }
        let pf = self.prec;
        let mut prec = pf.saturating_mul(vg);
        let lowest_positive = (1..pf).find(|&k| !self.term(k).is_zero());
        if let Some(m) = lowest_positive {
            prec = prec.min(g.prec + (m - 1) * vg);
        }
        let len = prec.max(0) as usize;
        let last = self.val + self.coeffs.len() as i64 - 1;
        let top = ((prec - 1) / vg).min(pf - 1).min(last).max(0);
        let fcoeffs: Vec<Rational> = (0..=top).map(|k| self.term(k)).collect();
        let (gi, dg) = to_ints(&g.dense_from(0)[..(g.prec.min(prec).max(0) as usize)]);
        // All terms share the denominator D = lcm(den f_k) * dg^top.
        let df = denominator_lcm(&fcoeffs);
        let mut dg_pow = vec![BigInt::one()];
        for k in 1..=top as usize {
            let next = &dg_pow[k - 1] * &dg;
            dg_pow.push(next);
        }
        let big_d = &df * &dg_pow[top as usize];
        let mut acc = vec![BigInt::zero(); len];
        let mut power = vec![BigInt::zero(); len];
        if len > 0 {
            power[0] = BigInt::one();
        }
        for (k, fk) in fcoeffs.iter().enumerate() {
            if k > 0 {
                let mut next = vec![BigInt::zero(); len];
                for (i, a) in power.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in gi.iter().enumerate().take(len - i) {
                        if !b.is_zero() {
                            next[i + j] += a * b;
                        }
                    }
                }
                power = next;
            }
            if fk.is_zero() {
                continue;
            }
            let w = fk.numer() * (&big_d / fk.denom()) / &dg_pow[k];
            for (a, p) in acc.iter_mut().zip(&power) {
                if !p.is_zero() {
                    *a += &w * p;
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|c| Rational::new(c, big_d.clone()))
            .collect();
        Ok(LaurentSeries::new(0, coeffs, prec))
    }

    /// `exp(f)` for `f` with zero constant term and no pole part.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.is_zero() && self.val < 1 {
            return Err(Error::domain(
                "exp_series",
                "argument must have zero constant term",
            ));
        }
        let len = self.prec.max(0) as usize;
        let kf: Vec<Rational> = (0..len as i64).map(|k| self.term(k) * int(k)).collect();
        let (kf, dk) = to_ints(&kf);
        let mut e = CommonDenominator::new();
        e.push(&Rational::one());
        let mut out = vec![Rational::one()];
        for n in 1..len {
            let terms = (1..=n)
                .filter(|&k| !kf[k].is_zero())
                .map(|k| (&kf[k], n - k));
            let en = e.weighted_sum(terms) / int(&dk * BigInt::from(n));
            e.push(&en);
            out.push(en);
        }
        let e = out;
        Ok(LaurentSeries::new(0, e, self.prec.max(1)))
    }

    /// `log(f)` for `f` with constant term 1.
    pub fn log_series(&self) -> Result<Self> {
        if self.val != 0 || !self.leading_coefficient().is_some_and(One::is_one) {
            return Err(Error::domain("log_series", "constant term must be 1"));
        }
        let f_prime = self.derivative();
        f_prime.div(self)?.integral()
    }

    /// Compositional inverse of `c1 q + c2 q^2 + ...` with `c1 != 0`, by
    /// Newton iteration on `f(g) = q`.
    pub fn revert(&self) -> Result<Self> {
        if self.val != 1 {
            return Err(Error::domain(
                "revert",
                "series must have zero constant term and nonzero linear term",
            ));
        }
        let target = self.prec;
        let c1 = self.coeffs[0].clone();
        let mut g = LaurentSeries::monomial(c1.recip(), 1, target.min(2));
        let mut known = g.prec;
        while known < target {
            let next = (2 * known).min(target);
            let f = self.truncate(next);
            let g_ext = LaurentSeries::new(g.val, g.coeffs.clone(), next);
            let resid = &f.compose(&g_ext)? - &LaurentSeries::var(next);
            let slope = f.derivative().compose(&g_ext)?;
            let step = resid.div(&slope)?;
            g = (&g_ext - &step).truncate(next);
            known = next;
        }
        Ok(g)
    }

    /// `{w, q} = w'''/w' - (3/2)(w''/w')^2`.
    pub fn schwarzian(&self) -> Result<Self> {
        let d1 = self.derivative();
        if d1.is_zero() {
            return Err(Error::domain(
                "schwarzian",
                "derivative vanishes to truncation order",
            ));
        }
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        let r = d2.div(&d1)?;
        let three_halves = Rational::new(3.into(), 2.into());
        Ok(&d3.div(&d1)? - &(&r * &r).scale(&three_halves))
    }

    pub fn display_in(&self, var: &str) -> SeriesDisplay<'_> {
        SeriesDisplay {
            series: self,
            var: var.to_owned(),
        }
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let prec = self.prec.min(rhs.prec);
        let val = self.val.min(rhs.val).min(prec);
        let coeffs = (val..prec).map(|n| self.term(n) + rhs.term(n)).collect();
        LaurentSeries::new(val, coeffs, prec)
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        let rel = self.relative_precision().min(rhs.relative_precision());
        let val = self.val + rhs.val;
        let coeffs = convolve(&self.coeffs, &rhs.coeffs, rel.max(0) as usize);
        LaurentSeries::new(val, coeffs, val + rel)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, rhs: LaurentSeries) -> LaurentSeries { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

pub struct SeriesDisplay<'a> {
    series: &'a LaurentSeries,
    var: String,
}

impl fmt::Display for SeriesDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.series;
        let v = &self.var;
        let mut first = true;
        for (i, c) in s.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = s.val + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if e == 0 || !mag.is_one() {
                write!(f, "{}", format_rational(&mag))?;
            }
            match e {
                0 => {}
                1 => write!(f, "{v}")?,
                _ => write!(f, "{v}^{e}")?,
            }
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O({v}^{})", s.prec)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("q").fmt(f)
    }
}
