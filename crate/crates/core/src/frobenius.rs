//! From a Q-value back to the modular function.
//!
//! With `G = 4z²Q = 1 + Σ g_j z^j`, the equation `4z² y'' + G y = 0` has the
//! double exponent 1/2 at the origin and the solutions
//! `y1 = z^(1/2) h(z)` and `y2 = y1 log z + z^(1/2) k(z)`, normalized by
//! `h(0) = 1`, `k(0) = 0`. The half-integer prefactor cancels in `y2 / y1`,
//! so only `h` and `k` are ever stored. Then
//! `q = exp(y2 / y1) = z exp(k / h)`, and reverting gives `z(q)`, whose
//! reciprocal is the hauptmodul `t(q)`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qvalue::QValue;
use crate::ratfunc::RationalFunction;
use crate::rational::{clear_denominators, denominator_lcm, int, rat, CommonDenominator, Rational};
use crate::series::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusBasis {
    pub h: LaurentSeries,
    pub k: LaurentSeries,
    pub q_of_z: LaurentSeries,
}

impl FrobeniusBasis {
    /// Assembles a basis from given unit parts, computing `q(z)`.
    pub fn from_parts(h: LaurentSeries, k: LaurentSeries) -> Result<Self> {
        if h.leading_exponent() != 0 || h.coeff(0)? != rat(1) {
            return Err(Error::domain("frobenius", "h must have constant term 1"));
        }
        if !k.is_zero() && k.leading_exponent() < 1 {
            return Err(Error::domain("frobenius", "k must vanish at the origin"));
        }
        let q_of_z = k.div(&h)?.exp_series()?.shift(1);
        Ok(FrobeniusBasis { h, k, q_of_z })
    }
}

/// `Q = r - p²/4 - p'/2`, the potential of `y'' + Q y = 0` obtained from
/// `y'' + p y' + r y = 0` by rescaling `y`.
pub fn normalize_to_q(p: &RationalFunction, r: &RationalFunction) -> RationalFunction {
    let quarter = RationalFunction::constant(Rational::new(1.into(), 4.into()));
    let half = RationalFunction::constant(Rational::new(1.into(), 2.into()));
    &(r - &(&(p * p) * &quarter)) - &(&p.derivative() * &half)
}

/// Solves the recursions
/// `4n² h_n = -Σ_{j≥1} g_j h_{n-j}` and
/// `4n² k_n = -Σ_{j≥1} g_j k_{n-j} - 8n h_n` to `order`.
pub fn frobenius_log_basis(q: &QValue, order: i64) -> Result<FrobeniusBasis> {
    if order < 1 {
        return Err(Error::domain("frobenius", "order must be positive"));
    }
    let g = q.g_series(order);
    if g.coeff(0)? != rat(1) {
        return Err(Error::InvalidQValue("G(0) != 1".into()));
    }
    let n_max = order as usize;
    let gs: Vec<Rational> = (0..order).map(|j| g.term(j)).collect();
    let dg = denominator_lcm(&gs);
    let gs = clear_denominators(&gs);
    let (mut hc, mut kc) = (CommonDenominator::new(), CommonDenominator::new());
    let mut h = vec![rat(1)];
    let mut k = vec![Rational::zero()];
    hc.push(&h[0]);
    kc.push(&k[0]);
    for n in 1..n_max {
        let nonzero = || (1..=n).filter(|&j| !gs[j].is_zero());
        let sh = hc.weighted_sum(nonzero().map(|j| (&gs[j], n - j)));
        let sk = kc.weighted_sum(nonzero().map(|j| (&gs[j], n - j)));
        let four_n2 = int(&dg * BigInt::from(4 * n * n));
        let hn = -sh / &four_n2;
        let kn = -(sk + &hn * int(&dg * BigInt::from(8 * n))) / &four_n2;
        hc.push(&hn);
        kc.push(&kn);
        h.push(hn);
        k.push(kn);
    }
    FrobeniusBasis::from_parts(
        LaurentSeries::new(0, h, order),
        LaurentSeries::new(0, k, order),
    )
}

/// `q(z) = z exp(k / h)`.
pub fn ratio_exponential(basis: &FrobeniusBasis) -> LaurentSeries {
    basis.q_of_z.clone()
}

/// `t(q) = 1 / z(q)` with coefficients of `q^-1 .. q^order`.
pub fn recover_hauptmodul(q: &QValue, order: i64) -> Result<LaurentSeries> {
    let basis = frobenius_log_basis(q, order + 2)?;
    let z_of_q = ratio_exponential(&basis).revert()?;
    z_of_q.recip()
}

/// Residuals of `4z² y'' + G y` for both basis elements, divided by `z^(1/2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdeResidual {
    /// Coefficient of `log z` in the `y2` residual; equals the `y1` residual.
    pub log_part: LaurentSeries,
    /// Remaining part of the `y2` residual.
    pub plain_part: LaurentSeries,
}

impl OdeResidual {
    pub fn vanishes(&self) -> bool {
        self.log_part.is_zero() && self.plain_part.is_zero()
    }
}

/// Substitutes the basis into the equation by direct differentiation:
/// `z^(-1/2) · 4z² (z^(1/2) u)'' = 4z² u'' + 4z u' - u`.
pub fn ode_residual(q: &QValue, basis: &FrobeniusBasis) -> OdeResidual {
    let order = basis.h.truncation_order().min(basis.k.truncation_order());
    let g = q.g_series(order);
    let z = LaurentSeries::var(order + 2);
    let four = rat(4);
    let op = |u: &LaurentSeries| -> LaurentSeries {
        let d1 = u.derivative();
        let d2 = d1.derivative();
        let a = (&(&z * &z) * &d2).scale(&four);
        let b = (&z * &d1).scale(&four);
        &(&(&a + &b) - u) + &(&g * u)
    };
    let log_part = op(&basis.h);
    let plain_part = &op(&basis.k) + &(&z * &basis.h.derivative()).scale(&rat(8));
    OdeResidual {
        log_part,
        plain_part,
    }
}
