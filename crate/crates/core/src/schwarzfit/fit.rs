//! Fitting `Q(z) = N(z) / (4 z^2 M(z))` to the coordinate `z = 1/t`.
//!
//! Clearing denominators in `{z, w} = 2 Q(z) z'^2` with `w = log q` gives an
//! identity between power series in `q` that is linear in the unknown
//! coefficients of `N` and `M`:
//!
//! ```text
//! N(z) z'^4 = (u^2 z'^2 + z^2 (3 z''^2 - 2 z' z''')) M(z),   u = z / q.
//! ```
//!
//! Write `A = z'^4` and `B` for the bracket. Since `N/M` equals the fixed
//! series `B/A` in the invertible coordinate `z`, the reduced pair
//! `(N, M)` is unique. Every solution with `deg N <= r`, `deg M <= s` is a
//! polynomial multiple of it, so the nullspace at `(r, s)` has dimension
//! `min(r - r0, s - s0) + 1` once both bounds cover the reduced degrees.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{nullspace_with, PivotRule};
use crate::moonshine::{extend_coefficients, ClassId, Registry};
use crate::poly::Polynomial;
use crate::qvalue::QValue;
use crate::rational::{int, Rational};
use crate::series::LaurentSeries;

/// Extra matched equations beyond the unknown count.
pub const GUARD_BAND: i64 = 40;
pub const DEFAULT_SERIES_ORDER: i64 = 300;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FitStrategy {
    /// Deepen a common degree bound, reduce the first solution by gcd and
    /// confirm the reduced degrees directly.
    #[default]
    Structural,
    /// Try every `(r, s)` in order of `r + s`, then `r`.
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct FitOptions {
    pub max_r: usize,
    pub max_s: usize,
    pub series_order: i64,
    pub strategy: FitStrategy,
    pub pivot: PivotRule,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            max_r: 40,
            max_s: 40,
            series_order: DEFAULT_SERIES_ORDER,
            strategy: FitStrategy::Structural,
            pivot: PivotRule::default(),
        }
    }
}

impl FitOptions {
    pub fn with_bounds(max_r: usize, max_s: usize) -> Self {
        FitOptions {
            max_r,
            max_s,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FitReport {
    pub class: Option<ClassId>,
    pub qvalue: QValue,
    pub degrees: (usize, usize),
    /// Number of coefficient equations `q^0 ..` the solution satisfies.
    pub orders_checked: i64,
    pub nullspace_dim: usize,
    /// `B` with `M = B^2`, when `M` is a perfect square.
    pub square_factored: Option<Polynomial>,
}

/// `z = 1/t` for `t = q^-1 + O(q)`.
pub fn hauptmodul_reciprocal(t: &LaurentSeries) -> Result<LaurentSeries> {
    if t.leading_exponent() != -1 || !t.leading_coefficient().is_some_and(One::is_one) {
        return Err(Error::domain(
            "hauptmodul_reciprocal",
            "expected leading term q^-1",
        ));
    }
    if t.truncation_order() <= 0 {
        return Err(Error::InsufficientOrder {
            needed: 1,
            available: t.truncation_order(),
        });
    }
    if !t.term(0).is_zero() {
        return Err(Error::domain(
            "hauptmodul_reciprocal",
            "constant term must be zero; shift the constant explicitly",
        ));
    }
    t.recip()
}

fn check_coordinate(z: &LaurentSeries) -> Result<()> {
    if z.leading_exponent() != 1 || !z.leading_coefficient().is_some_and(One::is_one) {
        return Err(Error::domain("fit", "coordinate must be q + O(q^2)"));
    }
    Ok(())
}

/// The series `A = z'^4` and `B` on the two sides of the identity.
fn sides(z: &LaurentSeries) -> (LaurentSeries, LaurentSeries) {
    let d1 = z.derivative();
    let d2 = d1.derivative();
    let d3 = d2.derivative();
    let u = z.shift(-1);
    let d1sq = &d1 * &d1;
    let a = &d1sq * &d1sq;
    let bracket = &(&d2 * &d2).scale(&int(3)) - &(&d1 * &d3).scale(&int(2));
    let b = &(&(&u * &u) * &d1sq) + &(&(z * z) * &bracket);
    (a, b)
}

/// Rows are the coefficients of `q^0 .. q^orders`; columns are
/// `b_0 .. b_r` followed by `c_0 .. c_s`.
pub fn fit_system(
    z: &LaurentSeries,
    r: usize,
    s: usize,
    orders: i64,
) -> Result<Vec<Vec<Rational>>> {
    check_coordinate(z)?;
    if orders < 0 {
        return Err(Error::domain("fit_system", "negative order"));
    }
    let needed = orders + 2;
    if z.truncation_order() < needed {
        return Err(Error::InsufficientOrder {
            needed,
            available: z.truncation_order(),
        });
    }
    let z = z.truncate(needed);
    let (a, b) = sides(&z);
    let rows = (orders + 1) as usize;
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(r + s + 2);
    let mut power = LaurentSeries::one(needed);
    let mut powers = Vec::with_capacity(r.max(s) + 1);
    for _ in 0..=r.max(s) {
        powers.push(power.clone());
        power = &power * &z;
    }
    for p in &powers[..=r] {
        columns.push((p * &a).dense_from(0)[..rows].to_vec());
    }
    for p in &powers[..=s] {
        columns.push((-&(p * &b)).dense_from(0)[..rows].to_vec());
    }
    Ok((0..rows)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .collect())
}

/// `N(z) A - M(z) B`; zero through its precision exactly when `q` fits.
pub fn functional_residual(z: &LaurentSeries, q: &QValue) -> Result<LaurentSeries> {
    check_coordinate(z)?;
    let (a, b) = sides(z);
    let prec = z.truncation_order() - 1;
    let nz = LaurentSeries::from_polynomial(q.num(), prec).compose(z)?;
    let mz = LaurentSeries::from_polynomial(q.den_core(), prec).compose(z)?;
    Ok((&(&nz * &a) - &(&mz * &b)).truncate(prec))
}

fn integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * int(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    ints.into_iter().map(|x| int(x / &g)).collect()
}

fn candidate(v: &[Rational], r: usize) -> Result<QValue> {
    let v = integer_vector(v);
    QValue::new(
        Polynomial::new(v[..=r].to_vec()),
        Polynomial::new(v[r + 1..].to_vec()),
    )
}

fn qvalue_degrees(q: &QValue) -> (usize, usize) {
    (
        q.num().degree().unwrap_or(0),
        q.den_core().degree().unwrap_or(0),
    )
}

fn rows_for(r: usize, s: usize) -> i64 {
    (r + s) as i64 + GUARD_BAND
}

/// Supplies the coordinate to at least the requested precision.
trait Coordinate {
    fn at_least(&mut self, prec: i64) -> Result<LaurentSeries>;
    fn full(&mut self) -> Result<LaurentSeries>;
}

struct Fixed(LaurentSeries);

impl Coordinate for Fixed {
    fn at_least(&mut self, prec: i64) -> Result<LaurentSeries> {
        if self.0.truncation_order() < prec {
            return Err(Error::InsufficientOrder {
                needed: prec,
                available: self.0.truncation_order(),
            });
        }
        Ok(self.0.truncate(prec))
    }
    fn full(&mut self) -> Result<LaurentSeries> {
        Ok(self.0.clone())
    }
}

/// The coordinate of a registered class, extended on demand.
struct FromRegistry<'a> {
    reg: &'a Registry,
    label: String,
    shift: Rational,
    series_order: i64,
    cached: Option<LaurentSeries>,
}

impl FromRegistry<'_> {
    fn coordinate(&mut self, order: i64) -> Result<LaurentSeries> {
        if let Some(z) = &self.cached {
            if z.truncation_order() >= order + 3 {
                return Ok(z.clone());
            }
        }
        let t = extend_coefficients(self.reg, &self.label, order)?.to_series();
        let t = &t + &LaurentSeries::constant(self.shift.clone(), t.truncation_order());
        let z = t.recip()?;
        self.cached = Some(z.clone());
        Ok(z)
    }
}

impl Coordinate for FromRegistry<'_> {
    fn at_least(&mut self, prec: i64) -> Result<LaurentSeries> {
        let order = self.series_order.max(prec - 3);
        Ok(self.coordinate(order)?.truncate(prec))
    }
    fn full(&mut self) -> Result<LaurentSeries> {
        self.coordinate(self.series_order)
    }
}

fn solutions(
    src: &mut dyn Coordinate,
    r: usize,
    s: usize,
    pivot: PivotRule,
) -> Result<Vec<Vec<Rational>>> {
    let orders = rows_for(r, s);
    let z = src.at_least(orders + 2)?;
    nullspace_with(&fit_system(&z, r, s, orders)?, pivot)
}

/// Accepts `q` if it satisfies every equation the full coordinate provides.
fn consistent(src: &mut dyn Coordinate, q: &QValue) -> Result<Option<i64>> {
    let z = src.full()?;
    let res = functional_residual(&z, q)?;
    Ok(res.is_zero().then(|| res.truncation_order()))
}

fn report(q: QValue, orders_checked: i64) -> FitReport {
    FitReport {
        class: None,
        degrees: qvalue_degrees(&q),
        square_factored: q.square_factor(),
        qvalue: q,
        orders_checked,
        nullspace_dim: 1,
    }
}

fn fit_structural(src: &mut dyn Coordinate, opts: &FitOptions) -> Result<FitReport> {
    let mut bound = 2usize;
    loop {
        let (r, s) = (bound.min(opts.max_r), bound.min(opts.max_s));
        let basis = solutions(src, r, s, opts.pivot)?;
        if let Some(v) = basis.first() {
            if let Ok(q) = candidate(v, r) {
                let (r0, s0) = qvalue_degrees(&q);
                let confirm = solutions(src, r0, s0, opts.pivot)?;
                if confirm.len() != 1 {
                    return Err(Error::Internal(format!(
                        "nullspace dimension {} at reduced degrees ({r0}, {s0})",
                        confirm.len()
                    )));
                }
                if !candidate(&confirm[0], r0).is_ok_and(|c| c == q) {
                    return Err(Error::Internal(format!(
                        "reduced solution not reproduced at ({r0}, {s0})"
                    )));
                }
                if let Some(checked) = consistent(src, &q)? {
                    return Ok(report(q, checked));
                }
            }
        }
        if r == opts.max_r && s == opts.max_s {
            return Err(Error::DegreesExhausted {
                max_r: opts.max_r,
                max_s: opts.max_s,
            });
        }
        bound *= 2;
    }
}

fn fit_exhaustive(src: &mut dyn Coordinate, opts: &FitOptions) -> Result<FitReport> {
    for total in 0..=opts.max_r + opts.max_s {
        for r in 0..=total.min(opts.max_r) {
            let s = total - r;
            if s > opts.max_s {
                continue;
            }
            let basis = solutions(src, r, s, opts.pivot)?;
            if basis.len() != 1 {
                continue;
            }
            let q = candidate(&basis[0], r)?;
            if qvalue_degrees(&q) != (r, s) {
                return Err(Error::Internal(format!(
                    "one-dimensional nullspace at ({r}, {s}) is not reduced"
                )));
            }
            if let Some(checked) = consistent(src, &q)? {
                return Ok(report(q, checked));
            }
        }
    }
    Err(Error::DegreesExhausted {
        max_r: opts.max_r,
        max_s: opts.max_s,
    })
}

fn fit_with(src: &mut dyn Coordinate, opts: &FitOptions) -> Result<FitReport> {
    match opts.strategy {
        FitStrategy::Structural => fit_structural(src, opts),
        FitStrategy::Exhaustive => fit_exhaustive(src, opts),
    }
}

/// Fits the Q-value of the coordinate `z = q + O(q^2)`.
pub fn fit_reciprocal(z: &LaurentSeries, opts: &FitOptions) -> Result<FitReport> {
    check_coordinate(z)?;
    fit_with(&mut Fixed(z.clone()), opts)
}

/// Fits the Q-value of `t = q^-1 + O(q)` in the coordinate `1/t`.
pub fn fit_series(t: &LaurentSeries, opts: &FitOptions) -> Result<FitReport> {
    fit_reciprocal(&hauptmodul_reciprocal(t)?, opts)
}

fn fit_registered(
    reg: &Registry,
    label: &str,
    shift: Rational,
    opts: &FitOptions,
) -> Result<FitReport> {
    let class = reg.get(label)?;
    if !class.available {
        return Err(Error::Unavailable(class.id.to_string()));
    }
    if opts.series_order < 1 {
        return Err(Error::domain("fit", "series order must be positive"));
    }
    let mut src = FromRegistry {
        reg,
        label: class.id.label().to_owned(),
        shift,
        series_order: opts.series_order,
        cached: None,
    };
    let mut rep = fit_with(&mut src, opts)?;
    rep.class = Some(class.id.clone());
    Ok(rep)
}

/// Fits the Q-value of a registered class from its extended expansion.
pub fn fit_qvalue(reg: &Registry, label: &str, opts: &FitOptions) -> Result<FitReport> {
    fit_registered(reg, label, Rational::zero(), opts)
}

/// Fits the Q-value of `t + c` for a registered class.
pub fn shift_constant(
    reg: &Registry,
    label: &str,
    c: &Rational,
    opts: &FitOptions,
) -> Result<FitReport> {
    fit_registered(reg, label, c.clone(), opts)
}
