//! Extension of q-expansions by the replication identities of orders 2 and 4.
//!
//! Write `f = q^-1 + Σ a(n) q^n`, `â` for the coefficients of the square
//! class and `â̂` for those of the square of the square class.
//!
//! Order 2, in coefficient form for `m >= 2`:
//!
//! * `m` odd: `a(2m) = a(m+1) + Σ_{i=1}^{(m-1)/2} a(i) a(m-i)`
//! * `m = 2r`: `a(4r) = a(2r+1) + Σ_{i=1}^{r-1} a(i) a(2r-i) + (a(r)² - â(r)) / 2`
//!
//! Order 4:
//! `q^-4 + Σ â̂(m) q^4m + 2 Σ â(2m) q^2m + 4 Σ a(4m) q^m = f⁴ + α f² + β f + γ`,
//! with `α, β, γ` chosen to kill the `q^-2, q^-1, q^0` terms on the right.
//!
//! Even indices come from order 2. An odd index `n = 2k + 1` comes from the
//! `q^k` equation of order 4 after expanding `a(4k)` by order 2, which
//! brings in `a(2k+1)` with coefficient 4. That works for `n = 7` and all
//! `n >= 9`, leaving `a(1), a(2), a(3), a(5)` as the seeds.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::registry::{ClassId, Registry};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::LaurentSeries;

/// `a(-1) .. a(order)` of one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    pub class: ClassId,
    coeffs: Vec<Rational>,
    removed_constant: Rational,
}

impl CoefficientTable {
    /// `coeffs[i]` is `a(i - 1)`.
    pub fn new(class: ClassId, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::domain("coefficient table", "needs a(-1) and a(0)"));
        }
        Ok(CoefficientTable {
            class,
            coeffs,
            removed_constant: Rational::zero(),
        })
    }

    /// Reads `a(-1) .. a(prec - 1)` off a series with at most a simple pole.
    pub fn from_series(class: ClassId, t: &LaurentSeries) -> Result<Self> {
        if t.leading_exponent() < -1 {
            return Err(Error::domain("coefficient table", "pole of order above 1"));
        }
        CoefficientTable::new(class, t.dense_from(-1))
    }

    pub fn order(&self) -> i64 {
        self.coeffs.len() as i64 - 2
    }

    /// `a(n)`, if within the table.
    pub fn coeff(&self, n: i64) -> Option<&Rational> {
        usize::try_from(n + 1).ok().and_then(|i| self.coeffs.get(i))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The constant removed by [`normalize_constant`], zero otherwise.
    pub fn removed_constant(&self) -> &Rational {
        &self.removed_constant
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }

    pub fn truncate(&self, order: i64) -> Self {
        let mut t = self.clone();
        t.coeffs.truncate((order + 2).max(2) as usize);
        t
    }

    pub fn to_series(&self) -> LaurentSeries {
        LaurentSeries::new(-1, self.coeffs.clone(), self.order() + 1)
    }
}

/// Sets `a(0)` to zero and records the constant that was removed.
pub fn normalize_constant(raw: &CoefficientTable) -> Result<CoefficientTable> {
    if !raw.coeffs[0].is_one() {
        return Err(Error::domain("normalize_constant", "a(-1) must be 1"));
    }
    let mut t = raw.clone();
    t.removed_constant = std::mem::take(&mut t.coeffs[1]);
    Ok(t)
}

/// Coefficients `a(-1) ..` with `v[i] = a(i - 1)`.
type Coeffs = Vec<BigInt>;

fn at(v: &[BigInt], i: i64, label: &str) -> Result<BigInt> {
    v.get((i + 1) as usize).cloned().ok_or_else(|| {
        Error::Internal(format!(
            "{label}: replicate coefficient a({i}) not extended"
        ))
    })
}

/// Runs both recursions for one class. `square` and `square_square` are
/// `None` for a self-square class, in which case the class's own
/// coefficients stand in for both.
fn replicate(
    label: &str,
    seeds: &BTreeMap<i64, BigInt>,
    square: Option<(&[BigInt], &[BigInt])>,
    n: i64,
) -> Result<Coeffs> {
    let n = n.max(5);
    let mut a: Coeffs = vec![BigInt::zero(); (n + 2) as usize];
    a[0] = BigInt::one();
    for k in super::registry::MANDATORY_SEEDS {
        a[(k + 1) as usize] = seeds
            .get(&k)
            .cloned()
            .ok_or_else(|| Error::Unavailable(format!("{label} (missing a({k}))")))?;
    }
    let inconsistent = |m: i64, reason: String| Error::ReplicationInconsistency {
        label: label.to_owned(),
        n: m,
        reason,
    };
    // f2[m + 2] = [q^m] f², filled once a(m + 1) is final.
    let mut f2: Vec<BigInt> = Vec::new();
    let f2_fill = |f2: &mut Vec<BigInt>, a: &Coeffs, upto: i64| {
        while (f2.len() as i64) - 2 <= upto {
            let m = f2.len() as i64 - 2;
            let mut s = BigInt::zero();
            for i in -1..=m + 1 {
                let (x, y) = (&a[(i + 1) as usize], &a[(m - i + 1) as usize]);
                if !x.is_zero() && !y.is_zero() {
                    s += x * y;
                }
            }
            f2.push(s);
        }
    };
    let f4 = |f2: &[BigInt], k: i64| -> BigInt {
        let mut s = BigInt::zero();
        for i in -2..=k + 2 {
            s += &f2[(i + 2) as usize] * &f2[(k - i + 2) as usize];
        }
        s
    };
    let hat = |a: &Coeffs, i: i64| -> Result<BigInt> {
        match square {
            None => at(a, i, label),
            Some((sq, _)) => at(sq, i, label),
        }
    };
    let hathat = |a: &Coeffs, i: i64| -> Result<BigInt> {
        match square {
            None => at(a, i, label),
            Some((_, sqsq)) => at(sqsq, i, label),
        }
    };
    // a(4r) by the order-2 identity, with a(2r + 1) taken from `a`.
    let order2_even = |a: &Coeffs, r: i64, m: i64| -> Result<BigInt> {
        let ar = &a[(r + 1) as usize];
        let halved = ar * ar - hat(a, r)?;
        let (h, rem) = halved.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return Err(inconsistent(m, format!("a({r})^2 - â({r}) is odd")));
        }
        let mut v = a[(2 * r + 2) as usize].clone() + h;
        for i in 1..r {
            v += &a[(i + 1) as usize] * &a[(2 * r - i + 1) as usize];
        }
        Ok(v)
    };

    for m in 4..=n {
        if m == 5 {
            continue;
        }
        let value = if m % 2 == 0 {
            let h = m / 2;
            if h % 2 == 1 {
                let mut v = a[(h + 2) as usize].clone();
                for i in 1..=(h - 1) / 2 {
                    v += &a[(i + 1) as usize] * &a[(h - i + 1) as usize];
                }
                v
            } else {
                order2_even(&a, h / 2, m)?
            }
        } else {
            let k = (m - 1) / 2;
            f2_fill(&mut f2, &a, k + 2);
            let alpha = -f4(&f2, -2);
            let beta = -(f4(&f2, -1) + &alpha * &f2[1]);
            // a(m) is still zero here, so this is the residual without it.
            let mut lhs = order2_even(&a, k, m)? * 4;
            if k % 2 == 0 {
                lhs += hat(&a, k)? * 2;
            }
            if k % 4 == 0 {
                lhs += hathat(&a, k / 4)?;
            }
            let rhs = f4(&f2, k) + &alpha * &f2[(k + 2) as usize] + &beta * &a[(k + 1) as usize];
            let diff: BigInt = rhs - lhs;
            let (v, rem) = diff.div_rem(&BigInt::from(4));
            if !rem.is_zero() {
                return Err(inconsistent(
                    m,
                    "order-4 residual not divisible by 4".into(),
                ));
            }
            v
        };
        a[(m + 1) as usize] = value;
    }
    Ok(a)
}

/// Extension engine with a per-call cache of chain members.
struct Extender<'a> {
    reg: &'a Registry,
    cache: HashMap<String, Coeffs>,
}

impl<'a> Extender<'a> {
    fn new(reg: &'a Registry) -> Self {
        Extender {
            reg,
            cache: HashMap::new(),
        }
    }

    /// Coefficients of `label` to order `n`, using `square_override` in
    /// place of the registered square class when given.
    fn extend(&mut self, label: &str, n: i64, square_override: Option<&str>) -> Result<Coeffs> {
        let class = self.reg.get(label)?;
        if !class.available {
            return Err(Error::Unavailable(class.id.to_string()));
        }
        let label = class.id.label().to_owned();
        if square_override.is_none() {
            if let Some(c) = self.cache.get(&label) {
                if c.len() as i64 >= n + 2 {
                    return Ok(c[..(n + 2).max(7) as usize].to_vec());
                }
            }
        }
        let square_label = match square_override {
            Some(s) => self.reg.get(s)?.id.label().to_owned(),
            None => class
                .square
                .clone()
                .ok_or_else(|| Error::Unavailable(format!("{label} (square class unresolved)")))?,
        };
        let coeffs = if square_label == label {
            replicate(&label, &class.seeds, None, n)?
        } else {
            let sq_class = self.reg.get(&square_label)?;
            let sqsq_label = sq_class.square.clone().ok_or_else(|| {
                Error::Unavailable(format!("{square_label} (square class unresolved)"))
            })?;
            let half = (n + 1) / 2 + 2;
            let quarter = (n + 3) / 4 + 2;
            let sq = self.extend(&square_label, half, None)?;
            let sqsq = self.extend(&sqsq_label, quarter, None)?;
            replicate(&label, &class.seeds, Some((&sq, &sqsq)), n)?
        };
        for (&k, v) in class.seeds.iter().chain(class.known.iter()) {
            if k <= n.max(5) && coeffs[(k + 1) as usize] != *v {
                return Err(Error::ReplicationInconsistency {
                    label: label.clone(),
                    n: k,
                    reason: format!("computed {}, recorded {v}", coeffs[(k + 1) as usize]),
                });
            }
        }
        if square_override.is_none() {
            self.cache.insert(label, coeffs.clone());
        }
        Ok(coeffs)
    }
}

fn to_table(id: ClassId, coeffs: &[BigInt], n: i64) -> Result<CoefficientTable> {
    let v = coeffs[..(n + 2).max(2) as usize]
        .iter()
        .map(|c| int(c.clone()))
        .collect();
    CoefficientTable::new(id, v)
}

/// `a(-1) .. a(n)` of `label`, checked against every recorded coefficient.
pub fn extend_coefficients(reg: &Registry, label: &str, n: i64) -> Result<CoefficientTable> {
    if n < -1 {
        return Err(Error::domain("extend_coefficients", "order below -1"));
    }
    let id = reg.get(label)?.id.clone();
    let coeffs = Extender::new(reg).extend(label, n, None)?;
    to_table(id, &coeffs, n)
}

/// Whether extending `label` with `candidate` as its square class
/// reproduces all recorded coefficients of `label` through `probe_order`.
pub fn verify_square_map(
    reg: &Registry,
    label: &str,
    candidate: &str,
    probe_order: i64,
) -> Result<bool> {
    let class = reg.get(label)?;
    let have = class.known_order();
    if have < probe_order {
        return Err(Error::InsufficientOrder {
            needed: probe_order,
            available: have,
        });
    }
    let cand = reg.get(candidate)?;
    if !cand.available {
        return Err(Error::Unavailable(cand.id.to_string()));
    }
    match Extender::new(reg).extend(label, probe_order, Some(candidate)) {
        Ok(_) => Ok(true),
        Err(Error::ReplicationInconsistency { label: l, .. }) if l == class.id.label() => Ok(false),
        Err(e) => Err(e),
    }
}

/// Residual series of both identities; each is zero to its truncation
/// order exactly when the coefficients are replicable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplicationResiduals {
    pub order_two: LaurentSeries,
    pub order_four: LaurentSeries,
}

impl ReplicationResiduals {
    pub fn vanish(&self) -> bool {
        self.order_two.is_zero() && self.order_four.is_zero()
    }
}

/// Evaluates both identities with series arithmetic, independently of the
/// recursion, from the expansions of the class and its square chain.
pub fn replication_residuals(reg: &Registry, label: &str, n: i64) -> Result<ReplicationResiduals> {
    let f_tab = extend_coefficients(reg, label, n)?;
    let chain = reg.square_chain(label)?;
    let sq_label = chain.get(1).unwrap_or(&chain[0]).label().to_owned();
    let sq = extend_coefficients(reg, &sq_label, n)?;
    let sq_chain = reg.square_chain(&sq_label)?;
    let sqsq = extend_coefficients(reg, sq_chain.get(1).unwrap_or(&sq_chain[0]).label(), n)?;
    residuals_from_tables(&f_tab, &sq, &sqsq)
}

/// `Σ_m c(m) q^(step m)` over `m >= 1` with `step m < prec`.
fn dilate(t: &CoefficientTable, step: i64, prec: i64) -> LaurentSeries {
    let mut coeffs = vec![Rational::zero(); prec.max(0) as usize];
    let mut m = 1;
    while step * m < prec {
        if let Some(c) = t.coeff(m) {
            coeffs[(step * m) as usize] = c.clone();
        }
        m += 1;
    }
    LaurentSeries::new(0, coeffs, prec)
}

/// `Σ_m a(d m) q^m`.
fn contract(t: &CoefficientTable, d: i64, scale: i64, prec: i64) -> LaurentSeries {
    let coeffs = (0..prec.max(0))
        .map(|m| {
            if m == 0 {
                Rational::zero()
            } else {
                t.coeff(d * m)
                    .map_or_else(Rational::zero, |c| c * int(scale))
            }
        })
        .collect();
    LaurentSeries::new(0, coeffs, prec)
}

pub fn residuals_from_tables(
    f_tab: &CoefficientTable,
    sq: &CoefficientTable,
    sqsq: &CoefficientTable,
) -> Result<ReplicationResiduals> {
    let n = f_tab.order();
    let f = f_tab.to_series();
    let a1 = f_tab.coeff(1).cloned().unwrap_or_else(Rational::zero);

    // Order 2, valid through q^(n/2).
    let p2 = n / 2 + 1;
    let lhs2 = &(&LaurentSeries::monomial(int(1), -2, p2) + &dilate(sq, 2, p2))
        + &contract(f_tab, 2, 2, p2);
    let rhs2 = &(&f * &f) - &LaurentSeries::constant(&a1 * int(2), p2);
    let order_two = (&lhs2 - &rhs2).truncate(p2);

    // Order 4, valid through q^(n/4).
    let p4 = n / 4 + 1;
    let f2 = &f * &f;
    let f4 = &f2 * &f2;
    let alpha = -f4.coeff(-2)?;
    let beta = -(f4.coeff(-1)? + &alpha * f2.coeff(-1)?);
    let gamma = -(f4.coeff(0)? + &alpha * f2.coeff(0)? + &beta * f.coeff(0)?);
    let rhs4 =
        &(&(&f4 + &f2.scale(&alpha)) + &f.scale(&beta)) + &LaurentSeries::constant(gamma, p4);
    let lhs4 = &(&(&LaurentSeries::monomial(int(1), -4, p4) + &dilate(sqsq, 4, p4))
        + &dilate_even(sq, p4))
        + &contract(f_tab, 4, 4, p4);
    let order_four = (&lhs4 - &rhs4).truncate(p4);
    Ok(ReplicationResiduals {
        order_two,
        order_four,
    })
}

/// `2 Σ_m â(2m) q^(2m)`.
fn dilate_even(sq: &CoefficientTable, prec: i64) -> LaurentSeries {
    let coeffs = (0..prec.max(0))
        .map(|e| {
            if e > 0 && e % 2 == 0 {
                sq.coeff(e).map_or_else(Rational::zero, |c| c * int(2))
            } else {
                Rational::zero()
            }
        })
        .collect();
    LaurentSeries::new(0, coeffs, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_a() -> Registry {
        Registry::parse("1A\t1A\t1:196884\t2:21493760\t3:864299970\t5:333202640600\n").unwrap()
    }

    fn a(t: &CoefficientTable, n: i64) -> BigInt {
        t.coeff(n).unwrap().to_integer()
    }

    #[test]
    fn j_coefficients() {
        let reg = one_a();
        let t = extend_coefficients(&reg, "1A", 14).unwrap();
        let expected: [(i64, &str); 9] = [
            (4, "20245856256"),
            (6, "4252023300096"),
            (7, "44656994071935"),
            (8, "401490886656000"),
            (9, "3176440229784420"),
            (10, "22567393309593600"),
            (11, "146211911499519294"),
            (12, "874313719685775360"),
            (14, "25497827389410525184"),
        ];
        for (n, v) in expected {
            assert_eq!(a(&t, n), v.parse::<BigInt>().unwrap(), "a({n})");
        }
        assert_eq!(t.coeff(0), Some(&Rational::zero()));
        assert!(t.is_integral());
    }

    #[test]
    fn duplication_identities() {
        let t = extend_coefficients(&one_a(), "1A", 6).unwrap();
        let v = |n| a(&t, n);
        assert_eq!(v(4), v(3) + (v(1) * v(1) - v(1)) / 2);
        assert_eq!(v(6), v(4) + v(1) * v(2));
    }

    #[test]
    fn determinism_under_truncation() {
        let reg = one_a();
        let long = extend_coefficients(&reg, "1A", 30).unwrap();
        for m in [-1, 0, 3, 5, 12] {
            assert_eq!(
                extend_coefficients(&reg, "1A", m).unwrap(),
                long.truncate(m)
            );
        }
    }

    #[test]
    fn residuals_vanish_for_j() {
        let r = replication_residuals(&one_a(), "1A", 40).unwrap();
        assert!(r.vanish());
        assert_eq!(r.order_two.truncation_order(), 21);
        assert_eq!(r.order_four.truncation_order(), 11);
    }

    #[test]
    fn bad_seed_is_detected() {
        let reg = Registry::parse(
            "1A\t1A\t1:196885\t2:21493760\t3:864299970\t5:333202640600\t4:20245856256\n",
        )
        .unwrap();
        assert!(matches!(
            extend_coefficients(&reg, "1A", 10),
            Err(Error::ReplicationInconsistency { .. })
        ));
        let wrong_known =
            Registry::parse("1A\t1A\t1:196884\t2:21493760\t3:864299970\t5:333202640600\t4:1\n")
                .unwrap();
        assert!(matches!(
            extend_coefficients(&wrong_known, "1A", 10),
            Err(Error::ReplicationInconsistency { n: 4, .. })
        ));
    }

    #[test]
    fn raw_constant_normalization() {
        let id = ClassId::new("1A", 1).unwrap();
        let raw = CoefficientTable::new(id.clone(), vec![int(1), int(24), int(196884)]).unwrap();
        let t = normalize_constant(&raw).unwrap();
        assert_eq!(t.coeffs(), &[int(1), int(0), int(196884)]);
        assert_eq!(t.removed_constant(), &int(24));
        let again = normalize_constant(&t).unwrap();
        assert_eq!(again.coeffs(), t.coeffs());
        assert!(again.removed_constant().is_zero());
        let bad = CoefficientTable::new(id, vec![int(2), int(0)]).unwrap();
        assert!(normalize_constant(&bad).is_err());
    }
}
