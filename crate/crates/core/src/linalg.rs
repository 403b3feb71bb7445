//! Exact homogeneous linear solving.
//!
//! Rows are scaled to integers and reduced with fraction-free (Bareiss)
//! elimination, so every intermediate entry is a minor of the scaled input
//! and each update divides exactly by the previous pivot. The right
//! nullspace is read off the echelon form by back substitution over the
//! rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{abs_bits, clear_denominators, Rational};

/// How the pivot row is chosen among the candidates in a column.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest absolute value, which keeps the minors short.
    #[default]
    SmallestMagnitude,
    /// First nonzero entry from the top.
    FirstNonzero,
}

/// Integer echelon form together with the pivot column of each pivot row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub columns: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn check_rectangular(rows: &[Vec<Rational>]) -> Result<usize> {
    let expected = rows.first().map_or(0, Vec::len);
    for (row, r) in rows.iter().enumerate() {
        if r.len() != expected {
            return Err(Error::RaggedMatrix {
                row,
                len: r.len(),
                expected,
            });
        }
    }
    Ok(expected)
}

/// Fraction-free row echelon form of `rows`.
pub fn echelon(rows: &[Vec<Rational>], rule: PivotRule) -> Result<Echelon> {
    let n = check_rectangular(rows)?;
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let m = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let candidates = (row..m).filter(|&i| !a[i][col].is_zero());
        let chosen = match rule {
            PivotRule::FirstNonzero => candidates.min(),
            PivotRule::SmallestMagnitude => candidates.min_by_key(|&i| (abs_bits(&a[i][col]), i)),
        };
        let Some(p) = chosen else { continue };
        a.swap(row, p);
        let (top, rest) = a.split_at_mut(row + 1);
        let pivot_row = &top[row];
        let pivot = pivot_row[col].clone();
        for r in rest.iter_mut() {
            let factor = std::mem::take(&mut r[col]);
            for j in col + 1..n {
                let t = &pivot * &r[j] - &factor * &pivot_row[j];
                let (q, rem) = t.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                r[j] = q;
            }
        }
        prev = pivot;
        pivots.push(col);
        row += 1;
    }
    a.truncate(pivots.len());
    Ok(Echelon {
        rows: a,
        pivots,
        columns: n,
    })
}

/// Exact basis of the right nullspace, each vector scaled so that its first
/// nonzero entry is 1. Empty when the matrix has full column rank.
pub fn nullspace(rows: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    nullspace_with(rows, PivotRule::default())
}

pub fn nullspace_with(rows: &[Vec<Rational>], rule: PivotRule) -> Result<Vec<Vec<Rational>>> {
    let ech = echelon(rows, rule)?;
    let n = ech.columns;
    let mut is_pivot = vec![false; n];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        for (i, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[i];
            let mut acc = Rational::zero();
            for j in pc + 1..n {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += &x[j] * Rational::from_integer(row[j].clone());
                }
            }
            x[pc] = -acc / Rational::from_integer(row[pc].clone());
        }
        if let Some(lead) = x.iter().find(|v| !v.is_zero()).cloned() {
            for v in x.iter_mut() {
                *v /= &lead;
            }
        }
        basis.push(x);
    }
    Ok(basis)
}

pub fn rank(rows: &[Vec<Rational>]) -> Result<usize> {
    Ok(echelon(rows, PivotRule::default())?.rank())
}

/// `rows * v`.
pub fn apply(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
