//! Derives the registry from the Q-value table.
//!
//! Each legible entry is run through the Frobenius recovery to get
//! `a(-1) .. a(order)`. Entries whose expansion is not integral, or whose
//! square class cannot be resolved, are marked unavailable. Square classes
//! of even classes are found by trying every candidate with half the number,
//! in increasing order of the number and table order within it, keeping the
//! first that reproduces all recovered coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::registry::{ClassId, MoonshineClass, Registry, MANDATORY_SEEDS};
use super::replicate::{normalize_constant, verify_square_map, CoefficientTable};
use super::squares::{Provenance, SquareMapEntry};
use crate::error::Result;
use crate::frobenius::recover_hauptmodul;
use crate::schwarzfit::corpus::CorpusEntry;

/// Order of the recovered expansions stored in the registry.
pub const BOOTSTRAP_ORDER: i64 = 10;

pub struct Bootstrap {
    pub registry: Registry,
    pub squares: Vec<SquareMapEntry>,
}

fn unavailable(id: ClassId, square: Option<String>) -> MoonshineClass {
    MoonshineClass {
        id,
        square,
        seeds: BTreeMap::new(),
        known: BTreeMap::new(),
        available: false,
    }
}

fn recovered_class(id: ClassId, entry: &CorpusEntry, order: i64) -> Result<Option<MoonshineClass>> {
    let odd = id.number() % 2 == 1;
    let square = odd.then(|| id.label().to_owned());
    let Some(q) = &entry.qvalue else {
        return Ok(None);
    };
    let t = recover_hauptmodul(q, order)?;
    let table = normalize_constant(&CoefficientTable::from_series(id.clone(), &t)?)?;
    if !table.is_integral() {
        return Ok(None);
    }
    let mut seeds = BTreeMap::new();
    let mut known = BTreeMap::new();
    for n in 1..=order {
        let v: BigInt = table.coeff(n).expect("in range").to_integer();
        if MANDATORY_SEEDS.contains(&n) {
            seeds.insert(n, v);
        } else {
            known.insert(n, v);
        }
    }
    Ok(Some(MoonshineClass {
        id,
        square,
        seeds,
        known,
        available: true,
    }))
}

pub fn bootstrap(corpus: &[CorpusEntry], order: i64) -> Result<Bootstrap> {
    let mut classes = Vec::with_capacity(corpus.len());
    for (i, entry) in corpus.iter().enumerate() {
        let id = ClassId::new(&entry.label, i + 1)?;
        let odd = id.number() % 2 == 1;
        let class = match recovered_class(id.clone(), entry, order)? {
            Some(c) => c,
            None => unavailable(id.clone(), odd.then(|| id.label().to_owned())),
        };
        classes.push(class);
    }

    let mut by_number: Vec<usize> = (0..classes.len()).collect();
    by_number.sort_by_key(|&i| (classes[i].id.number(), i));
    let mut squares = Vec::new();
    for i in by_number {
        if !classes[i].available {
            continue;
        }
        let label = classes[i].id.label().to_owned();
        let x = classes[i].id.number();
        let candidates: Vec<String> = if x % 2 == 1 {
            vec![label.clone()]
        } else {
            classes
                .iter()
                .filter(|c| c.available && c.square.is_some() && c.id.number() == x / 2)
                .map(|c| c.id.label().to_owned())
                .collect()
        };
        let mut found = None;
        for cand in candidates {
            let mut trial = classes.clone();
            trial[i].square = Some(cand.clone());
            let reg = Registry::unchecked(trial);
            if verify_square_map(&reg, &label, &cand, order)? {
                found = Some(cand);
                break;
            }
        }
        match found {
            Some(sq) => {
                squares.push(SquareMapEntry {
                    label: label.clone(),
                    square: sq.clone(),
                    provenance: if x % 2 == 1 {
                        Provenance::OddRule
                    } else {
                        Provenance::ConsistencySearch
                    },
                });
                classes[i].square = Some(sq);
            }
            None => {
                let id = classes[i].id.clone();
                let square = classes[i].square.take().filter(|_| x % 2 == 1);
                classes[i] = unavailable(id, square);
            }
        }
    }
    squares.sort_by_key(|e| classes.iter().position(|c| c.id.label() == e.label));
    Ok(Bootstrap {
        registry: Registry::from_classes(classes)?,
        squares,
    })
}
