use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Seeds every available class must carry.
pub const MANDATORY_SEEDS: [i64; 4] = [1, 2, 3, 5];

/// Labels that do not follow the number-plus-letter scheme verbatim, mapped
/// to the spelling under which they are stored.
const ALIASES: &[(&str, &str)] = &[("25Z", "25z")];

/// A class label such as `1A` or `119A` together with its position in the
/// registry (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    index: usize,
    label: String,
}

impl ClassId {
    pub fn new(label: &str, index: usize) -> Result<Self> {
        parse_label(label)?;
        Ok(ClassId {
            index,
            label: label.to_owned(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// The number `X` in the label `XY`.
    pub fn number(&self) -> u32 {
        parse_label(&self.label).expect("validated").0
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Splits `XY` into the positive integer `X` and the letter `Y`.
pub fn parse_label(label: &str) -> Result<(u32, char)> {
    let bad = || Error::Registry(format!("malformed class label {label:?}"));
    let mut chars = label.chars();
    let letter = chars
        .next_back()
        .filter(char::is_ascii_alphabetic)
        .ok_or_else(bad)?;
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.starts_with('0') {
        return Err(bad());
    }
    let n = digits.parse::<u32>().map_err(|_| bad())?;
    Ok((n, letter))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoonshineClass {
    pub id: ClassId,
    /// `None` only for classes without data whose square was never resolved.
    pub square: Option<String>,
    /// `a(n)` for the mandatory seed indices.
    pub seeds: BTreeMap<i64, BigInt>,
    /// Further coefficients used only for verification.
    pub known: BTreeMap<i64, BigInt>,
    pub available: bool,
}

impl MoonshineClass {
    /// Seed or known value of `a(n)`, with `a(-1) = 1` and `a(0) = 0`.
    pub fn value(&self, n: i64) -> Option<BigInt> {
        match n {
            -1 => Some(BigInt::one()),
            0 => Some(BigInt::zero()),
            _ => self.seeds.get(&n).or_else(|| self.known.get(&n)).cloned(),
        }
    }

    pub fn is_self_square(&self) -> bool {
        self.square.as_deref() == Some(self.id.label())
    }

    /// Largest `n` such that `a(1) .. a(n)` are all recorded.
    pub fn known_order(&self) -> i64 {
        let mut n = 0;
        while self.value(n + 1).is_some() {
            n += 1;
        }
        n
    }
}

/// The set of classes, immutable after construction.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    classes: Vec<MoonshineClass>,
    by_label: HashMap<String, usize>,
}

impl Registry {
    /// Validates and indexes `classes`; indices are reassigned from order.
    pub fn from_classes(mut classes: Vec<MoonshineClass>) -> Result<Self> {
        let mut by_label = HashMap::new();
        for (i, c) in classes.iter_mut().enumerate() {
            c.id.index = i + 1;
            if by_label.insert(c.id.label.clone(), i).is_some() {
                return Err(Error::Registry(format!("duplicate label {}", c.id)));
            }
        }
        let reg = Registry { classes, by_label };
        for c in &reg.classes {
            reg.validate_class(c)?;
        }
        for c in &reg.classes {
            if c.square.is_some() {
                reg.square_chain(c.id.label())?;
            }
        }
        Ok(reg)
    }

    /// Indexes without validation, for registries under construction.
    pub(crate) fn unchecked(classes: Vec<MoonshineClass>) -> Self {
        let by_label = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.label.clone(), i))
            .collect();
        Registry { classes, by_label }
    }

    fn validate_class(&self, c: &MoonshineClass) -> Result<()> {
        let x = c.id.number();
        match &c.square {
            None if c.available => {
                return Err(Error::Registry(format!("{}: square class missing", c.id)));
            }
            None => {}
            Some(sq) => {
                let target = self.lookup(sq).ok_or_else(|| {
                    Error::Registry(format!("{}: dangling square reference {sq}", c.id))
                })?;
                if x % 2 == 1 && target.id != c.id {
                    return Err(Error::Registry(format!(
                        "{}: odd X must be self-square, got {sq}",
                        c.id
                    )));
                }
                if x.is_multiple_of(2) && target.id.number() != x / 2 {
                    return Err(Error::Registry(format!(
                        "{}: square class of an even class must have number {}, got {sq}",
                        c.id,
                        x / 2
                    )));
                }
            }
        }
        if c.available {
            for n in MANDATORY_SEEDS {
                if !c.seeds.contains_key(&n) {
                    return Err(Error::Registry(format!(
                        "{}: missing mandatory seed a({n})",
                        c.id
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut classes = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 3 {
                return Err(Error::parse(
                    lineno,
                    "expected label, square and data fields",
                ));
            }
            let id = ClassId::new(fields[0], classes.len() + 1)
                .map_err(|e| Error::parse(lineno, e.to_string()))?;
            let square = match fields[1] {
                "-" => None,
                s => Some(s.to_owned()),
            };
            let mut class = MoonshineClass {
                id,
                square,
                seeds: BTreeMap::new(),
                known: BTreeMap::new(),
                available: true,
            };
            if fields[2..] == ["unavailable"] {
                class.available = false;
                classes.push(class);
                continue;
            }
            for field in &fields[2..] {
                let (n, v) = field.split_once(':').ok_or_else(|| {
                    Error::parse(lineno, format!("expected n:value, got {field:?}"))
                })?;
                let n: i64 = n
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad index in {field:?}")))?;
                let v = BigInt::from_str(v)
                    .map_err(|_| Error::parse(lineno, format!("bad integer in {field:?}")))?;
                let expected = match n {
                    -1 => Some(BigInt::one()),
                    0 => Some(BigInt::zero()),
                    _ if n < -1 => {
                        return Err(Error::parse(lineno, format!("index {n} below the pole")))
                    }
                    _ => None,
                };
                if let Some(e) = expected {
                    if v != e {
                        return Err(Error::parse(lineno, format!("a({n}) must be {e}")));
                    }
                    continue;
                }
                let slot = if MANDATORY_SEEDS.contains(&n) {
                    &mut class.seeds
                } else {
                    &mut class.known
                };
                if slot.insert(n, v).is_some() {
                    return Err(Error::parse(lineno, format!("a({n}) given twice")));
                }
            }
            classes.push(class);
        }
        Registry::from_classes(classes)
    }

    /// The registry shipped with the crate.
    pub fn bundled() -> Self {
        Registry::parse(crate::data::REGISTRY).expect("bundled registry is valid")
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("# label\tsquare\ta(n) as n:value, or \"unavailable\"\n");
        for c in &self.classes {
            out.push_str(c.id.label());
            out.push('\t');
            out.push_str(c.square.as_deref().unwrap_or("-"));
            if c.available {
                let mut all: Vec<(&i64, &BigInt)> = c.seeds.iter().chain(c.known.iter()).collect();
                all.sort();
                for (n, v) in all {
                    out.push_str(&format!("\t{n}:{v}"));
                }
            } else {
                out.push_str("\tunavailable");
            }
            out.push('\n');
        }
        out
    }

    pub fn classes(&self) -> &[MoonshineClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Finds a class by label, accepting alias spellings.
    pub fn lookup(&self, label: &str) -> Option<&MoonshineClass> {
        let canonical = ALIASES
            .iter()
            .find(|(alias, _)| *alias == label)
            .map_or(label, |(_, stored)| stored);
        self.by_label.get(canonical).map(|&i| &self.classes[i])
    }

    pub fn get(&self, label: &str) -> Result<&MoonshineClass> {
        self.lookup(label)
            .ok_or_else(|| Error::UnknownClass(label.to_owned()))
    }

    /// `id`, its square class, that class's square, ..., ending with the
    /// first self-square class.
    pub fn square_chain(&self, label: &str) -> Result<Vec<ClassId>> {
        let mut chain = Vec::new();
        let mut seen = HashSet::new();
        let mut cur = self.get(label)?;
        loop {
            if !seen.insert(cur.id.label()) {
                return Err(Error::Registry(format!(
                    "square chain of {label} cycles without a self-square class"
                )));
            }
            chain.push(cur.id.clone());
            if cur.is_self_square() {
                return Ok(chain);
            }
            let next = cur.square.as_deref().ok_or_else(|| {
                Error::Unavailable(format!("{} (square class unresolved)", cur.id))
            })?;
            cur = self.get(next)?;
        }
    }
}
