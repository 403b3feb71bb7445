use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// How a square-class link was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Fixed by the rule that odd classes are their own square.
    OddRule,
    /// Found by trying every candidate class with half the number.
    ConsistencySearch,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::OddRule => "odd-rule",
            Provenance::ConsistencySearch => "consistency-search",
        })
    }
}

impl FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "odd-rule" => Ok(Provenance::OddRule),
            "consistency-search" => Ok(Provenance::ConsistencySearch),
            _ => Err(Error::parse(0, format!("unknown provenance {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMapEntry {
    pub label: String,
    pub square: String,
    pub provenance: Provenance,
}

pub fn parse_square_map(text: &str) -> Result<Vec<SquareMapEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let [label, square, provenance] = fields[..] else {
            return Err(Error::parse(
                lineno,
                "expected label, square and provenance",
            ));
        };
        for l in [label, square] {
            super::registry::parse_label(l).map_err(|e| Error::parse(lineno, e.to_string()))?;
        }
        let provenance = provenance
            .parse()
            .map_err(|_| Error::parse(lineno, format!("unknown provenance {provenance:?}")))?;
        out.push(SquareMapEntry {
            label: label.to_owned(),
            square: square.to_owned(),
            provenance,
        });
    }
    Ok(out)
}

pub fn square_map_to_tsv(entries: &[SquareMapEntry]) -> String {
    let mut out = String::from("# label\tsquare\tprovenance\n");
    for e in entries {
        out.push_str(&format!("{}\t{}\t{}\n", e.label, e.square, e.provenance));
    }
    out
}

/// The square map shipped with the crate.
pub fn bundled_square_map() -> Vec<SquareMapEntry> {
    parse_square_map(crate::data::SQUARES).expect("bundled square map is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# header\n1A\t1A\todd-rule\n4A\t2B\tconsistency-search\n";
        let entries = parse_square_map(text).unwrap();
        assert_eq!(entries[1].provenance, Provenance::ConsistencySearch);
        assert_eq!(
            parse_square_map(&square_map_to_tsv(&entries)).unwrap(),
            entries
        );
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(matches!(
            parse_square_map("1A\t1A\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(parse_square_map("1A\t1A\tguess\n").is_err());
        assert!(parse_square_map("A1\t1A\todd-rule\n").is_err());
    }
}
