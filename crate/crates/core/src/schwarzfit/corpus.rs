//! The Q-value table: one row per class with the printed `N` and `M`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qvalue::{format_coeffs, parse_coeff_list, QValue};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CorpusStatus {
    Verified,
    TypoSuspected,
    Unavailable,
}

impl fmt::Display for CorpusStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusStatus::Verified => "verified",
            CorpusStatus::TypoSuspected => "typo-suspected",
            CorpusStatus::Unavailable => "unavailable",
        })
    }
}

impl FromStr for CorpusStatus {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verified" => Ok(CorpusStatus::Verified),
            "typo-suspected" => Ok(CorpusStatus::TypoSuspected),
            "unavailable" => Ok(CorpusStatus::Unavailable),
            _ => Err(Error::parse(0, format!("unknown status {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: String,
    /// `None` when the table has no legible entry.
    pub qvalue: Option<QValue>,
    pub status: CorpusStatus,
    pub note: String,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if !(4..=5).contains(&fields.len()) {
            return Err(Error::parse(
                lineno,
                "expected label, N, M, status and optional note",
            ));
        }
        crate::moonshine::parse_label(fields[0])
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
        let qvalue = match (fields[1], fields[2]) {
            ("-", "-") => None,
            (n, m) => {
                let (n, m) = (parse_coeff_list(n, lineno)?, parse_coeff_list(m, lineno)?);
                Some(QValue::new(n, m).map_err(|e| Error::parse(lineno, e.to_string()))?)
            }
        };
        let status = fields[3]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("unknown status {:?}", fields[3])))?;
        out.push(CorpusEntry {
            label: fields[0].to_owned(),
            qvalue,
            status,
            note: fields.get(4).unwrap_or(&"").to_string(),
        });
    }
    Ok(out)
}

pub fn corpus_to_tsv(entries: &[CorpusEntry]) -> String {
    let mut out =
        String::from("# label\tN coefficients b0..br\tM coefficients c0..cs\tstatus\tnote\n");
    for e in entries {
        let (n, m) = match &e.qvalue {
            Some(q) => (format_coeffs(q.num()), format_coeffs(q.den_core())),
            None => ("-".into(), "-".into()),
        };
        out.push_str(&format!("{}\t{n}\t{m}\t{}", e.label, e.status));
        if !e.note.is_empty() {
            out.push('\t');
            out.push_str(&e.note);
        }
        out.push('\n');
    }
    out
}

/// The Q-value table shipped with the crate.
pub fn bundled_corpus() -> Vec<CorpusEntry> {
    parse_corpus(crate::data::QTABLE).expect("bundled corpus is valid")
}
