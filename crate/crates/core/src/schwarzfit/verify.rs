use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use super::corpus::{CorpusEntry, CorpusStatus};
use super::fit::{fit_qvalue, FitOptions};
use crate::moonshine::Registry;
use crate::qvalue::QValue;
use crate::ratfunc::ratfunc_equal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerifyStatus {
    Match,
    Mismatch,
    TypoSuspected,
    /// No expansion or no legible entry to compare against.
    Unavailable,
}

impl fmt::Display for VerifyStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyStatus::Match => "match",
            VerifyStatus::Mismatch => "mismatch",
            VerifyStatus::TypoSuspected => "typo-suspected",
            VerifyStatus::Unavailable => "unavailable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub label: String,
    pub status: VerifyStatus,
    pub expected: Option<QValue>,
    /// The fitted value; canonical where the table entry is suspect.
    pub fitted: Option<QValue>,
    pub detail: String,
}

fn verify_entry(reg: &Registry, entry: &CorpusEntry, opts: &FitOptions) -> VerifyRow {
    let mut row = VerifyRow {
        label: entry.label.clone(),
        status: VerifyStatus::Unavailable,
        expected: entry.qvalue.clone(),
        fitted: None,
        detail: entry.note.clone(),
    };
    let typo = entry.status == CorpusStatus::TypoSuspected;
    let available = reg.lookup(&entry.label).is_some_and(|c| c.available);
    if typo {
        row.status = VerifyStatus::TypoSuspected;
    }
    if !available {
        if row.detail.is_empty() {
            row.detail = "no expansion available".into();
        }
        return row;
    }
    if entry.status == CorpusStatus::Unavailable {
        return row;
    }
    match fit_qvalue(reg, &entry.label, opts) {
        Ok(rep) => {
            if !typo {
                let same = entry.qvalue.as_ref().is_some_and(|q| {
                    ratfunc_equal(
                        &q.to_rational_function(),
                        &rep.qvalue.to_rational_function(),
                    )
                });
                row.status = if same {
                    VerifyStatus::Match
                } else {
                    VerifyStatus::Mismatch
                };
            }
            row.fitted = Some(rep.qvalue);
        }
        Err(e) => {
            if !typo {
                row.status = VerifyStatus::Mismatch;
            }
            row.detail = format!("fit failed: {e}");
        }
    }
    row
}

/// Refits every entry and compares it with the printed value. Rows come
/// back in corpus order regardless of `jobs`.
pub fn verify_corpus(
    reg: &Registry,
    corpus: &[CorpusEntry],
    opts: &FitOptions,
    jobs: usize,
) -> Vec<VerifyRow> {
    let jobs = jobs.clamp(1, corpus.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<VerifyRow>>> = Mutex::new(vec![None; corpus.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(entry) = corpus.get(i) else { break };
                let row = verify_entry(reg, entry, opts);
                slots.lock().expect("no worker panicked")[i] = Some(row);
            });
        }
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every entry visited"))
        .collect()
}
