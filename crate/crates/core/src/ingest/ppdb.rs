//! Paraphrase rule tables.

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use log::warn;

use crate::error::Result;

pub const DEFAULT_MAX_PHRASE_LEN: usize = 4;

/// Lowercased phrase -> set of lowercased paraphrases.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParaphraseDB {
    rules: HashMap<String, BTreeSet<String>>,
    max_phrase_len: usize,
}

/// Counts of lines that did not become rules.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PpdbLoadReport {
    pub rules: usize,
    pub malformed: usize,
    pub too_long: usize,
    pub below_score: usize,
}

fn normalize_phrase(phrase: &str) -> String {
    phrase
        .split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

impl ParaphraseDB {
    pub fn new(max_phrase_len: usize) -> Self {
        ParaphraseDB {
            rules: HashMap::new(),
            max_phrase_len,
        }
    }

    pub fn max_phrase_len(&self) -> usize {
        self.max_phrase_len
    }

    /// Adds a rule. Returns false when either side is empty or the source
    /// is longer than `max_phrase_len`.
    pub fn insert(&mut self, source: &str, target: &str) -> bool {
        let (s, t) = (normalize_phrase(source), normalize_phrase(target));
        if s.is_empty() || t.is_empty() || s.split(' ').count() > self.max_phrase_len {
            return false;
        }
        self.rules.entry(s).or_default().insert(t);
        true
    }

    /// Paraphrases of `phrase`, case-insensitively.
    pub fn lookup(&self, phrase: &str) -> Option<&BTreeSet<String>> {
        self.rules.get(&normalize_phrase(phrase))
    }

    /// Lookup for an already-normalized key (lowercase, single spaces).
    pub(crate) fn lookup_normalized(&self, key: &str) -> Option<&BTreeSet<String>> {
        self.rules.get(key)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &BTreeSet<String>)> {
        self.rules.iter()
    }
}

/// Reads `source<TAB>target[<TAB>score]` lines. Lines with fewer than two
/// columns, an unparsable score, or a source longer than `max_phrase_len`
/// are skipped and counted. With `min_score`, lines scored below it (or
/// without a score) are dropped.
pub fn load_paraphrase_db<R: BufRead>(
    reader: R,
    max_phrase_len: usize,
    min_score: Option<f64>,
) -> Result<(ParaphraseDB, PpdbLoadReport)> {
    let mut db = ParaphraseDB::new(max_phrase_len);
    let mut report = PpdbLoadReport::default();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 2 {
            report.malformed += 1;
            continue;
        }
        let (src, tgt) = (normalize_phrase(cols[0]), normalize_phrase(cols[1]));
        if src.is_empty() || tgt.is_empty() {
            report.malformed += 1;
            continue;
        }
        let score = match cols.get(2).map(|s| s.trim()).filter(|s| !s.is_empty()) {
            Some(s) => match s.parse::<f64>() {
                Ok(v) => Some(v),
                Err(_) => {
                    report.malformed += 1;
                    continue;
                }
            },
            None => None,
        };
        if let Some(min) = min_score {
            if score.is_none_or(|s| s < min) {
                report.below_score += 1;
                continue;
            }
        }
        if src.split(' ').count() > max_phrase_len {
            report.too_long += 1;
            continue;
        }
        db.rules.entry(src).or_default().insert(tgt);
    }
    if report.malformed + report.too_long > 0 {
        warn!(
            "paraphrase table: skipped {} malformed and {} over-long lines",
            report.malformed, report.too_long
        );
    }
    report.rules = db.rules.values().map(BTreeSet::len).sum();
    Ok((db, report))
}
