//! Aligned-corpus JSONL and the CoNLL-U sidecar join.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::BufRead;

use log::warn;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::types::{AlignmentType, DocumentPosition, ParsedSentence, SimplificationInstance};

#[derive(Debug, Deserialize)]
struct CorpusRecord {
    id: String,
    #[serde(default)]
    source_sentences: Vec<String>,
    #[serde(default)]
    target_sentences: Vec<String>,
    #[serde(default)]
    references: Option<Vec<Vec<String>>>,
    #[serde(default)]
    document: Option<DocumentPosition>,
}

/// Reads one instance per line. Blank lines are ignored.
///
/// With `filter_degenerate`, complete deletions (m-to-0) and complete
/// additions (0-to-n) are dropped.
pub fn load_corpus<R: BufRead>(reader: R, filter_degenerate: bool) -> Result<Vec<SimplificationInstance>> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CorpusRecord = serde_json::from_str(&line).map_err(|e| Error::Malformed {
            line: lineno,
            message: e.to_string(),
        })?;
        let alignment =
            AlignmentType::from_counts(rec.source_sentences.len(), rec.target_sentences.len()).map_err(|_| {
                Error::Malformed {
                    line: lineno,
                    message: format!("instance `{}` has both sides empty", rec.id),
                }
            })?;
        if !seen.insert(rec.id.clone()) {
            return Err(Error::Malformed {
                line: lineno,
                message: format!("duplicate id `{}`", rec.id),
            });
        }
        if filter_degenerate && alignment.is_degenerate() {
            continue;
        }
        let reference_parses = rec.references.as_ref().map(|r| vec![None; r.len()]).unwrap_or_default();
        out.push(SimplificationInstance {
            id: rec.id,
            source_sentences: rec.source_sentences,
            target_sentences: rec.target_sentences,
            alignment,
            source_parses: None,
            target_parses: None,
            references: rec.references,
            reference_parses,
            document: rec.document,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParseSide {
    Source,
    Target,
    Reference(usize),
}

/// Splits a sidecar sentence id `<instance id>:<side>:<k>`. The instance id
/// may itself contain colons.
pub fn split_sent_id(sent_id: &str) -> Option<(&str, ParseSide, usize)> {
    let mut parts = sent_id.rsplitn(3, ':');
    let k = parts.next()?.parse().ok()?;
    let side = match parts.next()? {
        "source" | "src" => ParseSide::Source,
        "target" | "tgt" => ParseSide::Target,
        other => ParseSide::Reference(other.strip_prefix("ref")?.parse().ok()?),
    };
    let id = parts.next()?;
    Some((id, side, k))
}

/// Counts from [`attach_parses`].
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct AttachReport {
    pub attached_sides: usize,
    pub incomplete_sides: usize,
    pub unmatched_sentences: usize,
    pub malformed_ids: usize,
}

/// Joins sidecar parses onto instances. A side only receives parses when
/// every one of its sentences has one.
pub fn attach_parses(instances: &mut [SimplificationInstance], parses: Vec<ParsedSentence>) -> AttachReport {
    let mut report = AttachReport::default();
    let index: HashMap<String, usize> = instances.iter().enumerate().map(|(i, si)| (si.id.clone(), i)).collect();
    let mut grouped: BTreeMap<(usize, ParseSide), BTreeMap<usize, ParsedSentence>> = BTreeMap::new();
    for p in parses {
        let Some((id, side, k)) = split_sent_id(&p.id) else {
            report.malformed_ids += 1;
            continue;
        };
        let Some(&i) = index.get(id) else {
            report.unmatched_sentences += 1;
            continue;
        };
        let key = (i, side);
        grouped.entry(key).or_default().insert(k, p);
    }
    for ((i, side), mut by_k) in grouped {
        let si = &mut instances[i];
        let n = match side {
            ParseSide::Source => si.source_sentences.len(),
            ParseSide::Target => si.target_sentences.len(),
            ParseSide::Reference(r) => match si.references.as_ref().and_then(|refs| refs.get(r)) {
                Some(sents) => sents.len(),
                None => {
                    report.unmatched_sentences += by_k.len();
                    continue;
                }
            },
        };
        let complete = by_k.len() == n && (0..n).all(|k| by_k.contains_key(&k));
        if !complete {
            warn!(
                "instance `{}`: incomplete {side:?} parses ({} of {n})",
                si.id,
                by_k.len()
            );
            report.incomplete_sides += 1;
            continue;
        }
        let list: Vec<ParsedSentence> = (0..n).filter_map(|k| by_k.remove(&k)).collect();
        match side {
            ParseSide::Source => si.source_parses = Some(list),
            ParseSide::Target => si.target_parses = Some(list),
            ParseSide::Reference(r) => {
                let refs = si.references.as_ref().map_or(0, Vec::len);
                si.reference_parses.resize(refs, None);
                si.reference_parses[r] = Some(list);
            }
        }
        report.attached_sides += 1;
    }
    report
}
