//! Coreference annotations over the concatenated source and target.

use std::collections::BTreeMap;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::SimplificationInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Source,
    Target,
}

/// A mention: whitespace-token span `[start, end]` (0-based, inclusive) in
/// sentence `sent` of one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub side: Side,
    pub sent: usize,
    pub start: usize,
    pub end: usize,
    pub is_pronoun: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorefLayer {
    pub chains: Vec<Vec<Mention>>,
}

impl CorefLayer {
    /// Checks that every span lies within the instance's sentences.
    pub fn validate_against(&self, si: &SimplificationInstance) -> Result<()> {
        for m in self.chains.iter().flatten() {
            let sents = match m.side {
                Side::Source => &si.source_sentences,
                Side::Target => &si.target_sentences,
            };
            let len =
                sents
                    .get(m.sent)
                    .map(|s| s.split_whitespace().count())
                    .ok_or_else(|| Error::InvalidInstance {
                        id: si.id.clone(),
                        message: format!("coref mention in missing sentence {}", m.sent),
                    })?;
            if m.end >= len {
                return Err(Error::InvalidInstance {
                    id: si.id.clone(),
                    message: format!(
                        "coref span {}..={} exceeds sentence {} ({len} tokens)",
                        m.start, m.end, m.sent
                    ),
                });
            }
        }
        Ok(())
    }

    /// Surface text of a mention.
    pub fn mention_text(si: &SimplificationInstance, m: &Mention) -> Option<String> {
        let sents = match m.side {
            Side::Source => &si.source_sentences,
            Side::Target => &si.target_sentences,
        };
        let toks: Vec<&str> = sents.get(m.sent)?.split_whitespace().collect();
        toks.get(m.start..=m.end).map(|s| s.join(" "))
    }
}

#[derive(Deserialize)]
struct CorefRecord {
    id: String,
    chains: Vec<Vec<Mention>>,
}

pub fn load_coref<R: BufRead>(reader: R) -> Result<BTreeMap<String, CorefLayer>> {
    let mut out = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let malformed = |message: String| Error::Malformed { line: lineno, message };
        let rec: CorefRecord = serde_json::from_str(&line).map_err(|e| malformed(e.to_string()))?;
        for (c, chain) in rec.chains.iter().enumerate() {
            if chain.len() < 2 {
                return Err(malformed(format!("chain {c} has {} mention(s)", chain.len())));
            }
            if let Some(m) = chain.iter().find(|m| m.end < m.start) {
                return Err(malformed(format!("span end {} < start {}", m.end, m.start)));
            }
        }
        if out.insert(rec.id.clone(), CorefLayer { chains: rec.chains }).is_some() {
            return Err(Error::DuplicateId(rec.id));
        }
    }
    Ok(out)
}
