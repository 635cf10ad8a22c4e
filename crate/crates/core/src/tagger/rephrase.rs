//! Rephrasing: a source word or phrase missing from the target whose
//! paraphrase appears in the target.

use std::ops::Range;

use super::view::SideView;
use super::Consumed;
use crate::ingest::ParaphraseDB;
use crate::text::normalize_word;
use crate::types::SimplificationInstance;

/// One paraphrase rule realized in the instance. Spans index normalized
/// words over the whole side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RephraseMatch {
    pub source_span: Range<usize>,
    pub target_span: Range<usize>,
    pub source_phrase: String,
    pub target_phrase: String,
}

impl RephraseMatch {
    pub fn evidence(&self) -> String {
        let kind = match (self.source_span.len(), self.target_span.len()) {
            (1, 1) => "synonym",
            (1, _) => "word-to-phrase",
            (_, 1) => "phrase-to-word",
            _ => "phrase-to-phrase",
        };
        format!("{kind} `{}` -> `{}`", self.source_phrase, self.target_phrase)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RephraseResult {
    pub matches: Vec<RephraseMatch>,
}

impl RephraseResult {
    pub fn fired(&self) -> bool {
        !self.matches.is_empty()
    }

    pub fn consumed(&self) -> Consumed {
        let mut c = Consumed::default();
        for m in &self.matches {
            c.source.extend(m.source_span.clone());
            c.target.extend(m.target_span.clone());
        }
        c
    }
}

pub fn detect_rephrase(si: &SimplificationInstance, db: &ParaphraseDB) -> RephraseResult {
    let src = SideView::new(&si.source_sentences, None);
    let tgt = SideView::new(&si.target_sentences, None);
    rephrase_on(&src, &tgt, db, db.max_phrase_len())
}

/// Scans source phrases of up to `max_len` words.
pub(crate) fn rephrase_on(src: &SideView, tgt: &SideView, db: &ParaphraseDB, max_len: usize) -> RephraseResult {
    let mut result = RephraseResult::default();
    if db.is_empty() || tgt.len() == 0 {
        return result;
    }
    let max_len = max_len.max(1);
    let mut key = String::new();
    for range in &src.sent_ranges {
        for start in range.clone() {
            key.clear();
            let mut all_in_target = true;
            for end in start + 1..=(start + max_len).min(range.end) {
                let w = &src.words[end - 1];
                if end > start + 1 {
                    key.push(' ');
                }
                key.push_str(w);
                all_in_target &= tgt.set.contains(w);
                if all_in_target {
                    continue;
                }
                let Some(paraphrases) = db.lookup_normalized(&key) else {
                    continue;
                };
                for p in paraphrases {
                    let needle: Vec<String> = p.split(' ').filter_map(normalize_word).collect();
                    if let Some(span) = tgt.find_phrase(&needle) {
                        result.matches.push(RephraseMatch {
                            source_span: start..end,
                            target_span: span,
                            source_phrase: key.clone(),
                            target_phrase: p.clone(),
                        });
                        break;
                    }
                }
            }
        }
    }
    result
}
