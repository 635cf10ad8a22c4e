use std::collections::BTreeSet;

use serde::Serialize;

use crate::ingest::FrequencyTable;
use crate::text::{is_function_word, levenshtein, Tokenizer};
use crate::types::{ParsedSentence, SimplificationInstance};

/// Per-instance surface statistics. Every ratio is target over source; a
/// field is `None` when its resource is missing or the ratio is undefined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceStats {
    pub token_length_ratio: Option<f64>,
    pub nbchars_ratio: Option<f64>,
    pub levenshtein_similarity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wordrank_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deptree_depth_ratio: Option<f64>,
}

fn div(a: f64, b: f64) -> Option<f64> {
    (b != 0.0).then(|| a / b)
}

fn content_words(tokens: &[String]) -> impl Iterator<Item = &String> {
    tokens
        .iter()
        .filter(|t| t.chars().any(char::is_alphanumeric) && !is_function_word(&t.to_lowercase()))
}

/// Mean natural-log frequency rank of the content words, if any.
fn mean_log_rank(tokens: &[String], freq: &FrequencyTable) -> Option<f64> {
    let logs: Vec<f64> = content_words(tokens).map(|w| (freq.rank(w) as f64).ln()).collect();
    (!logs.is_empty()).then(|| logs.iter().sum::<f64>() / logs.len() as f64)
}

fn max_depth(parses: Option<&[ParsedSentence]>) -> Option<usize> {
    parses
        .filter(|p| !p.is_empty())
        .map(|p| p.iter().map(ParsedSentence::depth).max().unwrap_or(0))
}

/// 100 * (1 - edit distance / longer length), on characters.
pub fn levenshtein_similarity(a: &str, b: &str) -> f64 {
    let longest = a.chars().count().max(b.chars().count());
    if longest == 0 {
        return 100.0;
    }
    100.0 * (1.0 - levenshtein(a, b) as f64 / longest as f64)
}

pub fn instance_stats<T: Tokenizer + ?Sized>(
    si: &SimplificationInstance,
    freq: Option<&FrequencyTable>,
    tokenizer: &T,
) -> InstanceStats {
    let (src, tgt) = (si.source_text(), si.target_text());
    let (st, tt) = (tokenizer.tokenize(&src), tokenizer.tokenize(&tgt));
    let wordrank_ratio = freq.and_then(|f| {
        let (s, t) = (mean_log_rank(&st, f)?, mean_log_rank(&tt, f)?);
        div(t, s)
    });
    let depth = max_depth(si.source_parses.as_deref())
        .zip(max_depth(si.target_parses.as_deref()))
        .and_then(|(s, t)| div(t as f64, s as f64));
    InstanceStats {
        token_length_ratio: div(tt.len() as f64, st.len() as f64),
        nbchars_ratio: div(tgt.chars().count() as f64, src.chars().count() as f64),
        levenshtein_similarity: levenshtein_similarity(&src, &tgt),
        wordrank_ratio,
        deptree_depth_ratio: depth,
    }
}

/// Corpus-level means and vocabulary sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    pub n_instances: usize,
    pub token_length_ratio: Option<f64>,
    pub nbchars_ratio: Option<f64>,
    pub levenshtein_similarity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wordrank_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deptree_depth_ratio: Option<f64>,
    pub unique_source_tokens: usize,
    pub unique_target_tokens: usize,
    pub shared_tokens: usize,
}

fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
    let (mut sum, mut n) = (0.0, 0usize);
    for v in values.flatten() {
        sum += v;
        n += 1;
    }
    div(sum, n as f64)
}

pub fn corpus_stats<T: Tokenizer + ?Sized>(
    instances: &[SimplificationInstance],
    freq: Option<&FrequencyTable>,
    tokenizer: &T,
) -> CorpusStats {
    let per: Vec<InstanceStats> = instances.iter().map(|si| instance_stats(si, freq, tokenizer)).collect();
    let vocab = |side: fn(&SimplificationInstance) -> &Vec<String>| -> BTreeSet<String> {
        instances
            .iter()
            .flat_map(|si| side(si).iter().flat_map(|s| tokenizer.tokenize(s)))
            .collect()
    };
    let src = vocab(|si| &si.source_sentences);
    let tgt = vocab(|si| &si.target_sentences);
    CorpusStats {
        n_instances: instances.len(),
        token_length_ratio: mean(per.iter().map(|s| s.token_length_ratio)),
        nbchars_ratio: mean(per.iter().map(|s| s.nbchars_ratio)),
        levenshtein_similarity: mean(per.iter().map(|s| Some(s.levenshtein_similarity))),
        wordrank_ratio: mean(per.iter().map(|s| s.wordrank_ratio)),
        deptree_depth_ratio: mean(per.iter().map(|s| s.deptree_depth_ratio)),
        unique_source_tokens: src.len(),
        unique_target_tokens: tgt.len(),
        shared_tokens: src.intersection(&tgt).count(),
    }
}
