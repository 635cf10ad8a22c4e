//! Output scoring, label agreement, significance testing and per-instance
//! statistics.

mod agreement;
mod bleu;
mod sari;
mod stats;
mod wilcoxon;

pub use agreement::{agreement, AgreementReport, Confusion, OpScores};
pub use bleu::bleu;
pub use sari::{sari, sari_sentence, SariScore, MAX_NGRAM};
pub use stats::{corpus_stats, instance_stats, levenshtein_similarity, CorpusStats, InstanceStats};
pub use wilcoxon::{
    wilcoxon_exact, wilcoxon_normal, wilcoxon_signed_rank, WilcoxonMethod, WilcoxonResult, EXACT_MAX_N,
};

use crate::error::{Error, Result};

fn check_len(what: &'static str, left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { what, left, right });
    }
    Ok(())
}

/// Percentage of outputs equal to their source up to whitespace.
pub fn identical_pct(sources: &[String], outputs: &[String]) -> Result<f64> {
    check_len("sources/outputs", sources.len(), outputs.len())?;
    if sources.is_empty() {
        return Ok(0.0);
    }
    let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ");
    let same = sources.iter().zip(outputs).filter(|(s, o)| norm(s) == norm(o)).count();
    Ok(100.0 * same as f64 / sources.len() as f64)
}
