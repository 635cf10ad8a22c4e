//! Pronoun explicitation.

use std::collections::BTreeMap;

use super::view::{lemma_of, SideView};
use crate::ingest::{CorefLayer, Side};
use crate::text::{is_function_word, is_third_person_pronoun};
use crate::types::SimplificationInstance;

/// With a coreference layer: fires on a chain linking a source pronoun to a
/// non-pronoun target mention. Without one: fires when the target has fewer
/// third-person pronouns than the source and some noun occurs more often in
/// the target than in the source.
pub fn detect_explicit(si: &SimplificationInstance, coref: Option<&CorefLayer>) -> Option<String> {
    let src = SideView::new(&si.source_sentences, si.source_parses.as_deref());
    let tgt = SideView::new(&si.target_sentences, si.target_parses.as_deref());
    explicit_on(si, &src, &tgt, coref)
}

pub(crate) fn explicit_on(
    si: &SimplificationInstance,
    src: &SideView,
    tgt: &SideView,
    coref: Option<&CorefLayer>,
) -> Option<String> {
    match coref {
        Some(layer) => from_chains(si, layer),
        None => fallback(src, tgt),
    }
}

fn from_chains(si: &SimplificationInstance, layer: &CorefLayer) -> Option<String> {
    for chain in &layer.chains {
        let pronoun = chain.iter().find(|m| m.side == Side::Source && m.is_pronoun);
        let explicit = chain.iter().find(|m| m.side == Side::Target && !m.is_pronoun);
        if let (Some(p), Some(e)) = (pronoun, explicit) {
            let text = |m| CorefLayer::mention_text(si, m).unwrap_or_else(|| "?".into());
            return Some(format!(
                "source pronoun `{}` made explicit as `{}` (coreference)",
                text(p),
                text(e)
            ));
        }
    }
    None
}

/// Noun counts: NOUN/PROPN lemmas when parsed, content words otherwise.
fn noun_counts(view: &SideView) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    if view.parses.is_some() {
        for (_, _, tok) in view.tokens() {
            if matches!(tok.upos.as_str(), "NOUN" | "PROPN") {
                *counts.entry(lemma_of(tok)).or_default() += 1;
            }
        }
    } else {
        for w in &view.words {
            if !is_function_word(w) && !w.chars().all(|c| c.is_numeric()) {
                *counts.entry(w.clone()).or_default() += 1;
            }
        }
    }
    counts
}

fn fallback(src: &SideView, tgt: &SideView) -> Option<String> {
    let pronouns = |v: &SideView| v.words.iter().filter(|w| is_third_person_pronoun(w)).count();
    let (ps, pt) = (pronouns(src), pronouns(tgt));
    if ps <= pt {
        return None;
    }
    let (ns, nt) = (noun_counts(src), noun_counts(tgt));
    // Largest increase; ties go to the alphabetically first noun.
    let mut grown: Option<(&String, &usize)> = None;
    let mut best = 0;
    for (noun, n) in &nt {
        let gain = n.saturating_sub(ns.get(noun).copied().unwrap_or(0));
        if gain > best {
            best = gain;
            grown = Some((noun, n));
        }
    }
    let grown = grown?;
    Some(format!(
        "third-person pronouns {ps} -> {pt}; `{}` occurs {} time(s) in target vs {} in source",
        grown.0,
        grown.1,
        ns.get(grown.0).copied().unwrap_or(0)
    ))
}
