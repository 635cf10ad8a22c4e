//! Proximation: person point-of-view shifts, tense changes, and
//! passive-to-active substitution.

use std::collections::{BTreeMap, BTreeSet};

use super::view::{lemma_of, SideView};
use super::{Consumed, Detection, NO_PARSES};
use crate::types::{ParseToken, ParsedSentence, SimplificationInstance};

/// Runs the proximation rules. Needs parses on both sides; passive matches
/// are returned as consumed words so later rules do not count them again.
pub fn detect_prox(si: &SimplificationInstance) -> (Detection, Consumed) {
    let src = SideView::new(&si.source_sentences, si.source_parses.as_deref());
    let tgt = SideView::new(&si.target_sentences, si.target_parses.as_deref());
    prox_on(&src, &tgt)
}

pub(crate) fn prox_on(src: &SideView, tgt: &SideView) -> (Detection, Consumed) {
    let mut consumed = Consumed::default();
    let (Some(sp), Some(tp)) = (src.parses, tgt.parses) else {
        return (Detection::Skipped(NO_PARSES.into()), consumed);
    };
    let mut evidence = Vec::new();
    if let Some(e) = person_shift(sp, tp) {
        evidence.push(e);
    }
    evidence.extend(tense_changes(src, tgt));
    evidence.extend(passive_to_active(src, tgt, &mut consumed));
    (Detection::from_evidence(evidence), consumed)
}

const SHIFTS: [(&str, &str); 3] = [("3", "2"), ("3", "1"), ("2", "1")];

/// Distinct Person values on pronouns and verbs, in order of first occurrence.
fn persons(parses: &[ParsedSentence]) -> Vec<&str> {
    let mut out: Vec<&str> = Vec::new();
    for tok in parses.iter().flat_map(|p| &p.tokens) {
        if !matches!(tok.upos.as_str(), "PRON" | "VERB" | "AUX") {
            continue;
        }
        if let Some(p) = tok.feat("Person").filter(|p| matches!(*p, "1" | "2" | "3")) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

fn person_shift(sp: &[ParsedSentence], tp: &[ParsedSentence]) -> Option<String> {
    let (s, t) = (persons(sp), persons(tp));
    for (a, b) in s.iter().zip(&t) {
        if SHIFTS.contains(&(a, b)) {
            return Some(format!("person shift {a} -> {b}"));
        }
    }
    let closer = |v: &[&str]| v.iter().any(|p| matches!(*p, "1" | "2"));
    if !closer(&s) && closer(&t) {
        let to = t.iter().find(|p| matches!(**p, "1" | "2")).unwrap_or(&"?");
        return Some(format!("person shift to {to} (no 1st/2nd person in source)"));
    }
    None
}

fn is_verb(tok: &ParseToken) -> bool {
    tok.upos == "VERB"
}

/// A verb's tense, or that of its first tensed auxiliary.
fn effective_tense<'a>(parse: &'a ParsedSentence, tok: &'a ParseToken) -> Option<&'a str> {
    tok.feat("Tense").or_else(|| {
        parse
            .children(tok.index)
            .filter(|c| c.base_deprel() == "aux")
            .find_map(|c| c.feat("Tense"))
    })
}

/// Verb occurrences grouped by lemma, in linear order.
fn verbs_by_lemma(parses: &[ParsedSentence]) -> BTreeMap<String, Vec<(&ParsedSentence, &ParseToken)>> {
    let mut out: BTreeMap<String, Vec<_>> = BTreeMap::new();
    for p in parses {
        for tok in p.tokens.iter().filter(|t| is_verb(t)) {
            out.entry(lemma_of(tok)).or_default().push((p, tok));
        }
    }
    out
}

fn tense_changes(src: &SideView, tgt: &SideView) -> Vec<String> {
    let (Some(sp), Some(tp)) = (src.parses, tgt.parses) else {
        return Vec::new();
    };
    let target = verbs_by_lemma(tp);
    let mut out = Vec::new();
    for (lemma, occurrences) in verbs_by_lemma(sp) {
        let Some(t_occ) = target.get(&lemma) else { continue };
        for ((sp, s), (tp, t)) in occurrences.iter().zip(t_occ) {
            if let (Some(a), Some(b)) = (effective_tense(sp, s), effective_tense(tp, t)) {
                if a != b {
                    out.push(format!("tense of `{lemma}` {a} -> {b}"));
                    break;
                }
            }
        }
    }
    out
}

fn is_passive(parse: &ParsedSentence, tok: &ParseToken) -> bool {
    tok.feat("Voice") == Some("Pass")
        || parse
            .children(tok.index)
            .any(|c| matches!(c.deprel.as_str(), "nsubj:pass" | "aux:pass" | "csubj:pass"))
}

fn passive_to_active(src: &SideView, tgt: &SideView, consumed: &mut Consumed) -> Vec<String> {
    let (Some(sp), Some(tp)) = (src.parses, tgt.parses) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut used_targets = BTreeSet::new();
    for (s, parse) in sp.iter().enumerate() {
        for (i, tok) in parse.tokens.iter().enumerate() {
            if !is_verb(tok) || !is_passive(parse, tok) {
                continue;
            }
            let lemma = lemma_of(tok);
            let active = tp.iter().enumerate().find_map(|(ts, tparse)| {
                tparse
                    .tokens
                    .iter()
                    .enumerate()
                    .find(|(ti, t)| {
                        is_verb(t)
                            && lemma_of(t) == lemma
                            && !is_passive(tparse, t)
                            && !used_targets.contains(&(ts, *ti))
                    })
                    .map(|(ti, t)| (ts, ti, t))
            });
            let Some((ts, ti, ttok)) = active else { continue };
            used_targets.insert((ts, ti));

            let mut positions = vec![i];
            for c in parse.children(tok.index) {
                if c.deprel == "aux:pass" {
                    positions.push(c.index - 1);
                }
                if c.deprel == "obl:agent" {
                    positions.extend(
                        parse
                            .children(c.index)
                            .filter(|cc| cc.base_deprel() == "case")
                            .map(|cc| cc.index - 1),
                    );
                }
            }
            positions.sort_unstable();
            let mut surface = Vec::new();
            for pos in positions {
                if let Some(w) = src.word_of_token(s, pos) {
                    consumed.source.insert(w);
                }
                surface.push(parse.tokens[pos].surface.as_str());
            }
            if let Some(w) = tgt.word_of_token(ts, ti) {
                consumed.target.insert(w);
            }
            out.push(format!(
                "passive `{}` -> active `{}` ({lemma})",
                surface.join(" "),
                ttok.surface
            ));
        }
    }
    out
}
