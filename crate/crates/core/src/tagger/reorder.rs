//! Intra-sentence rearrangement: clause order and subject/verb/object order.

use std::collections::{BTreeMap, BTreeSet};

use super::lis::longest_increasing_subsequence;
use super::view::lemma_of;
use super::{Detection, TaggerConfig, NO_PARSES};
use crate::types::{ParsedSentence, SimplificationInstance};

const CLAUSE_RELS: &[&str] = &["root", "conj", "advcl", "ccomp", "xcomp", "acl", "parataxis"];
const CONTENT_UPOS: &[&str] = &["NOUN", "PROPN", "VERB", "ADJ", "ADV", "NUM"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    /// `(sentence, 0-based head position)`; clauses are listed in this order.
    pub head_at: (usize, usize),
    pub head: String,
    pub content: BTreeSet<String>,
}

/// Clauses of one side, each holding the content lemmas of the tokens it
/// governs directly (nested clauses excluded).
pub fn clauses(parses: &[ParsedSentence]) -> Vec<Clause> {
    let mut out = Vec::new();
    for (s, parse) in parses.iter().enumerate() {
        let toks = &parse.tokens;
        let is_head = |p: usize| toks[p].head == 0 || CLAUSE_RELS.contains(&toks[p].base_deprel());
        let mut by_head: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
        for p in 0..toks.len() {
            if is_head(p) {
                by_head.entry(p).or_default();
            }
        }
        for p in 0..toks.len() {
            let mut cur = p;
            for _ in 0..toks.len() {
                if is_head(cur) {
                    break;
                }
                cur = toks[cur].head - 1;
            }
            if CONTENT_UPOS.contains(&toks[p].upos.as_str()) {
                by_head.entry(cur).or_default().insert(lemma_of(&toks[p]));
            }
        }
        out.extend(
            by_head
                .into_iter()
                .filter(|(_, c)| !c.is_empty())
                .map(|(p, content)| Clause {
                    head_at: (s, p),
                    head: toks[p].surface.clone(),
                    content,
                }),
        );
    }
    out
}

fn jaccard(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    if union == 0 {
        0.0
    } else {
        inter as f64 / union as f64
    }
}

/// Greedy one-to-one matching by descending Jaccard similarity, ties broken
/// by source then target position. Returns `(source clause, target clause)`.
pub fn match_clauses(src: &[Clause], tgt: &[Clause], min_jaccard: f64) -> Vec<(usize, usize)> {
    let mut candidates = Vec::new();
    for (i, a) in src.iter().enumerate() {
        for (j, b) in tgt.iter().enumerate() {
            let sim = jaccard(&a.content, &b.content);
            if sim >= min_jaccard {
                candidates.push((sim, i, j));
            }
        }
    }
    candidates.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let (mut used_s, mut used_t) = (BTreeSet::new(), BTreeSet::new());
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !used_s.contains(&i) && !used_t.contains(&j) {
            used_s.insert(i);
            used_t.insert(j);
            pairs.push((i, j));
        }
    }
    pairs
}

fn clause_order(src: &[ParsedSentence], tgt: &[ParsedSentence], config: &TaggerConfig) -> Option<String> {
    let (sc, tc) = (clauses(src), clauses(tgt));
    let mut pairs = match_clauses(&sc, &tc, config.clause_match_jaccard);
    pairs.sort_by_key(|&(_, j)| j);
    let order: Vec<usize> = pairs.iter().map(|&(i, _)| i).collect();
    let keep: BTreeSet<usize> = longest_increasing_subsequence(&order).into_iter().collect();
    if keep.len() == order.len() {
        return None;
    }
    let moved: Vec<String> = (0..order.len())
        .filter(|k| !keep.contains(k))
        .map(|k| format!("`{}`", sc[order[k]].head))
        .collect();
    Some(format!(
        "clause order changed; moved clause(s) headed by {}",
        moved.join(", ")
    ))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    Subject,
    Verb,
    Object,
}

/// Positions of subject head, verb and object head for the first
/// occurrence of each verb lemma.
fn svo(parses: &[ParsedSentence]) -> BTreeMap<String, [Option<(usize, usize)>; 3]> {
    let mut out = BTreeMap::new();
    for (s, parse) in parses.iter().enumerate() {
        for tok in parse.tokens.iter().filter(|t| t.upos == "VERB") {
            let lemma = lemma_of(tok);
            if out.contains_key(&lemma) {
                continue;
            }
            let child = |rels: &[&str]| {
                parse
                    .children(tok.index)
                    .find(|c| rels.contains(&c.base_deprel()))
                    .map(|c| (s, c.index - 1))
            };
            out.insert(
                lemma,
                [child(&["nsubj", "csubj"]), Some((s, tok.index - 1)), child(&["obj"])],
            );
        }
    }
    out
}

fn svo_order(src: &[ParsedSentence], tgt: &[ParsedSentence]) -> Option<String> {
    const ROLES: [Role; 3] = [Role::Subject, Role::Verb, Role::Object];
    let target = svo(tgt);
    for (lemma, s_pos) in svo(src) {
        let Some(t_pos) = target.get(&lemma) else { continue };
        let common: Vec<usize> = (0..3).filter(|&r| s_pos[r].is_some() && t_pos[r].is_some()).collect();
        if common.len() < 2 {
            continue;
        }
        let ordered = |pos: &[Option<(usize, usize)>; 3]| {
            let mut rs = common.clone();
            rs.sort_by_key(|&r| pos[r]);
            rs.into_iter().map(|r| ROLES[r]).collect::<Vec<_>>()
        };
        let (a, b) = (ordered(&s_pos), ordered(t_pos));
        if a != b {
            let name = |v: &[Role]| {
                v.iter()
                    .map(|r| match r {
                        Role::Subject => "S",
                        Role::Verb => "V",
                        Role::Object => "O",
                    })
                    .collect::<String>()
            };
            return Some(format!("`{lemma}` order {} -> {}", name(&a), name(&b)));
        }
    }
    None
}

pub fn detect_intra_reorder(si: &SimplificationInstance, config: &TaggerConfig) -> Detection {
    let (Some(sp), Some(tp)) = (si.source_parses.as_deref(), si.target_parses.as_deref()) else {
        return Detection::Skipped(NO_PARSES.into());
    };
    let evidence: Vec<String> = [clause_order(sp, tp, config), svo_order(sp, tp)]
        .into_iter()
        .flatten()
        .collect();
    Detection::from_evidence(evidence)
}
