//! Rule-based assignment of operation tokens to simplification instances.

mod addition;
mod deletion;
mod explicit;
mod lis;
mod prox;
mod reorder;
mod rephrase;
mod view;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use addition::{detect_addition, new_content_words, AdditionResult, NewWord, DEFAULT_EXAMPLE_CUES};
pub use deletion::{detect_deletion, token_length_ratio, DeletionFinding, DeletionKind};
pub use explicit::detect_explicit;
pub use lis::{detect_sentence_reorder, longest_increasing_subsequence};
pub use prox::detect_prox;
pub use reorder::{clauses, detect_intra_reorder, match_clauses, Clause};
pub use rephrase::{detect_rephrase, RephraseMatch, RephraseResult};

use crate::error::{Error, Result};
use crate::ingest::{CorefLayer, ParaphraseDB, DEFAULT_MAX_PHRASE_LEN};
use crate::text::whitespace_len;
use crate::types::{AlignmentType, OperationSet, OperationToken, SimplificationInstance, TaggedInstance};
use view::SideView;

pub(crate) const NO_PARSES: &str = "no parses";

/// Outcome of a rule that may be unable to run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Detection {
    Fired(Vec<String>),
    Quiet,
    Skipped(String),
}

impl Detection {
    pub fn from_evidence(evidence: Vec<String>) -> Self {
        if evidence.is_empty() {
            Detection::Quiet
        } else {
            Detection::Fired(evidence)
        }
    }

    pub fn fired(&self) -> bool {
        matches!(self, Detection::Fired(_))
    }
}

/// Word positions (normalized-word indices per side) already explained by
/// a rephrase or voice match.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Consumed {
    pub source: BTreeSet<usize>,
    pub target: BTreeSet<usize>,
}

impl Consumed {
    pub fn merge(&mut self, other: Consumed) {
        self.source.extend(other.source);
        self.target.extend(other.target);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggerConfig {
    pub del_ratio_threshold: f64,
    pub del_pct_threshold: f64,
    pub add_ratio_threshold: f64,
    pub clause_match_jaccard: f64,
    pub max_phrase_len: usize,
}

impl Default for TaggerConfig {
    fn default() -> Self {
        TaggerConfig {
            del_ratio_threshold: 1.2,
            del_pct_threshold: 0.30,
            add_ratio_threshold: 1.0,
            clause_match_jaccard: 0.3,
            max_phrase_len: DEFAULT_MAX_PHRASE_LEN,
        }
    }
}

impl TaggerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str, v: f64| Err(Error::InvalidInput(format!("{what} = {v} out of range")));
        for (what, v) in [
            ("del_ratio_threshold", self.del_ratio_threshold),
            ("add_ratio_threshold", self.add_ratio_threshold),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(what, v);
            }
        }
        for (what, v) in [
            ("del_pct_threshold", self.del_pct_threshold),
            ("clause_match_jaccard", self.clause_match_jaccard),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return bad(what, v);
            }
        }
        if self.max_phrase_len == 0 {
            return Err(Error::InvalidInput("max_phrase_len must be at least 1".into()));
        }
        Ok(())
    }
}

/// Everything the tagger reads besides the instance itself.
#[derive(Debug, Clone)]
pub struct TaggerResources {
    pub paraphrase_db: ParaphraseDB,
    /// Coreference layers by instance id. When present, EXPLICIT uses the
    /// chains instead of the pronoun-count fallback.
    pub coref: Option<BTreeMap<String, CorefLayer>>,
    pub config: TaggerConfig,
    example_cues: Vec<String>,
    cue_words: Vec<Vec<String>>,
}

impl TaggerResources {
    pub fn new(paraphrase_db: ParaphraseDB, config: TaggerConfig) -> Result<Self> {
        config.validate()?;
        let cues: Vec<String> = DEFAULT_EXAMPLE_CUES.iter().map(|c| c.to_string()).collect();
        TaggerResources {
            paraphrase_db,
            coref: None,
            config,
            example_cues: Vec::new(),
            cue_words: Vec::new(),
        }
        .with_example_cues(cues)
    }

    pub fn with_coref(mut self, coref: BTreeMap<String, CorefLayer>) -> Self {
        self.coref = Some(coref);
        self
    }

    pub fn with_example_cues(mut self, cues: Vec<String>) -> Result<Self> {
        let words = addition::normalize_cues(&cues);
        if words.is_empty() {
            return Err(Error::InvalidInput("at least one example cue is required".into()));
        }
        self.example_cues = cues;
        self.cue_words = words;
        Ok(self)
    }

    pub fn example_cues(&self) -> &[String] {
        &self.example_cues
    }
}

pub fn detect_split(si: &SimplificationInstance) -> Option<String> {
    match si.alignment {
        AlignmentType::OneToN(n) => Some(format!("1-to-{n} alignment")),
        _ => None,
    }
}

fn record(out: &mut TaggedInstance, op: OperationToken, detection: Detection) {
    match detection {
        Detection::Fired(evidence) => {
            for e in evidence {
                out.fire(op, e);
            }
        }
        Detection::Quiet => {}
        Detection::Skipped(reason) => out.skip(op, &reason),
    }
}

/// Tags one instance. Rules run in a fixed order so that words matched by
/// proximation and rephrasing are not counted again as deletions or
/// additions.
pub fn tag(si: &SimplificationInstance, resources: &TaggerResources) -> TaggedInstance {
    use OperationToken::*;
    let config = &resources.config;
    let mut out = TaggedInstance::new(si.clone());

    let (s, t) = (
        whitespace_len(&si.source_sentences),
        whitespace_len(&si.target_sentences),
    );
    if t == 0 {
        out.fire(
            Del,
            format!("{}: nothing kept of {s} source tokens", DeletionKind::Removal.name()),
        );
        return out;
    }
    if s == 0 {
        out.fire(Add, format!("{t} target tokens with no source"));
        return out;
    }
    let ratio = s as f64 / t as f64;

    let src = SideView::new(&si.source_sentences, si.source_parses.as_deref());
    let tgt = SideView::new(&si.target_sentences, si.target_parses.as_deref());

    let (prox, mut consumed) = prox::prox_on(&src, &tgt);
    record(&mut out, Prox, prox);

    let rephrased = rephrase::rephrase_on(&src, &tgt, &resources.paraphrase_db, config.max_phrase_len);
    for m in &rephrased.matches {
        out.fire(Rephrase, m.evidence());
    }
    consumed.merge(rephrased.consumed());

    if let Some(f) = deletion::deletion_on(si.alignment, ratio, &src, &tgt, &consumed, config) {
        out.fire(Del, f.evidence);
    }

    let added = addition::addition_on(ratio, &src, &tgt, &consumed, &resources.cue_words, config);
    if let Some(e) = added.example {
        out.fire(Example, e);
    }
    if let Some(e) = added.explain {
        out.fire(Explain, e);
    }
    if added.explain_skipped {
        out.skip(Explain, NO_PARSES);
    }
    if let Some(e) = added.add {
        out.fire(Add, e);
    }

    let empty = CorefLayer::default();
    let layer = resources
        .coref
        .as_ref()
        .map(|layers| layers.get(&si.id).unwrap_or(&empty));
    match layer.map(|l| l.validate_against(si)) {
        Some(Err(e)) => out.skip(Explicit, &format!("coreference layer rejected: {e}")),
        _ => {
            if let Some(e) = explicit::explicit_on(si, &src, &tgt, layer) {
                out.fire(Explicit, e);
            }
        }
    }

    record(&mut out, Reorder, reorder::detect_intra_reorder(si, config));

    if let Some(e) = detect_split(si) {
        out.fire(Split, e);
    }
    out
}

/// The instance paired with its `i`-th reference in place of the target.
fn reference_instance(si: &SimplificationInstance, i: usize, reference: &[String]) -> Result<SimplificationInstance> {
    let mut r = SimplificationInstance::new(
        format!("{}:ref{i}", si.id),
        si.source_sentences.clone(),
        reference.to_vec(),
    )?;
    let parses = si.reference_parses.get(i).cloned().flatten();
    r.source_parses = si.source_parses.clone();
    r.target_parses = parses.filter(|p| p.len() == reference.len());
    Ok(r)
}

/// Tags the source against each reference and keeps the operations that
/// fire in strictly more than `threshold * k` of the `k` references.
pub fn tag_multi_reference(
    si: &SimplificationInstance,
    resources: &TaggerResources,
    threshold: f64,
) -> Result<TaggedInstance> {
    if !(0.0..1.0).contains(&threshold) {
        return Err(Error::InvalidInput(format!(
            "majority threshold {threshold} not in [0, 1)"
        )));
    }
    let refs = si.references.as_deref().unwrap_or_default();
    if refs.is_empty() {
        return Err(Error::InvalidInstance {
            id: si.id.clone(),
            message: "no references to tag against".into(),
        });
    }
    let k = refs.len();
    let mut counts = [0usize; 9];
    for (i, reference) in refs.iter().enumerate() {
        let tagged = tag(&reference_instance(si, i, reference)?, resources);
        for op in tagged.ops.iter() {
            counts[op.index()] += 1;
        }
    }
    let mut out = TaggedInstance::new(si.clone());
    for op in OperationToken::ALL {
        let c = counts[op.index()];
        if c as f64 > threshold * k as f64 {
            out.fire(op, format!("fired in {c} of {k} references"));
        }
    }
    Ok(out)
}

/// Flags instances whose sentences moved within their document: the
/// complement of a longest increasing run of source positions, read in
/// target order.
fn document_reorder(tagged: &mut [TaggedInstance]) {
    let mut docs: BTreeMap<&str, Vec<(usize, usize, usize)>> = BTreeMap::new();
    for (k, t) in tagged.iter().enumerate() {
        if t.instance.alignment.is_degenerate() {
            continue;
        }
        if let Some(d) = &t.instance.document {
            docs.entry(d.doc.as_str())
                .or_default()
                .push((d.target_index, d.source_index, k));
        }
    }
    let mut moved = Vec::new();
    for (doc, mut entries) in docs {
        entries.sort();
        let order: Vec<(usize, usize)> = entries.iter().map(|&(_, s, k)| (s, k)).collect();
        let keep: BTreeSet<usize> = longest_increasing_subsequence(&order).into_iter().collect();
        for (pos, &(t_idx, s_idx, k)) in entries.iter().enumerate() {
            if !keep.contains(&pos) {
                moved.push((
                    k,
                    format!("sentence moved in document `{doc}`: source position {s_idx}, target position {t_idx}"),
                ));
            }
        }
    }
    for (k, e) in moved {
        tagged[k].fire(OperationToken::Reorder, e);
    }
}

/// Tags a corpus in parallel. Instances with references are tagged against
/// them when `multi_reference` holds a majority threshold. Output is sorted
/// by id.
pub fn tag_corpus(
    instances: &[SimplificationInstance],
    resources: &TaggerResources,
    multi_reference: Option<f64>,
) -> Result<Vec<TaggedInstance>> {
    let mut tagged = instances
        .par_iter()
        .map(|si| match multi_reference {
            Some(th) if si.references.as_ref().is_some_and(|r| !r.is_empty()) => tag_multi_reference(si, resources, th),
            _ => Ok(tag(si, resources)),
        })
        .collect::<Result<Vec<_>>>()?;
    document_reorder(&mut tagged);
    tagged.sort_by(|a, b| a.instance.id.cmp(&b.instance.id));
    Ok(tagged)
}

/// Operation sets only, keyed by id.
pub fn ops_by_id(tagged: &[TaggedInstance]) -> BTreeMap<String, OperationSet> {
    tagged.iter().map(|t| (t.instance.id.clone(), t.ops)).collect()
}
