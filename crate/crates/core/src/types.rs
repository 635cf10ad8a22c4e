//! Domain types shared by every stage of the pipeline.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One of the nine simplification-operation markers.
///
/// The declaration order is the canonical emission order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperationToken {
    Prox,
    Rephrase,
    Del,
    Add,
    Example,
    Explain,
    Explicit,
    Reorder,
    Split,
}

impl OperationToken {
    pub const ALL: [OperationToken; 9] = [
        OperationToken::Prox,
        OperationToken::Rephrase,
        OperationToken::Del,
        OperationToken::Add,
        OperationToken::Example,
        OperationToken::Explain,
        OperationToken::Explicit,
        OperationToken::Reorder,
        OperationToken::Split,
    ];

    /// Position in the canonical order, `0..9`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// Bare uppercase name, e.g. `REPHRASE`.
    pub fn name(self) -> &'static str {
        match self {
            OperationToken::Prox => "PROX",
            OperationToken::Rephrase => "REPHRASE",
            OperationToken::Del => "DEL",
            OperationToken::Add => "ADD",
            OperationToken::Example => "EXAMPLE",
            OperationToken::Explain => "EXPLAIN",
            OperationToken::Explicit => "EXPLICIT",
            OperationToken::Reorder => "REORDER",
            OperationToken::Split => "SPLIT",
        }
    }

    /// Surface form used in training files, e.g. `<REPHRASE>`.
    pub fn tag(self) -> &'static str {
        match self {
            OperationToken::Prox => "<PROX>",
            OperationToken::Rephrase => "<REPHRASE>",
            OperationToken::Del => "<DEL>",
            OperationToken::Add => "<ADD>",
            OperationToken::Example => "<EXAMPLE>",
            OperationToken::Explain => "<EXPLAIN>",
            OperationToken::Explicit => "<EXPLICIT>",
            OperationToken::Reorder => "<REORDER>",
            OperationToken::Split => "<SPLIT>",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|op| op.name() == name)
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        tag.strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .and_then(Self::from_name)
    }
}

impl fmt::Display for OperationToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for OperationToken {
    type Err = Error;

    /// Accepts both `DEL` and `<DEL>`.
    fn from_str(s: &str) -> Result<Self> {
        Self::from_name(s)
            .or_else(|| Self::from_tag(s))
            .ok_or_else(|| Error::UnknownOperation(s.to_string()))
    }
}

impl Serialize for OperationToken {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for OperationToken {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A set of operation tokens. Iteration is always in canonical order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperationSet(u16);

impl OperationSet {
    const MASK: u16 = (1 << 9) - 1;

    pub fn new() -> Self {
        OperationSet(0)
    }

    pub fn all() -> Self {
        OperationSet(Self::MASK)
    }

    /// Builds a set from the low nine bits of `bits` (bit `i` = `OperationToken::ALL[i]`).
    pub fn from_bits(bits: u16) -> Self {
        OperationSet(bits & Self::MASK)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn insert(&mut self, op: OperationToken) -> bool {
        let had = self.contains(op);
        self.0 |= 1 << op.index();
        !had
    }

    pub fn remove(&mut self, op: OperationToken) -> bool {
        let had = self.contains(op);
        self.0 &= !(1 << op.index());
        had
    }

    pub fn contains(self, op: OperationToken) -> bool {
        self.0 & (1 << op.index()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        OperationSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = OperationToken> {
        OperationToken::ALL.into_iter().filter(move |op| self.contains(*op))
    }

    /// Tokens in canonical order.
    pub fn canonical_order(self) -> Vec<OperationToken> {
        self.iter().collect()
    }

    /// Space-joined surface tags, e.g. `<REPHRASE> <DEL> <REORDER>`.
    pub fn to_tags(self) -> String {
        self.iter().map(OperationToken::tag).collect::<Vec<_>>().join(" ")
    }

    /// Inverse of [`OperationSet::to_tags`]. Whitespace-separated tags in any order.
    pub fn parse_tags(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|t| OperationToken::from_tag(t).ok_or_else(|| Error::UnknownOperation(t.to_string())))
            .collect()
    }
}

impl FromIterator<OperationToken> for OperationSet {
    fn from_iter<I: IntoIterator<Item = OperationToken>>(iter: I) -> Self {
        let mut set = OperationSet::new();
        for op in iter {
            set.insert(op);
        }
        set
    }
}

impl fmt::Display for OperationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tags())
    }
}

impl Serialize for OperationSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for OperationSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let ops = Vec::<OperationToken>::deserialize(deserializer)?;
        Ok(ops.into_iter().collect())
    }
}

/// Sorts an operation set into canonical order.
pub fn canonical_order(ops: OperationSet) -> Vec<OperationToken> {
    ops.canonical_order()
}

/// Shape of an instance: how many source sentences map to how many targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlignmentType {
    OneToOne,
    OneToN(usize),
    MToOne(usize),
    MToN(usize, usize),
    MToZero(usize),
    ZeroToN(usize),
}

impl AlignmentType {
    pub fn from_counts(sources: usize, targets: usize) -> Result<Self> {
        Ok(match (sources, targets) {
            (0, 0) => return Err(Error::EmptyInstance),
            (m, 0) => AlignmentType::MToZero(m),
            (0, n) => AlignmentType::ZeroToN(n),
            (1, 1) => AlignmentType::OneToOne,
            (1, n) => AlignmentType::OneToN(n),
            (m, 1) => AlignmentType::MToOne(m),
            (m, n) => AlignmentType::MToN(m, n),
        })
    }

    /// `(source count, target count)`.
    pub fn counts(self) -> (usize, usize) {
        match self {
            AlignmentType::OneToOne => (1, 1),
            AlignmentType::OneToN(n) => (1, n),
            AlignmentType::MToOne(m) => (m, 1),
            AlignmentType::MToN(m, n) => (m, n),
            AlignmentType::MToZero(m) => (m, 0),
            AlignmentType::ZeroToN(n) => (0, n),
        }
    }

    /// Complete deletions and complete additions.
    pub fn is_degenerate(self) -> bool {
        matches!(self, AlignmentType::MToZero(_) | AlignmentType::ZeroToN(_))
    }
}

impl fmt::Display for AlignmentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (m, n) = self.counts();
        write!(f, "{m}-to-{n}")
    }
}

/// One token of a dependency parse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseToken {
    /// 1-based position in the sentence.
    pub index: usize,
    pub surface: String,
    pub lemma: String,
    pub upos: String,
    pub feats: BTreeMap<String, String>,
    /// 0 for the root, otherwise the index of the governing token.
    pub head: usize,
    pub deprel: String,
}

impl ParseToken {
    pub fn feat(&self, name: &str) -> Option<&str> {
        self.feats.get(name).map(String::as_str)
    }

    /// Relation label without its subtype (`nsubj:pass` -> `nsubj`).
    pub fn base_deprel(&self) -> &str {
        self.deprel.split(':').next().unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedSentence {
    pub id: String,
    pub tokens: Vec<ParseToken>,
}

impl ParsedSentence {
    /// Checks the tree invariants: non-empty, consecutive 1-based indices,
    /// heads in range and not self-referential, a single root, no cycles.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Error::InvalidParse {
            sentence: self.id.clone(),
            message: msg,
        };
        if self.tokens.is_empty() {
            return Err(fail("sentence has no tokens".into()));
        }
        let n = self.tokens.len();
        let mut roots = 0;
        for (i, tok) in self.tokens.iter().enumerate() {
            if tok.index != i + 1 {
                return Err(fail(format!(
                    "token {} out of sequence (expected {})",
                    tok.index,
                    i + 1
                )));
            }
            if tok.head > n {
                return Err(fail(format!("head {} of token {} out of range", tok.head, tok.index)));
            }
            if tok.head == tok.index {
                return Err(fail(format!("token {} is its own head", tok.index)));
            }
            if tok.head == 0 {
                roots += 1;
            }
        }
        if roots != 1 {
            return Err(fail(format!("expected exactly one root, found {roots}")));
        }
        for start in 1..=n {
            let mut cur = start;
            let mut steps = 0;
            while cur != 0 {
                cur = self.tokens[cur - 1].head;
                steps += 1;
                if steps > n {
                    return Err(fail(format!("cycle through token {start}")));
                }
            }
        }
        Ok(())
    }

    pub fn token(&self, index: usize) -> Option<&ParseToken> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn root(&self) -> Option<&ParseToken> {
        self.tokens.iter().find(|t| t.head == 0)
    }

    /// Dependents of the token at `index` (1-based), in linear order.
    pub fn children(&self, index: usize) -> impl Iterator<Item = &ParseToken> {
        self.tokens.iter().filter(move |t| t.head == index)
    }

    /// Depth of the tree; a lone root has depth 1.
    pub fn depth(&self) -> usize {
        self.tokens
            .iter()
            .map(|t| {
                let mut d = 1;
                let mut cur = t.head;
                while cur != 0 && d <= self.tokens.len() {
                    d += 1;
                    cur = self.tokens[cur - 1].head;
                }
                d
            })
            .max()
            .unwrap_or(0)
    }
}

/// An aligned source/target unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplificationInstance {
    pub id: String,
    pub source_sentences: Vec<String>,
    pub target_sentences: Vec<String>,
    pub alignment: AlignmentType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_parses: Option<Vec<ParsedSentence>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_parses: Option<Vec<ParsedSentence>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub references: Option<Vec<Vec<String>>>,
    /// Parses for each reference, index-matched to `references`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reference_parses: Vec<Option<Vec<ParsedSentence>>>,
    /// Position of this instance inside its source document, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<DocumentPosition>,
}

/// Where an instance sits in its sub-document: its rank among the source
/// sentences and its rank among the target sentences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentPosition {
    pub doc: String,
    pub source_index: usize,
    pub target_index: usize,
}

impl SimplificationInstance {
    pub fn new(id: impl Into<String>, source_sentences: Vec<String>, target_sentences: Vec<String>) -> Result<Self> {
        let alignment = AlignmentType::from_counts(source_sentences.len(), target_sentences.len())?;
        Ok(SimplificationInstance {
            id: id.into(),
            source_sentences,
            target_sentences,
            alignment,
            source_parses: None,
            target_parses: None,
            references: None,
            reference_parses: Vec::new(),
            document: None,
        })
    }

    /// Convenience for one-sentence sides.
    pub fn pair(id: impl Into<String>, source: &str, target: &str) -> Self {
        Self::new(id, vec![source.to_string()], vec![target.to_string()]).expect("both sides non-empty")
    }

    pub fn with_parses(
        mut self,
        source: Option<Vec<ParsedSentence>>,
        target: Option<Vec<ParsedSentence>>,
    ) -> Result<Self> {
        self.source_parses = source;
        self.target_parses = target;
        self.validate()?;
        Ok(self)
    }

    pub fn with_references(mut self, refs: Vec<Vec<String>>) -> Self {
        self.references = Some(refs);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let counts = (self.source_sentences.len(), self.target_sentences.len());
        if counts == (0, 0) {
            return Err(Error::EmptyInstanceId(self.id.clone()));
        }
        if self.alignment.counts() != counts {
            return Err(Error::InvalidInstance {
                id: self.id.clone(),
                message: format!(
                    "alignment {} disagrees with sentence counts {}-to-{}",
                    self.alignment, counts.0, counts.1
                ),
            });
        }
        for (side, parses, n) in [
            ("source", &self.source_parses, counts.0),
            ("target", &self.target_parses, counts.1),
        ] {
            if let Some(p) = parses {
                if p.len() != n {
                    return Err(Error::InvalidInstance {
                        id: self.id.clone(),
                        message: format!("{} {side} parses for {n} sentences", p.len()),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn source_text(&self) -> String {
        self.source_sentences.join(" ")
    }

    pub fn target_text(&self) -> String {
        self.target_sentences.join(" ")
    }
}

/// The result of tagging one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TaggedInstance {
    pub instance: SimplificationInstance,
    pub ops: OperationSet,
    /// Rule firings per operation. May also hold `skipped: ...` notes for
    /// rules that could not run.
    pub evidence: BTreeMap<OperationToken, Vec<String>>,
}

impl TaggedInstance {
    pub fn new(instance: SimplificationInstance) -> Self {
        TaggedInstance {
            instance,
            ops: OperationSet::new(),
            evidence: BTreeMap::new(),
        }
    }

    /// Adds `op` with a line of evidence.
    pub fn fire(&mut self, op: OperationToken, evidence: impl Into<String>) {
        self.ops.insert(op);
        self.evidence.entry(op).or_default().push(evidence.into());
    }

    /// Records that a rule for `op` could not run.
    pub fn skip(&mut self, op: OperationToken, reason: &str) {
        let note = format!("skipped: {reason}");
        let notes = self.evidence.entry(op).or_default();
        if !notes.contains(&note) {
            notes.push(note);
        }
    }

    pub fn has_skips(&self) -> bool {
        self.evidence.values().flatten().any(|e| e.starts_with("skipped:"))
    }
}

/// Per-subset operation statistics: frequencies and the 9x9 co-occurrence
/// correlation matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperationProfile {
    pub subset_name: String,
    pub n_instances: usize,
    pub freqs: [f64; 9],
    pub corr: [[f64; 9]; 9],
    pub degenerate_ops: BTreeSet<OperationToken>,
}

impl OperationProfile {
    pub fn freq(&self, op: OperationToken) -> f64 {
        self.freqs[op.index()]
    }
}
