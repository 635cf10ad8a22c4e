//! New content in the target: example clauses, explanations anchored to a
//! source noun, and unclassified additions.

use std::collections::{BTreeSet, HashSet};

use super::view::{lemma_of, SideView};
use super::{Consumed, TaggerConfig};
use crate::error::Result;
use crate::text::{is_function_word, normalize_word};
use crate::types::{ParseToken, SimplificationInstance};

pub const DEFAULT_EXAMPLE_CUES: &[&str] = &["for example", "e.g.", "such as", "for instance", "like"];

const FUNCTION_UPOS: &[&str] = &["DET", "ADP", "AUX", "CCONJ", "SCONJ", "PART", "PRON", "PUNCT"];

const EXPLAIN_WINDOW: usize = 2;

/// A target word that is new relative to the source.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct NewWord {
    /// Index into the target's normalized words.
    pub index: usize,
    pub word: String,
}

/// Target words absent from the source that are neither consumed by
/// another operation nor function words.
pub fn new_content_words(si: &SimplificationInstance, consumed: &Consumed) -> Vec<NewWord> {
    let src = SideView::new(&si.source_sentences, si.source_parses.as_deref());
    let tgt = SideView::new(&si.target_sentences, si.target_parses.as_deref());
    new_words_on(&src, &tgt, consumed)
}

pub(crate) fn new_words_on(src: &SideView, tgt: &SideView, consumed: &Consumed) -> Vec<NewWord> {
    tgt.words
        .iter()
        .enumerate()
        .filter(|(i, w)| !src.set.contains(*w) && !consumed.target.contains(i))
        .filter(|(i, w)| match tgt.word_parse_token(*i) {
            Some(tok) => !FUNCTION_UPOS.contains(&tok.upos.as_str()),
            None => !is_function_word(w),
        })
        .map(|(index, w)| NewWord { index, word: w.clone() })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AdditionResult {
    pub example: Option<String>,
    pub explain: Option<String>,
    pub add: Option<String>,
    /// Set when EXPLAIN could not be evaluated for lack of a target parse.
    pub explain_skipped: bool,
}

pub(crate) fn normalize_cues<S: AsRef<str>>(cues: &[S]) -> Vec<Vec<String>> {
    cues.iter()
        .map(|c| {
            c.as_ref()
                .split_whitespace()
                .filter_map(normalize_word)
                .collect::<Vec<_>>()
        })
        .filter(|c| !c.is_empty())
        .collect()
}

pub fn detect_addition<S: AsRef<str>>(
    si: &SimplificationInstance,
    consumed: &Consumed,
    cues: &[S],
    config: &TaggerConfig,
) -> Result<AdditionResult> {
    let ratio = super::token_length_ratio(si)?;
    let src = SideView::new(&si.source_sentences, si.source_parses.as_deref());
    let tgt = SideView::new(&si.target_sentences, si.target_parses.as_deref());
    Ok(addition_on(ratio, &src, &tgt, consumed, &normalize_cues(cues), config))
}

pub(crate) fn addition_on(
    ratio: f64,
    src: &SideView,
    tgt: &SideView,
    consumed: &Consumed,
    cues: &[Vec<String>],
    config: &TaggerConfig,
) -> AdditionResult {
    let mut result = AdditionResult::default();
    let new_words = new_words_on(src, tgt, consumed);
    if new_words.is_empty() {
        return result;
    }

    let example_zone = example_clauses(tgt, cues);
    let (examples, rest): (Vec<&NewWord>, Vec<&NewWord>) =
        new_words.iter().partition(|nw| example_zone.contains(&nw.index));
    if !examples.is_empty() {
        result.example = Some(format!("new words in an example clause: {}", join(&examples)));
    }

    let mut unclassified = rest.clone();
    if tgt.parses.is_none() {
        result.explain_skipped = !rest.is_empty();
    } else {
        let lemmas = source_lemmas(src);
        let mut anchored = Vec::new();
        let mut anchors = BTreeSet::new();
        unclassified.clear();
        for nw in rest {
            match explain_anchor(src, tgt, &lemmas, nw.index) {
                Some(anchor) => {
                    anchored.push(nw);
                    anchors.insert(anchor.surface.clone());
                }
                None => unclassified.push(nw),
            }
        }
        if !anchored.is_empty() {
            result.explain = Some(format!(
                "new words {} tied to source noun(s) {}",
                join(&anchored),
                anchors
                    .into_iter()
                    .map(|a| format!("`{a}`"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
    }

    if !unclassified.is_empty() && ratio < config.add_ratio_threshold {
        result.add = Some(format!(
            "unclassified new words {}, token length ratio {ratio:.3} < {}",
            join(&unclassified),
            config.add_ratio_threshold
        ));
    }
    result
}

fn join(words: &[&NewWord]) -> String {
    words
        .iter()
        .map(|w| format!("`{}`", w.word))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Target word positions lying in a clause opened by a cue phrase: from the
/// cue to the end of its punctuation-delimited segment.
fn example_clauses(tgt: &SideView, cues: &[Vec<String>]) -> HashSet<usize> {
    let mut zone = HashSet::new();
    for cue in cues {
        let n = cue.len();
        let mut i = 0;
        while i + n <= tgt.len() {
            let seg = tgt.segments[i];
            if tgt.words[i..i + n] == cue[..] && tgt.segments[i + n - 1] == seg {
                let mut j = i;
                while j < tgt.len() && tgt.segments[j] == seg {
                    zone.insert(j);
                    j += 1;
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    zone
}

fn source_lemmas(src: &SideView) -> HashSet<String> {
    let mut out: HashSet<String> = src.set.clone();
    out.extend(src.tokens().map(|(_, _, t)| lemma_of(t)));
    out
}

fn is_noun(tok: &ParseToken) -> bool {
    matches!(tok.upos.as_str(), "NOUN" | "PROPN")
}

/// The source noun a new target word explains, if any: reached by walking
/// up through new material in the dependency tree, or failing that, within
/// a two-token window.
fn explain_anchor<'a>(
    src: &SideView,
    tgt: &SideView<'a>,
    lemmas: &HashSet<String>,
    word: usize,
) -> Option<&'a ParseToken> {
    let (s, t) = tgt.word_token.get(word).copied().flatten()?;
    let parse = tgt.parses?.get(s)?;
    let anchor = |tok: &ParseToken| {
        is_noun(tok)
            && (lemmas.contains(&lemma_of(tok)) || normalize_word(&tok.surface).is_some_and(|w| src.set.contains(&w)))
    };

    let mut cur = t;
    for _ in 0..parse.tokens.len() {
        let head = parse.tokens[cur].head;
        if head == 0 {
            break;
        }
        let h = &parse.tokens[head - 1];
        if anchor(h) {
            return Some(h);
        }
        let head_is_new = match tgt.word_of_token(s, head - 1) {
            Some(w) => !src.set.contains(&tgt.words[w]),
            None => true,
        };
        if !head_is_new {
            break;
        }
        cur = head - 1;
    }

    let lo = t.saturating_sub(EXPLAIN_WINDOW);
    let hi = (t + EXPLAIN_WINDOW).min(parse.tokens.len() - 1);
    (lo..=hi)
        .filter(|&p| p != t)
        .map(|p| &parse.tokens[p])
        .find(|tok| anchor(tok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::parse_conllu_str;
    use crate::types::ParsedSentence;

    fn parse(rows: &[&str]) -> Vec<ParsedSentence> {
        let body: String = rows.iter().map(|r| format!("{}\n", r.replace(' ', "\t"))).collect();
        parse_conllu_str(&format!("{body}\n")).unwrap()
    }

    fn run(si: &SimplificationInstance) -> AdditionResult {
        detect_addition(si, &Consumed::default(), DEFAULT_EXAMPLE_CUES, &TaggerConfig::default()).unwrap()
    }

    #[test]
    fn identical_sides_have_no_new_words() {
        let si = SimplificationInstance::pair("a", "Palm trees grow here.", "Palm trees grow here.");
        assert!(new_content_words(&si, &Consumed::default()).is_empty());
    }

    #[test]
    fn function_words_are_not_new_content() {
        let si = SimplificationInstance::pair("a", "Palm trees grow here.", "The palm trees grow here.")
            .with_parses(
                None,
                Some(parse(&[
                    "1 The the DET _ _ 3 det _ _",
                    "2 palm palm NOUN _ _ 3 compound _ _",
                    "3 trees tree NOUN _ _ 4 nsubj _ _",
                    "4 grow grow VERB _ _ 0 root _ _",
                    "5 here here ADV _ _ 4 advmod _ _",
                ])),
            )
            .unwrap();
        assert!(new_content_words(&si, &Consumed::default()).is_empty());
        let no_parse = SimplificationInstance::pair("a", "Palm trees grow here.", "The palm trees grow here.");
        assert!(new_content_words(&no_parse, &Consumed::default()).is_empty());
    }

    #[test]
    fn added_nouns_are_new_content() {
        let si = SimplificationInstance::pair(
            "a",
            "People make things from palm leaves.",
            "People make baskets and plates from palm leaves.",
        );
        let words: Vec<String> = new_content_words(&si, &Consumed::default())
            .into_iter()
            .map(|w| w.word)
            .collect();
        assert_eq!(words, vec!["baskets", "plates"]);
    }

    #[test]
    fn example_clause() {
        let si = SimplificationInstance::pair(
            "a",
            "People make many things from palm leaves.",
            "People make many things from palm leaves, such as baskets and plates.",
        );
        let r = run(&si);
        assert!(r.example.is_some(), "{r:?}");
        assert!(r.add.is_none(), "{r:?}");
    }

    #[test]
    fn explanation_on_source_noun() {
        let si = SimplificationInstance::pair(
            "a",
            "Palms grow in deserts.",
            "Palms, which are tall trees, grow in deserts.",
        )
        .with_parses(
            None,
            Some(parse(&[
                "1 Palms palm NOUN _ _ 7 nsubj _ _",
                "2 , , PUNCT _ _ 6 punct _ _",
                "3 which which PRON _ _ 6 nsubj _ _",
                "4 are be AUX _ _ 6 cop _ _",
                "5 tall tall ADJ _ _ 6 amod _ _",
                "6 trees tree NOUN _ _ 1 acl:relcl _ _",
                "7 grow grow VERB _ _ 0 root _ _",
                "8 in in ADP _ _ 9 case _ _",
                "9 deserts desert NOUN _ _ 7 obl _ _",
                "10 . . PUNCT _ _ 7 punct _ _",
            ])),
        )
        .unwrap();
        let r = run(&si);
        assert!(r.explain.as_deref().unwrap().contains("`Palms`"), "{r:?}");
        assert!(r.add.is_none(), "{r:?}");
    }

    #[test]
    fn window_anchor() {
        let si = SimplificationInstance::pair("a", "Palms grow in deserts.", "Palms grow in hot deserts.")
            .with_parses(
                None,
                Some(parse(&[
                    "1 Palms palm NOUN _ _ 2 nsubj _ _",
                    "2 grow grow VERB _ _ 0 root _ _",
                    "3 in in ADP _ _ 5 case _ _",
                    "4 hot hot ADJ _ _ 2 advmod _ _",
                    "5 deserts desert NOUN _ _ 2 obl _ _",
                ])),
            )
            .unwrap();
        // `hot` hangs off the verb but sits next to `deserts`.
        let r = run(&si);
        assert!(r.explain.as_deref().unwrap().contains("`deserts`"), "{r:?}");
        assert!(r.add.is_none());
    }

    #[test]
    fn unanchored_addition() {
        // 4 source / 5 target tokens: ratio 0.8.
        let si = SimplificationInstance::pair("a", "Palms grow very well.", "Palms grow very well everywhere.")
            .with_parses(
                None,
                Some(parse(&[
                    "1 Palms palm NOUN _ _ 2 nsubj _ _",
                    "2 grow grow VERB _ _ 0 root _ _",
                    "3 very very ADV _ _ 4 advmod _ _",
                    "4 well well ADV _ _ 2 advmod _ _",
                    "5 everywhere everywhere ADV _ _ 2 advmod _ _",
                ])),
            )
            .unwrap();
        let r = run(&si);
        assert!(r.explain.is_none() && r.example.is_none(), "{r:?}");
        assert!(r.add.is_some(), "{r:?}");
    }

    #[test]
    fn no_addition_when_target_is_shorter() {
        let si = SimplificationInstance::pair("a", "Palms grow very well here.", "Palms thrive everywhere.");
        let r = run(&si);
        assert!(r.explain_skipped);
        assert!(r.add.is_none(), "{r:?}");
    }
}
