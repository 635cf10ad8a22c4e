//! Word-level view of one side of an instance, with parse tokens aligned to
//! the words they came from.

use std::collections::HashSet;
use std::ops::Range;

use crate::text::normalize_word;
use crate::types::{ParseToken, ParsedSentence};

const SEGMENT_END: &[char] = &[',', ';', ':', '(', ')', '\u{2014}', '\u{2013}'];

pub(crate) struct SideView<'a> {
    /// Normalized words over all sentences.
    pub words: Vec<String>,
    pub sent_ranges: Vec<Range<usize>>,
    pub set: HashSet<String>,
    /// Punctuation-delimited segment id of each word; unique across sentences.
    pub segments: Vec<usize>,
    pub parses: Option<&'a [ParsedSentence]>,
    /// `(sentence, 0-based token position)` of the first parse token aligned to each word.
    pub word_token: Vec<Option<(usize, usize)>>,
    /// Word aligned to each parse token, per sentence.
    pub token_word: Vec<Vec<Option<usize>>>,
}

impl<'a> SideView<'a> {
    pub fn new<S: AsRef<str>>(sentences: &[S], parses: Option<&'a [ParsedSentence]>) -> Self {
        let mut words = Vec::new();
        let mut sent_ranges = Vec::with_capacity(sentences.len());
        let mut segments = Vec::new();
        let mut seg = 0usize;
        for sentence in sentences {
            let start = words.len();
            for raw in sentence.as_ref().split_whitespace() {
                if raw.starts_with('(') {
                    seg += 1;
                }
                if let Some(w) = normalize_word(raw) {
                    words.push(w);
                    segments.push(seg);
                }
                if raw.ends_with(SEGMENT_END) || raw.chars().all(|c| SEGMENT_END.contains(&c)) {
                    seg += 1;
                }
            }
            seg += 1;
            sent_ranges.push(start..words.len());
        }
        let set = words.iter().cloned().collect();
        let mut view = SideView {
            word_token: vec![None; words.len()],
            words,
            sent_ranges,
            set,
            segments,
            parses,
            token_word: Vec::new(),
        };
        if let Some(parses) = parses {
            view.align(parses);
        }
        view
    }

    /// Greedy left-to-right alignment of parse tokens to words. A token maps
    /// to the next word with the same form within a small window, or, when
    /// a word was split by the parser (`we're` -> `we` `'re`), to the word
    /// that contains it.
    fn align(&mut self, parses: &[ParsedSentence]) {
        const WINDOW: usize = 4;
        for (s, parse) in parses.iter().enumerate() {
            let range = self.sent_ranges.get(s).cloned().unwrap_or(0..0);
            let mut next = range.start;
            let mut row = vec![None; parse.tokens.len()];
            for (t, tok) in parse.tokens.iter().enumerate() {
                let Some(form) = normalize_word(&tok.surface) else {
                    continue;
                };
                let limit = (next + WINDOW).min(range.end);
                if let Some(w) = (next..limit).find(|&w| self.words[w] == form) {
                    row[t] = Some(w);
                    next = w + 1;
                } else if next < range.end && self.words[next].contains(form.as_str()) {
                    row[t] = Some(next);
                    if self.words[next].ends_with(form.as_str()) {
                        next += 1;
                    }
                }
                if let Some(w) = row[t] {
                    if self.word_token[w].is_none() {
                        self.word_token[w] = Some((s, t));
                    }
                }
            }
            self.token_word.push(row);
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn token(&self, sent: usize, pos: usize) -> Option<&'a ParseToken> {
        self.parses?.get(sent)?.tokens.get(pos)
    }

    pub fn word_parse_token(&self, word: usize) -> Option<&'a ParseToken> {
        let (s, t) = self.word_token.get(word).copied().flatten()?;
        self.token(s, t)
    }

    pub fn word_of_token(&self, sent: usize, pos: usize) -> Option<usize> {
        self.token_word.get(sent)?.get(pos).copied().flatten()
    }

    /// All parse tokens as `(sentence, position, token)`.
    pub fn tokens(&self) -> impl Iterator<Item = (usize, usize, &'a ParseToken)> {
        self.parses
            .into_iter()
            .flatten()
            .enumerate()
            .flat_map(|(s, p)| p.tokens.iter().enumerate().map(move |(t, tok)| (s, t, tok)))
    }

    /// Finds `needle` as a contiguous word sequence within one sentence.
    pub fn find_phrase(&self, needle: &[String]) -> Option<Range<usize>> {
        if needle.is_empty() {
            return None;
        }
        self.sent_ranges.iter().find_map(|r| {
            let words = &self.words[r.clone()];
            words
                .windows(needle.len())
                .position(|w| w == needle)
                .map(|p| r.start + p..r.start + p + needle.len())
        })
    }
}

pub(crate) fn lemma_of(tok: &ParseToken) -> String {
    if tok.lemma.is_empty() {
        tok.surface.to_lowercase()
    } else {
        tok.lemma.to_lowercase()
    }
}
