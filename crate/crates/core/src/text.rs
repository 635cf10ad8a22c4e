//! Tokenization shared by the tagger, the metrics and the statistics.

/// Splits text into tokens for counting and n-gram extraction.
pub trait Tokenizer: Send + Sync {
    fn tokenize(&self, text: &str) -> Vec<String>;
}

/// Lowercases, separates every punctuation character into its own token,
/// then splits on whitespace. Default for metrics and statistics.
#[derive(Debug, Clone, Copy, Default)]
pub struct PunctTokenizer;

impl Tokenizer for PunctTokenizer {
    fn tokenize(&self, text: &str) -> Vec<String> {
        let mut out = Vec::new();
        for chunk in text.split_whitespace() {
            let mut cur = String::new();
            for c in chunk.chars() {
                if is_punct(c) {
                    if !cur.is_empty() {
                        out.push(std::mem::take(&mut cur));
                    }
                    out.push(c.to_lowercase().collect());
                } else {
                    cur.extend(c.to_lowercase());
                }
            }
            if !cur.is_empty() {
                out.push(cur);
            }
        }
        out
    }
}

/// Plain whitespace splitting, case preserved.
#[derive(Debug, Clone, Copy, Default)]
pub struct WhitespaceTokenizer;

impl Tokenizer for WhitespaceTokenizer {
    fn tokenize(&self, text: &str) -> Vec<String> {
        text.split_whitespace().map(str::to_string).collect()
    }
}

pub fn is_punct(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace()
}

/// Number of whitespace-delimited tokens across `sentences`.
pub fn whitespace_len<S: AsRef<str>>(sentences: &[S]) -> usize {
    sentences.iter().map(|s| s.as_ref().split_whitespace().count()).sum()
}

/// Word identity used by the tagger: lowercase with leading and trailing
/// punctuation trimmed. `None` for tokens made only of punctuation.
pub fn normalize_word(raw: &str) -> Option<String> {
    let trimmed = raw.trim_matches(is_punct);
    if trimmed.is_empty() {
        None
    } else {
        Some(trimmed.to_lowercase())
    }
}

/// Normalized words of a sentence, in order.
pub fn words(sentence: &str) -> Vec<String> {
    sentence.split_whitespace().filter_map(normalize_word).collect()
}

/// Surface fallback for function words when no parse is available.
pub const FUNCTION_WORDS: &[&str] = &[
    "a",
    "an",
    "the",
    "this",
    "that",
    "these",
    "those",
    "some",
    "any",
    "each",
    "every",
    "no",
    "another",
    "such",
    "of",
    "in",
    "on",
    "at",
    "by",
    "for",
    "with",
    "about",
    "against",
    "between",
    "into",
    "through",
    "during",
    "before",
    "after",
    "above",
    "below",
    "to",
    "from",
    "up",
    "down",
    "out",
    "off",
    "over",
    "under",
    "around",
    "among",
    "within",
    "without",
    "upon",
    "across",
    "is",
    "am",
    "are",
    "was",
    "were",
    "be",
    "been",
    "being",
    "have",
    "has",
    "had",
    "having",
    "do",
    "does",
    "did",
    "will",
    "would",
    "shall",
    "should",
    "can",
    "could",
    "may",
    "might",
    "must",
    "and",
    "or",
    "but",
    "nor",
    "so",
    "yet",
    "if",
    "because",
    "while",
    "although",
    "though",
    "whether",
    "since",
    "unless",
    "until",
    "than",
    "as",
    "not",
    "n't",
    "'s",
    "'re",
    "'ve",
    "'ll",
    "'d",
    "'m",
    "i",
    "me",
    "my",
    "mine",
    "myself",
    "we",
    "us",
    "our",
    "ours",
    "ourselves",
    "you",
    "your",
    "yours",
    "yourself",
    "yourselves",
    "he",
    "him",
    "his",
    "himself",
    "she",
    "her",
    "hers",
    "herself",
    "it",
    "its",
    "itself",
    "they",
    "them",
    "their",
    "theirs",
    "themselves",
    "who",
    "whom",
    "whose",
    "which",
    "what",
    "there",
    "here",
    "when",
    "where",
    "how",
    "why",
    "we're",
    "they're",
    "you're",
    "it's",
    "he's",
    "she's",
    "i'm",
    "that's",
    "there's",
];

pub fn is_function_word(word: &str) -> bool {
    FUNCTION_WORDS.contains(&word)
}

pub const THIRD_PERSON_PRONOUNS: &[&str] = &[
    "he",
    "him",
    "his",
    "himself",
    "she",
    "her",
    "hers",
    "herself",
    "it",
    "its",
    "itself",
    "they",
    "them",
    "their",
    "theirs",
    "themselves",
];

pub fn is_third_person_pronoun(word: &str) -> bool {
    THIRD_PERSON_PRONOUNS.contains(&word)
}

/// Character-level Levenshtein distance.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}
