//! CoNLL-U reader and writer.
//!
//! Only basic token lines are kept: multiword ranges (`3-4`) and empty
//! nodes (`5.1`) are skipped. Columns 5 (XPOS), 9 (DEPS) and 10 (MISC)
//! are read past and not retained.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::types::{ParseToken, ParsedSentence};

/// Reads every sentence from a CoNLL-U stream.
pub fn parse_conllu<R: BufRead>(reader: R) -> Result<Vec<ParsedSentence>> {
    let mut sentences = Vec::new();
    let mut block = Block::default();

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            if block.started {
                sentences.push(block.finish(sentences.len())?);
                block = Block::default();
            }
            continue;
        }
        block.started = true;
        if let Some(comment) = line.strip_prefix('#') {
            if let Some((key, value)) = comment.split_once('=') {
                if key.trim() == "sent_id" {
                    block.id = Some(value.trim().to_string());
                }
            }
            continue;
        }
        block.lines.push((lineno + 1, line.to_string()));
    }
    if block.started {
        sentences.push(block.finish(sentences.len())?);
    }
    Ok(sentences)
}

/// Convenience wrapper over an in-memory string.
pub fn parse_conllu_str(text: &str) -> Result<Vec<ParsedSentence>> {
    parse_conllu(text.as_bytes())
}

#[derive(Default)]
struct Block {
    started: bool,
    id: Option<String>,
    lines: Vec<(usize, String)>,
}

impl Block {
    fn finish(self, ordinal: usize) -> Result<ParsedSentence> {
        let id = self.id.unwrap_or_else(|| format!("sent-{}", ordinal + 1));
        let fail = |message: String| Error::InvalidParse {
            sentence: id.clone(),
            message,
        };

        let mut tokens = Vec::with_capacity(self.lines.len());
        for (lineno, line) in &self.lines {
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 10 {
                return Err(fail(format!(
                    "line {lineno}: expected 10 columns, found {}",
                    cols.len()
                )));
            }
            let raw_id = cols[0];
            if raw_id.contains('-') || raw_id.contains('.') {
                continue;
            }
            let index: usize = raw_id
                .parse()
                .map_err(|_| fail(format!("line {lineno}: bad token id `{raw_id}`")))?;
            if index != tokens.len() + 1 {
                return Err(fail(format!("line {lineno}: token id {index} out of sequence")));
            }
            let head: usize = cols[6]
                .parse()
                .map_err(|_| fail(format!("line {lineno}: non-integer head `{}`", cols[6])))?;
            tokens.push(ParseToken {
                index,
                surface: cols[1].to_string(),
                lemma: absent_to_empty(cols[2]),
                upos: absent_to_empty(cols[3]),
                feats: parse_feats(cols[5]).map_err(|m| fail(format!("line {lineno}: {m}")))?,
                head,
                deprel: absent_to_empty(cols[7]),
            });
        }
        if tokens.is_empty() {
            return Err(fail("block has zero tokens".into()));
        }
        let n = tokens.len();
        if let Some(t) = tokens.iter().find(|t| t.head > n) {
            return Err(fail(format!("head {} of token {} out of range", t.head, t.index)));
        }
        let sentence = ParsedSentence { id, tokens };
        sentence.validate()?;
        Ok(sentence)
    }
}

fn absent_to_empty(col: &str) -> String {
    if col == "_" {
        String::new()
    } else {
        col.to_string()
    }
}

/// Parses a FEATS column (`Person=3|Tense=Pres`, `_` for none).
pub fn parse_feats(col: &str) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut feats = BTreeMap::new();
    if col == "_" || col.is_empty() {
        return Ok(feats);
    }
    for pair in col.split('|') {
        let (k, v) = pair
            .split_once('=')
            .filter(|(k, v)| !k.is_empty() && !v.is_empty())
            .ok_or_else(|| format!("malformed feature `{pair}`"))?;
        feats.insert(k.to_string(), v.to_string());
    }
    Ok(feats)
}

fn or_absent(s: &str) -> &str {
    if s.is_empty() {
        "_"
    } else {
        s
    }
}

/// Serializes sentences back to CoNLL-U (XPOS, DEPS and MISC written as `_`).
pub fn write_conllu(sentences: &[ParsedSentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        let _ = writeln!(out, "# sent_id = {}", s.id);
        for t in &s.tokens {
            let feats = if t.feats.is_empty() {
                "_".to_string()
            } else {
                t.feats
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join("|")
            };
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t_\t{}\t{}\t{}\t_\t_",
                t.index,
                t.surface,
                or_absent(&t.lemma),
                or_absent(&t.upos),
                feats,
                t.head,
                or_absent(&t.deprel)
            );
        }
        out.push('\n');
    }
    out
}
