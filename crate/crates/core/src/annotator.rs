//! Operation-annotated training pairs: T5 style binds the operation tokens
//! to a mask, BART style prepends them to the target.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{OperationSet, OperationToken, SimplificationInstance};

pub const T5_MASK_1: &str = "<mask_1>";
pub const T5_MASK_2: &str = "<mask_2>";
pub const BART_MASK: &str = "<mask>";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnnotationStyle {
    T5,
    Bart,
}

impl fmt::Display for AnnotationStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnnotationStyle::T5 => "t5",
            AnnotationStyle::Bart => "bart",
        })
    }
}

impl FromStr for AnnotationStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "t5" => Ok(AnnotationStyle::T5),
            "bart" => Ok(AnnotationStyle::Bart),
            _ => Err(Error::InvalidInput(format!(
                "unknown annotation style `{s}` (expected t5 or bart)"
            ))),
        }
    }
}

/// Builds the modified source and target for one instance.
pub fn emit(si: &SimplificationInstance, ops: OperationSet, style: AnnotationStyle) -> Result<(String, String)> {
    let (source, target) = (si.source_text(), si.target_text());
    if si.alignment.is_degenerate() || source.trim().is_empty() || target.trim().is_empty() {
        return Err(Error::Degenerate(si.id.clone()));
    }
    Ok(emit_text(&source, &target, ops, style))
}

pub fn emit_text(source: &str, target: &str, ops: OperationSet, style: AnnotationStyle) -> (String, String) {
    let tags = ops.to_tags();
    match style {
        AnnotationStyle::T5 => {
            let src = format!("{T5_MASK_1} {source}");
            let tgt = if tags.is_empty() {
                format!("{T5_MASK_1} {T5_MASK_2} {target}")
            } else {
                format!("{T5_MASK_1} {tags} {T5_MASK_2} {target}")
            };
            (src, tgt)
        }
        AnnotationStyle::Bart => {
            let src = format!("{BART_MASK} {source}");
            let tgt = if tags.is_empty() {
                target.to_string()
            } else {
                format!("{tags} {target}")
            };
            (src, tgt)
        }
    }
}

/// Splits off the next space-delimited token if it is in angle brackets.
fn next_angle_token(s: &str) -> Option<(&str, &str)> {
    let t = s.trim_start_matches(' ');
    if !t.starts_with('<') {
        return None;
    }
    let end = t.find(char::is_whitespace).unwrap_or(t.len());
    let tok = &t[..end];
    tok.ends_with('>').then(|| (tok, &t[end..]))
}

fn op_token(tok: &str) -> Result<OperationToken> {
    OperationToken::from_tag(tok).ok_or_else(|| Error::Annotation(format!("unknown token `{tok}`")))
}

fn residual(rest: &str) -> String {
    rest.strip_prefix(' ').unwrap_or(rest).to_string()
}

/// Reads an annotated target back into its operations and text. Operation
/// tokens may appear in any order and repeat.
pub fn parse_annotated(line: &str, style: AnnotationStyle) -> Result<(OperationSet, String)> {
    let line = line.trim_end_matches(['\n', '\r']);
    let mut ops = OperationSet::new();
    match style {
        AnnotationStyle::T5 => {
            let rest = match next_angle_token(line) {
                Some((T5_MASK_1, rest)) => rest,
                _ => return Err(Error::Annotation(format!("T5 target must start with {T5_MASK_1}"))),
            };
            let mut rest = rest;
            loop {
                match next_angle_token(rest) {
                    Some((T5_MASK_2, after)) => return Ok((ops, residual(after))),
                    Some((tok, after)) => {
                        ops.insert(op_token(tok)?);
                        rest = after;
                    }
                    None => return Err(Error::Annotation(format!("T5 target is missing {T5_MASK_2}"))),
                }
            }
        }
        AnnotationStyle::Bart => {
            let mut rest = line;
            let mut consumed = false;
            while let Some((tok, after)) = next_angle_token(rest) {
                if tok == BART_MASK || tok == T5_MASK_1 || tok == T5_MASK_2 {
                    return Err(Error::Annotation(format!("unexpected mask `{tok}` in BART target")));
                }
                ops.insert(op_token(tok)?);
                rest = after;
                consumed = true;
            }
            Ok((ops, if consumed { residual(rest) } else { rest.to_string() }))
        }
    }
}

/// Removes the mask prefix from a modified source.
pub fn strip_source_mask(line: &str, style: AnnotationStyle) -> Result<String> {
    let mask = match style {
        AnnotationStyle::T5 => T5_MASK_1,
        AnnotationStyle::Bart => BART_MASK,
    };
    line.strip_prefix(mask)
        .map(residual)
        .ok_or_else(|| Error::Annotation(format!("{style} source must start with {mask}")))
}
