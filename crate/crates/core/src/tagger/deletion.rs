use super::view::SideView;
use super::{Consumed, TaggerConfig};
use crate::error::{Error, Result};
use crate::text::whitespace_len;
use crate::types::{AlignmentType, SimplificationInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeletionKind {
    Removal,
    Summarization,
    Unspecified,
}

impl DeletionKind {
    pub fn for_alignment(alignment: AlignmentType) -> Self {
        match alignment {
            AlignmentType::MToZero(_) => DeletionKind::Removal,
            AlignmentType::MToOne(_) => DeletionKind::Summarization,
            _ => DeletionKind::Unspecified,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DeletionKind::Removal => "removal",
            DeletionKind::Summarization => "summarization",
            DeletionKind::Unspecified => "unspecified",
        }
    }
}

/// Whitespace-token count of the source over that of the target.
pub fn token_length_ratio(si: &SimplificationInstance) -> Result<f64> {
    let (s, t) = (
        whitespace_len(&si.source_sentences),
        whitespace_len(&si.target_sentences),
    );
    if s == 0 || t == 0 {
        return Err(Error::InvalidInstance {
            id: si.id.clone(),
            message: format!("token length ratio undefined for {s} source / {t} target tokens"),
        });
    }
    Ok(s as f64 / t as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeletionFinding {
    pub evidence: String,
    pub kind: DeletionKind,
}

pub fn detect_deletion(
    si: &SimplificationInstance,
    consumed: &Consumed,
    config: &TaggerConfig,
) -> Result<Option<DeletionFinding>> {
    let ratio = token_length_ratio(si)?;
    let src = SideView::new(&si.source_sentences, None);
    let tgt = SideView::new(&si.target_sentences, None);
    Ok(deletion_on(si.alignment, ratio, &src, &tgt, consumed, config))
}

/// Share of source words that are absent from the target and not part of
/// another matched operation.
pub(crate) fn deleted_fraction(src: &SideView, tgt: &SideView, consumed: &Consumed) -> f64 {
    if src.len() == 0 {
        return 0.0;
    }
    let deleted = src
        .words
        .iter()
        .enumerate()
        .filter(|(i, w)| !tgt.set.contains(*w) && !consumed.source.contains(i))
        .count();
    deleted as f64 / src.len() as f64
}

pub(crate) fn deletion_on(
    alignment: AlignmentType,
    ratio: f64,
    src: &SideView,
    tgt: &SideView,
    consumed: &Consumed,
    config: &TaggerConfig,
) -> Option<DeletionFinding> {
    let kind = DeletionKind::for_alignment(alignment);
    if ratio >= config.del_ratio_threshold {
        return Some(DeletionFinding {
            evidence: format!(
                "{}: token length ratio {ratio:.3} >= {}",
                kind.name(),
                config.del_ratio_threshold
            ),
            kind,
        });
    }
    if ratio > 1.0 {
        let frac = deleted_fraction(src, tgt, consumed);
        if frac > config.del_pct_threshold {
            return Some(DeletionFinding {
                evidence: format!(
                    "{}: {:.1}% of source words deleted (> {:.1}%), ratio {ratio:.3} > 1",
                    kind.name(),
                    frac * 100.0,
                    config.del_pct_threshold * 100.0
                ),
                kind,
            });
        }
    }
    None
}
