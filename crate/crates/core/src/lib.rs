//! Tagging, annotation, scoring and comparison of aligned text
//! simplification corpora by simplification operation.

pub mod annotator;
pub mod compare;
pub mod error;
pub mod ingest;
pub mod metrics;
pub mod tagger;
pub mod text;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    canonical_order, AlignmentType, DocumentPosition, OperationProfile, OperationSet, OperationToken, ParseToken,
    ParsedSentence, SimplificationInstance, TaggedInstance,
};
