//! Readers for every external resource: corpora, parse sidecars, paraphrase
//! tables, gold labels, coreference layers and word-frequency tables.

mod conllu;
mod coref;
mod corpus;
mod freq;
mod labels;
mod ppdb;

pub use conllu::{parse_conllu, parse_conllu_str, parse_feats, write_conllu};
pub use coref::{load_coref, CorefLayer, Mention, Side};
pub use corpus::{attach_parses, load_corpus, split_sent_id, AttachReport, ParseSide};
pub use freq::{load_frequency_table, FrequencyTable};
pub use labels::load_gold_labels;
pub use ppdb::{load_paraphrase_db, ParaphraseDB, PpdbLoadReport, DEFAULT_MAX_PHRASE_LEN};
