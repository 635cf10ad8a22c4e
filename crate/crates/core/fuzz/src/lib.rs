//! Bodies of the fuzz targets. The core test suite replays the seed corpus
//! through the same functions on stable.

use cogsimp::annotator::{emit_text, parse_annotated, strip_source_mask, AnnotationStyle};
use cogsimp::ingest::{
    load_coref, load_corpus, load_frequency_table, load_gold_labels, load_paraphrase_db, parse_conllu,
    parse_conllu_str, write_conllu, DEFAULT_MAX_PHRASE_LEN,
};
use cogsimp::OperationSet;

pub fn parse_conllu_check(data: &[u8]) {
    let Ok(sentences) = parse_conllu(data) else { return };
    // Whatever parses must survive a write and re-read unchanged.
    let again = parse_conllu_str(&write_conllu(&sentences)).expect("re-read written CoNLL-U");
    assert_eq!(sentences, again);
}

pub fn load_corpus_check(data: &[u8]) {
    let Some((flag, rest)) = data.split_first() else { return };
    if let Ok(instances) = load_corpus(rest, flag & 1 == 1) {
        for si in &instances {
            let _ = si.source_text();
            let _ = si.target_text();
        }
    }
}

pub fn load_paraphrase_db_check(data: &[u8]) {
    let _ = load_paraphrase_db(data, DEFAULT_MAX_PHRASE_LEN, None);
    let _ = load_paraphrase_db(data, 2, Some(0.5));
}

pub fn load_gold_labels_check(data: &[u8]) {
    let _ = load_gold_labels(data);
}

pub fn load_coref_check(data: &[u8]) {
    let _ = load_coref(data);
}

pub fn load_frequency_table_check(data: &[u8]) {
    if let Ok(table) = load_frequency_table(data) {
        let _ = table.rank("the");
    }
}

pub fn parse_annotated_check(data: &[u8]) {
    let Ok(line) = std::str::from_utf8(data) else { return };
    for style in [AnnotationStyle::T5, AnnotationStyle::Bart] {
        let _ = strip_source_mask(line, style);
        if let Ok((ops, text)) = parse_annotated(line, style) {
            let (_, target) = emit_text("", &text, ops, style);
            let (ops2, _) = parse_annotated(&target, style).expect("re-parse emitted target");
            assert_eq!(ops, ops2);
        }
    }
}

pub fn parse_tags_check(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(set) = OperationSet::parse_tags(s) {
        assert_eq!(OperationSet::parse_tags(&set.to_tags()).unwrap(), set);
    }
}
