//! Hand-built tagger fixtures under `tests/fixtures/tagger`.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use cogsimp::ingest::{attach_parses, load_coref, load_corpus, load_gold_labels, load_paraphrase_db, parse_conllu};
use cogsimp::tagger::{ops_by_id, tag_corpus, TaggerConfig, TaggerResources};
use cogsimp::OperationSet;

/// Works from the core crate and from crates that include this file.
pub fn fixture_root() -> PathBuf {
    let here = Path::new(env!("CARGO_MANIFEST_DIR"));
    let own = here.join("tests/fixtures/tagger");
    if own.exists() {
        own
    } else {
        here.join("../core/tests/fixtures/tagger")
    }
}

fn open(path: &Path) -> BufReader<File> {
    BufReader::new(File::open(path).unwrap_or_else(|e| panic!("{}: {e}", path.display())))
}

pub struct FixtureRun {
    pub expected: BTreeMap<String, OperationSet>,
    pub actual: BTreeMap<String, OperationSet>,
}

/// Tags one fixture group. Groups with a `coref.jsonl` use it; the others
/// exercise the pronoun-count fallback.
pub fn run_group(name: &str) -> FixtureRun {
    let root = fixture_root();
    let dir = root.join(name);
    let mut corpus = load_corpus(open(&dir.join("corpus.jsonl")), false).unwrap();
    let parses = parse_conllu(open(&dir.join("parses.conllu"))).unwrap();
    let report = attach_parses(&mut corpus, parses);
    assert_eq!(
        report.incomplete_sides + report.unmatched_sentences + report.malformed_ids,
        0,
        "{report:?}"
    );

    let (db, _) = load_paraphrase_db(open(&root.join("paraphrases.tsv")), 4, None).unwrap();
    let mut resources = TaggerResources::new(db, TaggerConfig::default()).unwrap();
    let coref = dir.join("coref.jsonl");
    if coref.exists() {
        resources = resources.with_coref(load_coref(open(&coref)).unwrap());
    }
    let tagged = tag_corpus(&corpus, &resources, None).unwrap();
    FixtureRun {
        expected: load_gold_labels(open(&dir.join("expected.jsonl"))).unwrap(),
        actual: ops_by_id(&tagged),
    }
}

pub const GROUPS: [&str; 2] = ["coref", "fallback"];
