mod common;

use common::fixtures::{run_group, GROUPS};

#[test]
fn fixtures_match_hand_labels() {
    let mut total = 0;
    for group in GROUPS {
        let run = run_group(group);
        assert_eq!(run.expected.len(), run.actual.len(), "{group}");
        for (id, want) in &run.expected {
            assert_eq!(run.actual.get(id), Some(want), "{group}/{id}");
        }
        total += run.expected.len();
    }
    assert!(total >= 20);
}

#[test]
fn paraphrase_rule_absorbs_deleted_words() {
    use cogsimp::ingest::ParaphraseDB;
    use cogsimp::tagger::{tag, TaggerConfig, TaggerResources};
    use cogsimp::{OperationToken, SimplificationInstance};

    // Eight source words, seven target words; three source words missing
    // unless the paraphrase rule accounts for one of them.
    let si = SimplificationInstance::pair(
        "t",
        "Many local farmers usually grow rice near rivers.",
        "The farmers often grow rice near rivers.",
    );
    let mut db = ParaphraseDB::new(4);
    let without = tag(&si, &TaggerResources::new(db.clone(), TaggerConfig::default()).unwrap());
    assert!(without.ops.contains(OperationToken::Del));
    db.insert("usually", "often");
    let with = tag(&si, &TaggerResources::new(db, TaggerConfig::default()).unwrap());
    assert!(!with.ops.contains(OperationToken::Del));
    assert!(with.ops.contains(OperationToken::Rephrase));
}
