use cogsimp::ingest::{load_corpus, parse_conllu_str, write_conllu, ParaphraseDB};
use cogsimp::metrics::{bleu, identical_pct, sari};
use cogsimp::tagger::{detect_split, tag, tag_multi_reference, TaggerConfig, TaggerResources};
use cogsimp::text::PunctTokenizer;
use cogsimp::{AlignmentType, OperationSet, OperationToken, SimplificationInstance};
use proptest::prelude::*;

fn words(max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop::sample::select(vec!["the", "cat", "dog", "sat", "ran", "on", "a", "mat", "big", "he"]),
        1..max,
    )
    .prop_map(|w| w.join(" "))
}

fn resources() -> TaggerResources {
    let mut db = ParaphraseDB::new(4);
    db.insert("big", "large");
    db.insert("sat", "rested");
    TaggerResources::new(db, TaggerConfig::default()).unwrap()
}

proptest! {
    #[test]
    fn operation_set_round_trips(bits in 0u16..512) {
        let set = OperationSet::from_bits(bits);
        prop_assert_eq!(OperationSet::parse_tags(&set.to_tags()).unwrap(), set);
        prop_assert_eq!(set.iter().count(), set.len());
        let names: Vec<&str> = set.iter().map(OperationToken::name).collect();
        let json = serde_json::to_string(&set).unwrap();
        prop_assert_eq!(json, serde_json::to_string(&names).unwrap());
    }

    #[test]
    fn split_iff_one_to_many(m in 0usize..4, n in 0usize..4) {
        prop_assume!(m + n > 0);
        let si = SimplificationInstance::new(
            "s",
            (0..m).map(|i| format!("Source {i}.")).collect(),
            (0..n).map(|i| format!("Target {i}.")).collect(),
        ).unwrap();
        let one_to_n = matches!(si.alignment, AlignmentType::OneToN(_));
        prop_assert_eq!(detect_split(&si).is_some(), one_to_n);
        prop_assert_eq!(one_to_n, m == 1 && n >= 2);
    }

    #[test]
    fn tagging_is_deterministic(s in words(12), t in words(12)) {
        let si = SimplificationInstance::pair("d", &s, &t);
        let r = resources();
        prop_assert_eq!(tag(&si, &r), tag(&si, &r));
    }

    #[test]
    fn longer_source_keeps_deletion(s in words(10), t in words(10), extra in 1usize..6) {
        let r = resources();
        let base = tag(&SimplificationInstance::pair("d", &s, &t), &r);
        let padded: String = (0..extra).fold(s.clone(), |acc, i| format!("{acc} zz{i}"));
        let longer = tag(&SimplificationInstance::pair("d", &padded, &t), &r);
        prop_assert!(!base.ops.contains(OperationToken::Del) || longer.ops.contains(OperationToken::Del));
    }

    #[test]
    fn majority_is_within_union(s in words(10), refs in prop::collection::vec(words(10), 1..6)) {
        let r = resources();
        let si = SimplificationInstance::pair("m", &s, &refs[0])
            .with_references(refs.iter().map(|x| vec![x.clone()]).collect());
        let majority = tag_multi_reference(&si, &r, 0.5).unwrap().ops;
        let union = refs.iter().fold(OperationSet::new(), |acc, x| {
            acc.union(tag(&SimplificationInstance::pair("m", &s, x), &r).ops)
        });
        prop_assert!(majority.is_subset(union));
        if refs.len() == 1 {
            prop_assert_eq!(majority, tag(&SimplificationInstance::pair("m", &s, &refs[0]), &r).ops);
        }
    }

    #[test]
    fn filtered_corpus_is_a_subset(shapes in prop::collection::vec((0usize..3, 0usize..3), 1..12)) {
        let mut text = String::new();
        for (i, (m, n)) in shapes.iter().enumerate() {
            let (m, n) = if m + n == 0 { (1, 1) } else { (*m, *n) };
            let rec = serde_json::json!({
                "id": format!("i{i}"),
                "source_sentences": vec!["s"; m],
                "target_sentences": vec!["t"; n],
            });
            text.push_str(&format!("{rec}\n"));
        }
        let all = load_corpus(text.as_bytes(), false).unwrap();
        let kept = load_corpus(text.as_bytes(), true).unwrap();
        for si in &kept {
            prop_assert!(all.contains(si));
        }
        let dropped: Vec<_> = all.iter().filter(|si| !kept.contains(si)).collect();
        prop_assert!(dropped.iter().all(|si| si.alignment.is_degenerate()));
    }

    #[test]
    fn conllu_round_trips(heads in prop::collection::vec(0usize..6, 1..6)) {
        // Attach every token to an earlier one (or the root) so the tree is valid.
        let mut body = String::from("# sent_id = t:source:0\n");
        for (i, h) in heads.iter().enumerate() {
            let head = if i == 0 { 0 } else { 1 + h % i };
            let rel = if head == 0 { "root" } else { "dep" };
            body.push_str(&format!("{}\tw{i}\tw{i}\tX\t_\tNumber=Sing\t{head}\t{rel}\t_\t_\n", i + 1));
        }
        body.push('\n');
        let parsed = parse_conllu_str(&body).unwrap();
        let again = parse_conllu_str(&write_conllu(&parsed)).unwrap();
        prop_assert_eq!(parsed, again);
    }

    #[test]
    fn paraphrase_lookup_ignores_case(phrase in "[a-zA-Z]{1,8}( [a-zA-Z]{1,8}){0,2}") {
        let mut db = ParaphraseDB::new(4);
        db.insert(&phrase, "x");
        prop_assert_eq!(db.lookup(&phrase), db.lookup(&phrase.to_lowercase()));
        prop_assert_eq!(db.lookup(&phrase.to_uppercase()).map(|s| s.len()), Some(1));
    }

    #[test]
    fn scores_ignore_instance_and_reference_order(
        rows in prop::collection::vec((words(8), words(8), words(8), words(8)), 2..6),
        rot in 1usize..5,
    ) {
        let src: Vec<String> = rows.iter().map(|r| r.0.clone()).collect();
        let out: Vec<String> = rows.iter().map(|r| r.1.clone()).collect();
        let refs: Vec<Vec<String>> = rows.iter().map(|r| vec![r.2.clone(), r.3.clone()]).collect();
        let base = sari(&src, &out, &refs, &PunctTokenizer).unwrap();
        let flipped: Vec<Vec<String>> = refs.iter().map(|r| vec![r[1].clone(), r[0].clone()]).collect();
        prop_assert!((sari(&src, &out, &flipped, &PunctTokenizer).unwrap().sari - base.sari).abs() < 1e-9);

        let k = rot % rows.len();
        let rotate = |v: &[String]| [&v[k..], &v[..k]].concat();
        let (s2, o2) = (rotate(&src), rotate(&out));
        let r2: Vec<Vec<String>> = [&refs[k..], &refs[..k]].concat();
        prop_assert!((sari(&s2, &o2, &r2, &PunctTokenizer).unwrap().sari - base.sari).abs() < 1e-9);
        let b1 = bleu(&out, &refs, &PunctTokenizer).unwrap();
        let b2 = bleu(&o2, &r2, &PunctTokenizer).unwrap();
        prop_assert!((b1 - b2).abs() < 1e-12);
        prop_assert!(base.per_sentence.unwrap().iter().all(|x| (x.sari - (x.f1_add + x.f1_keep + x.p_delete) / 3.0).abs() < 1e-9));
        prop_assert_eq!(identical_pct(&src, &src).unwrap(), 100.0);
    }
}
