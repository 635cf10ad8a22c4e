mod common;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cogsimp"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cogsimp")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn err(args: &[&str]) -> String {
    let out = run(args);
    assert!(!out.status.success(), "{args:?} should fail");
    String::from_utf8(out.stderr).unwrap()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/tagger")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn tag_writes_sorted_records_with_evidence() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tagged.jsonl");
    let f = fixtures();
    let stdout = ok(&[
        "tag",
        "--corpus",
        s(&f.join("coref/corpus.jsonl")),
        "--ppdb",
        s(&f.join("paraphrases.tsv")),
        "--parses",
        s(&f.join("coref")),
        "--coref",
        s(&f.join("coref/coref.jsonl")),
        "--out",
        s(&out),
    ]);
    assert!(stdout.contains("tagged 25 instances"), "{stdout}");
    assert!(stdout.contains("skipped on"));
    let lines: Vec<Value> = fs::read_to_string(&out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // Two degenerate instances are filtered by default.
    assert_eq!(lines.len(), 25);
    let ids: Vec<&str> = lines.iter().map(|v| v["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let a05 = lines.iter().find(|v| v["id"] == "a05-synonym").unwrap();
    assert_eq!(a05["ops"], serde_json::json!(["REPHRASE"]));
    assert_eq!(a05["evidence"]["REPHRASE"][0], "synonym `principal` -> `main`");

    let kept = dir.path().join("all.jsonl");
    ok(&[
        "tag",
        "--corpus",
        s(&f.join("coref/corpus.jsonl")),
        "--ppdb",
        s(&f.join("paraphrases.tsv")),
        "--keep-degenerate",
        "--out",
        s(&kept),
    ]);
    assert_eq!(fs::read_to_string(&kept).unwrap().lines().count(), 27);
}

#[test]
fn tag_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.jsonl", "");
    let ppdb = write(dir.path(), "p.tsv", "");
    let out = dir.path().join("o.jsonl");
    assert!(err(&["tag", "--corpus", s(&empty), "--ppdb", s(&ppdb), "--out", s(&out)]).contains("no instances"));
    let missing = dir.path().join("nope.jsonl");
    assert!(err(&["tag", "--corpus", s(&missing), "--ppdb", s(&ppdb), "--out", s(&out)]).contains("nope.jsonl"));
    let bad = write(dir.path(), "bad.jsonl", "{\"id\":\"x\"\n");
    assert!(err(&["tag", "--corpus", s(&bad), "--ppdb", s(&ppdb), "--out", s(&out)]).contains("line 1"));
    let corpus = write(
        dir.path(),
        "c.jsonl",
        "{\"id\":\"x\",\"source_sentences\":[\"a\"],\"target_sentences\":[\"b\"]}\n",
    );
    assert!(!err(&[
        "tag",
        "--corpus",
        s(&corpus),
        "--ppdb",
        s(&ppdb),
        "--out",
        s(&out),
        "--del-pct",
        "1.5"
    ])
    .is_empty());
}

#[test]
fn tag_output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    common::synth::write_corpus(dir.path(), 300, 500, 3);
    let mut outputs = Vec::new();
    for threads in ["1", "3", "8"] {
        let out = dir.path().join(format!("t{threads}.jsonl"));
        ok(&[
            "--threads",
            threads,
            "tag",
            "--corpus",
            s(&dir.path().join("corpus.jsonl")),
            "--ppdb",
            s(&dir.path().join("ppdb.tsv")),
            "--parses",
            s(&dir.path().join("parses.conllu")),
            "--out",
            s(&out),
        ]);
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
}

#[test]
fn annotate_formats_and_checks_ids() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write(
        dir.path(),
        "c.jsonl",
        concat!(
            "{\"id\":\"a\",\"source_sentences\":[\"The big dog.\"],\"target_sentences\":[\"The dog.\"]}\n",
            "{\"id\":\"b\",\"source_sentences\":[\"Gone.\"],\"target_sentences\":[]}\n",
            "{\"id\":\"c\",\"source_sentences\":[\"One two.\"],\"target_sentences\":[\"One.\",\"Two.\"]}\n",
        ),
    );
    let tagged = write(
        dir.path(),
        "t.jsonl",
        "{\"id\":\"a\",\"ops\":[\"DEL\"]}\n{\"id\":\"c\",\"ops\":[\"SPLIT\"]}\n",
    );
    let tsv = dir.path().join("out.tsv");
    let stdout = ok(&[
        "annotate",
        "--corpus",
        s(&corpus),
        "--tagged",
        s(&tagged),
        "--style",
        "t5",
        "--out",
        s(&tsv),
    ]);
    assert!(stdout.contains("wrote 2 pairs, skipped 1 degenerate"), "{stdout}");
    assert_eq!(
        fs::read_to_string(&tsv).unwrap(),
        "<mask_1> The big dog.\t<mask_1> <DEL> <mask_2> The dog.\n<mask_1> One two.\t<mask_1> <SPLIT> <mask_2> One. Two.\n"
    );

    let jsonl = dir.path().join("out.jsonl");
    ok(&[
        "annotate",
        "--corpus",
        s(&corpus),
        "--tagged",
        s(&tagged),
        "--style",
        "bart",
        "--format",
        "jsonl",
        "--out",
        s(&jsonl),
    ]);
    let first: Value = serde_json::from_str(fs::read_to_string(&jsonl).unwrap().lines().next().unwrap()).unwrap();
    assert_eq!(first["target"], "<DEL> The dog.");
    assert_eq!(first["source"], "<mask> The big dog.");

    let stray = write(
        dir.path(),
        "t2.jsonl",
        "{\"id\":\"a\",\"ops\":[]}\n{\"id\":\"zz\",\"ops\":[]}\n",
    );
    let e = err(&[
        "annotate",
        "--corpus",
        s(&corpus),
        "--tagged",
        s(&stray),
        "--style",
        "t5",
        "--out",
        s(&tsv),
    ]);
    assert!(e.contains("c, zz"), "{e}");
}

#[test]
fn score_reports_and_compares() {
    let dir = tempfile::tempdir().unwrap();
    let sources = write(dir.path(), "src.txt", "the cat perched on the mat\na b c\nx y z\n");
    let outputs = write(dir.path(), "out.txt", "the cat sat on the mat\na b c\nx y\n");
    let other = write(dir.path(), "other.txt", "the cat perched on the mat\na b c\nx y z\n");
    let refs = write(dir.path(), "ref.txt", "the cat sat on the mat\na b d\nx y\n");
    let report = dir.path().join("r.json");
    ok(&[
        "score",
        "--sources",
        s(&sources),
        "--outputs",
        s(&outputs),
        "--refs",
        s(&refs),
        "--compare-outputs",
        s(&other),
        "--per-sentence",
        "--out",
        s(&report),
    ]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["n"], 3);
    assert!((v["identical_pct"].as_f64().unwrap() - 100.0 / 3.0).abs() < 1e-9);
    assert_eq!(v["per_sentence_sari"].as_array().unwrap().len(), 3);
    assert!((v["per_sentence_sari"][0].as_f64().unwrap() - 100.0).abs() < 1e-9);
    assert!(v["comparison"]["sari"].as_f64().unwrap() < v["sari"].as_f64().unwrap());
    assert_eq!(v["comparison"]["wilcoxon"]["method"], "exact");

    let short = write(dir.path(), "short.txt", "only one\n");
    let e = err(&[
        "score",
        "--sources",
        s(&sources),
        "--outputs",
        s(&short),
        "--refs",
        s(&refs),
    ]);
    assert!(e.contains("has 1 lines but the sources have 3"), "{e}");
}

#[test]
fn agree_prints_table() {
    let dir = tempfile::tempdir().unwrap();
    let gold = write(
        dir.path(),
        "g.jsonl",
        "{\"id\":\"a\",\"ops\":[\"DEL\"]}\n{\"id\":\"b\",\"ops\":[]}\n",
    );
    let pred = write(
        dir.path(),
        "p.jsonl",
        "{\"id\":\"a\",\"ops\":[\"DEL\"],\"evidence\":{}}\n{\"id\":\"b\",\"ops\":[\"DEL\"]}\n",
    );
    let json = dir.path().join("a.json");
    let stdout = ok(&["agree", "--pred", s(&pred), "--gold", s(&gold), "--out", s(&json)]);
    assert!(
        stdout
            .lines()
            .any(|l| l.starts_with("DEL") && l.contains("50.0") && l.contains("100.0")),
        "{stdout}"
    );
    assert!(stdout.lines().any(|l| l.starts_with("PROX") && l.contains("n/a")));
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["n_shared"], 2);
    assert_eq!(v["kappa_per_op"]["PROX"], "n/a");
}

#[test]
fn compare_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(
        dir.path(),
        "asset.jsonl",
        "{\"id\":\"1\",\"ops\":[\"DEL\"]}\n{\"id\":\"2\",\"ops\":[\"DEL\",\"SPLIT\"]}\n",
    );
    let b = write(
        dir.path(),
        "cs.jsonl",
        "{\"id\":\"1\",\"ops\":[]}\n{\"id\":\"2\",\"ops\":[\"ADD\"]}\n",
    );
    let out = dir.path().join("cmp");
    ok(&["compare", s(&a), s(&b), "--out", s(&out)]);
    let jsd = fs::read_to_string(out.join("distances_jsd.csv")).unwrap();
    assert!(jsd.starts_with(",asset,cs\nasset,0.000000,"), "{jsd}");
    assert!(out.join("distances_l2.csv").exists());
    let hist = fs::read_to_string(out.join("histograms.csv")).unwrap();
    assert_eq!(hist.lines().nth(1).unwrap(), "asset,0,1,1,0,0,0,0,0,0,0");
    let profiles: Value = serde_json::from_str(&fs::read_to_string(out.join("profiles.json")).unwrap()).unwrap();
    assert_eq!(profiles[0]["freqs"]["DEL"], 1.0);
    assert_eq!(profiles[1]["histogram"]["0"], 1);

    let e = err(&["compare", s(&a), s(&b), "--name", "x", "--name", "x", "--out", s(&out)]);
    assert!(e.contains("x"), "{e}");
    assert!(!err(&["compare", s(&a), "--out", s(&out)]).is_empty());
}

#[test]
fn stats_reports_corpus_means() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixtures();
    let freq = write(dir.path(), "freq.txt", "the\ndog\ncat\n");
    let stdout = ok(&[
        "stats",
        "--corpus",
        s(&f.join("coref/corpus.jsonl")),
        "--parses",
        s(&f.join("coref/parses.conllu")),
        "--freq",
        s(&freq),
    ]);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["n_instances"], 25);
    assert!(v["deptree_depth_ratio"].as_f64().is_some());
    assert!(v["wordrank_ratio"].as_f64().is_some());
}
