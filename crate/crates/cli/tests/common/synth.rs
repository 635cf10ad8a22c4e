//! Synthetic corpora with parses and paraphrase rules.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const UPOS: [&str; 4] = ["NOUN", "ADJ", "ADV", "NOUN"];
const REL: [&str; 4] = ["obj", "amod", "advmod", "obl"];

fn word(i: usize) -> String {
    format!("w{i}")
}

fn conllu(out: &mut String, sent_id: &str, words: &[String], rng: &mut StdRng) {
    let _ = writeln!(out, "# sent_id = {sent_id}");
    let tense = if rng.gen_bool(0.5) { "Tense=Past" } else { "Tense=Pres" };
    for (i, w) in words.iter().enumerate() {
        let (upos, feats, head, rel) = match i {
            0 => ("NOUN", "_", 2, "nsubj"),
            1 => ("VERB", tense, 0, "root"),
            _ => {
                let k = (w.len() + i) % 4;
                (UPOS[k], "_", 2, REL[k])
            }
        };
        let _ = writeln!(out, "{}\t{w}\t{w}\t{upos}\t_\t{feats}\t{head}\t{rel}\t_\t_", i + 1);
    }
    out.push('\n');
}

/// Writes `corpus.jsonl`, `parses.conllu` and `ppdb.tsv` with `n` instances
/// and `rules` paraphrase rules into `dir`.
pub fn write_corpus(dir: &Path, n: usize, rules: usize, seed: u64) {
    let mut rng = StdRng::seed_from_u64(seed);
    let vocab = rules.max(100);
    let mut corpus = String::new();
    let mut parses = String::new();
    for i in 0..n {
        let id = format!("s{i:06}");
        let len = rng.gen_range(6..20);
        let source: Vec<String> = (0..len).map(|_| word(rng.gen_range(0..vocab))).collect();
        let mut target: Vec<String> = Vec::new();
        for (k, w) in source.iter().enumerate() {
            let r = rng.gen_range(0..10);
            if k < 2 || r < 6 {
                target.push(w.clone());
            } else if r < 8 {
                // Paraphrase rule w{j} -> p{j}.
                target.push(format!("p{}", &w[1..]));
            } else if r < 9 {
                target.push(word(rng.gen_range(0..vocab)));
                target.push(word(rng.gen_range(0..vocab)));
            }
        }
        if rng.gen_bool(0.2) {
            let k = target.len() / 2;
            target.swap(0, k);
        }
        let targets: Vec<Vec<String>> = if rng.gen_bool(0.25) && target.len() >= 6 {
            let tail = target.split_off(3);
            let mut second = vec![tail[0].clone(), word(1)];
            second.extend(tail.into_iter().skip(1));
            vec![target, second]
        } else {
            vec![target]
        };
        let join = |ws: &[String]| ws.join(" ") + ".";
        let record = serde_json::json!({
            "id": id,
            "source_sentences": [join(&source)],
            "target_sentences": targets.iter().map(|t| join(t)).collect::<Vec<_>>(),
        });
        corpus.push_str(&format!("{record}\n"));
        conllu(&mut parses, &format!("{id}:source:0"), &source, &mut rng);
        for (k, t) in targets.iter().enumerate() {
            conllu(&mut parses, &format!("{id}:target:{k}"), t, &mut rng);
        }
    }
    let mut ppdb = String::new();
    for j in 0..rules {
        let _ = writeln!(ppdb, "w{j}\tp{j}\t{:.2}", rng.gen_range(1.0..5.0));
    }
    fs::write(dir.join("corpus.jsonl"), corpus).unwrap();
    fs::write(dir.join("parses.conllu"), parses).unwrap();
    fs::write(dir.join("ppdb.tsv"), ppdb).unwrap();
}
