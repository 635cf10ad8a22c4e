use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::text::Tokenizer;

pub const MAX_NGRAM: usize = 4;

/// SARI and its three components, each on a 0-100 scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SariScore {
    pub sari: f64,
    pub f1_add: f64,
    pub f1_keep: f64,
    pub p_delete: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_sentence: Option<Vec<SariScore>>,
}

impl SariScore {
    fn from_components(f1_add: f64, f1_keep: f64, p_delete: f64) -> Self {
        SariScore {
            sari: (f1_add + f1_keep + p_delete) / 3.0,
            f1_add,
            f1_keep,
            p_delete,
            per_sentence: None,
        }
    }
}

type Counts = BTreeMap<String, f64>;

fn ngrams(tokens: &[String], n: usize) -> Counts {
    let mut out = Counts::new();
    for w in tokens.windows(n) {
        *out.entry(w.join(" ")).or_default() += 1.0;
    }
    out
}

fn scaled(c: &Counts, k: f64) -> Counts {
    c.iter().map(|(g, v)| (g.clone(), v * k)).collect()
}

fn get(c: &Counts, g: &str) -> f64 {
    c.get(g).copied().unwrap_or(0.0)
}

/// Multiset intersection.
fn and(a: &Counts, b: &Counts) -> Counts {
    a.iter()
        .filter_map(|(g, &v)| {
            let m = v.min(get(b, g));
            (m > 0.0).then(|| (g.clone(), m))
        })
        .collect()
}

/// Multiset difference, keeping positive counts.
fn minus(a: &Counts, b: &Counts) -> Counts {
    a.iter()
        .filter_map(|(g, &v)| {
            let d = v - get(b, g);
            (d > 0.0).then(|| (g.clone(), d))
        })
        .collect()
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    }
}

/// Ratio with the empty-set convention: both sides empty gives 1, an empty
/// denominator alone gives 0.
fn ratio(num: f64, denom_len: usize, other_empty: bool) -> f64 {
    match (denom_len, other_empty) {
        (0, true) => 1.0,
        (0, false) => 0.0,
        (d, _) => num / d as f64,
    }
}

/// `(f1_keep, p_delete, f1_add)` for one n-gram order, in [0, 1].
fn sari_ngram(s: &Counts, c: &Counts, refs: &[Counts]) -> (f64, f64, f64) {
    let numref = refs.len() as f64;
    let mut r = Counts::new();
    for rc in refs {
        for (g, v) in rc {
            *r.entry(g.clone()).or_default() += v;
        }
    }
    let s_rep = scaled(s, numref);
    let c_rep = scaled(c, numref);

    let keep = and(&s_rep, &c_rep);
    let keep_good = and(&keep, &r);
    let keep_all = and(&s_rep, &r);
    let mut k1 = 0.0;
    let mut k2 = 0.0;
    for (g, good) in &keep_good {
        k1 += good / get(&keep, g);
        k2 += good / get(&keep_all, g);
    }
    let keep_p = ratio(k1, keep.len(), keep_all.is_empty());
    let keep_r = ratio(k2, keep_all.len(), keep.is_empty());

    let del = minus(&s_rep, &c_rep);
    let del_good = minus(&del, &r);
    let del_all = minus(&s_rep, &r);
    let d1: f64 = del.keys().map(|g| get(&del_good, g) / get(&del, g)).sum();
    let del_p = ratio(d1, del.len(), del_all.is_empty());

    let s_set: BTreeSet<&String> = s.keys().collect();
    let add: BTreeSet<&String> = c.keys().filter(|g| !s_set.contains(g)).collect();
    let add_all: BTreeSet<&String> = r.keys().filter(|g| !s_set.contains(g)).collect();
    let good = add.intersection(&add_all).count() as f64;
    let add_p = ratio(good, add.len(), add_all.is_empty());
    let add_r = ratio(good, add_all.len(), add.is_empty());

    (f1(keep_p, keep_r), del_p, f1(add_p, add_r))
}

/// SARI of one output against its source and references.
pub fn sari_sentence<T: Tokenizer + ?Sized>(
    source: &str,
    output: &str,
    references: &[String],
    tokenizer: &T,
) -> Result<SariScore> {
    if references.is_empty() {
        return Err(Error::InvalidInput("SARI needs at least one reference".into()));
    }
    let s = tokenizer.tokenize(source);
    let c = tokenizer.tokenize(output);
    let rs: Vec<Vec<String>> = references.iter().map(|r| tokenizer.tokenize(r)).collect();
    let (mut keep, mut del, mut add) = (0.0, 0.0, 0.0);
    for n in 1..=MAX_NGRAM {
        let refs: Vec<Counts> = rs.iter().map(|r| ngrams(r, n)).collect();
        let (k, d, a) = sari_ngram(&ngrams(&s, n), &ngrams(&c, n), &refs);
        keep += k;
        del += d;
        add += a;
    }
    let m = 100.0 / MAX_NGRAM as f64;
    Ok(SariScore::from_components(add * m, keep * m, del * m))
}

/// Corpus SARI: the mean of sentence scores, which are kept in
/// `per_sentence`.
pub fn sari<T: Tokenizer + ?Sized>(
    sources: &[String],
    outputs: &[String],
    references: &[Vec<String>],
    tokenizer: &T,
) -> Result<SariScore> {
    super::check_len("sources/outputs", sources.len(), outputs.len())?;
    super::check_len("sources/references", sources.len(), references.len())?;
    if sources.is_empty() {
        return Err(Error::InvalidInput("SARI of an empty corpus".into()));
    }
    let per: Vec<SariScore> = sources
        .iter()
        .zip(outputs)
        .zip(references)
        .map(|((s, o), r)| sari_sentence(s, o, r, tokenizer))
        .collect::<Result<_>>()?;
    let n = per.len() as f64;
    let mean = |f: fn(&SariScore) -> f64| per.iter().map(f).sum::<f64>() / n;
    Ok(SariScore {
        sari: mean(|x| x.sari),
        f1_add: mean(|x| x.f1_add),
        f1_keep: mean(|x| x.f1_keep),
        p_delete: mean(|x| x.p_delete),
        per_sentence: Some(per),
    })
}
