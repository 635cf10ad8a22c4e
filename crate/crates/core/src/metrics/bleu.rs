use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::text::Tokenizer;

const MAX_N: usize = 4;

fn counts(tokens: &[String], n: usize) -> BTreeMap<&[String], usize> {
    let mut out = BTreeMap::new();
    for w in tokens.windows(n) {
        *out.entry(w).or_default() += 1;
    }
    out
}

/// Corpus BLEU on a 0-1 scale with clipped n-gram precision for n = 1..4,
/// closest-reference brevity penalty, and add-one smoothing of orders
/// n >= 2 whose precision would otherwise be zero.
pub fn bleu<T: Tokenizer + ?Sized>(outputs: &[String], references: &[Vec<String>], tokenizer: &T) -> Result<f64> {
    super::check_len("outputs/references", outputs.len(), references.len())?;
    if outputs.is_empty() {
        return Err(Error::InvalidInput("BLEU of an empty corpus".into()));
    }
    let mut matched = [0usize; MAX_N];
    let mut total = [0usize; MAX_N];
    let (mut out_len, mut ref_len) = (0usize, 0usize);
    for (i, (out, refs)) in outputs.iter().zip(references).enumerate() {
        if refs.is_empty() {
            return Err(Error::InvalidInput(format!("instance {i} has no reference")));
        }
        let hyp = tokenizer.tokenize(out);
        let refs: Vec<Vec<String>> = refs.iter().map(|r| tokenizer.tokenize(r)).collect();
        out_len += hyp.len();
        ref_len += refs
            .iter()
            .map(|r| r.len())
            .min_by_key(|&l| (l.abs_diff(hyp.len()), l))
            .unwrap_or(0);
        for n in 1..=MAX_N {
            let mut max_ref: BTreeMap<&[String], usize> = BTreeMap::new();
            for r in &refs {
                for (g, c) in counts(r, n) {
                    let e = max_ref.entry(g).or_default();
                    *e = (*e).max(c);
                }
            }
            for (g, c) in counts(&hyp, n) {
                matched[n - 1] += c.min(max_ref.get(g).copied().unwrap_or(0));
                total[n - 1] += c;
            }
        }
    }
    if out_len == 0 {
        return Ok(0.0);
    }
    let mut log_sum = 0.0;
    for n in 0..MAX_N {
        let (m, t) = (matched[n] as f64, total[n] as f64);
        let p = if m > 0.0 {
            m / t
        } else if n == 0 {
            return Ok(0.0);
        } else {
            (m + 1.0) / (t + 1.0)
        };
        log_sum += p.ln();
    }
    let bp = if out_len > ref_len {
        1.0
    } else {
        (1.0 - ref_len as f64 / out_len as f64).exp()
    };
    Ok(bp * (log_sum / MAX_N as f64).exp())
}
