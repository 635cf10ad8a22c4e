//! Slow, literal reference implementations used to check the library.

/// Every n-gram of `tokens`, with repeats.
fn grams(tokens: &[&str], n: usize) -> Vec<String> {
    if tokens.len() < n {
        return Vec::new();
    }
    (0..=tokens.len() - n).map(|i| tokens[i..i + n].join(" ")).collect()
}

fn count(list: &[String], g: &str) -> f64 {
    list.iter().filter(|x| x.as_str() == g).count() as f64
}

fn distinct(lists: &[&[String]]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for l in lists {
        for g in l.iter() {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
    }
    out
}

fn safe_div(num: f64, den: usize, other_empty: bool) -> f64 {
    if den == 0 {
        if other_empty {
            1.0
        } else {
            0.0
        }
    } else {
        num / den as f64
    }
}

fn f1(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Sentence SARI on whitespace tokens: `(sari, f1_add, f1_keep, p_delete)`.
pub fn sari_oracle(source: &str, output: &str, refs: &[&str]) -> (f64, f64, f64, f64) {
    let s_tok: Vec<&str> = source.split_whitespace().collect();
    let c_tok: Vec<&str> = output.split_whitespace().collect();
    let r_tok: Vec<Vec<&str>> = refs.iter().map(|r| r.split_whitespace().collect()).collect();
    let k = refs.len() as f64;
    let (mut add, mut keep, mut del) = (0.0, 0.0, 0.0);
    for n in 1..=4 {
        let s = grams(&s_tok, n);
        let c = grams(&c_tok, n);
        let r: Vec<String> = r_tok.iter().flat_map(|t| grams(t, n)).collect();
        let all = distinct(&[&s, &c, &r]);

        // Source and output counts are replicated once per reference.
        let (mut keep_n, mut keep_all_n, mut del_n, mut del_all_n) = (0, 0, 0, 0);
        let (mut k1, mut k2, mut d1) = (0.0, 0.0, 0.0);
        for g in &all {
            let (sc, cc, rc) = (count(&s, g) * k, count(&c, g) * k, count(&r, g));
            let kept = sc.min(cc);
            let kept_good = kept.min(rc);
            let kept_all = sc.min(rc);
            if kept > 0.0 {
                keep_n += 1;
                k1 += kept_good / kept;
            }
            if kept_all > 0.0 {
                keep_all_n += 1;
                if kept_good > 0.0 {
                    k2 += kept_good / kept_all;
                }
            }
            let deleted = (sc - cc).max(0.0);
            let deleted_good = (deleted - rc).max(0.0);
            if deleted > 0.0 {
                del_n += 1;
                d1 += deleted_good / deleted;
            }
            if sc - rc > 0.0 {
                del_all_n += 1;
            }
        }
        let keep_p = safe_div(k1, keep_n, keep_all_n == 0);
        let keep_r = safe_div(k2, keep_all_n, keep_n == 0);
        keep += f1(keep_p, keep_r);
        del += safe_div(d1, del_n, del_all_n == 0);

        let in_s = |g: &String| s.contains(g);
        let added: Vec<&String> = all.iter().filter(|g| c.contains(g) && !in_s(g)).collect();
        let wanted: Vec<&String> = all.iter().filter(|g| r.contains(g) && !in_s(g)).collect();
        let good = added.iter().filter(|g| wanted.contains(g)).count() as f64;
        let add_p = safe_div(good, added.len(), wanted.is_empty());
        let add_r = safe_div(good, wanted.len(), added.is_empty());
        add += f1(add_p, add_r);
    }
    let (add, keep, del) = (add * 25.0, keep * 25.0, del * 25.0);
    ((add + keep + del) / 3.0, add, keep, del)
}

/// Two-sided exact signed-rank p-value by walking all 2^n sign patterns.
/// Ranks are given doubled so ties stay integral.
pub fn wilcoxon_enumerated(diffs: &[f64]) -> (f64, f64) {
    let d: Vec<f64> = diffs.iter().copied().filter(|x| *x != 0.0).collect();
    let n = d.len();
    let mut ranks = vec![0.0; n];
    for i in 0..n {
        let below = d.iter().filter(|x| x.abs() < d[i].abs()).count();
        let equal = d.iter().filter(|x| x.abs() == d[i].abs()).count();
        ranks[i] = below as f64 + (equal as f64 + 1.0) / 2.0;
    }
    let w_plus: f64 = (0..n).filter(|&i| d[i] > 0.0).map(|i| ranks[i]).sum();
    let total: f64 = ranks.iter().sum();
    let w = w_plus.min(total - w_plus);
    let mut at_most = 0u64;
    for mask in 0u64..(1u64 << n) {
        let t: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        if t <= w + 1e-9 {
            at_most += 1;
        }
    }
    let p = (2.0 * at_most as f64 / (1u64 << n) as f64).min(1.0);
    (w, p)
}

/// Length of the longest strictly increasing subsequence, by trying every
/// subset.
pub fn lis_len_brute(seq: &[usize]) -> usize {
    let n = seq.len();
    let mut best = 0;
    'masks: for mask in 0u32..(1u32 << n) {
        let mut last = None;
        for i in (0..n).filter(|&i| mask >> i & 1 == 1) {
            if last.is_some_and(|l| l >= seq[i]) {
                continue 'masks;
            }
            last = Some(seq[i]);
        }
        best = best.max(mask.count_ones() as usize);
    }
    best
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}
