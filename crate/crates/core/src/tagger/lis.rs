//! Longest increasing subsequence, used to find which sentences (or
//! clauses) moved relative to source order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Positions of a longest strictly increasing subsequence of `seq`.
///
/// Among all maximum-length subsequences, returns the lexicographically
/// smallest sequence of positions.
pub fn longest_increasing_subsequence<T: Ord>(seq: &[T]) -> Vec<usize> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    // from[i]: length of the longest increasing run that starts at i.
    // Patience piles over the reversed sequence, ordered by descending value.
    let mut from = vec![0usize; n];
    let mut piles: Vec<&T> = Vec::new();
    for i in (0..n).rev() {
        let x = &seq[i];
        let pile = piles.partition_point(|top| *top > x);
        if pile == piles.len() {
            piles.push(x);
        } else {
            piles[pile] = x;
        }
        from[i] = pile + 1;
    }
    let best = piles.len();

    let mut out = Vec::with_capacity(best);
    let mut need = best;
    let mut last: Option<&T> = None;
    for (i, x) in seq.iter().enumerate() {
        if need == 0 {
            break;
        }
        if from[i] == need && last.is_none_or(|l| x > l) {
            out.push(i);
            last = Some(x);
            need -= 1;
        }
    }
    out
}

/// Given the source positions (1-based) of sentences listed in target
/// order, returns the 0-based list positions whose sentences were moved,
/// i.e. the complement of a longest increasing subsequence.
pub fn detect_sentence_reorder(permutation: &[usize]) -> Result<BTreeSet<usize>> {
    let n = permutation.len();
    let mut seen = vec![false; n];
    for &p in permutation {
        if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
            return Err(Error::InvalidInput(format!(
                "{permutation:?} is not a permutation of 1..={n}"
            )));
        }
    }
    let keep: BTreeSet<usize> = longest_increasing_subsequence(permutation).into_iter().collect();
    Ok((0..n).filter(|i| !keep.contains(i)).collect())
}
