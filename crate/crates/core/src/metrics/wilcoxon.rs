use serde::Serialize;
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Largest number of nonzero differences for which the exact null
/// distribution is used.
pub const EXACT_MAX_N: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WilcoxonMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilcoxonResult {
    /// min(W+, W-).
    pub statistic: f64,
    pub p_value: f64,
    /// Pairs left after dropping zero differences.
    pub n: usize,
    pub method: WilcoxonMethod,
}

/// Doubled rank and sign of each nonzero difference.
type SignedRanks = Vec<(u64, bool)>;

/// Signed ranks of the nonzero differences, doubled so that tied average
/// ranks stay integral. Also returns the tie group sizes.
fn doubled_ranks(xs: &[f64], ys: &[f64]) -> Result<(SignedRanks, Vec<usize>)> {
    super::check_len("xs/ys", xs.len(), ys.len())?;
    if xs.is_empty() {
        return Err(Error::InvalidInput("Wilcoxon test on empty samples".into()));
    }
    let mut d: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    if d.iter().any(|v| v.is_nan()) {
        return Err(Error::InvalidInput("NaN in Wilcoxon samples".into()));
    }
    if d.is_empty() {
        return Err(Error::NoNonzeroDifferences);
    }
    d.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let mut out = Vec::with_capacity(d.len());
    let mut ties = Vec::new();
    let mut i = 0;
    while i < d.len() {
        let mut j = i;
        while j + 1 < d.len() && d[j + 1].abs() == d[i].abs() {
            j += 1;
        }
        // Average of ranks i+1..=j+1, doubled.
        let r2 = (i + 1 + j + 1) as u64;
        for v in &d[i..=j] {
            out.push((r2, *v > 0.0));
        }
        ties.push(j - i + 1);
        i = j + 1;
    }
    Ok((out, ties))
}

fn statistic(ranks: &[(u64, bool)]) -> (u64, u64) {
    let plus: u64 = ranks.iter().filter(|r| r.1).map(|r| r.0).sum();
    let total: u64 = ranks.iter().map(|r| r.0).sum();
    (plus.min(total - plus), total)
}

/// Exact two-sided p-value from the null distribution of the signed-rank
/// sum, counted by dynamic programming over the (doubled) ranks.
pub fn wilcoxon_exact(xs: &[f64], ys: &[f64]) -> Result<WilcoxonResult> {
    let (ranks, _) = doubled_ranks(xs, ys)?;
    let (w2, total) = statistic(&ranks);
    let mut ways = vec![0u64; total as usize + 1];
    ways[0] = 1;
    let mut reach = 0usize;
    for &(r, _) in &ranks {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if ways[s] > 0 {
                ways[s + r] += ways[s];
            }
        }
        reach += r;
    }
    let below: u64 = ways[..=w2 as usize].iter().sum();
    let p = (2.0 * below as f64 / 2f64.powi(ranks.len() as i32)).min(1.0);
    Ok(WilcoxonResult {
        statistic: w2 as f64 / 2.0,
        p_value: p,
        n: ranks.len(),
        method: WilcoxonMethod::Exact,
    })
}

/// Normal approximation with tie and continuity corrections.
pub fn wilcoxon_normal(xs: &[f64], ys: &[f64]) -> Result<WilcoxonResult> {
    let (ranks, ties) = doubled_ranks(xs, ys)?;
    let (w2, _) = statistic(&ranks);
    let n = ranks.len() as f64;
    let w = w2 as f64 / 2.0;
    let mean = n * (n + 1.0) / 4.0;
    let tie_term: f64 = ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / 48.0;
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term;
    let p = if var <= 0.0 {
        1.0
    } else {
        let z = ((mean - w).abs() - 0.5).max(0.0) / var.sqrt();
        erfc(z / std::f64::consts::SQRT_2).min(1.0)
    };
    Ok(WilcoxonResult {
        statistic: w,
        p_value: p,
        n: ranks.len(),
        method: WilcoxonMethod::Normal,
    })
}

/// Exact when at most [`EXACT_MAX_N`] nonzero differences remain,
/// otherwise the normal approximation.
pub fn wilcoxon_signed_rank(xs: &[f64], ys: &[f64]) -> Result<WilcoxonResult> {
    let (ranks, _) = doubled_ranks(xs, ys)?;
    if ranks.len() <= EXACT_MAX_N {
        wilcoxon_exact(xs, ys)
    } else {
        wilcoxon_normal(xs, ys)
    }
}
