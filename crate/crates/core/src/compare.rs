//! Dataset comparison by operation usage: frequency profiles, mean
//! Jensen-Shannon distance, co-occurrence correlation and operation-count
//! histograms.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{OperationProfile, OperationSet, OperationToken, TaggedInstance};

/// Profile of a tagged subset.
pub fn build_profile(tagged: &[TaggedInstance], name: &str) -> Result<OperationProfile> {
    let sets: Vec<OperationSet> = tagged.iter().map(|t| t.ops).collect();
    profile_from_sets(&sets, name)
}

/// Frequencies and Pearson correlations of the binary occurrence vectors.
/// Ops that never vary get zero correlations, a unit diagonal, and a place
/// in `degenerate_ops`.
pub fn profile_from_sets(sets: &[OperationSet], name: &str) -> Result<OperationProfile> {
    if sets.is_empty() {
        return Err(Error::InvalidInput(format!("subset `{name}` has no instances")));
    }
    let n = sets.len();
    let mut single = [0u64; 9];
    let mut joint = [[0u64; 9]; 9];
    for s in sets {
        let ops: Vec<usize> = s.iter().map(OperationToken::index).collect();
        for &i in &ops {
            single[i] += 1;
            for &j in &ops {
                joint[i][j] += 1;
            }
        }
    }
    let nf = n as f64;
    let freqs = single.map(|c| c as f64 / nf);
    let degenerate_ops: BTreeSet<OperationToken> = OperationToken::ALL
        .into_iter()
        .filter(|op| matches!(single[op.index()], 0) || single[op.index()] as usize == n)
        .collect();
    let mut corr = [[0.0; 9]; 9];
    for i in 0..9 {
        for j in 0..9 {
            let di = degenerate_ops.contains(&OperationToken::ALL[i]);
            let dj = degenerate_ops.contains(&OperationToken::ALL[j]);
            corr[i][j] = if i == j {
                1.0
            } else if di || dj {
                0.0
            } else {
                let (a, b) = (single[i] as f64, single[j] as f64);
                let cov = nf * joint[i][j] as f64 - a * b;
                let var = (a * (nf - a)) * (b * (nf - b));
                (cov / var.sqrt()).clamp(-1.0, 1.0)
            };
        }
    }
    Ok(OperationProfile {
        subset_name: name.to_string(),
        n_instances: n,
        freqs,
        corr,
        degenerate_ops,
    })
}

/// Jensen-Shannon distance (natural log) between Bernoulli(p) and
/// Bernoulli(q).
pub fn jsd_bernoulli(p: f64, q: f64) -> Result<f64> {
    for v in [p, q] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidInput(format!("probability {v} outside [0, 1]")));
        }
    }
    let kl = |a: f64, m: f64| if a > 0.0 { a * (a / m).ln() } else { 0.0 };
    let (m1, m0) = ((p + q) / 2.0, (2.0 - p - q) / 2.0);
    let div = 0.5 * (kl(p, m1) + kl(1.0 - p, m0)) + 0.5 * (kl(q, m1) + kl(1.0 - q, m0));
    Ok(div.max(0.0).sqrt())
}

/// Mean over the nine operations of the per-operation JSD.
pub fn mean_jsd(a: &OperationProfile, b: &OperationProfile) -> f64 {
    let total: f64 = (0..9)
        .map(|i| jsd_bernoulli(a.freqs[i], b.freqs[i]).expect("profile frequencies lie in [0, 1]"))
        .sum();
    total / 9.0
}

/// Frobenius norm of the difference of the correlation matrices.
pub fn l2_matrix_distance(a: &OperationProfile, b: &OperationProfile) -> f64 {
    let mut sum = 0.0;
    for i in 0..9 {
        for j in 0..9 {
            let d = a.corr[i][j] - b.corr[i][j];
            sum += d * d;
        }
    }
    sum.sqrt()
}

/// Number of instances per operation count (0..=9); empty bins omitted.
pub fn ops_histogram(sets: impl IntoIterator<Item = OperationSet>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for s in sets {
        *out.entry(s.len()).or_default() += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMetric {
    MeanJsd,
    L2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    /// Header row of labels, then one row per label.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| Error::InvalidInput(format!("writing CSV: {e}"));
        let mut header = vec![String::new()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header).map_err(csv_err)?;
        for (label, row) in self.labels.iter().zip(&self.values) {
            let mut rec = vec![label.clone()];
            rec.extend(row.iter().map(|v| format!("{v:.6}")));
            w.write_record(&rec).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn pairwise_distances(profiles: &[OperationProfile], metric: DistanceMetric) -> Result<DistanceMatrix> {
    if profiles.len() < 2 {
        return Err(Error::InvalidInput("at least two profiles are needed".into()));
    }
    let mut seen = BTreeSet::new();
    for p in profiles {
        if !seen.insert(p.subset_name.as_str()) {
            return Err(Error::DuplicateId(p.subset_name.clone()));
        }
    }
    let n = profiles.len();
    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = match metric {
                DistanceMetric::MeanJsd => mean_jsd(&profiles[i], &profiles[j]),
                DistanceMetric::L2 => l2_matrix_distance(&profiles[i], &profiles[j]),
            };
            values[i][j] = d;
            values[j][i] = d;
        }
    }
    Ok(DistanceMatrix {
        labels: profiles.iter().map(|p| p.subset_name.clone()).collect(),
        values,
    })
}
