use serde::{Deserialize, Serialize};

use super::spec::KnnParams;
use crate::text_norm::Label;

/// Instance-based learner: linear scan, Euclidean distance over normalized
/// features, unweighted vote among the k nearest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Knn {
    k: usize,
    rows: Vec<Vec<f64>>,
    labels: Vec<Label>,
}

impl Knn {
    pub fn fit(params: KnnParams, rows: Vec<Vec<f64>>, labels: Vec<Label>) -> Knn {
        Knn {
            k: params.k.min(rows.len()),
            rows,
            labels,
        }
    }

    /// Vote fractions per class.
    pub fn scores(&self, x: &[f64]) -> [f64; 2] {
        let mut votes = [0.0; 2];
        for i in nearest(&self.rows, x, self.k, |_| true) {
            votes[self.labels[i].index()] += 1.0;
        }
        votes.map(|v| v / self.k as f64)
    }
}

pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Indices of the `k` rows nearest to `x` among those accepted by `keep`.
/// Distance ties go to the lower index.
pub(crate) fn nearest(
    rows: &[Vec<f64>],
    x: &[f64],
    k: usize,
    keep: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut best: Vec<(f64, usize)> = Vec::with_capacity(k + 1);
    for (i, r) in rows.iter().enumerate() {
        if !keep(i) {
            continue;
        }
        let d = squared_distance(r, x);
        if best.len() == k && d >= best[k - 1].0 {
            continue;
        }
        // Insert after all entries with distance <= d to keep index order on ties.
        let pos = best.partition_point(|(bd, _)| *bd <= d);
        best.insert(pos, (d, i));
        best.truncate(k);
    }
    best.into_iter().map(|(_, i)| i).collect()
}
