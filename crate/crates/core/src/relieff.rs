//! ReliefF feature ranking.
//!
//! For each sampled instance R, with k nearest hits H_j (same class) and, per
//! other class C, k nearest misses M_j(C):
//!
//! ```text
//! W[A] -= sum_j diff(A, R, H_j) / (m k)
//! W[A] += sum_C P(C) / (1 - P(class R)) * sum_j diff(A, R, M_j(C)) / (m k)
//! ```
//!
//! where diff is the absolute difference of min-max scaled values. Neighbors
//! are found by Euclidean distance on the scaled features, with distance
//! ties going to the lower instance index.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifiers::{nearest, MinMax};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::text_norm::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReliefParams {
    pub k: usize,
    /// Instances sampled without replacement; `None` uses all of them.
    pub m: Option<usize>,
    pub seed: u64,
}

impl ReliefParams {
    pub fn new(seed: u64) -> Self {
        ReliefParams {
            k: 10,
            m: None,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub rank: usize,
    pub score: f64,
    pub feature: String,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureRanking {
    pub entries: Vec<RankEntry>,
    pub k: usize,
    pub m: usize,
    pub seed: u64,
    pub n_instances: usize,
}

impl FeatureRanking {
    pub fn score_of(&self, feature: &str) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.feature == feature)
            .map(|e| e.score)
    }

    pub fn rank_of(&self, feature: &str) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.feature == feature)
            .map(|e| e.rank)
    }

    /// The first `n` entries (all of them when `n` exceeds the feature count).
    pub fn top_n(&self, n: usize) -> &[RankEntry] {
        &self.entries[..n.min(self.entries.len())]
    }

    /// `rank,score,feature` CSV for the first `n` entries, preceded by a
    /// `#` line recording the parameters.
    pub fn to_csv(&self, n: usize) -> String {
        let mut out = format!(
            "# relieff k={} m={} seed={} instances={} scope=whole_dataset\nrank,score,feature\n",
            self.k, self.m, self.seed, self.n_instances
        );
        for e in self.top_n(n) {
            out.push_str(&format!("{},{:.7},{}\n", e.rank, e.score, e.feature));
        }
        out
    }
}

/// Raw ReliefF weights in schema order.
pub fn relieff_scores(data: &Dataset, params: ReliefParams) -> Result<Vec<f64>> {
    let n = data.len();
    let k = params.k;
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let counts = data.class_counts();
    for class in Label::ALL {
        let c = counts[class.index()];
        if c > 0 && c < k + 1 {
            return Err(Error::param(format!(
                "class {class} has {c} instance(s); ReliefF with k={k} needs at least {}; use k <= {}",
                k + 1,
                c.saturating_sub(1).max(1)
            )));
        }
    }
    if counts.iter().filter(|&&c| c > 0).count() < 2 {
        return Err(Error::param("ReliefF needs both classes present"));
    }
    let m = params.m.unwrap_or(n);
    if m == 0 || m > n {
        return Err(Error::param(format!("m must be in 1..={n}, got {m}")));
    }

    let rows = MinMax::fit(data.rows()).apply_all(data.rows());
    let labels = data.labels();
    let priors = counts.map(|c| c as f64 / n as f64);
    let width = data.n_features();

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(params.seed));
    order.truncate(m);

    let scale = 1.0 / (m as f64 * k as f64);
    let contributions: Vec<Vec<f64>> = order
        .par_iter()
        .map(|&r| {
            let x = &rows[r];
            let own = labels[r];
            let mut delta = vec![0.0; width];
            for h in nearest(&rows, x, k, |i| i != r && labels[i] == own) {
                for (d, (a, b)) in delta.iter_mut().zip(x.iter().zip(&rows[h])) {
                    *d -= (a - b).abs() * scale;
                }
            }
            for other in Label::ALL.into_iter().filter(|&c| c != own) {
                if counts[other.index()] == 0 {
                    continue;
                }
                let weight = priors[other.index()] / (1.0 - priors[own.index()]);
                for mi in nearest(&rows, x, k, |i| labels[i] == other) {
                    for (d, (a, b)) in delta.iter_mut().zip(x.iter().zip(&rows[mi])) {
                        *d += weight * (a - b).abs() * scale;
                    }
                }
            }
            delta
        })
        .collect();

    // Fixed summation order keeps results independent of scheduling.
    let mut w = vec![0.0; width];
    for delta in &contributions {
        for (wi, d) in w.iter_mut().zip(delta) {
            *wi += d;
        }
    }
    Ok(w)
}

/// Ranks every feature by ReliefF weight, highest first. Equal weights keep
/// schema order.
pub fn rank(data: &Dataset, params: ReliefParams) -> Result<FeatureRanking> {
    let w = relieff_scores(data, params)?;
    let mut idx: Vec<usize> = (0..w.len()).collect();
    idx.sort_by(|&a, &b| w[b].total_cmp(&w[a]).then(a.cmp(&b)));
    let defs = data.schema().defs();
    Ok(FeatureRanking {
        entries: idx
            .into_iter()
            .enumerate()
            .map(|(pos, j)| RankEntry {
                rank: pos + 1,
                score: w[j],
                feature: defs[j].name.clone(),
                description: defs[j].description.clone(),
            })
            .collect(),
        k: params.k,
        m: params.m.unwrap_or(data.len()),
        seed: params.seed,
        n_instances: data.len(),
    })
}
