//! Class-conditionally independent Bayes over equal-frequency bins.
//!
//! With the class as the only parent of every feature, a K2-learned Bayes
//! network collapses to this model. Counts are smoothed by adding `alpha`
//! to every cell, priors included.

use serde::{Deserialize, Serialize};

use super::spec::BayesParams;
use crate::text_norm::Label;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bayes {
    /// Ascending cut points per feature; bin = number of cuts below the value.
    cuts: Vec<Vec<f64>>,
    /// log P(bin | class), indexed [feature][class][bin].
    log_likelihood: Vec<[Vec<f64>; 2]>,
    log_prior: [f64; 2],
}

impl Bayes {
    pub fn fit(params: BayesParams, rows: &[Vec<f64>], labels: &[Label]) -> Bayes {
        let width = rows.first().map_or(0, Vec::len);
        let alpha = params.alpha;
        let mut class_n = [0usize; 2];
        for l in labels {
            class_n[l.index()] += 1;
        }
        let n = labels.len() as f64;
        let log_prior = [0, 1].map(|c| ((class_n[c] as f64 + alpha) / (n + 2.0 * alpha)).ln());

        let mut cuts = Vec::with_capacity(width);
        let mut log_likelihood = Vec::with_capacity(width);
        for j in 0..width {
            let mut column: Vec<f64> = rows.iter().map(|r| r[j]).collect();
            column.sort_by(f64::total_cmp);
            let c = equal_frequency_cuts(&column, params.bins);
            let n_bins = c.len() + 1;
            let mut counts = [vec![0usize; n_bins], vec![0usize; n_bins]];
            for (r, l) in rows.iter().zip(labels) {
                counts[l.index()][bin_of(&c, r[j])] += 1;
            }
            let probs = [0, 1].map(|k| {
                let denom = class_n[k] as f64 + alpha * n_bins as f64;
                counts[k]
                    .iter()
                    .map(|&cnt| ((cnt as f64 + alpha) / denom).ln())
                    .collect::<Vec<f64>>()
            });
            cuts.push(c);
            log_likelihood.push(probs);
        }
        Bayes {
            cuts,
            log_likelihood,
            log_prior,
        }
    }

    /// Posterior class probabilities.
    pub fn scores(&self, x: &[f64]) -> [f64; 2] {
        let mut log_post = self.log_prior;
        for (j, &v) in x.iter().enumerate() {
            let b = bin_of(&self.cuts[j], v);
            for (c, lp) in log_post.iter_mut().enumerate() {
                *lp += self.log_likelihood[j][c][b];
            }
        }
        let m = log_post[0].max(log_post[1]);
        let e = log_post.map(|l| (l - m).exp());
        let z = e[0] + e[1];
        e.map(|v| v / z)
    }

    /// P(bin | class) for every feature, class and bin.
    pub fn bin_probabilities(&self) -> impl Iterator<Item = f64> + '_ {
        self.log_likelihood
            .iter()
            .flat_map(|per_class| per_class.iter().flatten())
            .map(|l| l.exp())
    }

    pub fn n_bins(&self, feature: usize) -> usize {
        self.cuts[feature].len() + 1
    }
}

/// Cut points splitting sorted values into `bins` groups of roughly equal
/// size. A boundary that falls inside a run of equal values moves to the end
/// of that run; duplicate cuts collapse.
pub(crate) fn equal_frequency_cuts(sorted: &[f64], bins: usize) -> Vec<f64> {
    let n = sorted.len();
    let mut cuts: Vec<f64> = Vec::new();
    if n < 2 {
        return cuts;
    }
    for b in 1..bins {
        let mut j = ((b * n) as f64 / bins as f64).round() as usize;
        j = j.clamp(1, n - 1);
        while j < n && sorted[j - 1] >= sorted[j] {
            j += 1;
        }
        if j >= n {
            continue;
        }
        let cut = (sorted[j - 1] + sorted[j]) / 2.0;
        if cuts.last().is_none_or(|&last| cut > last) {
            cuts.push(cut);
        }
    }
    cuts
}

fn bin_of(cuts: &[f64], v: f64) -> usize {
    cuts.partition_point(|&c| c < v)
}
