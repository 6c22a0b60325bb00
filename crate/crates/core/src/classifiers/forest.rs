use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spec::ForestParams;
use super::tree::{grow_tree, GrowParams, Tree};
use crate::text_norm::Label;

/// Bagged, unpruned information-gain trees with random feature subsets per
/// split. Prediction is a majority vote.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForest {
    trees: Vec<Tree>,
}

/// Per-tree seed derived from the model seed and tree index (SplitMix64),
/// so results do not depend on thread scheduling.
pub(crate) fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn default_feature_count(width: usize) -> usize {
    if width == 0 {
        return 0;
    }
    (width as f64).log2().floor() as usize + 1
}

impl RandomForest {
    pub fn fit(
        params: ForestParams,
        rows: &[Vec<f64>],
        labels: &[Label],
        seed: u64,
        tiebreak: Label,
    ) -> RandomForest {
        let width = rows.first().map_or(0, Vec::len);
        let grow = GrowParams {
            min_leaf: params.min_leaf,
            max_depth: params.max_depth,
            features_per_split: Some(
                params
                    .features
                    .unwrap_or_else(|| default_feature_count(width)),
            ),
        };
        let n = rows.len();
        let trees = (0..params.trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t as u64));
                let idx: Vec<usize> = if params.bootstrap {
                    (0..n).map(|_| rng.random_range(0..n)).collect()
                } else {
                    (0..n).collect()
                };
                grow_tree(rows, labels, idx, grow, tiebreak, &mut rng)
            })
            .collect();
        RandomForest { trees }
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    /// Vote fractions per class.
    pub fn scores(&self, x: &[f64]) -> [f64; 2] {
        let mut votes = [0.0; 2];
        for t in &self.trees {
            votes[t.predict(x).index()] += 1.0;
        }
        votes.map(|v| v / self.trees.len() as f64)
    }
}
