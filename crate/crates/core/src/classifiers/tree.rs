//! Binary decision trees grown by information gain, plus reduced-error
//! pruning with back-fitting.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::argmax;
use crate::text_norm::Label;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Split {
    pub feature: usize,
    /// Values `<= threshold` go left.
    pub threshold: f64,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    /// Class counts of the instances that reached this node.
    pub counts: [f64; 2],
    pub split: Option<Split>,
}

/// Flat tree; node 0 is the root and children always follow their parent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    nodes: Vec<TreeNode>,
    /// Class preferred when a leaf's counts tie.
    tiebreak: Label,
}

impl Tree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.split.is_none()).count()
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    fn leaf_for(&self, x: &[f64]) -> usize {
        let mut i = 0;
        while let Some(s) = self.nodes[i].split {
            i = if x[s.feature] <= s.threshold {
                s.left
            } else {
                s.right
            };
        }
        i
    }

    /// Class distribution at the leaf `x` lands in.
    pub fn distribution(&self, x: &[f64]) -> [f64; 2] {
        let c = self.nodes[self.leaf_for(x)].counts;
        let total = c[0] + c[1];
        if total > 0.0 {
            c.map(|v| v / total)
        } else {
            let mut d = [0.0; 2];
            d[self.tiebreak.index()] = 1.0;
            d
        }
    }

    pub fn predict(&self, x: &[f64]) -> Label {
        argmax(&self.nodes[self.leaf_for(x)].counts, self.tiebreak)
    }

    // Drops unreachable nodes left behind by pruning, renumbering in preorder.
    fn compact(&mut self) {
        let mut out: Vec<TreeNode> = Vec::with_capacity(self.nodes.len());
        fn visit(old: &[TreeNode], i: usize, out: &mut Vec<TreeNode>) -> usize {
            let idx = out.len();
            out.push(TreeNode {
                counts: old[i].counts,
                split: None,
            });
            if let Some(s) = old[i].split {
                let left = visit(old, s.left, out);
                let right = visit(old, s.right, out);
                out[idx].split = Some(Split { left, right, ..s });
            }
            idx
        }
        visit(&self.nodes, 0, &mut out);
        self.nodes = out;
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GrowParams {
    /// Minimum instances on each side of a split.
    pub min_leaf: usize,
    pub max_depth: Option<usize>,
    /// Features sampled per split; `None` considers all of them.
    pub features_per_split: Option<usize>,
}

fn entropy(c: [f64; 2]) -> f64 {
    let n = c[0] + c[1];
    if n <= 0.0 {
        return 0.0;
    }
    c.iter()
        .filter(|&&v| v > 0.0)
        .map(|&v| {
            let p = v / n;
            -p * p.log2()
        })
        .sum()
}

struct Grower<'a, R: Rng> {
    rows: &'a [Vec<f64>],
    labels: &'a [Label],
    params: GrowParams,
    rng: &'a mut R,
    nodes: Vec<TreeNode>,
}

impl<R: Rng> Grower<'_, R> {
    fn counts(&self, idx: &[usize]) -> [f64; 2] {
        let mut c = [0.0; 2];
        for &i in idx {
            c[self.labels[i].index()] += 1.0;
        }
        c
    }

    fn grow(&mut self, idx: Vec<usize>, depth: usize) -> usize {
        let counts = self.counts(&idx);
        let node = self.nodes.len();
        self.nodes.push(TreeNode {
            counts,
            split: None,
        });

        let pure = counts[0] == 0.0 || counts[1] == 0.0;
        let depth_capped = self.params.max_depth.is_some_and(|d| depth >= d);
        if pure || depth_capped || idx.len() < 2 * self.params.min_leaf {
            return node;
        }
        let Some((feature, threshold)) = self.best_split(&idx, counts) else {
            return node;
        };
        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = idx
            .iter()
            .partition(|&&i| self.rows[i][feature] <= threshold);
        if left_idx.is_empty() || right_idx.is_empty() {
            return node;
        }
        let left = self.grow(left_idx, depth + 1);
        let right = self.grow(right_idx, depth + 1);
        self.nodes[node].split = Some(Split {
            feature,
            threshold,
            left,
            right,
        });
        node
    }

    fn candidate_features(&mut self) -> Vec<usize> {
        let width = self.rows[0].len();
        let mut all: Vec<usize> = (0..width).collect();
        match self.params.features_per_split {
            Some(m) if m < width => {
                let (chosen, _) = all.partial_shuffle(self.rng, m);
                let mut chosen = chosen.to_vec();
                chosen.sort_unstable();
                chosen
            }
            _ => all,
        }
    }

    // Highest information gain over midpoints between distinct values;
    // ties keep the lower feature index, then the lower threshold.
    fn best_split(&mut self, idx: &[usize], parent: [f64; 2]) -> Option<(usize, f64)> {
        let parent_h = entropy(parent);
        let n = idx.len() as f64;
        let min_leaf = self.params.min_leaf;
        let mut best: Option<(f64, usize, f64)> = None;
        let mut order: Vec<usize> = idx.to_vec();

        for f in self.candidate_features() {
            order.sort_by(|&a, &b| self.rows[a][f].total_cmp(&self.rows[b][f]).then(a.cmp(&b)));
            let mut left = [0.0; 2];
            for pos in 0..order.len() - 1 {
                let i = order[pos];
                left[self.labels[i].index()] += 1.0;
                let here = self.rows[i][f];
                let next = self.rows[order[pos + 1]][f];
                if here >= next {
                    continue;
                }
                let n_left = pos + 1;
                if n_left < min_leaf || order.len() - n_left < min_leaf {
                    continue;
                }
                let right = [parent[0] - left[0], parent[1] - left[1]];
                let nl = n_left as f64;
                let gain = parent_h - (nl / n) * entropy(left) - ((n - nl) / n) * entropy(right);
                if best.is_none_or(|(g, _, _)| gain > g + 1e-12) {
                    // Adjacent floats can have a midpoint that rounds up to `next`.
                    let mid = here + (next - here) / 2.0;
                    best = Some((gain, f, if mid < next { mid } else { here }));
                }
            }
        }
        best.filter(|(g, _, _)| *g > 1e-12).map(|(_, f, t)| (f, t))
    }
}

/// Grows an unpruned tree on `idx` (duplicates allowed, as in bootstraps).
pub fn grow_tree<R: Rng>(
    rows: &[Vec<f64>],
    labels: &[Label],
    idx: Vec<usize>,
    params: GrowParams,
    tiebreak: Label,
    rng: &mut R,
) -> Tree {
    let mut g = Grower {
        rows,
        labels,
        params,
        rng,
        nodes: Vec::new(),
    };
    g.grow(idx, 0);
    Tree {
        nodes: g.nodes,
        tiebreak,
    }
}

/// Result of reduced-error pruning, with the grown tree kept for inspection.
#[derive(Debug, Clone)]
pub struct RepTreeFit {
    pub pruned: Tree,
    pub unpruned: Tree,
    pub grow_indices: Vec<usize>,
    pub prune_indices: Vec<usize>,
}

/// Splits off a stratified 1/`folds` pruning set, grows on the rest, prunes
/// bottom-up wherever a leaf does no worse than its subtree on the pruning
/// set, then back-fits leaf counts with the pruning instances.
pub fn fit_rep_tree<R: Rng>(
    rows: &[Vec<f64>],
    labels: &[Label],
    min_leaf: usize,
    max_depth: Option<usize>,
    prune_folds: usize,
    tiebreak: Label,
    rng: &mut R,
) -> RepTreeFit {
    let mut grow_idx = Vec::new();
    let mut prune_idx = Vec::new();
    for class in Label::ALL {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(rng);
        let n_prune = members.len() / prune_folds;
        prune_idx.extend_from_slice(&members[..n_prune]);
        grow_idx.extend_from_slice(&members[n_prune..]);
    }
    grow_idx.sort_unstable();
    prune_idx.sort_unstable();

    let params = GrowParams {
        min_leaf,
        max_depth,
        features_per_split: None,
    };
    let unpruned = grow_tree(rows, labels, grow_idx.clone(), params, tiebreak, rng);
    let mut pruned = unpruned.clone();

    if !prune_idx.is_empty() {
        // Pruning-set class counts per node, along every instance's path.
        let mut reach = vec![[0.0f64; 2]; pruned.nodes.len()];
        for &i in &prune_idx {
            let c = labels[i].index();
            let mut n = 0;
            loop {
                reach[n][c] += 1.0;
                match pruned.nodes[n].split {
                    Some(s) => {
                        n = if rows[i][s.feature] <= s.threshold {
                            s.left
                        } else {
                            s.right
                        }
                    }
                    None => break,
                }
            }
        }

        // Children have higher indices than parents, so a reverse sweep is
        // a post-order traversal.
        let mut errors = vec![0.0f64; pruned.nodes.len()];
        for n in (0..pruned.nodes.len()).rev() {
            let own = argmax(&pruned.nodes[n].counts, tiebreak).index();
            let leaf_err = reach[n][0] + reach[n][1] - reach[n][own];
            errors[n] = match pruned.nodes[n].split {
                None => leaf_err,
                Some(s) => {
                    let sub = errors[s.left] + errors[s.right];
                    if leaf_err <= sub {
                        pruned.nodes[n].split = None;
                        leaf_err
                    } else {
                        sub
                    }
                }
            };
        }

        for (node, r) in pruned.nodes.iter_mut().zip(&reach) {
            node.counts[0] += r[0];
            node.counts[1] += r[1];
        }
        pruned.compact();
    }

    RepTreeFit {
        pruned,
        unpruned,
        grow_indices: grow_idx,
        prune_indices: prune_idx,
    }
}
