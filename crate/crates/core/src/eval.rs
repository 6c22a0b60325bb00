//! Stratified k-fold cross-validation and the emoji ablation.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifiers::{train, ClassifierSpec};
use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::features::FeatureBlock;
use crate::text_norm::Label;

/// Binary confusion counts, with "positive opinion" as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn new(tp: usize, tn: usize, fp: usize, fn_: usize) -> Self {
        ConfusionMatrix { tp, tn, fp, fn_ }
    }

    pub fn record(&mut self, truth: Label, predicted: Label) {
        match (truth, predicted) {
            (Label::Positive, Label::Positive) => self.tp += 1,
            (Label::Negative, Label::Negative) => self.tn += 1,
            (Label::Negative, Label::Positive) => self.fp += 1,
            (Label::Positive, Label::Negative) => self.fn_ += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }

    pub fn merge(&self, other: &ConfusionMatrix) -> ConfusionMatrix {
        ConfusionMatrix {
            tp: self.tp + other.tp,
            tn: self.tn + other.tn,
            fp: self.fp + other.fp,
            fn_: self.fn_ + other.fn_,
        }
    }
}

/// (TP + TN) / (TP + FP + TN + FN).
pub fn accuracy(cm: &ConfusionMatrix) -> Result<f64> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::EmptyConfusion);
    }
    Ok((cm.tp + cm.tn) as f64 / total as f64)
}

/// Partitions instance indices into `k` folds. Each class is shuffled with
/// the seed and dealt round-robin, continuing from where the previous class
/// stopped, so per-class fold counts differ by at most one and fold sizes
/// do too. Indices inside a fold are ascending.
pub fn stratified_folds(labels: &[Label], k: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::param(format!("k_folds must be at least 2, got {k}")));
    }
    if k > labels.len() {
        return Err(Error::param(format!(
            "k_folds = {k} exceeds the {} instances",
            labels.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for class in Label::ALL {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        for i in members {
            folds[next % k].push(i);
            next += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub algorithm: String,
    pub params: String,
    pub model_seed: u64,
    pub include_emoji: bool,
    pub n_features: usize,
    pub k_folds: usize,
    pub seed: u64,
    pub folds: Vec<ConfusionMatrix>,
    pub pooled: ConfusionMatrix,
    pub pooled_accuracy: f64,
    pub mean_fold_accuracy: f64,
    /// Held-out prediction for every instance, in dataset order.
    pub predictions: Vec<Label>,
}

impl CvReport {
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# algorithm={} params={} model_seed={} include_emoji={} n_features={} k_folds={} seed={}\n",
            self.algorithm,
            self.params,
            self.model_seed,
            self.include_emoji,
            self.n_features,
            self.k_folds,
            self.seed
        );
        out.push_str("fold,tp,tn,fp,fn,n,accuracy\n");
        for (i, f) in self.folds.iter().enumerate() {
            let acc = accuracy(f).unwrap_or(f64::NAN);
            out.push_str(&format!(
                "{},{},{},{},{},{},{:.6}\n",
                i,
                f.tp,
                f.tn,
                f.fp,
                f.fn_,
                f.total(),
                acc
            ));
        }
        let p = &self.pooled;
        out.push_str(&format!(
            "pooled,{},{},{},{},{},{:.6}\n",
            p.tp,
            p.tn,
            p.fp,
            p.fn_,
            p.total(),
            self.pooled_accuracy
        ));
        out.push_str(&format!(
            "mean_of_folds,,,,,,{:.6}\n",
            self.mean_fold_accuracy
        ));
        out
    }
}

/// Runs `spec` over precomputed folds. Each fold trains on the others;
/// normalization and discretization see training folds only.
pub fn cross_validate_folds(
    data: &Dataset,
    spec: &ClassifierSpec,
    folds: &[Vec<usize>],
    seed: u64,
) -> Result<CvReport> {
    let n = data.len();
    let mut fold_of = vec![usize::MAX; n];
    for (f, members) in folds.iter().enumerate() {
        for &i in members {
            if i >= n || fold_of[i] != usize::MAX {
                return Err(Error::param(format!(
                    "fold {f}: index {i} is out of range or repeated"
                )));
            }
            fold_of[i] = f;
        }
    }
    if fold_of.contains(&usize::MAX) {
        return Err(Error::param("folds do not cover every instance"));
    }

    let per_fold: Vec<(ConfusionMatrix, Vec<(usize, Label)>)> = folds
        .par_iter()
        .enumerate()
        .map(|(f, test)| {
            let train_idx: Vec<usize> = (0..n).filter(|&i| fold_of[i] != f).collect();
            let model = train(spec, &data.subset(&train_idx)).map_err(|e| Error::Fold {
                fold: f,
                source: Box::new(e),
            })?;
            let mut cm = ConfusionMatrix::default();
            let mut preds = Vec::with_capacity(test.len());
            for &i in test {
                let p = model.predict_row(data.row(i));
                cm.record(data.label(i), p.label);
                preds.push((i, p.label));
            }
            Ok((cm, preds))
        })
        .collect::<Result<_>>()?;

    let mut predictions = vec![Label::Positive; n];
    let mut pooled = ConfusionMatrix::default();
    let mut fold_cms = Vec::with_capacity(folds.len());
    let mut acc_sum = 0.0;
    for (cm, preds) in per_fold {
        for (i, l) in preds {
            predictions[i] = l;
        }
        pooled = pooled.merge(&cm);
        acc_sum += accuracy(&cm).unwrap_or(0.0);
        fold_cms.push(cm);
    }

    Ok(CvReport {
        algorithm: spec.algorithm.to_string(),
        params: spec.params_string(),
        model_seed: spec.seed,
        include_emoji: data
            .schema()
            .defs()
            .iter()
            .any(|d| d.block == FeatureBlock::Emoji),
        n_features: data.n_features(),
        k_folds: folds.len(),
        seed,
        pooled_accuracy: accuracy(&pooled)?,
        mean_fold_accuracy: acc_sum / folds.len() as f64,
        folds: fold_cms,
        pooled,
        predictions,
    })
}

/// Stratified k-fold CV. With `include_emoji = false` the emoji block is
/// dropped from `data` first; asking for it on data without one is an error.
pub fn cross_validate(
    data: &Dataset,
    spec: &ClassifierSpec,
    include_emoji: bool,
    k_folds: usize,
    seed: u64,
) -> Result<CvReport> {
    let has_emoji = data
        .schema()
        .defs()
        .iter()
        .any(|d| d.block == FeatureBlock::Emoji);
    let view;
    let data = match (include_emoji, has_emoji) {
        (true, false) => {
            return Err(Error::param(
                "include_emoji requested but the data has no emoji block",
            ))
        }
        (false, true) => {
            view = data.without_block(FeatureBlock::Emoji);
            &view
        }
        _ => data,
    };
    let folds = stratified_folds(data.labels(), k_folds, seed)?;
    cross_validate_folds(data, spec, &folds, seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationRow {
    pub algorithm: String,
    pub params: String,
    pub without_emoji: CvReport,
    pub with_emoji: CvReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AblationTable {
    pub k_folds: usize,
    pub seed: u64,
    pub n_instances: usize,
    pub rows: Vec<AblationRow>,
}

impl AblationTable {
    /// One row per classifier; accuracies in percent.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# k_folds={} seed={} instances={}\n",
            self.k_folds, self.seed, self.n_instances
        );
        out.push_str(
            "algorithm,params,model_seed,accuracy_without_emoji,accuracy_with_emoji,\
             mean_fold_accuracy_without_emoji,mean_fold_accuracy_with_emoji\n",
        );
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:.2},{:.2},{:.2},{:.2}\n",
                r.algorithm,
                r.params,
                r.with_emoji.model_seed,
                100.0 * r.without_emoji.pooled_accuracy,
                100.0 * r.with_emoji.pooled_accuracy,
                100.0 * r.without_emoji.mean_fold_accuracy,
                100.0 * r.with_emoji.mean_fold_accuracy,
            ));
        }
        out
    }
}

/// Cross-validates every spec with and without the emoji block, on one
/// shared fold assignment.
pub fn ablation(
    data: &Dataset,
    specs: &[ClassifierSpec],
    k_folds: usize,
    seed: u64,
) -> Result<AblationTable> {
    if specs.is_empty() {
        return Err(Error::param("ablation needs at least one classifier"));
    }
    let without = data.without_block(FeatureBlock::Emoji);
    if without.n_features() == data.n_features() {
        return Err(Error::param("data has no emoji block to ablate"));
    }
    let folds = stratified_folds(data.labels(), k_folds, seed)?;
    let rows = specs
        .iter()
        .map(|spec| {
            Ok(AblationRow {
                algorithm: spec.algorithm.to_string(),
                params: spec.params_string(),
                without_emoji: cross_validate_folds(&without, spec, &folds, seed)?,
                with_emoji: cross_validate_folds(data, spec, &folds, seed)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(AblationTable {
        k_folds,
        seed,
        n_instances: data.len(),
        rows,
    })
}
