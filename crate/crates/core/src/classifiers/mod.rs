//! Trainable classifiers behind one train/predict contract.
//!
//! Every model min-max normalizes its inputs with ranges fitted on the
//! training data, then hands the scaled rows to the algorithm.

mod bayes;
mod forest;
mod knn;
mod normalize;
mod spec;
pub mod tree;

use std::io::{BufReader, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use bayes::Bayes;
pub use forest::{default_feature_count, RandomForest};
pub use knn::Knn;
pub use normalize::MinMax;
pub use spec::{
    Algorithm, BayesParams, ClassifierSpec, ForestParams, KnnParams, ParamValue, RepTreeParams,
};
pub use tree::{RepTreeFit, Tree};

pub(crate) use knn::nearest;

use crate::dataset::{mismatch, Dataset};
use crate::error::{Error, Result};
use crate::features::{FeatureVector, Schema};
use crate::text_norm::Label;

pub const MODEL_FORMAT: &str = "uzsent-model";
pub const MODEL_VERSION: u32 = 1;

/// Highest-scoring class. Exact ties go to `tiebreak`.
pub(crate) fn argmax(scores: &[f64; 2], tiebreak: Label) -> Label {
    if scores[0] > scores[1] {
        Label::Positive
    } else if scores[1] > scores[0] {
        Label::Negative
    } else {
        tiebreak
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelState {
    Knn(Knn),
    Bayes(Bayes),
    Reptree(Tree),
    RandomForest(RandomForest),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: Label,
    /// Indexed by `Label::index`.
    pub scores: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format: String,
    pub version: u32,
    pub spec: ClassifierSpec,
    pub schema: Schema,
    pub normalization: MinMax,
    pub class_counts: [usize; 2],
    pub state: ModelState,
}

impl TrainedModel {
    /// Majority training class, or the lower class index on a tie.
    pub fn tiebreak(&self) -> Label {
        majority(self.class_counts)
    }

    pub fn predict(&self, v: &FeatureVector) -> Result<Prediction> {
        if let Some(idx) = self.schema.first_difference(&v.schema) {
            return Err(mismatch(&self.schema, &v.schema, idx));
        }
        Ok(self.predict_row(&v.values))
    }

    /// Predicts a raw row already known to follow the training schema.
    pub fn predict_row(&self, row: &[f64]) -> Prediction {
        let x = self.normalization.apply(row);
        let scores = match &self.state {
            ModelState::Knn(m) => m.scores(&x),
            ModelState::Bayes(m) => m.scores(&x),
            ModelState::Reptree(t) => t.distribution(&x),
            ModelState::RandomForest(f) => f.scores(&x),
        };
        Prediction {
            label: argmax(&scores, self.tiebreak()),
            scores,
        }
    }

    pub fn predict_dataset(&self, data: &Dataset) -> Result<Vec<Prediction>> {
        if let Some(idx) = self.schema.first_difference(data.schema()) {
            return Err(mismatch(&self.schema, data.schema(), idx));
        }
        Ok(data.rows().iter().map(|r| self.predict_row(r)).collect())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        serde_json::to_writer(&mut f, self)?;
        f.write_all(b"\n")?;
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<TrainedModel> {
        let probe: serde_json::Value = serde_json::from_str(json)?;
        check_header(&probe)?;
        let model: TrainedModel = serde_json::from_value(probe)?;
        model.check_consistency()?;
        Ok(model)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<TrainedModel> {
        let f = std::fs::File::open(path)?;
        let probe: serde_json::Value = serde_json::from_reader(BufReader::new(f))?;
        check_header(&probe)?;
        let model: TrainedModel = serde_json::from_value(probe)?;
        model.check_consistency()?;
        Ok(model)
    }

    /// Loads a model and requires its schema to equal `expected`.
    pub fn load_for(path: impl AsRef<Path>, expected: &Schema) -> Result<TrainedModel> {
        let model = Self::load(path)?;
        if let Some(idx) = expected.first_difference(&model.schema) {
            return Err(mismatch(expected, &model.schema, idx));
        }
        Ok(model)
    }

    fn check_consistency(&self) -> Result<()> {
        let w = self.schema.len();
        if self.normalization.min.len() != w || self.normalization.max.len() != w {
            return Err(Error::ModelFormat(format!(
                "normalization covers {} features, schema has {w}",
                self.normalization.min.len()
            )));
        }
        self.spec.validate()
    }
}

fn check_header(v: &serde_json::Value) -> Result<()> {
    match v.get("format").and_then(|f| f.as_str()) {
        Some(MODEL_FORMAT) => {}
        other => {
            return Err(Error::ModelFormat(format!(
                "expected format {MODEL_FORMAT:?}, found {other:?}"
            )))
        }
    }
    match v.get("version").and_then(|f| f.as_u64()) {
        Some(x) if x == MODEL_VERSION as u64 => Ok(()),
        other => Err(Error::ModelFormat(format!(
            "unsupported model version {other:?} (expected {MODEL_VERSION})"
        ))),
    }
}

pub(crate) fn majority(counts: [usize; 2]) -> Label {
    if counts[1] > counts[0] {
        Label::Negative
    } else {
        Label::Positive
    }
}

/// Trains `spec` on `data`. Needs at least two instances covering both
/// classes, and finite feature values.
pub fn train(spec: &ClassifierSpec, data: &Dataset) -> Result<TrainedModel> {
    spec.validate()?;
    if data.len() < 2 {
        return Err(Error::Training(format!(
            "need at least 2 instances, got {}",
            data.len()
        )));
    }
    let class_counts = data.class_counts();
    if class_counts.contains(&0) {
        return Err(Error::Training(
            "training data contains a single class".into(),
        ));
    }
    for (i, r) in data.rows().iter().enumerate() {
        if let Some(j) = r.iter().position(|v| !v.is_finite()) {
            return Err(Error::Training(format!(
                "instance {i}: feature {:?} is not finite",
                data.schema().defs()[j].name
            )));
        }
    }

    let normalization = MinMax::fit(data.rows());
    let rows = normalization.apply_all(data.rows());
    let labels = data.labels();
    let tiebreak = majority(class_counts);

    let state = match spec.algorithm {
        Algorithm::Knn => ModelState::Knn(Knn::fit(spec.knn()?, rows, labels.to_vec())),
        Algorithm::Bayes => ModelState::Bayes(Bayes::fit(spec.bayes()?, &rows, labels)),
        Algorithm::Reptree => {
            let p = spec.reptree()?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let fit = tree::fit_rep_tree(
                &rows,
                labels,
                p.min_leaf,
                p.max_depth,
                p.prune_folds,
                tiebreak,
                &mut rng,
            );
            ModelState::Reptree(fit.pruned)
        }
        Algorithm::RandomForest => ModelState::RandomForest(RandomForest::fit(
            spec.forest()?,
            &rows,
            labels,
            spec.seed,
            tiebreak,
        )),
    };

    Ok(TrainedModel {
        format: MODEL_FORMAT.to_string(),
        version: MODEL_VERSION,
        spec: spec.clone(),
        schema: data.schema().clone(),
        normalization,
        class_counts,
        state,
    })
}

/// REPTree fit with the unpruned tree and the grow/prune split exposed, on
/// rows normalized the same way `train` does.
pub fn fit_reptree_diagnostic(
    spec: &ClassifierSpec,
    data: &Dataset,
) -> Result<(RepTreeFit, Vec<Vec<f64>>)> {
    let p = spec.reptree()?;
    let normalization = MinMax::fit(data.rows());
    let rows = normalization.apply_all(data.rows());
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let fit = tree::fit_rep_tree(
        &rows,
        data.labels(),
        p.min_leaf,
        p.max_depth,
        p.prune_folds,
        majority(data.class_counts()),
        &mut rng,
    );
    Ok((fit, rows))
}
