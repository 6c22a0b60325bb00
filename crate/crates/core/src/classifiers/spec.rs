use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Knn,
    Bayes,
    Reptree,
    RandomForest,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Knn,
        Algorithm::Bayes,
        Algorithm::Reptree,
        Algorithm::RandomForest,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Knn => "knn",
            Algorithm::Bayes => "bayes",
            Algorithm::Reptree => "reptree",
            Algorithm::RandomForest => "random_forest",
        }
    }

    fn allowed_params(self) -> &'static [&'static str] {
        match self {
            Algorithm::Knn => &["k"],
            Algorithm::Bayes => &["bins", "alpha"],
            Algorithm::Reptree => &["min_leaf", "prune_folds", "max_depth"],
            Algorithm::RandomForest => &["trees", "features", "min_leaf", "max_depth", "bootstrap"],
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::param(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Bool(bool),
    Int(i64),
    Float(f64),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Float(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawSpec {
    algorithm: Algorithm,
    #[serde(default)]
    params: BTreeMap<String, ParamValue>,
    seed: u64,
}

/// Algorithm, explicit hyperparameters and seed. Unknown parameter keys are
/// rejected at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct ClassifierSpec {
    pub algorithm: Algorithm,
    pub params: BTreeMap<String, ParamValue>,
    pub seed: u64,
}

impl TryFrom<RawSpec> for ClassifierSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        ClassifierSpec::with_params(raw.algorithm, raw.params, raw.seed)
    }
}

impl ClassifierSpec {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        ClassifierSpec {
            algorithm,
            params: BTreeMap::new(),
            seed,
        }
    }

    pub fn with_params(
        algorithm: Algorithm,
        params: BTreeMap<String, ParamValue>,
        seed: u64,
    ) -> Result<Self> {
        let spec = ClassifierSpec {
            algorithm,
            params,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Adds or replaces one parameter.
    pub fn param(mut self, key: &str, value: impl Into<ParamValue>) -> Result<Self> {
        self.params.insert(key.to_string(), value.into());
        self.validate()?;
        Ok(self)
    }

    /// Rejects unknown keys and out-of-range values.
    pub fn validate(&self) -> Result<()> {
        let allowed = self.algorithm.allowed_params();
        if let Some(k) = self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::param(format!(
                "unknown parameter {k:?} for {} (allowed: {})",
                self.algorithm,
                allowed.join(", ")
            )));
        }
        match self.algorithm {
            Algorithm::Knn => {
                self.knn()?;
            }
            Algorithm::Bayes => {
                self.bayes()?;
            }
            Algorithm::Reptree => {
                self.reptree()?;
            }
            Algorithm::RandomForest => {
                self.forest()?;
            }
        }
        Ok(())
    }

    /// Effective parameters, defaults included, as `k=v;k=v` for report
    /// headers. Unset optional limits render as `none`, an automatic
    /// feature count as `auto`.
    pub fn params_string(&self) -> String {
        fn opt(v: Option<usize>, unset: &str) -> String {
            v.map_or(unset.to_string(), |v| v.to_string())
        }
        let pairs: Vec<(&str, String)> = match self.algorithm {
            Algorithm::Knn => match self.knn() {
                Ok(p) => vec![("k", p.k.to_string())],
                Err(_) => return self.raw_params_string(),
            },
            Algorithm::Bayes => match self.bayes() {
                Ok(p) => vec![("bins", p.bins.to_string()), ("alpha", p.alpha.to_string())],
                Err(_) => return self.raw_params_string(),
            },
            Algorithm::Reptree => match self.reptree() {
                Ok(p) => vec![
                    ("min_leaf", p.min_leaf.to_string()),
                    ("prune_folds", p.prune_folds.to_string()),
                    ("max_depth", opt(p.max_depth, "none")),
                ],
                Err(_) => return self.raw_params_string(),
            },
            Algorithm::RandomForest => match self.forest() {
                Ok(p) => vec![
                    ("trees", p.trees.to_string()),
                    ("features", opt(p.features, "auto")),
                    ("min_leaf", p.min_leaf.to_string()),
                    ("max_depth", opt(p.max_depth, "none")),
                    ("bootstrap", p.bootstrap.to_string()),
                ],
                Err(_) => return self.raw_params_string(),
            },
        };
        pairs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn raw_params_string(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    fn uint(&self, key: &str, default: usize, min: usize) -> Result<usize> {
        match self.params.get(key) {
            None => Ok(default),
            Some(ParamValue::Int(i)) if *i >= min as i64 => Ok(*i as usize),
            Some(v) => Err(Error::param(format!(
                "{key} must be an integer >= {min}, got {v}"
            ))),
        }
    }

    fn opt_uint(&self, key: &str) -> Result<Option<usize>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(ParamValue::Int(i)) if *i >= 1 => Ok(Some(*i as usize)),
            Some(v) => Err(Error::param(format!(
                "{key} must be an integer >= 1, got {v}"
            ))),
        }
    }

    fn float(&self, key: &str, default: f64) -> Result<f64> {
        match self.params.get(key) {
            None => Ok(default),
            Some(ParamValue::Int(i)) if *i > 0 => Ok(*i as f64),
            Some(ParamValue::Float(x)) if *x > 0.0 && x.is_finite() => Ok(*x),
            Some(v) => Err(Error::param(format!(
                "{key} must be a positive number, got {v}"
            ))),
        }
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool> {
        match self.params.get(key) {
            None => Ok(default),
            Some(ParamValue::Bool(b)) => Ok(*b),
            Some(v) => Err(Error::param(format!("{key} must be a boolean, got {v}"))),
        }
    }

    pub(crate) fn knn(&self) -> Result<KnnParams> {
        Ok(KnnParams {
            k: self.uint("k", 1, 1)?,
        })
    }

    pub(crate) fn bayes(&self) -> Result<BayesParams> {
        Ok(BayesParams {
            bins: self.uint("bins", 10, 1)?,
            alpha: self.float("alpha", 0.5)?,
        })
    }

    pub(crate) fn reptree(&self) -> Result<RepTreeParams> {
        Ok(RepTreeParams {
            min_leaf: self.uint("min_leaf", 2, 1)?,
            prune_folds: self.uint("prune_folds", 3, 2)?,
            max_depth: self.opt_uint("max_depth")?,
        })
    }

    pub(crate) fn forest(&self) -> Result<ForestParams> {
        Ok(ForestParams {
            trees: self.uint("trees", 100, 1)?,
            features: self.opt_uint("features")?,
            min_leaf: self.uint("min_leaf", 1, 1)?,
            max_depth: self.opt_uint("max_depth")?,
            bootstrap: self.flag("bootstrap", true)?,
        })
    }
}

impl From<bool> for ParamValue {
    fn from(b: bool) -> Self {
        ParamValue::Bool(b)
    }
}

impl From<i64> for ParamValue {
    fn from(i: i64) -> Self {
        ParamValue::Int(i)
    }
}

impl From<usize> for ParamValue {
    fn from(i: usize) -> Self {
        ParamValue::Int(i as i64)
    }
}

impl From<f64> for ParamValue {
    fn from(x: f64) -> Self {
        ParamValue::Float(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KnnParams {
    pub k: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesParams {
    pub bins: usize,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepTreeParams {
    pub min_leaf: usize,
    /// One fold of this many is held out for pruning.
    pub prune_folds: usize,
    pub max_depth: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestParams {
    pub trees: usize,
    /// Candidate features per split; `None` means floor(log2 M) + 1.
    pub features: Option<usize>,
    pub min_leaf: usize,
    pub max_depth: Option<usize>,
    pub bootstrap: bool,
}
