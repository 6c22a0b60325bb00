//! Run configuration: a TOML file, optionally overridden by flags.
//!
//! ```toml
//! dataset = "posts.jsonl"
//! lexicon = "emoji_lexicon.csv"
//! seed = 42
//! k_folds = 10
//! include_emoji = true
//! output_dir = "out"
//!
//! [[classifier]]
//! algorithm = "random_forest"
//! params = { trees = 100 }
//!
//! [relieff]
//! k = 10
//! top = 10
//! ```
//!
//! Relative paths are resolved against the config file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use uzsent_core::classifiers::ParamValue;
use uzsent_core::{Algorithm, ClassifierSpec};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifierEntry {
    pub algorithm: Algorithm,
    #[serde(default)]
    pub params: BTreeMap<String, ParamValue>,
    /// Model seed; defaults to the run seed.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelieffSection {
    pub k: Option<usize>,
    pub m: Option<usize>,
    pub top: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub dataset: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub seed: Option<u64>,
    pub k_folds: Option<usize>,
    pub include_emoji: Option<bool>,
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub classifier: Vec<ClassifierEntry>,
    #[serde(default)]
    pub relieff: RelieffSection,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut cfg: ConfigFile =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.dataset, &mut cfg.lexicon, &mut cfg.output_dir]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }
}

/// Resolved settings for one command invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub dataset: PathBuf,
    pub lexicon: Option<PathBuf>,
    pub seed: Option<u64>,
    pub k_folds: usize,
    pub include_emoji: bool,
    pub output_dir: PathBuf,
    pub classifiers: Vec<ClassifierEntry>,
    pub relieff: RelieffSection,
}

impl RunConfig {
    pub fn seed(&self) -> Result<u64> {
        self.seed
            .context("a seed is required: pass --seed or set `seed` in the config")
    }

    pub fn lexicon(&self) -> Result<&Path> {
        self.lexicon
            .as_deref()
            .context("an emoji lexicon is required: pass --lexicon or set `lexicon` in the config")
    }

    /// Classifier specs, defaulting to every algorithm with default
    /// parameters when none are configured.
    pub fn specs(&self) -> Result<Vec<ClassifierSpec>> {
        let seed = self.seed()?;
        if self.classifiers.is_empty() {
            return Ok(Algorithm::ALL
                .iter()
                .map(|&a| ClassifierSpec::new(a, seed))
                .collect());
        }
        self.classifiers
            .iter()
            .map(|c| {
                ClassifierSpec::with_params(c.algorithm, c.params.clone(), c.seed.unwrap_or(seed))
                    .with_context(|| format!("classifier {}", c.algorithm))
            })
            .collect()
    }

    /// Checks that configured input files exist.
    pub fn check_inputs(&self) -> Result<()> {
        if !self.dataset.is_file() {
            bail!("dataset {} does not exist", self.dataset.display());
        }
        if let Some(l) = &self.lexicon {
            if !l.is_file() {
                bail!("lexicon {} does not exist", l.display());
            }
        }
        Ok(())
    }
}

/// Parses `key=value`; values are booleans, integers or floats.
pub fn parse_param(s: &str) -> Result<(String, ParamValue)> {
    let (k, v) = s
        .split_once('=')
        .with_context(|| format!("parameter {s:?} is not key=value"))?;
    let value = if let Ok(b) = v.parse::<bool>() {
        ParamValue::Bool(b)
    } else if let Ok(i) = v.parse::<i64>() {
        ParamValue::Int(i)
    } else if let Ok(f) = v.parse::<f64>() {
        ParamValue::Float(f)
    } else {
        bail!("parameter {k}: cannot parse {v:?} as a number or boolean");
    };
    Ok((k.trim().to_string(), value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params() {
        assert_eq!(
            parse_param("k=3").unwrap(),
            ("k".into(), ParamValue::Int(3))
        );
        assert_eq!(
            parse_param("alpha=0.25").unwrap(),
            ("alpha".into(), ParamValue::Float(0.25))
        );
        assert_eq!(
            parse_param("bootstrap=false").unwrap(),
            ("bootstrap".into(), ParamValue::Bool(false))
        );
        assert!(parse_param("k").is_err());
        assert!(parse_param("k=abc").is_err());
    }

    #[test]
    fn config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            r#"
dataset = "posts.jsonl"
seed = 7
[[classifier]]
algorithm = "knn"
params = { k = 3 }
[[classifier]]
algorithm = "random_forest"
seed = 9
params = { trees = 10, bootstrap = false }
[relieff]
top = 5
"#,
        )
        .unwrap();
        let cfg = ConfigFile::load(&path).unwrap();
        assert_eq!(cfg.dataset.unwrap(), dir.path().join("posts.jsonl"));
        assert_eq!(cfg.classifier.len(), 2);
        assert_eq!(cfg.classifier[1].seed, Some(9));
        assert_eq!(cfg.relieff.top, Some(5));

        std::fs::write(&path, "seed = 1\nunknown = 2\n").unwrap();
        assert!(ConfigFile::load(&path).is_err());
    }
}
