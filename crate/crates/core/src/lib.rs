//! Emoji-aware opinion classification for Uzbek review comments.
//!
//! The pipeline runs [`text_norm`] (script conversion and segmentation),
//! [`features`] (42 statistical, part-of-speech and emoji features),
//! [`classifiers`], [`relieff`] feature ranking and the cross-validation
//! harness in [`eval`].

pub mod classifiers;
pub mod dataset;
pub mod emoji_lex;
pub mod error;
pub mod eval;
pub mod features;
pub mod ingest;
pub mod relieff;
pub mod stats;
pub mod synth;
pub mod text_norm;

pub use classifiers::{train, Algorithm, ClassifierSpec, Prediction, TrainedModel};
pub use dataset::Dataset;
pub use emoji_lex::{EmojiFeatureBlock, EmojiLexicon, EmojiLexiconEntry};
pub use error::{Error, Result};
pub use eval::{ablation, accuracy, cross_validate, stratified_folds, ConfusionMatrix, CvReport};
pub use features::{assemble, FeatureBlock, FeatureExtractor, FeatureVector, Schema};
pub use ingest::{load_dataset, write_dataset, IngestStats};
pub use relieff::{rank, FeatureRanking, ReliefParams};
pub use text_norm::{Label, PosTag, RawPost, Script};
