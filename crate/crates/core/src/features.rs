//! The 42-dimensional post representation: 23 statistical, 15 part-of-speech
//! and 4 emoji features, concatenated in that order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use unicode_segmentation::UnicodeSegmentation;

use crate::emoji_lex::{detect, emoji_features, EmojiLexicon};
use crate::stats;
use crate::text_norm::{
    segment, transliterate, Label, PosTag, RawPost, Segment, SegmentKind, SegmentedText,
};

pub const N_STATISTICAL: usize = 23;
pub const N_POS: usize = 15;
pub const N_EMOJI: usize = 4;
pub const N_FEATURES: usize = N_STATISTICAL + N_POS + N_EMOJI;
pub const N_FEATURES_NO_EMOJI: usize = N_STATISTICAL + N_POS;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureBlock {
    Statistical,
    Pos,
    Emoji,
    /// Columns of datasets not built from posts.
    Other,
}

impl FeatureBlock {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureBlock::Statistical => "statistical",
            FeatureBlock::Pos => "pos",
            FeatureBlock::Emoji => "emoji",
            FeatureBlock::Other => "other",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureDef {
    pub name: String,
    pub description: String,
    pub block: FeatureBlock,
}

/// Ordered feature names shared by vectors, datasets and trained models.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Schema(Arc<Vec<FeatureDef>>);

const STATISTICAL: [(&str, &str); N_STATISTICAL] = [
    ("n_chars", "total number of characters"),
    (
        "n_chars_no_space",
        "total number of characters without spaces",
    ),
    ("n_special", "number of special characters"),
    ("n_lowercase", "number of lower case characters"),
    ("n_uppercase", "number of upper case characters"),
    ("n_digits", "number of digits characters"),
    ("n_words", "number of all words"),
    ("n_unique_words", "number of unique words"),
    ("mean_len_unique", "mean length of all unique words"),
    ("max_len", "maximum length of all words"),
    ("min_len", "minimum length of all words"),
    ("mean_len", "mean length of all words"),
    ("std_len", "standard deviation of the length of all words"),
    ("var_len", "variance of the length of all words"),
    ("kurtosis_len", "kurtosis of the length of all words"),
    ("skewness_len", "skewness of the length of all words"),
    ("p25_len", "percentile 25% of the length of all words"),
    (
        "p50_len",
        "percentile 50% (median) of the length of all words",
    ),
    ("p75_len", "percentile 75% of the length of all words"),
    ("n_punct", "number of punctuation characters"),
    (
        "n_short_words",
        "number of words with length less than 4 characters",
    ),
    ("n_hapax_legomena", "number of the hapax-legomena"),
    ("n_hapax_dislegomena", "number of the hapax-dislegomena"),
];

const POS: [(&str, &str); N_POS] = [
    ("pos_noun", "number of nouns"),
    ("pos_proper_noun", "number of proper nouns"),
    ("pos_verb", "number of verbs"),
    ("pos_adjective", "number of adjectives"),
    ("pos_numeral", "number of numerals"),
    ("pos_pronoun", "number of pronouns"),
    ("pos_adverb", "number of adverbs"),
    ("pos_helping_word", "number of helping words"),
    ("pos_coord_conj", "number of coordinating conjunctions"),
    ("pos_subord_conj", "number of subordinating conjunctions"),
    ("pos_modal", "number of modal words"),
    ("pos_imitative", "number of imitative words"),
    ("pos_interjection", "number of interjections"),
    ("pos_auxiliary", "number of auxiliaries"),
    ("pos_other_x", "number of other words (x)"),
];

const EMOJI: [(&str, &str); N_EMOJI] = [
    ("n_emoji", "number of emoji"),
    (
        "avg_emoji_score",
        "average sentiment score of all emoji per post",
    ),
    ("n_positive_emoji", "number of positive emoji"),
    ("n_negative_emoji", "number of negative emoji"),
];

pub const AVG_EMOJI_SCORE: &str = "avg_emoji_score";

impl Schema {
    pub fn new(defs: Vec<FeatureDef>) -> Self {
        Schema(Arc::new(defs))
    }

    /// Plain numbered columns, for datasets that do not come from posts.
    pub fn generic(names: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Schema::new(
            names
                .into_iter()
                .map(|n| {
                    let name = n.into();
                    FeatureDef {
                        description: name.clone(),
                        name,
                        block: FeatureBlock::Other,
                    }
                })
                .collect(),
        )
    }

    /// The post schema: 42 features with the emoji block, 38 without.
    pub fn post(include_emoji: bool) -> Self {
        static FULL: OnceLock<Schema> = OnceLock::new();
        static NO_EMOJI: OnceLock<Schema> = OnceLock::new();
        let cell = if include_emoji { &FULL } else { &NO_EMOJI };
        cell.get_or_init(|| {
            let mut defs = Vec::with_capacity(N_FEATURES);
            let mut push = |table: &[(&str, &str)], block| {
                defs.extend(table.iter().map(|(n, d)| FeatureDef {
                    name: n.to_string(),
                    description: d.to_string(),
                    block,
                }))
            };
            push(&STATISTICAL, FeatureBlock::Statistical);
            push(&POS, FeatureBlock::Pos);
            if include_emoji {
                push(&EMOJI, FeatureBlock::Emoji);
            }
            Schema::new(defs)
        })
        .clone()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn defs(&self) -> &[FeatureDef] {
        &self.0
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|d| d.name.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|d| d.name == name)
    }

    /// Index of the first column that differs from `other`, if any.
    pub fn first_difference(&self, other: &Schema) -> Option<usize> {
        if Arc::ptr_eq(&self.0, &other.0) {
            return None;
        }
        let common = self.len().min(other.len());
        (0..common)
            .find(|&i| self.0[i].name != other.0[i].name)
            .or((self.len() != other.len()).then_some(common))
    }

    /// Keeps the columns whose block is not `block`, returning their indices.
    pub fn without_block(&self, block: FeatureBlock) -> (Schema, Vec<usize>) {
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.0[i].block != block)
            .collect();
        if keep.len() == N_FEATURES_NO_EMOJI
            && block == FeatureBlock::Emoji
            && *self == Schema::post(true)
        {
            return (Schema::post(false), keep);
        }
        let defs = keep.iter().map(|&i| self.0[i].clone()).collect();
        (Schema::new(defs), keep)
    }

    /// `index,name,block,description` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,name,block,description\n");
        for (i, d) in self.0.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},\"{}\"\n",
                i,
                d.name,
                d.block.as_str(),
                d.description.replace('"', "\"\"")
            ));
        }
        out
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names().collect::<Vec<_>>().join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub schema: Schema,
    pub label: Option<Label>,
}

/// The 23 word- and character-level statistics, in schema order.
pub fn statistical_features(text: &SegmentedText) -> [f64; N_STATISTICAL] {
    let mut f = [0.0; N_STATISTICAL];
    f[0] = text.graphemes_total as f64;
    f[1] = text.graphemes_no_space as f64;
    f[2] = text.of_kind(SegmentKind::Special).count() as f64;

    let (mut lower, mut upper, mut digits) = (0usize, 0usize, 0usize);
    for seg in text
        .segments
        .iter()
        .filter(|s| s.kind != SegmentKind::Emoji)
    {
        for g in seg.content.graphemes(true) {
            let c = g.chars().next().unwrap_or(' ');
            lower += c.is_lowercase() as usize;
            upper += c.is_uppercase() as usize;
            digits += c.is_numeric() as usize;
        }
    }
    f[3] = lower as f64;
    f[4] = upper as f64;
    f[5] = digits as f64;
    f[19] = text.of_kind(SegmentKind::Punctuation).count() as f64;

    let words: Vec<&Segment> = text.words().collect();
    if words.is_empty() {
        return f;
    }

    let mut lengths: Vec<f64> = words.iter().map(|w| w.graphemes as f64).collect();
    // Frequencies of case-folded forms, keyed in first-seen order.
    let mut freq: HashMap<String, usize> = HashMap::new();
    let mut order: Vec<String> = Vec::new();
    for w in &words {
        let folded = w.content.to_lowercase();
        let n = freq.entry(folded.clone()).or_insert(0);
        if *n == 0 {
            order.push(folded);
        }
        *n += 1;
    }
    let unique_lengths: Vec<f64> = order
        .iter()
        .map(|w| w.graphemes(true).count() as f64)
        .collect();

    f[6] = words.len() as f64;
    f[7] = order.len() as f64;
    f[8] = stats::mean(&unique_lengths);
    f[11] = stats::mean(&lengths);
    f[13] = stats::variance(&lengths);
    f[12] = f[13].sqrt();
    f[14] = stats::kurtosis(&lengths);
    f[15] = stats::skewness(&lengths);
    lengths.sort_by(f64::total_cmp);
    f[9] = *lengths.last().unwrap_or(&0.0);
    f[10] = lengths[0];
    f[16] = stats::percentile(&lengths, 0.25);
    f[17] = stats::percentile(&lengths, 0.50);
    f[18] = stats::percentile(&lengths, 0.75);
    f[20] = lengths.iter().filter(|&&l| l <= 3.0).count() as f64;
    f[21] = freq.values().filter(|&&n| n == 1).count() as f64;
    f[22] = freq.values().filter(|&&n| n == 2).count() as f64;
    f
}

/// One count per tag, in tagset order.
pub fn pos_features(tags: impl IntoIterator<Item = PosTag>) -> [f64; N_POS] {
    let mut f = [0.0; N_POS];
    for t in tags {
        f[t.index()] += 1.0;
    }
    f
}

/// Builds feature vectors for posts against one lexicon.
#[derive(Debug, Clone)]
pub struct FeatureExtractor<'a> {
    lexicon: &'a EmojiLexicon,
    include_emoji: bool,
    schema: Schema,
}

impl<'a> FeatureExtractor<'a> {
    pub fn new(lexicon: &'a EmojiLexicon, include_emoji: bool) -> Self {
        FeatureExtractor {
            lexicon,
            include_emoji,
            schema: Schema::post(include_emoji),
        }
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn extract(&self, post: &RawPost) -> FeatureVector {
        let latin = transliterate(&post.text).text;
        let seg = segment(&latin);
        let mut values = Vec::with_capacity(self.schema.len());
        values.extend(statistical_features(&seg));
        values.extend(pos_features(post.pos_tags()));
        if self.include_emoji {
            values.extend(emoji_features(&detect(&seg), self.lexicon).to_array());
        }
        FeatureVector {
            values,
            schema: self.schema.clone(),
            label: Some(post.label),
        }
    }

    pub fn extract_all(&self, posts: &[RawPost]) -> Vec<FeatureVector> {
        posts.par_iter().map(|p| self.extract(p)).collect()
    }
}

/// Feature vector for one post: statistical ‖ POS ‖ emoji (when included).
pub fn assemble(post: &RawPost, lexicon: &EmojiLexicon, include_emoji: bool) -> FeatureVector {
    FeatureExtractor::new(lexicon, include_emoji).extract(post)
}
