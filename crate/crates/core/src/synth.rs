//! Seeded synthetic corpora for evaluation and benchmarks.
//!
//! Posts are Latin-script gibberish with POS tags drawn at random; how
//! strongly the class shows up in the words and in the emoji is set by
//! [`CorpusConfig`].

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::Dataset;
use crate::emoji_lex::{EmojiLexicon, EmojiLexiconEntry};
use crate::features::Schema;
use crate::text_norm::{Label, PosTag, RawPost, Script, TaggedToken};

// (code point, occurrences, neg, neut, pos)
const LEXICON: [(char, u64, u64, u64, u64); 13] = [
    ('\u{1F602}', 100, 10, 30, 60),
    ('\u{2764}', 100, 5, 15, 80),
    ('\u{1F60D}', 100, 5, 20, 75),
    ('\u{1F44D}', 100, 10, 35, 55),
    ('\u{1F525}', 100, 15, 40, 45),
    ('\u{1F60A}', 100, 5, 25, 70),
    ('\u{1F621}', 100, 70, 20, 10),
    ('\u{1F44E}', 100, 65, 25, 10),
    ('\u{1F622}', 100, 55, 30, 15),
    ('\u{1F4A9}', 100, 60, 30, 10),
    ('\u{1F92E}', 100, 75, 20, 5),
    ('\u{1F620}', 100, 50, 40, 10),
    ('\u{1F914}', 100, 30, 40, 30),
];

/// Thirteen common emoji with made-up occurrence counts: six positive,
/// six negative, one neutral.
pub fn synthetic_lexicon() -> EmojiLexicon {
    let mut lex = EmojiLexicon::default();
    for (c, occ, neg, neut, pos) in LEXICON {
        lex.insert(EmojiLexiconEntry::new(c.to_string(), occ, neg, neut, pos).unwrap())
            .unwrap();
    }
    lex
}

pub fn synthetic_lexicon_csv() -> String {
    let mut out = String::from("sequence_hex,occurrences,neg,neut,pos\n");
    for (c, occ, neg, neut, pos) in LEXICON {
        out.push_str(&format!("{:X},{occ},{neg},{neut},{pos}\n", c as u32));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EmojiSignal {
    /// Each emoji matches the post's class with probability `purity`.
    Planted { purity: f64 },
    /// Emoji drawn uniformly, independent of the class.
    Noise,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusConfig {
    pub n_positive: usize,
    pub n_negative: usize,
    pub emoji: EmojiSignal,
    /// 0 makes the words independent of the class; 1 makes positive posts
    /// use markedly longer words and more adjectives.
    pub text_signal: f64,
    pub seed: u64,
}

impl CorpusConfig {
    /// 240 positive / 60 negative posts, roughly the 4:1 ratio of the
    /// reference corpus, with the class planted in the emoji.
    pub fn planted(seed: u64) -> Self {
        CorpusConfig {
            n_positive: 240,
            n_negative: 60,
            emoji: EmojiSignal::Planted { purity: 0.85 },
            text_signal: 0.0,
            seed,
        }
    }

    pub fn noise_emoji(seed: u64) -> Self {
        CorpusConfig {
            n_positive: 240,
            n_negative: 60,
            emoji: EmojiSignal::Noise,
            text_signal: 0.5,
            seed,
        }
    }
}

const LETTERS: &[&str] = &[
    "a", "b", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p", "q", "r", "s", "t",
    "u", "v", "x", "y", "z", "sh", "ch", "oʻ", "gʻ",
];

fn word<R: Rng>(rng: &mut R, len: usize) -> String {
    (0..len).map(|_| *LETTERS.choose(rng).unwrap()).collect()
}

pub fn corpus(cfg: &CorpusConfig) -> Vec<RawPost> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let positive_emoji: Vec<char> = LEXICON[..6].iter().map(|e| e.0).collect();
    let negative_emoji: Vec<char> = LEXICON[6..12].iter().map(|e| e.0).collect();
    let all_emoji: Vec<char> = LEXICON.iter().map(|e| e.0).collect();

    let mut labels: Vec<Label> = std::iter::repeat_n(Label::Positive, cfg.n_positive)
        .chain(std::iter::repeat_n(Label::Negative, cfg.n_negative))
        .collect();
    rand::seq::SliceRandom::shuffle(&mut labels[..], &mut rng);

    labels
        .into_iter()
        .enumerate()
        .map(|(i, label)| {
            let shifted = label == Label::Positive;
            let n_words = rng.random_range(2..=12);
            let mut tokens = Vec::with_capacity(n_words);
            let mut text = String::new();
            for w in 0..n_words {
                let mut len = rng.random_range(2..=7);
                let mut pos = *PosTag::ALL.choose(&mut rng).unwrap();
                if shifted && rng.random_bool(cfg.text_signal) {
                    len += 3;
                    pos = PosTag::Adjective;
                }
                let mut token = word(&mut rng, len);
                if w == 0 && rng.random_bool(0.5) {
                    let mut c = token.chars();
                    let first = c.next().unwrap().to_uppercase().collect::<String>();
                    token = first + c.as_str();
                }
                if !text.is_empty() {
                    text.push(' ');
                }
                text.push_str(&token);
                if rng.random_bool(0.15) {
                    text.push(*['!', ',', '.', '?'].choose(&mut rng).unwrap());
                }
                tokens.push(TaggedToken { t: token, pos });
            }

            let n_emoji = rng.random_range(1..=8);
            text.push(' ');
            for _ in 0..n_emoji {
                let e = match cfg.emoji {
                    EmojiSignal::Planted { purity } => {
                        let aligned = rng.random_bool(purity);
                        let pool = match (label, aligned) {
                            (Label::Positive, true) | (Label::Negative, false) => &positive_emoji,
                            _ => &negative_emoji,
                        };
                        *pool.choose(&mut rng).unwrap()
                    }
                    EmojiSignal::Noise => *all_emoji.choose(&mut rng).unwrap(),
                };
                text.push(e);
            }

            RawPost {
                id: format!("s{i:05}"),
                text,
                script: Script::Latin,
                tokens,
                label,
            }
        })
        .collect()
}

/// Two isotropic unit-variance Gaussians whose means sit `separation` apart
/// along every axis; half the points in each class.
pub fn two_gaussians(n: usize, dims: usize, separation: f64, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, 1.0).unwrap();
    let mut rows = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let label = if i % 2 == 0 {
            Label::Positive
        } else {
            Label::Negative
        };
        let centre = if label == Label::Positive {
            separation / 2.0
        } else {
            -separation / 2.0
        };
        rows.push(
            (0..dims)
                .map(|_| centre + normal.sample(&mut rng))
                .collect(),
        );
        labels.push(label);
    }
    Dataset::new(
        Schema::generic((0..dims).map(|d| format!("x{d}"))),
        rows,
        labels,
    )
    .expect("consistent shapes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicon_csv_parses_to_same_entries() {
        let parsed = EmojiLexicon::from_reader(synthetic_lexicon_csv().as_bytes()).unwrap();
        let built = synthetic_lexicon();
        assert_eq!(parsed.len(), built.len());
        for (c, ..) in LEXICON {
            let s = c.to_string();
            assert_eq!(parsed.get(&s), built.get(&s));
        }
    }

    #[test]
    fn corpus_is_valid_and_deterministic() {
        let cfg = CorpusConfig::planted(9);
        let a = corpus(&cfg);
        assert_eq!(a.len(), 300);
        assert_eq!(a.iter().filter(|p| p.label == Label::Negative).count(), 60);
        for p in &a {
            p.validate().unwrap();
            let seg = crate::text_norm::normalize(&p.text);
            assert_eq!(seg.words().count(), p.tokens.len(), "{}", p.text);
        }
        assert_eq!(a, corpus(&cfg));
    }
}
