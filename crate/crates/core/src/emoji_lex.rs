//! Emoji sentiment lexicon and the per-post emoji feature block.
//!
//! Lexicon files are UTF-8 CSV with a header row:
//!
//! ```text
//! sequence_hex,occurrences,neg,neut,pos
//! 1F602,10,2,3,5
//! 1F469 200D 1F467,4,0,1,3
//! ```
//!
//! `sequence_hex` is a space-separated list of code points. The score of an
//! entry is `(pos - neg) / occurrences`, the same convention used by the
//! public Emoji Sentiment Ranking tables: take its `Unicode codepoint`
//! column without the `0x` prefix and its `Occurrences`, `Negative`,
//! `Neutral` and `Positive` columns.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text_norm::{SegmentKind, SegmentedText};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmojiLexiconEntry {
    pub sequence: String,
    pub occurrences: u64,
    pub neg: u64,
    pub neut: u64,
    pub pos: u64,
    pub score: f64,
}

impl EmojiLexiconEntry {
    pub fn new(sequence: String, occurrences: u64, neg: u64, neut: u64, pos: u64) -> Result<Self> {
        if occurrences == 0 {
            return Err(Error::param("occurrences must be at least 1"));
        }
        if neg + neut + pos != occurrences {
            return Err(Error::param(format!(
                "neg + neut + pos = {} but occurrences = {occurrences}",
                neg + neut + pos
            )));
        }
        let score = (pos as f64 - neg as f64) / occurrences as f64;
        Ok(EmojiLexiconEntry {
            sequence,
            occurrences,
            neg,
            neut,
            pos,
            score,
        })
    }
}

#[derive(Debug, Clone, Default)]
pub struct EmojiLexicon {
    entries: HashMap<String, EmojiLexiconEntry>,
}

#[derive(Debug, Deserialize)]
struct CsvRow {
    sequence_hex: String,
    occurrences: u64,
    neg: u64,
    neut: u64,
    pos: u64,
}

impl EmojiLexicon {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path)?;
        Self::from_reader(file).map_err(|e| match e {
            Error::Validation { line, message } => Error::Parse {
                path: path.to_path_buf(),
                line,
                message,
            },
            other => other,
        })
    }

    /// Parses lexicon CSV. Errors carry the 1-based line number of the
    /// offending row (the header is line 1).
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let headers = rdr.headers().map_err(|e| Error::Validation {
            line: 1,
            message: e.to_string(),
        })?;
        let expected = ["sequence_hex", "occurrences", "neg", "neut", "pos"];
        if headers.iter().collect::<Vec<_>>() != expected {
            return Err(Error::Validation {
                line: 1,
                message: format!("header must be {}", expected.join(",")),
            });
        }

        let mut lexicon = EmojiLexicon::default();
        for record in rdr.records() {
            let (line, record) = match record {
                Ok(r) => (r.position().map_or(0, |p| p.line() as usize), r),
                Err(e) => {
                    let line = e.position().map_or(0, |p| p.line() as usize);
                    return Err(Error::Validation {
                        line,
                        message: e.to_string(),
                    });
                }
            };
            let row: CsvRow = record.deserialize(None).map_err(|e| Error::Validation {
                line,
                message: e.to_string(),
            })?;
            let sequence = parse_hex_sequence(&row.sequence_hex)
                .map_err(|message| Error::Validation { line, message })?;
            let entry =
                EmojiLexiconEntry::new(sequence, row.occurrences, row.neg, row.neut, row.pos)
                    .map_err(|e| Error::Validation {
                        line,
                        message: e.to_string(),
                    })?;
            lexicon.insert(entry).map_err(|e| Error::Validation {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(lexicon)
    }

    pub fn insert(&mut self, entry: EmojiLexiconEntry) -> Result<()> {
        if self.entries.contains_key(&entry.sequence) {
            return Err(Error::param(format!(
                "duplicate sequence {}",
                to_hex_sequence(&entry.sequence)
            )));
        }
        self.entries.insert(entry.sequence.clone(), entry);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, sequence: &str) -> Option<&EmojiLexiconEntry> {
        self.entries.get(sequence)
    }

    /// Looks up an emoji: exact sequence, then the sequence with
    /// presentation selectors and skin-tone modifiers removed, then the
    /// first code point alone.
    pub fn lookup(&self, sequence: &str) -> Option<&EmojiLexiconEntry> {
        if let Some(e) = self.entries.get(sequence) {
            return Some(e);
        }
        let stripped: String = sequence.chars().filter(|c| !is_modifier(*c)).collect();
        if let Some(e) = self.entries.get(&stripped) {
            return Some(e);
        }
        let first = sequence.chars().next()?;
        let mut buf = [0u8; 4];
        self.entries.get(&*first.encode_utf8(&mut buf))
    }

    /// Sentiment score of an emoji, 0 for unknown ones.
    pub fn score(&self, sequence: &str) -> f64 {
        self.lookup(sequence).map_or(0.0, |e| e.score)
    }
}

fn is_modifier(c: char) -> bool {
    matches!(c, '\u{FE0E}' | '\u{FE0F}' | '\u{1F3FB}'..='\u{1F3FF}')
}

fn parse_hex_sequence(field: &str) -> std::result::Result<String, String> {
    let mut out = String::new();
    for part in field.split_whitespace() {
        let hex = part
            .trim_start_matches("U+")
            .trim_start_matches("0x")
            .trim_start_matches("0X");
        let cp = u32::from_str_radix(hex, 16).map_err(|_| format!("bad code point {part:?}"))?;
        let ch = char::from_u32(cp).ok_or_else(|| format!("invalid code point {part:?}"))?;
        out.push(ch);
    }
    if out.is_empty() {
        return Err("empty sequence_hex".into());
    }
    Ok(out)
}

pub fn to_hex_sequence(seq: &str) -> String {
    seq.chars()
        .map(|c| format!("{:X}", c as u32))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Emoji occurrences in order, one item per grapheme cluster.
pub fn detect(text: &SegmentedText) -> Vec<&str> {
    text.segments
        .iter()
        .filter(|s| s.kind == SegmentKind::Emoji)
        .map(|s| s.content.as_str())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EmojiFeatureBlock {
    pub n_emoji: usize,
    pub avg_score: f64,
    pub n_positive: usize,
    pub n_negative: usize,
}

impl EmojiFeatureBlock {
    pub fn to_array(self) -> [f64; 4] {
        [
            self.n_emoji as f64,
            self.avg_score,
            self.n_positive as f64,
            self.n_negative as f64,
        ]
    }
}

/// Computes the four emoji features over every occurrence in `emoji`.
/// Unknown emoji score 0: they count toward `n_emoji` only.
pub fn emoji_features<S: AsRef<str>>(emoji: &[S], lexicon: &EmojiLexicon) -> EmojiFeatureBlock {
    if emoji.is_empty() {
        return EmojiFeatureBlock::default();
    }
    let mut scores: Vec<f64> = emoji.iter().map(|e| lexicon.score(e.as_ref())).collect();
    // Sum in sorted order so the mean does not depend on occurrence order.
    scores.sort_by(f64::total_cmp);
    let sum: f64 = scores.iter().sum();
    EmojiFeatureBlock {
        n_emoji: scores.len(),
        avg_score: (sum / scores.len() as f64).clamp(-1.0, 1.0),
        n_positive: scores.iter().filter(|s| **s > 0.0).count(),
        n_negative: scores.iter().filter(|s| **s < 0.0).count(),
    }
}
