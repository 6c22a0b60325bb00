use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Opinion class. The task is binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Positive, Label::Negative];

    pub fn index(self) -> usize {
        match self {
            Label::Positive => 0,
            Label::Negative => 1,
        }
    }

    pub fn from_index(idx: usize) -> Option<Label> {
        Label::ALL.get(idx).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Positive => "positive",
            Label::Negative => "negative",
        }
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(Label::Positive),
            "negative" => Ok(Label::Negative),
            other => Err(Error::param(format!("unknown label {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Script {
    Latin,
    Cyrillic,
    Mixed,
}

impl Script {
    pub const ALL: [Script; 3] = [Script::Latin, Script::Cyrillic, Script::Mixed];

    pub fn as_str(self) -> &'static str {
        match self {
            Script::Latin => "latin",
            Script::Cyrillic => "cyrillic",
            Script::Mixed => "mixed",
        }
    }
}

/// The closed 15-category Uzbek part-of-speech tagset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosTag {
    Noun,
    ProperNoun,
    Verb,
    Adjective,
    Numeral,
    Pronoun,
    Adverb,
    HelpingWord,
    CoordConj,
    SubordConj,
    Modal,
    Imitative,
    Interjection,
    Auxiliary,
    #[serde(alias = "x")]
    OtherX,
}

impl PosTag {
    pub const ALL: [PosTag; 15] = [
        PosTag::Noun,
        PosTag::ProperNoun,
        PosTag::Verb,
        PosTag::Adjective,
        PosTag::Numeral,
        PosTag::Pronoun,
        PosTag::Adverb,
        PosTag::HelpingWord,
        PosTag::CoordConj,
        PosTag::SubordConj,
        PosTag::Modal,
        PosTag::Imitative,
        PosTag::Interjection,
        PosTag::Auxiliary,
        PosTag::OtherX,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PosTag::Noun => "noun",
            PosTag::ProperNoun => "proper_noun",
            PosTag::Verb => "verb",
            PosTag::Adjective => "adjective",
            PosTag::Numeral => "numeral",
            PosTag::Pronoun => "pronoun",
            PosTag::Adverb => "adverb",
            PosTag::HelpingWord => "helping_word",
            PosTag::CoordConj => "coord_conj",
            PosTag::SubordConj => "subord_conj",
            PosTag::Modal => "modal",
            PosTag::Imitative => "imitative",
            PosTag::Interjection => "interjection",
            PosTag::Auxiliary => "auxiliary",
            PosTag::OtherX => "other_x",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub t: String,
    pub pos: PosTag,
}

/// One annotated review comment, as stored in a dataset JSONL line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPost {
    pub id: String,
    pub text: String,
    pub script: Script,
    #[serde(default)]
    pub tokens: Vec<TaggedToken>,
    pub label: Label,
}

impl RawPost {
    pub fn pos_tags(&self) -> impl Iterator<Item = PosTag> + '_ {
        self.tokens.iter().map(|t| t.pos)
    }

    /// Checks the structural invariants: non-empty text, and a POS list
    /// that is only empty when the text has no words.
    pub fn validate(&self) -> Result<(), Error> {
        if self.text.is_empty() {
            return Err(Error::InvalidPost {
                id: self.id.clone(),
                message: "empty text".into(),
            });
        }
        if self.tokens.is_empty() {
            let latin = super::transliterate(&self.text).text;
            let words = super::segment(&latin).words().count();
            if words > 0 {
                return Err(Error::InvalidPost {
                    id: self.id.clone(),
                    message: format!("{words} word(s) but no POS tags"),
                });
            }
        }
        Ok(())
    }
}
