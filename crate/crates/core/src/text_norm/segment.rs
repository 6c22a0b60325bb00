//! Splits Latin-script text into typed units over extended grapheme clusters.

use serde::{Deserialize, Serialize};
use unicode_properties::UnicodeEmoji;
use unicode_segmentation::UnicodeSegmentation;

/// Characters counted as punctuation.
pub const PUNCTUATION: [char; 6] = ['.', ',', '!', '?', ':', ';'];

/// Characters counted as "special".
pub const SPECIAL: [char; 24] = [
    '(', ')', '[', ']', '{', '}', '-', '/', '&', '|', '^', '_', '#', '%', '+', '*', '@', '$', '~',
    '=', '«', '»', '<', '>',
];

// Apostrophe-like marks that stay inside a word (oʻ, gʻ, sanʼat, ...).
const WORD_APOSTROPHES: [char; 6] = ['\'', '\u{2018}', '\u{2019}', '`', '\u{02BB}', '\u{02BC}'];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    Word,
    Punctuation,
    Special,
    DigitRun,
    Emoji,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub kind: SegmentKind,
    pub content: String,
    /// Length in grapheme clusters.
    pub graphemes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SegmentedText {
    pub graphemes_total: usize,
    pub graphemes_no_space: usize,
    pub segments: Vec<Segment>,
}

impl SegmentedText {
    pub fn words(&self) -> impl Iterator<Item = &Segment> {
        self.of_kind(SegmentKind::Word)
    }

    pub fn emoji(&self) -> impl Iterator<Item = &Segment> {
        self.of_kind(SegmentKind::Emoji)
    }

    pub fn of_kind(&self, kind: SegmentKind) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(move |s| s.kind == kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Unit {
    Space,
    Emoji,
    Letter,
    Digit,
    Apostrophe,
    Punctuation,
    Special,
    Other,
}

/// Whether a grapheme cluster is an emoji: its first code point carries the
/// Unicode `Emoji` property. Bare digits, `#` and `*` (which also carry it)
/// only count when followed by VS16 or the keycap mark.
pub fn is_emoji_cluster(cluster: &str) -> bool {
    let mut chars = cluster.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !first.is_emoji_char() {
        return false;
    }
    if first.is_ascii_digit() || first == '#' || first == '*' {
        return cluster.chars().any(|c| c == '\u{FE0F}' || c == '\u{20E3}');
    }
    true
}

fn classify(cluster: &str) -> Unit {
    let first = cluster.chars().next().unwrap_or(' ');
    if cluster.chars().all(char::is_whitespace) {
        return Unit::Space;
    }
    if is_emoji_cluster(cluster) {
        return Unit::Emoji;
    }
    if WORD_APOSTROPHES.contains(&first) {
        Unit::Apostrophe
    } else if PUNCTUATION.contains(&first) {
        Unit::Punctuation
    } else if SPECIAL.contains(&first) {
        Unit::Special
    } else if first.is_alphabetic() {
        Unit::Letter
    } else if first.is_numeric() {
        Unit::Digit
    } else {
        Unit::Other
    }
}

/// Segments `text` into words, digit runs, punctuation, special characters,
/// emoji and everything else. Whitespace is counted but not kept.
///
/// A word is a maximal run of letters, digits and internal apostrophes that
/// contains at least one letter. Apostrophes at either edge of a run are
/// split off as `Other`.
pub fn segment(text: &str) -> SegmentedText {
    let clusters: Vec<(&str, Unit)> = text.graphemes(true).map(|g| (g, classify(g))).collect();
    let mut out = SegmentedText {
        graphemes_total: clusters.len(),
        graphemes_no_space: clusters.iter().filter(|(_, u)| *u != Unit::Space).count(),
        segments: Vec::new(),
    };

    let mut i = 0;
    while i < clusters.len() {
        let (g, unit) = clusters[i];
        let single = |kind| Segment {
            kind,
            content: g.to_string(),
            graphemes: 1,
        };
        match unit {
            Unit::Space => i += 1,
            Unit::Emoji => {
                out.segments.push(single(SegmentKind::Emoji));
                i += 1;
            }
            Unit::Punctuation => {
                out.segments.push(single(SegmentKind::Punctuation));
                i += 1;
            }
            Unit::Special => {
                out.segments.push(single(SegmentKind::Special));
                i += 1;
            }
            Unit::Other => {
                out.segments.push(single(SegmentKind::Other));
                i += 1;
            }
            Unit::Letter | Unit::Digit | Unit::Apostrophe => {
                let mut end = i;
                while end < clusters.len()
                    && matches!(
                        clusters[end].1,
                        Unit::Letter | Unit::Digit | Unit::Apostrophe
                    )
                {
                    end += 1;
                }
                push_run(&clusters[i..end], &mut out.segments);
                i = end;
            }
        }
    }
    out
}

fn push_run(run: &[(&str, Unit)], segments: &mut Vec<Segment>) {
    let lead = run
        .iter()
        .take_while(|(_, u)| *u == Unit::Apostrophe)
        .count();
    let trail = run[lead..]
        .iter()
        .rev()
        .take_while(|(_, u)| *u == Unit::Apostrophe)
        .count();
    let core = &run[lead..run.len() - trail];

    let other = |(g, _): &(&str, Unit)| Segment {
        kind: SegmentKind::Other,
        content: g.to_string(),
        graphemes: 1,
    };
    segments.extend(run[..lead].iter().map(other));

    if !core.is_empty() {
        if core.iter().any(|(_, u)| *u == Unit::Letter) {
            segments.push(join(core, SegmentKind::Word));
        } else {
            // Digits with apostrophes between them; keep digit groups intact.
            let mut start = 0;
            for (j, (_, u)) in core.iter().enumerate() {
                if *u == Unit::Apostrophe {
                    if start < j {
                        segments.push(join(&core[start..j], SegmentKind::DigitRun));
                    }
                    segments.push(other(&core[j]));
                    start = j + 1;
                }
            }
            if start < core.len() {
                segments.push(join(&core[start..], SegmentKind::DigitRun));
            }
        }
    }

    segments.extend(run[run.len() - trail..].iter().map(other));
}

fn join(run: &[(&str, Unit)], kind: SegmentKind) -> Segment {
    Segment {
        kind,
        content: run.iter().map(|(g, _)| *g).collect(),
        graphemes: run.len(),
    }
}
