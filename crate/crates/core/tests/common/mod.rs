//! Hand-annotated fixtures and a brute-force feature oracle that shares no
//! code with the library's extractor.
#![allow(dead_code)]

use uzsent_core::text_norm::TaggedToken;
use uzsent_core::{EmojiLexicon, Label, PosTag, RawPost, Script};

/// Scores: 😂 0.3, ❤ 1.0, 👍 0.5, 😊 0.375, 🔥 0.4, 😡 -0.6, 😍 0.8, 👎 -0.5, 🤔 0.0
pub const FIXTURE_LEXICON: &str = "sequence_hex,occurrences,neg,neut,pos
1F602,10,2,3,5
2764,4,0,0,4
1F44D,20,2,6,12
1F60A,8,1,3,4
1F525,10,1,4,5
1F621,10,7,2,1
1F60D,5,0,1,4
1F44E,10,6,3,1
1F914,4,1,2,1
";

pub fn fixture_lexicon() -> EmojiLexicon {
    EmojiLexicon::from_reader(FIXTURE_LEXICON.as_bytes()).unwrap()
}

pub struct Fixture {
    pub id: &'static str,
    pub text: &'static str,
    pub script: Script,
    /// Expected text after script conversion, written by hand.
    pub latin: &'static str,
    /// Emoji in order of appearance with their expected lexicon scores.
    pub emoji: &'static [(&'static str, f64)],
    pub tokens: &'static [(&'static str, PosTag)],
    pub label: Label,
}

impl Fixture {
    pub fn post(&self) -> RawPost {
        RawPost {
            id: self.id.into(),
            text: self.text.into(),
            script: self.script,
            tokens: self
                .tokens
                .iter()
                .map(|&(t, pos)| TaggedToken { t: t.into(), pos })
                .collect(),
            label: self.label,
        }
    }
}

use PosTag::*;

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        id: "latin-basic",
        text: "Zoʻr kino! 😂",
        script: Script::Latin,
        latin: "Zoʻr kino! 😂",
        emoji: &[("😂", 0.3)],
        tokens: &[("Zoʻr", Adjective), ("kino", Noun)],
        label: Label::Positive,
    },
    Fixture {
        id: "cyrillic-soft-sign",
        text: "Жуда яхши фильм 👍👍",
        script: Script::Cyrillic,
        latin: "Juda yaxshi film 👍👍",
        emoji: &[("👍", 0.5), ("👍", 0.5)],
        tokens: &[("Жуда", Adverb), ("яхши", Adjective), ("фильм", Noun)],
        label: Label::Positive,
    },
    Fixture {
        id: "cyrillic-ye-context",
        text: "Ерта келдим, ёмон эмас 😊",
        script: Script::Cyrillic,
        latin: "Yerta keldim, yomon emas 😊",
        emoji: &[("😊", 0.375)],
        tokens: &[
            ("Ерта", Adverb),
            ("келдим", Verb),
            ("ёмон", Adjective),
            ("эмас", Auxiliary),
        ],
        label: Label::Positive,
    },
    Fixture {
        id: "zwj-family",
        text: "Oilam bilan koʻrdik 👨\u{200D}👩\u{200D}👧 ❤\u{FE0F}",
        script: Script::Latin,
        latin: "Oilam bilan koʻrdik 👨\u{200D}👩\u{200D}👧 ❤\u{FE0F}",
        emoji: &[("👨\u{200D}👩\u{200D}👧", 0.0), ("❤\u{FE0F}", 1.0)],
        tokens: &[("Oilam", Noun), ("bilan", HelpingWord), ("koʻrdik", Verb)],
        label: Label::Positive,
    },
    Fixture {
        id: "zero-words",
        text: "😂😂❤",
        script: Script::Latin,
        latin: "😂😂❤",
        emoji: &[("😂", 0.3), ("😂", 0.3), ("❤", 1.0)],
        tokens: &[],
        label: Label::Positive,
    },
    Fixture {
        id: "single-emoji",
        text: "❤",
        script: Script::Latin,
        latin: "❤",
        emoji: &[("❤", 1.0)],
        tokens: &[],
        label: Label::Positive,
    },
    Fixture {
        id: "mixed-script",
        text: "Бу film zoʻr эди!!! 🔥",
        script: Script::Mixed,
        latin: "Bu film zoʻr edi!!! 🔥",
        emoji: &[("🔥", 0.4)],
        tokens: &[
            ("Бу", Pronoun),
            ("film", Noun),
            ("zoʻr", Adjective),
            ("эди", Auxiliary),
        ],
        label: Label::Positive,
    },
    Fixture {
        id: "digits-and-specials",
        text: "Narxi 25$ (juda qimmat) 😡",
        script: Script::Latin,
        latin: "Narxi 25$ (juda qimmat) 😡",
        emoji: &[("😡", -0.6)],
        tokens: &[("Narxi", Noun), ("juda", Adverb), ("qimmat", Adjective)],
        label: Label::Negative,
    },
    Fixture {
        id: "skin-tone",
        text: "Rahmat 👍🏽 aka",
        script: Script::Latin,
        latin: "Rahmat 👍🏽 aka",
        emoji: &[("👍🏽", 0.5)],
        tokens: &[("Rahmat", Interjection), ("aka", Noun)],
        label: Label::Positive,
    },
    Fixture {
        id: "hapax",
        text: "yaxshi yaxshi yaxshi kino kino zoʻr 😍",
        script: Script::Latin,
        latin: "yaxshi yaxshi yaxshi kino kino zoʻr 😍",
        emoji: &[("😍", 0.8)],
        tokens: &[
            ("yaxshi", Adjective),
            ("yaxshi", Adjective),
            ("yaxshi", Adjective),
            ("kino", Noun),
            ("kino", Noun),
            ("zoʻr", Adjective),
        ],
        label: Label::Positive,
    },
    Fixture {
        id: "shouting-cyrillic",
        text: "ЖУДА ЗЎР 😂",
        script: Script::Cyrillic,
        latin: "JUDA ZOʻR 😂",
        emoji: &[("😂", 0.3)],
        tokens: &[("ЖУДА", Adverb), ("ЗЎР", Adjective)],
        label: Label::Positive,
    },
    Fixture {
        id: "case-folding",
        text: "Kino kino KINO 👎",
        script: Script::Latin,
        latin: "Kino kino KINO 👎",
        emoji: &[("👎", -0.5)],
        tokens: &[("Kino", Noun), ("kino", Noun), ("KINO", Noun)],
        label: Label::Negative,
    },
    Fixture {
        id: "edge-apostrophes",
        text: "'salom' dunyo 🙂",
        script: Script::Latin,
        latin: "'salom' dunyo 🙂",
        emoji: &[("🙂", 0.0)],
        tokens: &[("salom", Interjection), ("dunyo", Noun)],
        label: Label::Positive,
    },
    Fixture {
        id: "keycap-and-digits",
        text: "1 2 3 #\u{FE0F}\u{20E3} raqam 🤔",
        script: Script::Latin,
        latin: "1 2 3 #\u{FE0F}\u{20E3} raqam 🤔",
        emoji: &[("#\u{FE0F}\u{20E3}", 0.0), ("🤔", 0.0)],
        tokens: &[("raqam", Noun)],
        label: Label::Negative,
    },
    Fixture {
        id: "cyrillic-hard-sign",
        text: "Шеър ва санъат — ажойиб! 😍 😡",
        script: Script::Cyrillic,
        latin: "Sheʼr va sanʼat — ajoyib! 😍 😡",
        emoji: &[("😍", 0.8), ("😡", -0.6)],
        tokens: &[
            ("Шеър", Noun),
            ("ва", CoordConj),
            ("санъат", Noun),
            ("ажойиб", Adjective),
        ],
        label: Label::Positive,
    },
];

const SPECIAL: &str = "()[]{}-/&|^_#%+*@$~=«»<>";
const PUNCT: &str = ".,!?:;";
const APOSTROPHES: &str = "'‘’`ʻʼ";
const EMOJI_MARK: char = '\u{E000}';

/// All 42 features of a fixture, computed from its hand-written Latin text
/// and emoji annotations. Assumes one grapheme per remaining code point,
/// which holds for every fixture.
pub fn oracle(fx: &Fixture) -> Vec<f64> {
    // Swap each annotated emoji for a single placeholder, left to right.
    let mut text = String::new();
    let mut rest = fx.latin;
    for (e, _) in fx.emoji {
        let at = rest
            .find(e)
            .unwrap_or_else(|| panic!("{}: emoji {e:?} not found in order", fx.id));
        text.push_str(&rest[..at]);
        text.push(EMOJI_MARK);
        rest = &rest[at + e.len()..];
    }
    text.push_str(rest);
    let chars: Vec<char> = text.chars().collect();

    let total = chars.len() as f64;
    let no_space = chars.iter().filter(|c| !c.is_whitespace()).count() as f64;
    let special = chars.iter().filter(|c| SPECIAL.contains(**c)).count() as f64;
    let lower = chars.iter().filter(|c| c.is_lowercase()).count() as f64;
    let upper = chars.iter().filter(|c| c.is_uppercase()).count() as f64;
    let digits = chars.iter().filter(|c| c.is_ascii_digit()).count() as f64;
    let punct = chars.iter().filter(|c| PUNCT.contains(**c)).count() as f64;

    // Words: maximal runs of letters/digits/apostrophes, edge apostrophes
    // trimmed, keeping runs with at least one letter.
    let mut words: Vec<Vec<char>> = Vec::new();
    let mut run: Vec<char> = Vec::new();
    let flush = |run: &mut Vec<char>, words: &mut Vec<Vec<char>>| {
        while run.first().is_some_and(|c| APOSTROPHES.contains(*c)) {
            run.remove(0);
        }
        while run.last().is_some_and(|c| APOSTROPHES.contains(*c)) {
            run.pop();
        }
        if run
            .iter()
            .any(|c| c.is_alphabetic() && !APOSTROPHES.contains(*c))
        {
            words.push(run.clone());
        }
        run.clear();
    };
    for &c in &chars {
        let inside =
            c != EMOJI_MARK && (APOSTROPHES.contains(c) || c.is_alphabetic() || c.is_ascii_digit());
        if inside {
            run.push(c);
        } else {
            flush(&mut run, &mut words);
        }
    }
    flush(&mut run, &mut words);

    let mut f = vec![total, no_space, special, lower, upper, digits];
    let n = words.len();
    if n == 0 {
        f.extend([0.0; 13]);
        f.push(punct);
        f.extend([0.0; 3]);
    } else {
        let lens: Vec<f64> = words.iter().map(|w| w.len() as f64).collect();
        let folded: Vec<String> = words
            .iter()
            .map(|w| w.iter().collect::<String>().to_lowercase())
            .collect();
        let mut uniq: Vec<&String> = Vec::new();
        for w in &folded {
            if !uniq.contains(&w) {
                uniq.push(w);
            }
        }
        let count = |w: &String| folded.iter().filter(|x| *x == w).count();
        let uniq_mean =
            uniq.iter().map(|w| w.chars().count() as f64).sum::<f64>() / uniq.len() as f64;

        let nf = n as f64;
        let mean = lens.iter().sum::<f64>() / nf;
        let m = |p: i32| lens.iter().map(|l| (l - mean).powi(p)).sum::<f64>() / nf;
        let (m2, m3, m4) = (m(2), m(3), m(4));
        let (skew, kurt) = if n < 2 || m2 == 0.0 {
            (0.0, 0.0)
        } else {
            (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
        };
        let mut sorted = lens.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pct = |p: f64| {
            let r = (nf - 1.0) * p;
            let lo = r.floor() as usize;
            let hi = r.ceil() as usize;
            sorted[lo] + (sorted[hi] - sorted[lo]) * (r - lo as f64)
        };

        f.extend([
            nf,
            uniq.len() as f64,
            uniq_mean,
            sorted[n - 1],
            sorted[0],
            mean,
            m2.sqrt(),
            m2,
            kurt,
            skew,
            pct(0.25),
            pct(0.5),
            pct(0.75),
            punct,
            lens.iter().filter(|&&l| l < 4.0).count() as f64,
            uniq.iter().filter(|w| count(w) == 1).count() as f64,
            uniq.iter().filter(|w| count(w) == 2).count() as f64,
        ]);
    }

    for tag in PosTag::ALL {
        f.push(fx.tokens.iter().filter(|(_, t)| *t == tag).count() as f64);
    }

    let ne = fx.emoji.len() as f64;
    let avg = if fx.emoji.is_empty() {
        0.0
    } else {
        fx.emoji.iter().map(|(_, s)| s).sum::<f64>() / ne
    };
    f.push(ne);
    f.push(avg);
    f.push(fx.emoji.iter().filter(|(_, s)| *s > 0.0).count() as f64);
    f.push(fx.emoji.iter().filter(|(_, s)| *s < 0.0).count() as f64);
    f
}

/// Cyrillic → Latin word pairs checked by hand against the rule table.
pub const TRANSLIT_PAIRS: &[(&str, &str)] = &[
    ("кино", "kino"),
    ("Ўзбек", "Oʻzbek"),
    ("шаҳар", "shahar"),
    ("чой", "choy"),
    ("ғалаба", "gʻalaba"),
    ("қиз", "qiz"),
    ("ёз", "yoz"),
    ("юлдуз", "yulduz"),
    ("япроқ", "yaproq"),
    ("цирк", "tsirk"),
    ("маъно", "maʼno"),
    ("ер", "yer"),
    ("белги", "belgi"),
    ("оила", "oila"),
    ("поезд", "poyezd"),
    ("театр", "teatr"),
    ("мактаб", "maktab"),
    ("хат", "xat"),
    ("жавоб", "javob"),
    ("шеър", "sheʼr"),
    ("ҳаёт", "hayot"),
    ("ўқитувчи", "oʻqituvchi"),
    ("Тошкент", "Toshkent"),
    ("ЎЗБЕКИСТОН", "OʻZBEKISTON"),
    ("фильм", "film"),
    ("Ернинг", "Yerning"),
    ("Шаҳло", "Shahlo"),
    ("ЧОЙ", "CHOY"),
];
