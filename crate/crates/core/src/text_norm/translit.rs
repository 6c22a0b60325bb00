//! Rule-table transliteration from Uzbek Cyrillic to the Latin alphabet.
//!
//! The table is a plain TSV file (`source<TAB>replacement[<TAB>context]`),
//! one row per lowercase source letter. Capitalization of the input is
//! reapplied to the replacement, so `Ш` becomes `Sh` inside a capitalized
//! word and `SH` inside an all-caps one.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};

const DEFAULT_TABLE: &str = include_str!("../../data/uz_cyrl_latn.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleContext {
    /// Applies at the start of a word or right after a vowel (or ъ/ь).
    WordInitialOrAfterVowel,
}

impl RuleContext {
    fn parse(flag: &str) -> Option<Self> {
        match flag {
            "word_initial_or_after_vowel" => Some(RuleContext::WordInitialOrAfterVowel),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Rule {
    default: Option<String>,
    contextual: Vec<(RuleContext, String)>,
}

/// A Cyrillic code point the table has no row for. It is copied through
/// to the output unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unmapped {
    pub ch: char,
    pub char_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transliteration {
    pub text: String,
    pub unmapped: Vec<Unmapped>,
}

#[derive(Debug, Clone)]
pub struct Transliterator {
    rules: HashMap<char, Rule>,
}

impl Transliterator {
    /// The bundled Uzbek table.
    pub fn uzbek() -> &'static Transliterator {
        static DEFAULT: OnceLock<Transliterator> = OnceLock::new();
        DEFAULT.get_or_init(|| {
            Transliterator::from_table_str(DEFAULT_TABLE).expect("bundled transliteration table")
        })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let body = std::fs::read_to_string(path)?;
        Self::from_table_str(&body).map_err(|e| match e {
            Error::Validation { line, message } => Error::Parse {
                path: path.to_path_buf(),
                line,
                message,
            },
            other => other,
        })
    }

    pub fn from_table_str(table: &str) -> Result<Self> {
        let mut rules: HashMap<char, Rule> = HashMap::new();
        for (idx, raw) in table.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() || raw.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = raw.split('\t').collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(Error::Validation {
                    line,
                    message: format!("expected 2 or 3 tab-separated fields, got {}", fields.len()),
                });
            }
            let mut chars = fields[0].chars();
            let source = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => {
                    return Err(Error::Validation {
                        line,
                        message: format!("source must be a single code point: {:?}", fields[0]),
                    })
                }
            };
            let source = single_lower(source);
            let replacement = fields[1].to_string();
            let rule = rules.entry(source).or_default();
            match fields.get(2).map(|f| f.trim()).filter(|f| !f.is_empty()) {
                None => {
                    if rule.default.is_some() {
                        return Err(Error::Validation {
                            line,
                            message: format!("duplicate rule for {source:?}"),
                        });
                    }
                    rule.default = Some(replacement);
                }
                Some(flag) => {
                    let ctx = RuleContext::parse(flag).ok_or_else(|| Error::Validation {
                        line,
                        message: format!("unknown context flag {flag:?}"),
                    })?;
                    rule.contextual.push((ctx, replacement));
                }
            }
        }
        if let Some((c, _)) = rules.iter().find(|(_, r)| r.default.is_none()) {
            return Err(Error::Validation {
                line: 0,
                message: format!("{c:?} has contextual rules but no default"),
            });
        }
        Ok(Transliterator { rules })
    }

    pub fn transliterate(&self, text: &str) -> Transliteration {
        let chars: Vec<char> = text.chars().collect();
        let mut out = String::with_capacity(text.len() + text.len() / 4);
        let mut unmapped = Vec::new();

        for (i, &c) in chars.iter().enumerate() {
            let lower = single_lower(c);
            let Some(rule) = self.rules.get(&lower) else {
                if is_cyrillic(c) {
                    unmapped.push(Unmapped {
                        ch: c,
                        char_index: i,
                    });
                }
                out.push(c);
                continue;
            };

            let prev = i.checked_sub(1).map(|j| chars[j]);
            let replacement = rule
                .contextual
                .iter()
                .find(|(ctx, _)| context_holds(*ctx, prev))
                .map(|(_, r)| r.as_str())
                .or(rule.default.as_deref())
                .unwrap_or_default();

            if c.is_uppercase() {
                let next = chars.get(i + 1).copied();
                if shout_case(prev, next) {
                    out.extend(replacement.chars().flat_map(char::to_uppercase));
                } else {
                    let mut rc = replacement.chars();
                    if let Some(first) = rc.next() {
                        out.extend(first.to_uppercase());
                        out.extend(rc);
                    }
                }
            } else {
                out.push_str(replacement);
            }
        }

        Transliteration {
            text: out,
            unmapped,
        }
    }
}

/// Converts with the bundled Uzbek table.
pub fn transliterate(text: &str) -> Transliteration {
    Transliterator::uzbek().transliterate(text)
}

fn single_lower(c: char) -> char {
    let mut lower = c.to_lowercase();
    match (lower.next(), lower.next()) {
        (Some(l), None) => l,
        _ => c,
    }
}

pub(crate) fn is_cyrillic(c: char) -> bool {
    matches!(c, '\u{0400}'..='\u{052F}' | '\u{1C80}'..='\u{1C8F}' | '\u{2DE0}'..='\u{2DFF}' | '\u{A640}'..='\u{A69F}')
}

fn is_vowel_like(c: char) -> bool {
    matches!(
        single_lower(c),
        'а' | 'е'
            | 'ё'
            | 'и'
            | 'о'
            | 'у'
            | 'ў'
            | 'э'
            | 'ю'
            | 'я'
            | 'ы'
            | 'ъ'
            | 'ь'
            | 'a'
            | 'e'
            | 'i'
            | 'o'
            | 'u'
    )
}

fn context_holds(ctx: RuleContext, prev: Option<char>) -> bool {
    match ctx {
        RuleContext::WordInitialOrAfterVowel => match prev {
            None => true,
            Some(p) => !p.is_alphabetic() || is_vowel_like(p),
        },
    }
}

// Multi-letter replacements of a capital go all-caps when a neighbouring
// letter is also capital ("ШОҲ" -> "SHOH", but "Шоҳ" -> "Shoh").
fn shout_case(prev: Option<char>, next: Option<char>) -> bool {
    match next.filter(|n| n.is_alphabetic()) {
        Some(n) => n.is_uppercase(),
        None => prev.is_some_and(|p| p.is_alphabetic() && p.is_uppercase()),
    }
}
