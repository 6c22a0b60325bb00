mod common;

use proptest::prelude::*;
use unicode_segmentation::UnicodeSegmentation;
use uzsent_core::emoji_lex::detect;
use uzsent_core::text_norm::{segment, transliterate, SegmentKind};

#[test]
fn word_pairs() {
    assert!(common::TRANSLIT_PAIRS.len() >= 20);
    for (cyr, lat) in common::TRANSLIT_PAIRS {
        let t = transliterate(cyr);
        assert_eq!(t.text, *lat, "{cyr}");
        assert!(t.unmapped.is_empty());
    }
}

#[test]
fn latin_passes_through() {
    for s in ["film", "Oʻzbekiston 2024!", "gʻalaba 😂👍🏽"] {
        assert_eq!(transliterate(s).text, s);
    }
}

#[test]
fn special_list_example() {
    let seg = segment("a-b (c)");
    let got: Vec<(SegmentKind, &str)> = seg
        .segments
        .iter()
        .map(|s| (s.kind, s.content.as_str()))
        .collect();
    use SegmentKind::*;
    assert_eq!(
        got,
        vec![
            (Word, "a"),
            (Special, "-"),
            (Word, "b"),
            (Special, "("),
            (Word, "c"),
            (Special, ")")
        ]
    );
}

#[test]
fn detect_examples() {
    assert_eq!(detect(&segment("😂😂❤")), vec!["😂", "😂", "❤"]);
    assert!(detect(&segment("kino")).is_empty());
    assert_eq!(detect(&segment("👩\u{200D}👩\u{200D}👧")).len(), 1);
}

fn mixed_char() -> impl Strategy<Value = char> {
    prop_oneof![
        prop::sample::select(
            "абвгдеёжзийклмнопрстуфхцчшщъыьэюяўқғҳАБВГДЕЁЖЗИЙКЛМНОПРСТУФХЦЧШЩЪЫЬЭЮЯЎҚҒҲ"
                .chars()
                .collect::<Vec<_>>()
        ),
        prop::sample::select(
            "abcdefghijklmnopqrstuvwxyzABCXYZʻʼ'"
                .chars()
                .collect::<Vec<_>>()
        ),
        prop::sample::select(" .,!?-()0123456789".chars().collect::<Vec<_>>()),
        prop::sample::select(
            [
                '😂',
                '❤',
                '\u{FE0F}',
                '\u{200D}',
                '👍',
                '\u{1F3FD}',
                'Ѣ',
                'Ї'
            ]
            .to_vec()
        ),
    ]
}

fn emoji_piece() -> impl Strategy<Value = String> {
    prop::sample::select(vec![
        "👨\u{200D}👩\u{200D}👧\u{200D}👦".to_string(),
        "👩\u{200D}❤\u{FE0F}\u{200D}👨".to_string(),
        "👍🏽".to_string(),
        "🧑🏿\u{200D}💻".to_string(),
        "🏳\u{FE0F}\u{200D}🌈".to_string(),
        "❤\u{FE0F}".to_string(),
        "😂".to_string(),
        "kino".to_string(),
        " ".to_string(),
        "zoʻr!".to_string(),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn transliteration_is_idempotent(s in prop::collection::vec(mixed_char(), 0..40)) {
        let s: String = s.into_iter().collect();
        let once = transliterate(&s).text;
        prop_assert_eq!(transliterate(&once).text, once);
    }

    #[test]
    fn no_mappable_cyrillic_survives(s in prop::collection::vec(mixed_char(), 0..40)) {
        let s: String = s.into_iter().collect();
        let t = transliterate(&s);
        for c in t.text.chars() {
            let cyrillic = ('\u{0400}'..='\u{04FF}').contains(&c);
            prop_assert!(!cyrillic || t.unmapped.iter().any(|u| u.ch == c), "{c}");
        }
    }

    #[test]
    fn segments_partition_graphemes(s in prop::collection::vec(mixed_char(), 0..40)) {
        let s: String = s.into_iter().collect();
        let latin = transliterate(&s).text;
        let seg = segment(&latin);
        let spaces = latin.graphemes(true).filter(|g| g.chars().all(char::is_whitespace)).count();
        let covered: usize = seg.segments.iter().map(|x| x.graphemes).sum();
        prop_assert_eq!(covered + spaces, seg.graphemes_total);
        prop_assert_eq!(seg.graphemes_total - spaces, seg.graphemes_no_space);
        // Concatenating segments reproduces the text minus whitespace.
        let joined: String = seg.segments.iter().map(|x| x.content.as_str()).collect();
        let stripped: String = latin
            .graphemes(true)
            .filter(|g| !g.chars().all(char::is_whitespace))
            .collect();
        prop_assert_eq!(joined, stripped);
    }

    #[test]
    fn emoji_sequences_stay_whole(parts in prop::collection::vec(emoji_piece(), 1..12)) {
        let text: String = parts.concat();
        let seg = segment(&text);
        for e in seg.emoji() {
            prop_assert_eq!(e.content.graphemes(true).count(), 1);
        }
        let expected = parts.iter().filter(|p| !p.is_ascii() && !p.contains('ʻ')).count();
        prop_assert_eq!(seg.emoji().count(), expected);
    }
}
