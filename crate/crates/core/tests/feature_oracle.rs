mod common;

use common::{fixture_lexicon, oracle, FIXTURES};
use uzsent_core::features::{N_FEATURES, N_FEATURES_NO_EMOJI};
use uzsent_core::text_norm::transliterate;
use uzsent_core::{assemble, FeatureExtractor, Schema};

#[test]
fn fixture_corpus_shape() {
    assert!(FIXTURES.len() >= 10);
    let scripts: std::collections::HashSet<_> = FIXTURES.iter().map(|f| f.script).collect();
    assert!(scripts.len() >= 2);
    assert!(FIXTURES.iter().any(|f| f.tokens.is_empty()));
    assert!(FIXTURES
        .iter()
        .any(|f| f.emoji.iter().any(|(e, _)| e.contains('\u{200D}'))));
    for f in FIXTURES {
        f.post().validate().unwrap();
    }
}

#[test]
fn hand_latin_matches_transliteration() {
    for f in FIXTURES {
        assert_eq!(transliterate(f.text).text, f.latin, "{}", f.id);
    }
}

#[test]
fn every_feature_matches_oracle() {
    let lex = fixture_lexicon();
    let schema = Schema::post(true);
    for f in FIXTURES {
        let got = assemble(&f.post(), &lex, true);
        let want = oracle(f);
        assert_eq!(got.values.len(), N_FEATURES);
        assert_eq!(want.len(), N_FEATURES);
        for (j, (g, w)) in got.values.iter().zip(&want).enumerate() {
            assert!(
                (g - w).abs() <= 1e-9,
                "{}: {} = {g}, oracle {w}",
                f.id,
                schema.defs()[j].name
            );
        }
    }
}

#[test]
fn ablated_vector_is_a_prefix() {
    let lex = fixture_lexicon();
    let full = FeatureExtractor::new(&lex, true);
    let short = FeatureExtractor::new(&lex, false);
    for f in FIXTURES {
        let a = full.extract(&f.post());
        let b = short.extract(&f.post());
        assert_eq!(b.values.len(), N_FEATURES_NO_EMOJI);
        assert_eq!(&a.values[..N_FEATURES_NO_EMOJI], &b.values[..]);
    }
}

#[test]
fn vector_invariants() {
    let lex = fixture_lexicon();
    for f in FIXTURES {
        let v = assemble(&f.post(), &lex, true).values;
        assert!(v.iter().all(|x| x.is_finite()));
        assert!(v[1] <= v[0]);
        assert!(v[7] <= v[6]);
        assert!(v[21] + 2.0 * v[22] <= v[6]);
        if v[6] > 0.0 {
            assert!(v[16] <= v[17] && v[17] <= v[18], "{}", f.id);
            assert!(v[10] <= v[11] && v[11] <= v[9], "{}", f.id);
        }
        assert!(v[40] + v[41] <= v[38]);
        assert!((-1.0..=1.0).contains(&v[39]));
        // POS counts sum to the token count.
        assert_eq!(v[23..38].iter().sum::<f64>(), f.tokens.len() as f64);
    }
}

#[test]
fn extraction_is_deterministic() {
    let lex = fixture_lexicon();
    let posts: Vec<_> = FIXTURES.iter().map(|f| f.post()).collect();
    let ex = FeatureExtractor::new(&lex, true);
    assert_eq!(ex.extract_all(&posts), ex.extract_all(&posts));
}
