//! Benchmarks live in `benches/`. Run with `cargo bench -p uzsent-bench`.

use uzsent_core::synth::{corpus, synthetic_lexicon, CorpusConfig};
use uzsent_core::{Dataset, FeatureExtractor, RawPost};

/// Posts and the extracted 42-feature dataset for a planted corpus.
pub fn planted(seed: u64) -> (Vec<RawPost>, Dataset) {
    let posts = corpus(&CorpusConfig::planted(seed));
    let lex = synthetic_lexicon();
    let data = Dataset::from_vectors(FeatureExtractor::new(&lex, true).extract_all(&posts))
        .expect("synthetic corpus is well formed");
    (posts, data)
}
