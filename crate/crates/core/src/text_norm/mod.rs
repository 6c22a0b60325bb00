//! Script conversion and segmentation of raw review text.

mod post;
mod segment;
mod translit;

pub use post::{Label, PosTag, RawPost, Script, TaggedToken};
pub use segment::{
    is_emoji_cluster, segment, Segment, SegmentKind, SegmentedText, PUNCTUATION, SPECIAL,
};
pub use translit::{transliterate, RuleContext, Transliteration, Transliterator, Unmapped};

/// Transliterates and segments in one step, discarding transliteration warnings.
pub fn normalize(text: &str) -> SegmentedText {
    segment(&transliterate(text).text)
}
