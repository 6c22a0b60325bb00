//! Dataset JSONL reading/writing and corpus statistics.
//!
//! One post per line:
//!
//! ```text
//! {"id":"p1","text":"Zoʻr kino! 😂","script":"latin","tokens":[{"t":"Zoʻr","pos":"adjective"},{"t":"kino","pos":"noun"}],"label":"positive"}
//! ```

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::emoji_lex::detect;
use crate::error::{Error, Result};
use crate::text_norm::{normalize, transliterate, Label, RawPost, Script};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestStats {
    pub posts_by_script: BTreeMap<String, usize>,
    pub total_posts: usize,
    pub positive_posts: usize,
    pub negative_posts: usize,
    pub min_emoji: usize,
    pub max_emoji: usize,
    pub mean_emoji: f64,
    /// Posts that would fail the at-least-one-emoji corpus filter.
    pub zero_emoji_posts: Vec<String>,
    /// Cyrillic code points the transliteration table could not map.
    pub unmapped_cyrillic: usize,
}

impl IngestStats {
    pub fn compute(posts: &[RawPost]) -> IngestStats {
        let mut by_script: BTreeMap<String, usize> = Script::ALL
            .iter()
            .map(|s| (s.as_str().to_string(), 0))
            .collect();
        let mut positive = 0;
        let mut emoji_counts = Vec::with_capacity(posts.len());
        let mut zero = Vec::new();
        let mut unmapped = 0;
        for p in posts {
            *by_script.entry(p.script.as_str().to_string()).or_default() += 1;
            positive += (p.label == Label::Positive) as usize;
            unmapped += transliterate(&p.text).unmapped.len();
            let n = detect(&normalize(&p.text)).len();
            if n == 0 {
                zero.push(p.id.clone());
            }
            emoji_counts.push(n);
        }
        let total: usize = emoji_counts.iter().sum();
        IngestStats {
            posts_by_script: by_script,
            total_posts: posts.len(),
            positive_posts: positive,
            negative_posts: posts.len() - positive,
            min_emoji: emoji_counts.iter().copied().min().unwrap_or(0),
            max_emoji: emoji_counts.iter().copied().max().unwrap_or(0),
            mean_emoji: if posts.is_empty() {
                0.0
            } else {
                total as f64 / posts.len() as f64
            },
            zero_emoji_posts: zero,
            unmapped_cyrillic: unmapped,
        }
    }

    /// `characteristic,value` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("characteristic,value\n");
        for s in Script::ALL {
            let n = self.posts_by_script.get(s.as_str()).copied().unwrap_or(0);
            out.push_str(&format!("posts_{},{}\n", s.as_str(), n));
        }
        out.push_str(&format!("total_posts,{}\n", self.total_posts));
        out.push_str(&format!("positive_posts,{}\n", self.positive_posts));
        out.push_str(&format!("negative_posts,{}\n", self.negative_posts));
        out.push_str(&format!("min_emoji_per_post,{}\n", self.min_emoji));
        out.push_str(&format!("max_emoji_per_post,{}\n", self.max_emoji));
        out.push_str(&format!("mean_emoji_per_post,{:.2}\n", self.mean_emoji));
        out.push_str(&format!(
            "posts_without_emoji,{}\n",
            self.zero_emoji_posts.len()
        ));
        out.push_str(&format!(
            "unmapped_cyrillic_chars,{}\n",
            self.unmapped_cyrillic
        ));
        out
    }
}

pub fn read_dataset<R: Read>(reader: R, origin: &Path) -> Result<Vec<RawPost>> {
    let mut posts = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: origin.to_path_buf(),
            line: line_no,
            message,
        };
        let post: RawPost = serde_json::from_str(&line).map_err(|e| parse_err(e.to_string()))?;
        post.validate().map_err(|e| parse_err(e.to_string()))?;
        posts.push(post);
    }
    Ok(posts)
}

/// Reads and validates a dataset file, returning posts and Table-1 style
/// statistics.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<(Vec<RawPost>, IngestStats)> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    let posts = read_dataset(file, path)?;
    let stats = IngestStats::compute(&posts);
    Ok((posts, stats))
}

pub fn write_dataset<W: Write>(mut out: W, posts: &[RawPost]) -> Result<()> {
    for p in posts {
        serde_json::to_writer(&mut out, p)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
