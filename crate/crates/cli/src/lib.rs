//! The `uzsent` command line: dataset statistics, feature export, training,
//! prediction, cross-validation, the emoji ablation, ReliefF ranking and a
//! comment fetcher.

pub mod config;
pub mod fetch;
pub mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use uzsent_core::eval::cross_validate;
use uzsent_core::features::N_FEATURES;
use uzsent_core::{
    ablation, load_dataset, rank, train, Algorithm, ClassifierSpec, Dataset, EmojiLexicon,
    FeatureExtractor, IngestStats, RawPost, ReliefParams, TrainedModel,
};

use config::{parse_param, ClassifierEntry, ConfigFile, RunConfig};
use fetch::{fetch_comments, FetchRequest, HttpGet, UreqClient};
use output::Outputs;

#[derive(Debug, Parser)]
#[command(
    name = "uzsent",
    version,
    about = "Emoji-aware opinion classification for Uzbek reviews"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML run configuration; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Dataset JSONL, one post per line.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Emoji lexicon CSV.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Cross-validation folds (default 10).
    #[arg(long)]
    pub folds: Option<usize>,
    /// Drop the 4 emoji features (38-dimensional vectors).
    #[arg(long)]
    pub no_emoji: bool,
    /// Directory for report files (default: current directory).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Algorithm: knn, bayes, reptree or random_forest. Without it, the
    /// config's [[classifier]] entries are used.
    #[arg(long)]
    pub algorithm: Option<Algorithm>,
    /// Algorithm parameter as key=value; repeatable.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Corpus statistics: posts per script and class, emoji per post.
    Stats(RunArgs),
    /// Feature matrix CSV plus the schema dictionary.
    Features(RunArgs),
    /// Train one classifier on the whole dataset and save the model.
    Train {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        model: ModelArgs,
        /// Model path (default: <out-dir>/model.json).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Label posts with a saved model.
    Predict {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        model: PathBuf,
    },
    /// Stratified k-fold cross-validation.
    Evaluate {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Cross-validation with and without the emoji features.
    Ablate {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// ReliefF feature ranking.
    Rank {
        #[command(flatten)]
        run: RunArgs,
        /// Rows to report (default 10).
        #[arg(long)]
        top: Option<usize>,
        /// Nearest hits/misses per sample (default 10).
        #[arg(long)]
        k: Option<usize>,
        /// Sampled instances (default: all).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Download raw comment threads for a video as JSONL.
    Fetch {
        video_id: String,
        #[arg(long, env = "YOUTUBE_API_KEY", hide_env_values = true)]
        api_key: String,
        #[arg(long, default_value_t = 1)]
        max_pages: usize,
        #[arg(long)]
        output: PathBuf,
    },
}

/// Merges the config file (if any) with flags.
pub fn resolve(run: &RunArgs) -> Result<RunConfig> {
    let file = match &run.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let dataset = run
        .data
        .clone()
        .or(file.dataset)
        .context("a dataset is required: pass --data or set `dataset` in the config")?;
    let k_folds = run.folds.or(file.k_folds).unwrap_or(10);
    let cfg = RunConfig {
        dataset,
        lexicon: run.lexicon.clone().or(file.lexicon),
        seed: run.seed.or(file.seed),
        k_folds,
        include_emoji: !run.no_emoji && file.include_emoji.unwrap_or(true),
        output_dir: run
            .out_dir
            .clone()
            .or(file.output_dir)
            .unwrap_or_else(|| PathBuf::from(".")),
        classifiers: file.classifier,
        relieff: file.relieff,
    };
    if let (Some(path), None) = (&run.config, cfg.seed) {
        bail!("config {} has no `seed`", path.display());
    }
    cfg.check_inputs()?;
    Ok(cfg)
}

fn specs(cfg: &RunConfig, model: &ModelArgs) -> Result<Vec<ClassifierSpec>> {
    match model.algorithm {
        Some(algorithm) => {
            let params = model
                .params
                .iter()
                .map(|p| parse_param(p))
                .collect::<Result<_>>()?;
            let cfg = RunConfig {
                classifiers: vec![ClassifierEntry {
                    algorithm,
                    params,
                    seed: None,
                }],
                ..cfg.clone()
            };
            cfg.specs()
        }
        None if !model.params.is_empty() => bail!("--param needs --algorithm"),
        None => cfg.specs(),
    }
}

struct Loaded {
    posts: Vec<RawPost>,
    stats: IngestStats,
    lexicon: EmojiLexicon,
}

fn load(cfg: &RunConfig, need_lexicon: bool) -> Result<Loaded> {
    let (posts, stats) =
        load_dataset(&cfg.dataset).with_context(|| format!("loading {}", cfg.dataset.display()))?;
    if posts.is_empty() {
        bail!("dataset {} has no posts", cfg.dataset.display());
    }
    let lexicon = if need_lexicon {
        let path = cfg.lexicon()?;
        EmojiLexicon::load(path).with_context(|| format!("loading {}", path.display()))?
    } else {
        EmojiLexicon::default()
    };
    Ok(Loaded {
        posts,
        stats,
        lexicon,
    })
}

fn dataset(loaded: &Loaded, include_emoji: bool) -> Result<Dataset> {
    let vectors = FeatureExtractor::new(&loaded.lexicon, include_emoji).extract_all(&loaded.posts);
    Ok(Dataset::from_vectors(vectors)?)
}

fn warn_zero_emoji(stats: &IngestStats) {
    if !stats.zero_emoji_posts.is_empty() {
        let shown: Vec<&str> = stats
            .zero_emoji_posts
            .iter()
            .take(5)
            .map(String::as_str)
            .collect();
        eprintln!(
            "warning: {} post(s) contain no emoji (e.g. {})",
            stats.zero_emoji_posts.len(),
            shown.join(", ")
        );
    }
}

fn json(value: &impl serde::Serialize) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn feature_matrix_csv(posts: &[RawPost], data: &Dataset, include_emoji: bool) -> String {
    let mut out = format!(
        "# features={} include_emoji={include_emoji} posts={}\n",
        data.n_features(),
        data.len()
    );
    out.push_str("id,label");
    for name in data.schema().names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (i, p) in posts.iter().enumerate() {
        out.push_str(&csv_field(&p.id));
        out.push(',');
        out.push_str(p.label.as_str());
        for v in data.row(i) {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

fn suffix(include_emoji: bool) -> &'static str {
    if include_emoji {
        ""
    } else {
        "_no_emoji"
    }
}

/// Runs one command. Network access happens only in `fetch`, through
/// `http`.
pub fn run_with(cli: Cli, http: &dyn HttpGet) -> Result<Vec<PathBuf>> {
    let mut out = Outputs::default();
    match cli.command {
        Command::Stats(run) => {
            let cfg = resolve(&run)?;
            let loaded = load(&cfg, false)?;
            warn_zero_emoji(&loaded.stats);
            out.add(cfg.output_dir.join("stats.csv"), loaded.stats.to_csv());
            out.add(cfg.output_dir.join("stats.json"), json(&loaded.stats)?);
        }
        Command::Features(run) => {
            let cfg = resolve(&run)?;
            let loaded = load(&cfg, cfg.include_emoji)?;
            warn_zero_emoji(&loaded.stats);
            let data = dataset(&loaded, cfg.include_emoji)?;
            let sfx = suffix(cfg.include_emoji);
            out.add(
                cfg.output_dir.join(format!("features{sfx}.csv")),
                feature_matrix_csv(&loaded.posts, &data, cfg.include_emoji),
            );
            out.add(
                cfg.output_dir.join(format!("schema{sfx}.csv")),
                data.schema().to_csv(),
            );
        }
        Command::Train { run, model, output } => {
            let cfg = resolve(&run)?;
            let specs = specs(&cfg, &model)?;
            let [spec] = specs.as_slice() else {
                bail!(
                    "train needs exactly one classifier, got {}; use --algorithm",
                    specs.len()
                );
            };
            let loaded = load(&cfg, cfg.include_emoji)?;
            let data = dataset(&loaded, cfg.include_emoji)?;
            let m = train(spec, &data)?;
            let path = output.unwrap_or_else(|| cfg.output_dir.join("model.json"));
            out.add(path, json(&m)?);
        }
        Command::Predict { run, model } => {
            let cfg = resolve(&run)?;
            let m = TrainedModel::load(&model)
                .with_context(|| format!("loading model {}", model.display()))?;
            let include_emoji = m.schema.len() == N_FEATURES;
            let loaded = load(&cfg, include_emoji)?;
            let extractor = FeatureExtractor::new(&loaded.lexicon, include_emoji);
            let mut csv = String::from("id,label,predicted,score_positive,score_negative\n");
            for post in &loaded.posts {
                let p = m.predict(&extractor.extract(post))?;
                writeln!(
                    csv,
                    "{},{},{},{:.6},{:.6}",
                    csv_field(&post.id),
                    post.label,
                    p.label,
                    p.scores[0],
                    p.scores[1]
                )
                .unwrap();
            }
            out.add(cfg.output_dir.join("predictions.csv"), csv);
        }
        Command::Evaluate { run, model } => {
            let cfg = resolve(&run)?;
            let seed = cfg.seed()?;
            let specs = specs(&cfg, &model)?;
            let loaded = load(&cfg, cfg.include_emoji)?;
            let data = dataset(&loaded, cfg.include_emoji)?;
            let sfx = suffix(cfg.include_emoji);
            for spec in &specs {
                let report = cross_validate(&data, spec, cfg.include_emoji, cfg.k_folds, seed)?;
                println!(
                    "{}: pooled accuracy {:.2}% (mean of folds {:.2}%)",
                    spec.algorithm,
                    100.0 * report.pooled_accuracy,
                    100.0 * report.mean_fold_accuracy
                );
                let stem = format!("cv_{}{sfx}", spec.algorithm);
                out.add(cfg.output_dir.join(format!("{stem}.csv")), report.to_csv());
                out.add(cfg.output_dir.join(format!("{stem}.json")), json(&report)?);
            }
        }
        Command::Ablate { run, model } => {
            let cfg = resolve(&run)?;
            if !cfg.include_emoji {
                bail!("ablate compares with and without emoji; drop --no-emoji");
            }
            let seed = cfg.seed()?;
            let specs = specs(&cfg, &model)?;
            let loaded = load(&cfg, true)?;
            let data = dataset(&loaded, true)?;
            let table = ablation(&data, &specs, cfg.k_folds, seed)?;
            for r in &table.rows {
                println!(
                    "{}: {:.2}% without emoji, {:.2}% with emoji",
                    r.algorithm,
                    100.0 * r.without_emoji.pooled_accuracy,
                    100.0 * r.with_emoji.pooled_accuracy
                );
            }
            out.add(cfg.output_dir.join("ablation.csv"), table.to_csv());
            out.add(cfg.output_dir.join("ablation.json"), json(&table)?);
        }
        Command::Rank { run, top, k, m } => {
            let cfg = resolve(&run)?;
            let params = ReliefParams {
                k: k.or(cfg.relieff.k).unwrap_or(10),
                m: m.or(cfg.relieff.m),
                seed: cfg.seed()?,
            };
            let top = top.or(cfg.relieff.top).unwrap_or(10);
            let loaded = load(&cfg, cfg.include_emoji)?;
            let data = dataset(&loaded, cfg.include_emoji)?;
            let ranking = rank(&data, params)?;
            let sfx = suffix(cfg.include_emoji);
            out.add(
                cfg.output_dir.join(format!("ranking{sfx}.csv")),
                ranking.to_csv(top),
            );
            out.add(
                cfg.output_dir.join(format!("ranking{sfx}.json")),
                json(&ranking)?,
            );
        }
        Command::Fetch {
            video_id,
            api_key,
            max_pages,
            output,
        } => {
            if max_pages == 0 {
                bail!("--max-pages must be at least 1");
            }
            let lines = fetch_comments(
                http,
                &FetchRequest {
                    video_id,
                    api_key,
                    max_pages,
                },
            )?;
            let mut body = lines.join("\n");
            if !body.is_empty() {
                body.push('\n');
            }
            out.add(output, body);
        }
    }
    out.commit()
}

/// Runs one command with the real HTTP client.
pub fn run(cli: Cli) -> Result<Vec<PathBuf>> {
    run_with(cli, &UreqClient::default())
}

/// One-line rendering of an error chain.
pub fn one_line(e: &anyhow::Error) -> String {
    format!("{e:#}").replace(['\n', '\r'], " ")
}

pub fn display_path(p: &Path) -> String {
    p.display().to_string()
}
