//! Command-line driver.
//!
//! Every command produces a JSON [`RunReport`], written to `--report` when
//! given and to stdout otherwise. Exit codes: 0 on success, 1 when some items failed, 2 on a
//! configuration or input error.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;
use thiserror::Error;

use crate::data::{load_manifest, load_pairs, load_pairs_with, ClonePairList, CorpusManifest};
use crate::embed::{
    embed_corpus, load_model, read_cache, write_cache, EmbeddingModel, EmbeddingVector,
};
use crate::render::{
    encode_png, render, LanguageProfile, Palette, ProfileRegistry, RenderConfig, Rgb, TokenClass,
    Variant,
};
use crate::report::{sha256_hex, RunReport};
use crate::tasks::{
    calibrate_threshold, detect_clone, evaluate_classification, evaluate_pairs, knn_classify,
    Metric, Metrics, NeighborIndex, PairScores,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ITEM_FAILURES: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn cfg_err(e: impl std::fmt::Display) -> ConfigError {
    ConfigError(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "wysiwim", version, about = "Render code to images, embed them, detect clones and classify snippets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render every manifest snippet to `<out>/<id>.png`.
    Render(RenderArgs),
    /// Render, preprocess and embed every snippet into a binary cache.
    Embed(EmbedArgs),
    /// Pick the F1-maximizing similarity threshold on labeled pairs.
    Calibrate(CalibrateArgs),
    /// Score pairs and decide clone / not clone at a threshold.
    Detect(DetectArgs),
    /// kNN-classify test embeddings against labeled training embeddings.
    Classify(ClassifyArgs),
    /// Score decisions or predictions against ground truth.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Write the run report to this file instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RenderFlags {
    /// Extra language profile files (JSON); built-in profiles are `java` and `c`.
    #[arg(long = "profile")]
    pub profiles: Vec<PathBuf>,
    #[arg(long, default_value = "syntax")]
    pub variant: Variant,
    #[arg(long, default_value_t = 224)]
    pub width: u32,
    #[arg(long, default_value_t = 224)]
    pub height: u32,
    #[arg(long, default_value_t = 8)]
    pub cell_width: u32,
    #[arg(long, default_value_t = 16)]
    pub cell_height: u32,
    #[arg(long, default_value_t = 4)]
    pub tab_width: u32,
    /// JSON object overriding palette entries, `background` and `foreground` as `[r, g, b]`.
    #[arg(long)]
    pub palette: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub render: RenderFlags,
    /// Output directory for PNGs.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Model descriptor JSON; the built-in patch-mean extractor when omitted.
    #[arg(long)]
    pub model_descriptor: Option<PathBuf>,
    #[command(flatten)]
    pub render: RenderFlags,
    #[arg(long)]
    pub batch_size: Option<usize>,
    /// Output cache file.
    #[arg(long)]
    pub cache: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub cache: PathBuf,
    #[arg(long)]
    pub pairs: PathBuf,
    /// Validate pair ids against this manifest instead of the cache.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long = "profile")]
    pub profiles: Vec<PathBuf>,
    /// Threshold file to write.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub cache: PathBuf,
    #[arg(long)]
    pub pairs: PathBuf,
    /// A number, or a threshold file written by `calibrate`.
    #[arg(long)]
    pub threshold: String,
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long = "profile")]
    pub profiles: Vec<PathBuf>,
    /// Decisions CSV to write.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Training embeddings (or the whole corpus when `--test-cache` is absent).
    #[arg(long)]
    pub cache: PathBuf,
    #[arg(long)]
    pub test_cache: Option<PathBuf>,
    /// Manifest supplying labels.
    #[arg(long)]
    pub manifest: PathBuf,
    #[arg(long = "profile")]
    pub profiles: Vec<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value = "cosine")]
    pub metric: Metric,
    /// Fraction held out for testing when splitting a single cache.
    #[arg(long, default_value_t = 0.2)]
    pub test_ratio: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Predictions CSV to write.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Decisions CSV from `detect`; truth is a pairs CSV.
    #[arg(long, conflicts_with = "predictions", required_unless_present = "predictions")]
    pub decisions: Option<PathBuf>,
    /// Predictions CSV from `classify`; truth is a manifest (`.jsonl`) or an `id,label` CSV.
    #[arg(long)]
    pub predictions: Option<PathBuf>,
    #[arg(long)]
    pub truth: PathBuf,
    #[arg(long = "profile")]
    pub profiles: Vec<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            // with --report the file is the record; stdout stays quiet
            if cli.command.common().report.is_none() {
                println!("{}", report.to_pretty_string());
            } else if !report.failures().is_empty() {
                eprintln!("{} item(s) failed", report.failures().len());
            }
            if report.failures().is_empty() {
                EXIT_OK
            } else {
                EXIT_ITEM_FAILURES
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Render(a) => &a.common,
            Command::Embed(a) => &a.common,
            Command::Calibrate(a) => &a.common,
            Command::Detect(a) => &a.common,
            Command::Classify(a) => &a.common,
            Command::Evaluate(a) => &a.common,
        }
    }
}

/// Runs a parsed command, writing its outputs and the `--report` file.
pub fn execute(command: &Command) -> Result<RunReport, ConfigError> {
    let start = Instant::now();
    let mut report = match command {
        Command::Render(a) => cmd_render(a)?,
        Command::Embed(a) => cmd_embed(a)?,
        Command::Calibrate(a) => cmd_calibrate(a)?,
        Command::Detect(a) => cmd_detect(a)?,
        Command::Classify(a) => cmd_classify(a)?,
        Command::Evaluate(a) => cmd_evaluate(a)?,
    };
    let common = command.common();
    report.wall_time_seconds = start.elapsed().as_secs_f64();
    if let Some(path) = &common.report {
        fs::write(path, report.to_pretty_string() + "\n")
            .map_err(|e| cfg_err(format!("cannot write report {}: {e}", path.display())))?;
    }
    Ok(report)
}

fn workers(common: &Common) -> usize {
    common
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

fn pool(n: usize) -> Result<rayon::ThreadPool, ConfigError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(cfg_err)
}

fn load_profiles(paths: &[PathBuf], report: &mut RunReport) -> Result<ProfileRegistry, ConfigError> {
    let mut registry = ProfileRegistry::default();
    for (i, path) in paths.iter().enumerate() {
        let profile = LanguageProfile::from_json_file(path).map_err(cfg_err)?;
        record_input(report, &format!("profile.{i}"), path)?;
        registry.insert(profile).map_err(cfg_err)?;
    }
    Ok(registry)
}

fn record_input(report: &mut RunReport, name: &str, path: &Path) -> Result<(), ConfigError> {
    report
        .input(name, path)
        .map_err(|e| cfg_err(format!("cannot read {}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PaletteFile {
    #[serde(flatten)]
    classes: BTreeMap<String, [u8; 3]>,
}

fn render_config(flags: &RenderFlags, report: &mut RunReport) -> Result<RenderConfig, ConfigError> {
    let mut config = RenderConfig {
        canvas_width: flags.width,
        canvas_height: flags.height,
        cell_width: flags.cell_width,
        cell_height: flags.cell_height,
        tab_width: flags.tab_width,
        variant: flags.variant,
        ..RenderConfig::default()
    };
    if let Some(path) = &flags.palette {
        record_input(report, "palette", path)?;
        let text = fs::read_to_string(path).map_err(cfg_err)?;
        let file: PaletteFile = serde_json::from_str(&text)
            .map_err(|e| cfg_err(format!("palette {}: {e}", path.display())))?;
        let mut palette = Palette::default();
        for (name, [r, g, b]) in file.classes {
            match name.as_str() {
                "background" => config.background = Rgb(r, g, b),
                "foreground" => config.foreground = Rgb(r, g, b),
                class => palette.set(class.parse::<TokenClass>().map_err(cfg_err)?, Rgb(r, g, b)),
            }
        }
        config.palette = palette;
    }
    config.validate().map_err(cfg_err)?;
    report.param(
        "render",
        json!({
            "variant": config.variant.as_str(),
            "canvas": [config.canvas_width, config.canvas_height],
            "cell": [config.cell_width, config.cell_height],
            "tab_width": config.tab_width,
        }),
    );
    Ok(config)
}

fn read_manifest(
    path: &Path,
    registry: &ProfileRegistry,
    report: &mut RunReport,
) -> Result<CorpusManifest, ConfigError> {
    let manifest = load_manifest(path, registry).map_err(cfg_err)?;
    record_input(report, "manifest", path)?;
    Ok(manifest)
}

/// Ids become `<id>.png`; reject anything that would leave the output directory.
fn is_safe_file_stem(id: &str) -> bool {
    !id.is_empty() && id != "." && id != ".." && !id.contains(['/', '\\', '\0'])
}

fn cmd_render(args: &RenderArgs) -> Result<RunReport, ConfigError> {
    let mut report = RunReport::new("render");
    let registry = load_profiles(&args.render.profiles, &mut report)?;
    let config = render_config(&args.render, &mut report)?;
    let manifest = read_manifest(&args.manifest, &registry, &mut report)?;
    fs::create_dir_all(&args.out)
        .map_err(|e| cfg_err(format!("cannot create {}: {e}", args.out.display())))?;

    let results: Vec<(String, Result<String, String>)> = pool(workers(&args.common))?.install(|| {
        manifest
            .entries
            .par_iter()
            .map(|entry| {
                let result = (|| {
                    if !is_safe_file_stem(&entry.id) {
                        return Err(format!("id `{}` cannot be used as a file name", entry.id));
                    }
                    let bytes = fs::read(&entry.path)
                        .map_err(|e| format!("cannot read {}: {e}", entry.path.display()))?;
                    let source = String::from_utf8(bytes)
                        .map_err(|_| format!("{} is not valid UTF-8", entry.path.display()))?;
                    let profile = registry.get(&entry.language).map_err(|e| e.to_string())?;
                    let image = render(&source, profile, &config).map_err(|e| e.to_string())?;
                    let png = encode_png(&image).map_err(|e| e.to_string())?;
                    let out = args.out.join(format!("{}.png", entry.id));
                    fs::write(&out, &png)
                        .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
                    Ok(sha256_hex(&png))
                })();
                (entry.id.clone(), result)
            })
            .collect()
    });

    let mut images = BTreeMap::new();
    for (id, result) in results {
        match result {
            Ok(digest) => {
                images.insert(id, digest);
            }
            Err(e) => report.fail(&id, e),
        }
    }
    report.output("count", images.len());
    report.output("images", images);
    Ok(report)
}

fn cmd_embed(args: &EmbedArgs) -> Result<RunReport, ConfigError> {
    let mut report = RunReport::new("embed");
    let registry = load_profiles(&args.render.profiles, &mut report)?;
    let config = render_config(&args.render, &mut report)?;
    let mut model = match &args.model_descriptor {
        Some(path) => {
            let model = load_model(path).map_err(cfg_err)?;
            record_input(&mut report, "model_descriptor", path)?;
            model
        }
        None => EmbeddingModel::builtin(),
    };
    if let Some(bs) = args.batch_size {
        model = model.with_batch_size(bs).map_err(cfg_err)?;
    }
    let manifest = read_manifest(&args.manifest, &registry, &mut report)?;
    report.param("backend", model.descriptor().backend);
    report.param("batch_size", model.batch_size());

    let corpus = embed_corpus(&model, &manifest, &registry, &config, workers(&args.common))
        .map_err(cfg_err)?;
    for f in &corpus.failures {
        report.fail(&f.id, &f.error);
    }
    write_cache(&corpus.vectors, &args.cache).map_err(cfg_err)?;
    let bytes = fs::read(&args.cache).map_err(cfg_err)?;
    report.output("count", corpus.vectors.len());
    report.output("dim", model.dim());
    report.output("cache_sha256", sha256_hex(&bytes));
    Ok(report)
}

fn load_vectors(path: &Path, name: &str, report: &mut RunReport) -> Result<HashMap<String, Vec<f32>>, ConfigError> {
    let vectors = read_cache(path).map_err(cfg_err)?;
    record_input(report, name, path)?;
    Ok(vectors.into_iter().map(|v| (v.id, v.values)).collect())
}

fn read_pairs(
    path: &Path,
    manifest: Option<&Path>,
    profiles: &[PathBuf],
    vectors: &HashMap<String, Vec<f32>>,
    report: &mut RunReport,
) -> Result<ClonePairList, ConfigError> {
    let pairs = match manifest {
        Some(m) => {
            let registry = load_profiles(profiles, report)?;
            let manifest = read_manifest(m, &registry, report)?;
            let pairs = load_pairs(path, &manifest).map_err(cfg_err)?;
            if let Some(p) = pairs.pairs.iter().find(|p| {
                !vectors.contains_key(p.id_a()) || !vectors.contains_key(p.id_b())
            }) {
                return Err(cfg_err(format!(
                    "pair ({}, {}) has no embedding in the cache",
                    p.id_a(),
                    p.id_b()
                )));
            }
            pairs
        }
        None => load_pairs_with(path, |id| vectors.contains_key(id)).map_err(cfg_err)?,
    };
    record_input(report, "pairs", path)?;
    Ok(pairs)
}

/// Cosine scores for every pair; pairs whose score is undefined become failures.
fn score_pairs(
    pairs: &ClonePairList,
    vectors: &HashMap<String, Vec<f32>>,
    report: &mut RunReport,
) -> (PairScores, Vec<crate::tasks::ClonePair>) {
    let mut scores = PairScores::new();
    let mut scored = Vec::new();
    for p in &pairs.pairs {
        match detect_clone(&vectors[p.id_a()], &vectors[p.id_b()], 0.0) {
            Ok((s, _)) => {
                scores.insert(p.id_a(), p.id_b(), s);
                scored.push(p.clone());
            }
            Err(e) => report.fail(&format!("{},{}", p.id_a(), p.id_b()), e),
        }
    }
    (scores, scored)
}

#[derive(Debug, serde::Serialize, Deserialize)]
struct ThresholdFile {
    threshold: f64,
    f1: f64,
}

fn cmd_calibrate(args: &CalibrateArgs) -> Result<RunReport, ConfigError> {
    let mut report = RunReport::new("calibrate");
    let vectors = load_vectors(&args.cache, "cache", &mut report)?;
    let pairs = read_pairs(&args.pairs, args.manifest.as_deref(), &args.profiles, &vectors, &mut report)?;
    let (scores, scored) = score_pairs(&pairs, &vectors, &mut report);
    let labeled: Vec<(f64, bool)> = scored
        .iter()
        .map(|p| (scores.get(p.id_a(), p.id_b()).unwrap(), p.label))
        .collect();
    let calibration = calibrate_threshold(&labeled).map_err(cfg_err)?;
    let metrics = evaluate_pairs(&scored, &scores, calibration.threshold).map_err(cfg_err)?;

    let file = ThresholdFile {
        threshold: calibration.threshold,
        f1: calibration.f1,
    };
    fs::write(&args.out, serde_json::to_string_pretty(&file).unwrap() + "\n")
        .map_err(|e| cfg_err(format!("cannot write {}: {e}", args.out.display())))?;
    report.output("threshold", calibration.threshold);
    report.output("f1", calibration.f1);
    report.output("pairs", scored.len());
    report.output("metrics", metrics);
    Ok(report)
}

fn parse_threshold(value: &str) -> Result<f64, ConfigError> {
    if let Ok(t) = value.parse::<f64>() {
        return if t.is_finite() {
            Ok(t)
        } else {
            Err(cfg_err("threshold must be finite"))
        };
    }
    let text = fs::read_to_string(value)
        .map_err(|e| cfg_err(format!("threshold `{value}` is neither a number nor a readable file: {e}")))?;
    let file: ThresholdFile = serde_json::from_str(&text)
        .map_err(|e| cfg_err(format!("threshold file {value}: {e}")))?;
    Ok(file.threshold)
}

fn cmd_detect(args: &DetectArgs) -> Result<RunReport, ConfigError> {
    let mut report = RunReport::new("detect");
    let threshold = parse_threshold(&args.threshold)?;
    if Path::new(&args.threshold).is_file() {
        record_input(&mut report, "threshold", Path::new(&args.threshold))?;
    }
    report.param("threshold", threshold);
    let vectors = load_vectors(&args.cache, "cache", &mut report)?;
    let pairs = read_pairs(&args.pairs, args.manifest.as_deref(), &args.profiles, &vectors, &mut report)?;
    let (scores, scored) = score_pairs(&pairs, &vectors, &mut report);

    let mut writer = csv::Writer::from_path(&args.out)
        .map_err(|e| cfg_err(format!("cannot write {}: {e}", args.out.display())))?;
    writer.write_record(["id_a", "id_b", "score", "is_clone"]).map_err(cfg_err)?;
    for p in &scored {
        let s = scores.get(p.id_a(), p.id_b()).unwrap();
        let decision = if s >= threshold { "1" } else { "0" };
        writer
            .write_record([p.id_a(), p.id_b(), &s.to_string(), decision])
            .map_err(cfg_err)?;
    }
    writer.flush().map_err(cfg_err)?;

    let metrics = evaluate_pairs(&scored, &scores, threshold).map_err(cfg_err)?;
    report.output("pairs", scored.len());
    report.output("metrics", metrics);
    Ok(report)
}

/// Deterministic train/test split of `ids` (sorted first, then shuffled with `seed`).
pub fn split_ids(ids: &[String], test_ratio: f64, seed: u64) -> (Vec<String>, Vec<String>) {
    let mut ids = ids.to_vec();
    ids.sort();
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_test = ((ids.len() as f64) * test_ratio).round() as usize;
    let n_test = n_test.clamp(usize::from(ids.len() > 1), ids.len().saturating_sub(1));
    let test = ids.split_off(ids.len() - n_test);
    let (mut train, mut test) = (ids, test);
    train.sort();
    test.sort();
    (train, test)
}

fn cmd_classify(args: &ClassifyArgs) -> Result<RunReport, ConfigError> {
    let mut report = RunReport::new("classify");
    let registry = load_profiles(&args.profiles, &mut report)?;
    let manifest = read_manifest(&args.manifest, &registry, &mut report)?;
    let labels = manifest.labels();
    let train_vectors = load_vectors(&args.cache, "cache", &mut report)?;
    report.param("k", args.k);
    report.param("metric", args.metric.as_str());

    let (train_ids, test_ids, test_vectors) = match &args.test_cache {
        Some(path) => {
            let test_vectors = load_vectors(path, "test_cache", &mut report)?;
            let mut train: Vec<String> = train_vectors.keys().cloned().collect();
            let mut test: Vec<String> = test_vectors.keys().cloned().collect();
            train.sort();
            test.sort();
            (train, test, test_vectors)
        }
        None => {
            if !(0.0..1.0).contains(&args.test_ratio) {
                return Err(cfg_err("--test-ratio must be in [0, 1)"));
            }
            report.param("seed", args.seed);
            report.param("test_ratio", args.test_ratio);
            let labeled: Vec<String> = train_vectors
                .keys()
                .filter(|id| labels.contains_key(*id))
                .cloned()
                .collect();
            let (train, test) = split_ids(&labeled, args.test_ratio, args.seed);
            (train, test, train_vectors.clone())
        }
    };

    let records = train_ids
        .iter()
        .map(|id| {
            let label = labels
                .get(id)
                .ok_or_else(|| cfg_err(format!("training id `{id}` has no label in the manifest")))?;
            Ok((
                id.clone(),
                label.clone(),
                train_vectors[id].iter().map(|&v| v as f64).collect(),
            ))
        })
        .collect::<Result<Vec<_>, ConfigError>>()?;
    let index = NeighborIndex::new(records, args.metric).map_err(cfg_err)?;

    let mut predictions: HashMap<String, String> = HashMap::new();
    for id in &test_ids {
        let query: Vec<f64> = test_vectors[id].iter().map(|&v| v as f64).collect();
        match knn_classify(&index, &query, args.k) {
            Ok(label) => {
                predictions.insert(id.clone(), label);
            }
            Err(e @ crate::tasks::TaskError::InvalidK { .. }) | Err(e @ crate::tasks::TaskError::EmptyIndex) => {
                return Err(cfg_err(e))
            }
            Err(e) => report.fail(id, e),
        }
    }

    let mut writer = csv::Writer::from_path(&args.out)
        .map_err(|e| cfg_err(format!("cannot write {}: {e}", args.out.display())))?;
    writer.write_record(["id", "label"]).map_err(cfg_err)?;
    let mut sorted: Vec<_> = predictions.iter().collect();
    sorted.sort();
    for (id, label) in sorted {
        writer.write_record([id, label]).map_err(cfg_err)?;
    }
    writer.flush().map_err(cfg_err)?;

    report.output("train", train_ids.len());
    report.output("test", test_ids.len());
    report.output("predicted", predictions.len());
    let truth: HashMap<String, String> = predictions
        .keys()
        .filter_map(|id| labels.get(id).map(|l| (id.clone(), l.clone())))
        .collect();
    if truth.len() == predictions.len() && !predictions.is_empty() {
        let eval = evaluate_classification(&predictions, &truth).map_err(cfg_err)?;
        report.output("accuracy", eval.accuracy);
        report.output("per_label", eval.per_label);
    }
    Ok(report)
}

fn read_label_csv(path: &Path) -> Result<HashMap<String, String>, ConfigError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| cfg_err(format!("cannot read {}: {e}", path.display())))?;
    let mut out = HashMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| cfg_err(format!("{}: {e}", path.display())))?;
        if record.len() != 2 {
            return Err(cfg_err(format!("{}: expected `id,label` rows", path.display())));
        }
        if out.insert(record[0].to_string(), record[1].to_string()).is_some() {
            return Err(cfg_err(format!("{}: duplicate id `{}`", path.display(), &record[0])));
        }
    }
    Ok(out)
}

fn cmd_evaluate(args: &EvaluateArgs) -> Result<RunReport, ConfigError> {
    let mut report = RunReport::new("evaluate");
    if let Some(decisions_path) = &args.decisions {
        record_input(&mut report, "decisions", decisions_path)?;
        let mut reader = csv::Reader::from_path(decisions_path).map_err(cfg_err)?;
        let mut decisions: HashMap<(String, String), bool> = HashMap::new();
        for record in reader.records() {
            let r = record.map_err(cfg_err)?;
            if r.len() != 4 {
                return Err(cfg_err("decisions rows must be `id_a,id_b,score,is_clone`"));
            }
            let d = match &r[3] {
                "1" => true,
                "0" => false,
                other => return Err(cfg_err(format!("is_clone must be 0 or 1, found `{other}`"))),
            };
            let (a, b) = (r[0].to_string(), r[1].to_string());
            let key = if a <= b { (a, b) } else { (b, a) };
            decisions.insert(key, d);
        }
        let ids: HashSet<String> = decisions.keys().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        let truth = load_pairs_with(&args.truth, |id| ids.contains(id)).map_err(cfg_err)?;
        record_input(&mut report, "truth", &args.truth)?;
        let mut rows = Vec::with_capacity(truth.len());
        for p in &truth.pairs {
            let (a, b) = (p.id_a().to_string(), p.id_b().to_string());
            let key = if a <= b { (a, b) } else { (b, a) };
            let d = decisions
                .get(&key)
                .ok_or_else(|| cfg_err(format!("no decision for pair ({}, {})", p.id_a(), p.id_b())))?;
            rows.push((*d, p.label));
        }
        let metrics = Metrics::from_decisions(rows);
        report.output("metrics", metrics);
    } else {
        let predictions_path = args.predictions.as_ref().expect("clap enforces one mode");
        record_input(&mut report, "predictions", predictions_path)?;
        let predictions = read_label_csv(predictions_path)?;
        let truth = if args.truth.extension().is_some_and(|e| e == "jsonl") {
            let registry = load_profiles(&args.profiles, &mut report)?;
            let manifest = load_manifest(&args.truth, &registry).map_err(cfg_err)?;
            let labels = manifest.labels();
            predictions
                .keys()
                .map(|id| {
                    labels
                        .get(id)
                        .map(|l| (id.clone(), l.clone()))
                        .ok_or_else(|| cfg_err(format!("no ground-truth label for `{id}`")))
                })
                .collect::<Result<HashMap<_, _>, _>>()?
        } else {
            read_label_csv(&args.truth)?
        };
        record_input(&mut report, "truth", &args.truth)?;
        let eval = evaluate_classification(&predictions, &truth).map_err(cfg_err)?;
        report.output("accuracy", eval.accuracy);
        report.output("per_label", eval.per_label);
    }
    Ok(report)
}

/// Loads a cache as `EmbeddingVector`s keyed by id.
pub fn cache_map(path: &Path) -> Result<BTreeMap<String, EmbeddingVector>, ConfigError> {
    Ok(read_cache(path)
        .map_err(cfg_err)?
        .into_iter()
        .map(|v| (v.id.clone(), v))
        .collect())
}
