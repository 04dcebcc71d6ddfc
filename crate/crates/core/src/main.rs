use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use disaster_summ::corpus::{self, PosLexicon};
use disaster_summ::disaster_sim::{DisasterProfile, SimilarityMatrix, DEFAULT_TOP_K};
use disaster_summ::importance::TrainingPair;
use disaster_summ::ontology::{self, write_candidate_report, DEFAULT_MIN_FREQ};
use disaster_summ::pipeline::{self, PipelineConfig};
use disaster_summ::rouge::evaluate_texts;
use disaster_summ::selector::{DiversityScope, SelectorConfig, SelectorKind, Sim1Mode, DEFAULT_LAMBDA};
use disaster_summ::{
    build_profile, build_training_pairs, classify_corpus, fit, load_word2vec_text, merge_categories,
    predict_importance, summarize, CategorySlot, DisasterDataset, ImportanceVector, Ontology, RegressionKind,
    RegressionModel,
};

#[derive(Parser)]
#[command(
    name = "disaster-summ",
    version,
    about = "Ontology-guided summarization of disaster tweets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Harvest candidate keywords from documents, or apply approved ones.
    ExtendVocab(ExtendVocabArgs),
    /// Assign every tweet of a dataset to an ontology category.
    Categorize(CategorizeArgs),
    /// Pairwise disaster similarity matrix as CSV.
    Similarity(SimilarityArgs),
    /// Fit a regression on a training disaster and predict per-category quotas.
    Importance(ImportanceArgs),
    /// Select summary tweets from a dataset.
    Summarize(SummarizeArgs),
    /// ROUGE-1/2/L of a candidate summary against a reference summary.
    Evaluate(EvaluateArgs),
    /// Run every stage from a TOML config.
    Pipeline(PipelineArgs),
}

#[derive(Args)]
struct Resources {
    /// Ontology JSON (may already carry extended keywords).
    #[arg(long)]
    ontology: PathBuf,
    /// JSON object mapping merged category ids to their target ids.
    #[arg(long)]
    merges: Option<PathBuf>,
    /// Stopword list; the bundled one when omitted.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Part-of-speech lexicon; the bundled one when omitted.
    #[arg(long)]
    lexicon: Option<PathBuf>,
}

struct Loaded {
    ontology: Ontology,
    stopwords: HashSet<String>,
    lexicon: PosLexicon,
}

impl Resources {
    fn load(&self) -> Result<Loaded> {
        let mut ontology = Ontology::load(&self.ontology)?;
        if let Some(m) = &self.merges {
            ontology = merge_categories(&ontology, &ontology::load_merges(m)?)?;
        }
        Ok(Loaded {
            ontology,
            stopwords: load_stopwords(self.stopwords.as_deref())?,
            lexicon: match &self.lexicon {
                Some(p) => PosLexicon::load(p)?,
                None => PosLexicon::bundled(),
            },
        })
    }
}

impl Loaded {
    fn dataset(&self, path: &Path) -> Result<DisasterDataset> {
        Ok(corpus::load_tweets(path, &self.stopwords, &self.lexicon)?)
    }
}

fn load_stopwords(path: Option<&Path>) -> Result<HashSet<String>> {
    Ok(match path {
        Some(p) => corpus::load_stopwords(p)?,
        None => corpus::bundled_stopwords(),
    })
}

#[derive(Args)]
struct ExtendVocabArgs {
    #[command(flatten)]
    res: Resources,
    /// Plain-text documents or directories of `.txt` files.
    #[arg(long, required = true, num_args = 1..)]
    docs: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MIN_FREQ)]
    min_freq: usize,
    /// Where to write the candidate CSV (stdout when omitted).
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Approved `category_id,word` rows to fold into the ontology.
    #[arg(long, requires = "out")]
    approvals: Option<PathBuf>,
    /// Extended ontology JSON output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CategorizeArgs {
    #[command(flatten)]
    res: Resources,
    #[arg(long)]
    tweets: PathBuf,
    /// Match against seed keywords only.
    #[arg(long)]
    no_extended: bool,
    /// Output directory for `partition.jsonl` and `stats.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SimilarityArgs {
    #[command(flatten)]
    res: Resources,
    /// Two or more dataset files.
    #[arg(required = true, num_args = 2..)]
    datasets: Vec<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    w1: f64,
    #[arg(long, default_value_t = 0.5)]
    w2: f64,
    #[arg(long, default_value_t = DEFAULT_TOP_K)]
    top_k: usize,
    #[arg(long)]
    no_extended: bool,
    /// CSV output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegressionArg {
    Linear,
    Ridge,
    Bayesian,
    Equal,
}

#[derive(Args)]
struct RegressionArgs {
    #[arg(long, value_enum, default_value = "linear")]
    regression: RegressionArg,
    /// Ridge penalty.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    prior_precision: f64,
    #[arg(long, default_value_t = 1.0)]
    noise_precision: f64,
}

impl RegressionArgs {
    fn kind(&self) -> RegressionKind {
        match self.regression {
            RegressionArg::Linear => RegressionKind::Linear,
            RegressionArg::Ridge => RegressionKind::Ridge { alpha: self.alpha },
            RegressionArg::Bayesian => RegressionKind::Bayesian {
                prior_precision: self.prior_precision,
                noise_precision: self.noise_precision,
            },
            RegressionArg::Equal => RegressionKind::Equal,
        }
    }
}

#[derive(Args)]
struct ImportanceArgs {
    #[command(flatten)]
    res: Resources,
    /// Dataset whose quotas are predicted.
    #[arg(long)]
    target: PathBuf,
    /// Dataset with a gold summary to fit the regression on.
    #[arg(long)]
    training: PathBuf,
    #[command(flatten)]
    regression: RegressionArgs,
    /// Summary length.
    #[arg(long = "length", short = 'm')]
    m: usize,
    #[arg(long)]
    no_extended: bool,
    /// JSON output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct ImportanceOutput {
    importance: ImportanceVector,
    model: RegressionModel,
    training_pairs: Vec<TrainingPair>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ImportanceFile {
    Full(ImportanceOutput),
    Bare(ImportanceVector),
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    WholeSummary,
    SameCategory,
}

#[derive(Args)]
struct SummarizeArgs {
    #[command(flatten)]
    res: Resources,
    #[arg(long)]
    tweets: PathBuf,
    /// Word2vec text-format vectors.
    #[arg(long)]
    embeddings: PathBuf,
    #[arg(long = "length", short = 'm')]
    m: usize,
    /// Quotas written by `importance`; an equal split when omitted.
    #[arg(long)]
    importance: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    lambda: f64,
    /// dmmr, max_sim, kmeans, eigenvector, pagerank or mmr (3a-3e also accepted).
    #[arg(long, default_value = "dmmr")]
    selector: SelectorKind,
    #[arg(long, default_value = "sum")]
    sim1_mode: Sim1Mode,
    #[arg(long, value_enum, default_value = "whole-summary")]
    scope: ScopeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    no_extended: bool,
    /// Output directory for `summary.json` and `summary.txt`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Candidate summary, one tweet per line.
    candidate: PathBuf,
    /// Reference summary, one tweet per line.
    reference: PathBuf,
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn extend_vocab(args: ExtendVocabArgs) -> Result<()> {
    let r = args.res.load()?;
    let docs = pipeline::read_documents(&args.docs)?;
    let mut candidates = ontology::harvest_candidates(&r.ontology, &docs, &r.lexicon, &r.stopwords, args.min_freq);
    if let Some(path) = &args.approvals {
        let approvals = ontology::load_approvals(path)?;
        let extended = ontology::apply_approvals(&r.ontology, &candidates, &approvals)?;
        let accepted: HashSet<(&str, &str)> = approvals.iter().map(|(c, w)| (c.as_str(), w.as_str())).collect();
        for c in &mut candidates {
            c.approved = accepted.contains(&(c.category_id.as_str(), c.word.as_str()));
        }
        write_file(
            args.out.as_deref().expect("clap enforces --out"),
            &(extended.to_json() + "\n"),
        )?;
    }
    let mut csv = Vec::new();
    write_candidate_report(&candidates, &mut csv)?;
    emit(args.candidates.as_deref(), &String::from_utf8(csv)?)
}

fn categorize(args: CategorizeArgs) -> Result<()> {
    let r = args.res.load()?;
    let ds = r.dataset(&args.tweets)?;
    let cat = classify_corpus(&ds, &r.ontology, !args.no_extended);
    write_file(&args.out.join("partition.jsonl"), &cat.assignments_jsonl())?;
    write_file(&args.out.join("stats.json"), &to_json(&cat.stats)?)?;
    eprintln!(
        "{}: {} of {} tweets classified ({:.2}%)",
        ds.id, cat.stats.classified, cat.stats.total, cat.stats.classified_pct
    );
    Ok(())
}

fn similarity(args: SimilarityArgs) -> Result<()> {
    let r = args.res.load()?;
    let mut profiles = Vec::with_capacity(args.datasets.len());
    for path in &args.datasets {
        let ds = r.dataset(path)?;
        let cat = classify_corpus(&ds, &r.ontology, !args.no_extended);
        profiles.push(DisasterProfile::new(&ds, build_profile(&cat.partition, args.top_k)?));
    }
    let matrix = SimilarityMatrix::compute(&profiles, args.w1, args.w2)?;
    emit(args.out.as_deref(), &matrix.to_csv())
}

fn importance(args: ImportanceArgs) -> Result<()> {
    let r = args.res.load()?;
    let target = r.dataset(&args.target)?;
    let training = r.dataset(&args.training)?;
    let use_extended = !args.no_extended;
    let train_cat = classify_corpus(&training, &r.ontology, use_extended);
    let pairs = build_training_pairs(&training, &train_cat.partition)?;
    let model = fit(&pairs, args.regression.kind())?;
    let target_cat = classify_corpus(&target, &r.ontology, use_extended);
    let importance = predict_importance(&model, &CategorySlot::from_partition(&target_cat.partition), args.m)?;
    let out = ImportanceOutput {
        importance,
        model,
        training_pairs: pairs,
    };
    emit(args.out.as_deref(), &to_json(&out)?)
}

fn summarize_cmd(args: SummarizeArgs) -> Result<()> {
    let r = args.res.load()?;
    let ds = r.dataset(&args.tweets)?;
    let use_extended = !args.no_extended;
    let cat = classify_corpus(&ds, &r.ontology, use_extended);
    let table = load_word2vec_text(&args.embeddings)?;
    let importance = match &args.importance {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let vector = match serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))? {
                ImportanceFile::Full(o) => o.importance,
                ImportanceFile::Bare(v) => v,
            };
            let total: usize = vector.counts.values().sum();
            if total != args.m {
                bail!(
                    "quotas in {} add up to {total}, expected --length {}",
                    path.display(),
                    args.m
                );
            }
            vector
        }
        None => ImportanceVector::equal(&CategorySlot::from_partition(&cat.partition), args.m)?,
    };
    let cfg = SelectorConfig {
        lambda: args.lambda,
        sim1_mode: args.sim1_mode,
        selector_kind: args.selector,
        diversity_scope: match args.scope {
            ScopeArg::WholeSummary => DiversityScope::WholeSummary,
            ScopeArg::SameCategory => DiversityScope::SameCategory,
        },
        seed: args.seed,
    };
    let summary = summarize(
        &cat.partition,
        &importance,
        &r.ontology.vocabularies(use_extended),
        &table,
        &cfg,
    )?;
    write_file(&args.out.join(pipeline::SUMMARY_JSON_FILE), &to_json(&summary)?)?;
    write_file(&args.out.join(pipeline::SUMMARY_TEXT_FILE), &summary.to_text())
}

fn evaluate(args: EvaluateArgs) -> Result<()> {
    let read = |p: &Path| fs::read_to_string(p).with_context(|| format!("reading {}", p.display()));
    let stopwords = load_stopwords(args.stopwords.as_deref())?;
    let report = evaluate_texts(&read(&args.candidate)?, &read(&args.reference)?, &stopwords);
    print!("{}", to_json(&report)?);
    Ok(())
}

fn run_pipeline(args: PipelineArgs) -> Result<()> {
    let (cfg, base) = PipelineConfig::load(&args.config)?;
    let report = pipeline::run_to_dir(&cfg, &base, &args.out).with_context(|| {
        format!(
            "pipeline failed; partial report in {}",
            args.out.join(pipeline::QUARANTINE_DIR).display()
        )
    })?;
    if let Some(summary) = &report.summary {
        eprintln!(
            "wrote {} summary tweets to {}",
            summary.entries.len(),
            args.out.display()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::ExtendVocab(a) => extend_vocab(a),
        Command::Categorize(a) => categorize(a),
        Command::Similarity(a) => similarity(a),
        Command::Importance(a) => importance(a),
        Command::Summarize(a) => summarize_cmd(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Pipeline(a) => run_pipeline(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
