//! End-to-end orchestration: vocabulary extension, categorization, training
//! disaster selection, quota prediction, tweet selection and evaluation.
//!
//! A run is described by a TOML config and produces one JSON run report that
//! embeds the effective configuration and every intermediate artifact.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::categorizer::{classify_corpus, CategoryAssignment, ClassificationStats};
use crate::corpus::{self, DisasterDataset, DisasterType, PosLexicon};
use crate::disaster_sim::{
    build_profile, most_similar, validate_weights, DisasterProfile, SimilarityScore, DEFAULT_TOP_K,
};
use crate::embeddings::{load_word2vec_text, EmbeddingTable};
use crate::error::{Error, Result};
use crate::importance::{
    build_training_pairs, fit, predict_importance, CategorySlot, ImportanceVector, RegressionKind, RegressionModel,
    TrainingPair,
};
use crate::ontology::{
    self, apply_approvals, harvest_candidates, merge_categories, CandidateKeyword, Ontology, DEFAULT_MIN_FREQ,
};
use crate::rouge::{evaluate_texts, RougeReport};
use crate::selector::{summarize, SelectorConfig, Summary};

pub const SCHEMA_VERSION: u32 = 1;

fn default_true() -> bool {
    true
}
fn default_weight() -> f64 {
    0.5
}
fn default_top_k() -> usize {
    DEFAULT_TOP_K
}
fn default_min_freq() -> usize {
    DEFAULT_MIN_FREQ
}
fn default_regression() -> RegressionKind {
    RegressionKind::Linear
}

/// Every knob of a run. Relative paths resolve against the config file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub ontology: PathBuf,
    #[serde(default)]
    pub merges: Option<PathBuf>,
    /// Plain-text documents (files or directories of `.txt`) for vocabulary extension.
    #[serde(default)]
    pub docs: Vec<PathBuf>,
    #[serde(default)]
    pub approvals: Option<PathBuf>,
    pub embeddings: PathBuf,
    /// Bundled list when absent.
    #[serde(default)]
    pub stopwords: Option<PathBuf>,
    /// Bundled lexicon when absent.
    #[serde(default)]
    pub lexicon: Option<PathBuf>,
    pub target: PathBuf,
    pub training: Vec<PathBuf>,
    /// Reference summary, one tweet per line. Falls back to the target's gold tweets.
    #[serde(default)]
    pub reference: Option<PathBuf>,
    pub m: usize,
    #[serde(default = "default_true")]
    pub use_extended: bool,
    #[serde(default = "default_weight")]
    pub w1: f64,
    #[serde(default = "default_weight")]
    pub w2: f64,
    #[serde(default = "default_top_k")]
    pub top_k: usize,
    #[serde(default = "default_min_freq")]
    pub min_freq: usize,
    #[serde(default)]
    pub homogeneous_only: bool,
    #[serde(default = "default_regression")]
    pub regression: RegressionKind,
    #[serde(default)]
    pub selector: SelectorConfig,
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad pipeline config: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Loads a config file and returns it with the directory its paths are relative to.
    pub fn load(path: impl AsRef<Path>) -> Result<(Self, PathBuf)> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((Self::from_toml(&text)?, base))
    }

    fn all_paths(&self) -> Vec<&PathBuf> {
        let mut paths = vec![&self.ontology, &self.embeddings, &self.target];
        paths.extend(&self.training);
        paths.extend(&self.docs);
        paths.extend(
            [
                &self.merges,
                &self.approvals,
                &self.stopwords,
                &self.lexicon,
                &self.reference,
            ]
            .into_iter()
            .flatten(),
        );
        paths
    }

    pub fn validate(&self, base: &Path) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidArgument("m must be at least 1".into()));
        }
        if self.top_k == 0 {
            return Err(Error::InvalidArgument("top_k must be at least 1".into()));
        }
        if self.training.is_empty() {
            return Err(Error::InvalidArgument(
                "at least one training dataset is required".into(),
            ));
        }
        if self.approvals.is_some() && self.docs.is_empty() {
            return Err(Error::InvalidArgument(
                "approvals need `docs` to harvest candidates from".into(),
            ));
        }
        validate_weights(self.w1, self.w2)?;
        self.selector.validate()?;
        for p in self.all_paths() {
            let full = base.join(p);
            if !full.exists() {
                return Err(Error::io(
                    full,
                    std::io::Error::new(std::io::ErrorKind::NotFound, "path does not exist"),
                ));
            }
        }
        Ok(())
    }
}

/// Reads plain-text documents from files and `.txt` files in directories, in sorted path order.
pub fn read_documents(paths: &[PathBuf]) -> Result<Vec<String>> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut entries: Vec<PathBuf> = fs::read_dir(path)
                .map_err(|e| Error::io(path, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "txt"))
                .collect();
            entries.sort();
            files.extend(entries);
        } else {
            files.push(path.clone());
        }
    }
    files
        .iter()
        .map(|f| fs::read_to_string(f).map_err(|e| Error::io(f, e)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VocabularyReport {
    pub categories: usize,
    pub candidates: Vec<CandidateKeyword>,
    pub approved: usize,
    pub ontology: Ontology,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TargetReport {
    pub dataset_id: String,
    pub disaster_type: DisasterType,
    pub continent: String,
    pub stats: ClassificationStats,
    pub assignments: Vec<CategoryAssignment>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateReport {
    pub dataset_id: String,
    pub disaster_type: DisasterType,
    pub continent: String,
    pub homogeneous: bool,
    pub has_gold: bool,
    pub stats: ClassificationStats,
    pub similarity: SimilarityScore,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainingReport {
    pub dataset_id: String,
    pub similarity: SimilarityScore,
    pub pairs: Vec<TrainingPair>,
    pub model: RegressionModel,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub reference_source: String,
    pub scores: RougeReport,
}

/// Everything a run produced. Stages that did not run are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub config: PipelineConfig,
    pub vocabulary: Option<VocabularyReport>,
    pub target: Option<TargetReport>,
    pub candidates: Option<Vec<CandidateReport>>,
    pub training: Option<TrainingReport>,
    pub importance: Option<ImportanceVector>,
    pub summary: Option<Summary>,
    pub evaluation: Option<EvaluationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    fn new(config: PipelineConfig) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            config,
            vocabulary: None,
            target: None,
            candidates: None,
            training: None,
            importance: None,
            summary: None,
            evaluation: None,
            failed_stage: None,
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn stage<T>(name: &'static str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Stage {
        stage: name,
        source: Box::new(e),
    })
}

struct Resources {
    stopwords: HashSet<String>,
    lexicon: PosLexicon,
    embeddings: EmbeddingTable,
}

fn load_resources(cfg: &PipelineConfig, base: &Path) -> Result<Resources> {
    let stopwords = match &cfg.stopwords {
        Some(p) => corpus::load_stopwords(base.join(p))?,
        None => corpus::bundled_stopwords(),
    };
    let lexicon = match &cfg.lexicon {
        Some(p) => PosLexicon::load(base.join(p))?,
        None => PosLexicon::bundled(),
    };
    let embeddings = load_word2vec_text(base.join(&cfg.embeddings))?;
    Ok(Resources {
        stopwords,
        lexicon,
        embeddings,
    })
}

fn build_ontology(cfg: &PipelineConfig, base: &Path, res: &Resources, report: &mut RunReport) -> Result<Ontology> {
    let mut onto = Ontology::load(base.join(&cfg.ontology))?;
    if let Some(m) = &cfg.merges {
        onto = merge_categories(&onto, &ontology::load_merges(base.join(m))?)?;
    }
    let mut candidates = Vec::new();
    let mut approved = 0;
    if !cfg.docs.is_empty() {
        let docs: Vec<PathBuf> = cfg.docs.iter().map(|d| base.join(d)).collect();
        let docs = read_documents(&docs)?;
        candidates = harvest_candidates(&onto, &docs, &res.lexicon, &res.stopwords, cfg.min_freq);
        if let Some(a) = &cfg.approvals {
            let approvals = ontology::load_approvals(base.join(a))?;
            onto = apply_approvals(&onto, &candidates, &approvals)?;
            let accepted: HashSet<(&str, &str)> = approvals.iter().map(|(c, w)| (c.as_str(), w.as_str())).collect();
            for c in &mut candidates {
                c.approved = accepted.contains(&(c.category_id.as_str(), c.word.as_str()));
            }
            approved = candidates.iter().filter(|c| c.approved).count();
        }
    }
    report.vocabulary = Some(VocabularyReport {
        categories: onto.len(),
        candidates,
        approved,
        ontology: onto.clone(),
    });
    Ok(onto)
}

fn run_stages(cfg: &PipelineConfig, base: &Path, report: &mut RunReport) -> Result<()> {
    stage("validate", cfg.validate(base))?;
    let res = stage("load", load_resources(cfg, base))?;
    let onto = stage("extend-vocab", build_ontology(cfg, base, &res, report))?;

    let load = |p: &PathBuf| corpus::load_tweets(base.join(p), &res.stopwords, &res.lexicon);
    let target: DisasterDataset = stage("load", load(&cfg.target))?;
    let training: Vec<DisasterDataset> = stage("load", cfg.training.iter().map(load).collect())?;

    let target_cat = classify_corpus(&target, &onto, cfg.use_extended);
    report.target = Some(TargetReport {
        dataset_id: target.id.clone(),
        disaster_type: target.disaster_type,
        continent: target.continent.clone(),
        stats: target_cat.stats.clone(),
        assignments: target_cat.assignments.clone(),
    });
    let training_cat: Vec<_> = training
        .iter()
        .map(|d| classify_corpus(d, &onto, cfg.use_extended))
        .collect();

    let target_profile = DisasterProfile::new(
        &target,
        stage("categorize", build_profile(&target_cat.partition, cfg.top_k))?,
    );
    let profiles: Vec<DisasterProfile> = stage(
        "categorize",
        training
            .iter()
            .zip(&training_cat)
            .map(|(d, c)| Ok(DisasterProfile::new(d, build_profile(&c.partition, cfg.top_k)?)))
            .collect(),
    )?;

    let mut candidates = Vec::with_capacity(profiles.len());
    for ((d, c), p) in training.iter().zip(&training_cat).zip(&profiles) {
        candidates.push(CandidateReport {
            dataset_id: d.id.clone(),
            disaster_type: d.disaster_type,
            continent: d.continent.clone(),
            homogeneous: p.is_homogeneous_with(&target_profile),
            has_gold: d.gold_summary.is_some(),
            stats: c.stats.clone(),
            similarity: stage(
                "similarity",
                crate::disaster_sim::dis_sim(&target_profile.profile, &p.profile, cfg.w1, cfg.w2),
            )?,
        });
    }
    report.candidates = Some(candidates);
    let (best, score) = stage(
        "similarity",
        most_similar(&target_profile, &profiles, cfg.homogeneous_only, cfg.w1, cfg.w2),
    )?;
    let best_idx = profiles
        .iter()
        .position(|p| p.id == best.id)
        .expect("chosen profile is a candidate");

    let pairs = stage(
        "importance",
        build_training_pairs(&training[best_idx], &training_cat[best_idx].partition),
    )?;
    let model = stage("importance", fit(&pairs, cfg.regression))?;
    report.training = Some(TrainingReport {
        dataset_id: best.id.clone(),
        similarity: score,
        pairs,
        model: model.clone(),
    });
    let slots = CategorySlot::from_partition(&target_cat.partition);
    let importance = stage("importance", predict_importance(&model, &slots, cfg.m))?;
    report.importance = Some(importance.clone());

    let vocabularies = onto.vocabularies(cfg.use_extended);
    let summary = stage(
        "summarize",
        summarize(
            &target_cat.partition,
            &importance,
            &vocabularies,
            &res.embeddings,
            &cfg.selector,
        ),
    )?;

    let reference = match (&cfg.reference, target.gold_texts()) {
        (Some(p), _) => {
            let path = base.join(p);
            let text = stage("evaluate", fs::read_to_string(&path).map_err(|e| Error::io(&path, e)))?;
            Some(("file".to_string(), text))
        }
        (None, Some(gold)) => Some(("target_gold".to_string(), gold.join("\n"))),
        (None, None) => None,
    };
    report.evaluation = reference.map(|(source, text)| EvaluationReport {
        reference_source: source,
        scores: evaluate_texts(&summary.to_text(), &text, &res.stopwords),
    });
    report.summary = Some(summary);
    Ok(())
}

/// Runs every stage. On failure the partially filled report is returned
/// alongside the error so callers can keep what completed.
pub fn run_pipeline(cfg: &PipelineConfig, base: &Path) -> std::result::Result<RunReport, (Error, Box<RunReport>)> {
    let mut report = RunReport::new(cfg.clone());
    match run_stages(cfg, base, &mut report) {
        Ok(()) => Ok(report),
        Err(e) => {
            if let Error::Stage { stage, .. } = &e {
                report.failed_stage = Some((*stage).to_string());
            }
            report.error = Some(e.to_string());
            Err((e, Box::new(report)))
        }
    }
}

pub const REPORT_FILE: &str = "run_report.json";
pub const SUMMARY_JSON_FILE: &str = "summary.json";
pub const SUMMARY_TEXT_FILE: &str = "summary.txt";
pub const QUARANTINE_DIR: &str = "quarantine";

fn write(path: PathBuf, contents: &str) -> Result<()> {
    fs::write(&path, contents).map_err(|e| Error::io(path, e))
}

/// Runs the pipeline and writes the report and summary files into `out_dir`.
/// A failed run writes its partial report under `out_dir/quarantine/` instead.
pub fn run_to_dir(cfg: &PipelineConfig, base: &Path, out_dir: &Path) -> Result<RunReport> {
    match run_pipeline(cfg, base) {
        Ok(report) => {
            fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
            write(out_dir.join(REPORT_FILE), &report.to_json())?;
            if let Some(summary) = &report.summary {
                let json = serde_json::to_string_pretty(summary)? + "\n";
                write(out_dir.join(SUMMARY_JSON_FILE), &json)?;
                write(out_dir.join(SUMMARY_TEXT_FILE), &summary.to_text())?;
            }
            Ok(report)
        }
        Err((err, partial)) => {
            let q = out_dir.join(QUARANTINE_DIR);
            fs::create_dir_all(&q).map_err(|e| Error::io(&q, e))?;
            write(q.join(REPORT_FILE), &partial.to_json())?;
            Err(err)
        }
    }
}
