//! Tweet selection within categories.
//!
//! The default selector greedily picks, for each category, the tweet that
//! maximizes `lambda * relevance - (1 - lambda) * redundancy`, where relevance
//! is embedding similarity to the category vocabulary and redundancy is the
//! largest keyword cosine against tweets already in the summary. Five simpler
//! selectors are kept for comparison.

pub mod graph;
pub mod kmeans;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::categorizer::Partition;
use crate::corpus::Tweet;
use crate::embeddings::{cosine, EmbeddingTable};
use crate::error::{Error, Result};
use crate::importance::ImportanceVector;

pub const DEFAULT_LAMBDA: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sim1Mode {
    /// Sum of per-keyword similarities.
    #[default]
    Sum,
    /// Sum divided by the number of tweet keywords.
    Mean,
}

impl FromStr for Sim1Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Sim1Mode::Sum),
            "mean" => Ok(Sim1Mode::Mean),
            _ => Err(Error::InvalidArgument(format!("unknown sim1 mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectorKind {
    #[default]
    Dmmr,
    /// Highest relevance first, no diversity term.
    MaxSim,
    /// Tweet nearest each k-means centroid.
    Kmeans,
    /// Highest eigenvector centrality on the keyword-cosine graph.
    Eigenvector,
    /// Highest PageRank on the keyword-cosine graph.
    Pagerank,
    /// Classic MMR with relevance against the union of all category vocabularies.
    Mmr,
}

impl SelectorKind {
    pub const ALL: [SelectorKind; 6] = [
        SelectorKind::Dmmr,
        SelectorKind::MaxSim,
        SelectorKind::Kmeans,
        SelectorKind::Eigenvector,
        SelectorKind::Pagerank,
        SelectorKind::Mmr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SelectorKind::Dmmr => "dmmr",
            SelectorKind::MaxSim => "max_sim",
            SelectorKind::Kmeans => "kmeans",
            SelectorKind::Eigenvector => "eigenvector",
            SelectorKind::Pagerank => "pagerank",
            SelectorKind::Mmr => "mmr",
        }
    }
}

impl fmt::Display for SelectorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase().replace('-', "_");
        Ok(match s.as_str() {
            "dmmr" => SelectorKind::Dmmr,
            "max_sim" | "maxsim" | "3a" => SelectorKind::MaxSim,
            "kmeans" | "k_means" | "3b" => SelectorKind::Kmeans,
            "eigenvector" | "3c" => SelectorKind::Eigenvector,
            "pagerank" | "3d" => SelectorKind::Pagerank,
            "mmr" | "3e" => SelectorKind::Mmr,
            _ => return Err(Error::InvalidArgument(format!("unknown selector `{s}`"))),
        })
    }
}

/// Which already-selected tweets count toward redundancy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiversityScope {
    /// Every tweet selected so far, across categories.
    #[default]
    WholeSummary,
    /// Only tweets selected for the current category.
    SameCategory,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SelectorConfig {
    pub lambda: f64,
    pub sim1_mode: Sim1Mode,
    pub selector_kind: SelectorKind,
    pub diversity_scope: DiversityScope,
    /// Picks the k-means starting tweet (index into id order, modulo the category size).
    pub seed: u64,
}

impl Default for SelectorConfig {
    fn default() -> Self {
        SelectorConfig {
            lambda: DEFAULT_LAMBDA,
            sim1_mode: Sim1Mode::Sum,
            selector_kind: SelectorKind::Dmmr,
            diversity_scope: DiversityScope::WholeSummary,
            seed: 0,
        }
    }
}

impl SelectorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::InvalidArgument(format!(
                "lambda must be in [0, 1], got {}",
                self.lambda
            )));
        }
        Ok(())
    }
}

/// Embeddings of a vocabulary, skipping words the table does not know.
#[derive(Debug, Clone)]
pub struct VocabVectors<'a> {
    vectors: Vec<&'a [f32]>,
}

impl<'a> VocabVectors<'a> {
    pub fn new<'w, I>(words: I, table: &'a EmbeddingTable) -> Self
    where
        I: IntoIterator<Item = &'w str>,
    {
        VocabVectors {
            vectors: words.into_iter().filter_map(|w| table.get(w)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Best cosine between `word` and any vocabulary vector, floored at 0.
pub fn csim(word: &str, vocab: &VocabVectors<'_>, table: &EmbeddingTable) -> f64 {
    let Some(v) = table.get(word) else {
        return 0.0;
    };
    vocab.vectors.iter().map(|k| cosine(v, k)).fold(0.0, f64::max)
}

/// Relevance of a tweet to a vocabulary: per-keyword [`csim`], summed or averaged.
pub fn sim1(tweet: &Tweet, vocab: &VocabVectors<'_>, table: &EmbeddingTable, mode: Sim1Mode) -> f64 {
    let total: f64 = tweet.keywords.iter().map(|k| csim(k, vocab, table)).sum();
    match mode {
        Sim1Mode::Sum => total,
        Sim1Mode::Mean if tweet.keywords.is_empty() => 0.0,
        Sim1Mode::Mean => total / tweet.keywords.len() as f64,
    }
}

/// Keyword-set cosine: `|A ∩ B| / sqrt(|A| |B|)`, 0 when either set is empty.
pub fn sim2(a: &Tweet, b: &Tweet) -> f64 {
    if a.keywords.is_empty() || b.keywords.is_empty() {
        return 0.0;
    }
    let shared = a.keywords.intersection(&b.keywords).count() as f64;
    shared / ((a.keywords.len() * b.keywords.len()) as f64).sqrt()
}

/// Greedy maximal-marginal-relevance loop over precomputed relevance scores.
///
/// Each step picks the remaining candidate maximizing
/// `lambda * relevance - (1 - lambda) * max redundancy against context + picks so far`,
/// ties to the smaller tweet id. Returns `(candidate index, score)` in pick order.
pub fn greedy_mmr<F>(
    candidates: &[&Tweet],
    relevance: &[f64],
    count: usize,
    lambda: f64,
    context: &[&Tweet],
    redundancy: F,
) -> Result<Vec<(usize, f64)>>
where
    F: Fn(&Tweet, &Tweet) -> f64,
{
    assert_eq!(candidates.len(), relevance.len());
    if count > candidates.len() {
        return Err(Error::InsufficientTweets {
            required: count,
            available: candidates.len(),
        });
    }
    let mut max_redundancy: Vec<f64> = candidates
        .iter()
        .map(|c| context.iter().map(|s| redundancy(c, s)).fold(0.0, f64::max))
        .collect();
    let mut remaining: Vec<bool> = vec![true; candidates.len()];
    let mut picks = Vec::with_capacity(count);

    for _ in 0..count {
        let mut best: Option<(usize, f64)> = None;
        for i in (0..candidates.len()).filter(|&i| remaining[i]) {
            let score = lambda * relevance[i] - (1.0 - lambda) * max_redundancy[i];
            let better = match best {
                None => true,
                Some((b, bs)) => score > bs || (score == bs && candidates[i].id < candidates[b].id),
            };
            if better {
                best = Some((i, score));
            }
        }
        let (chosen, score) = best.expect("count <= candidates");
        remaining[chosen] = false;
        picks.push((chosen, score));
        for i in (0..candidates.len()).filter(|&i| remaining[i]) {
            let r = redundancy(candidates[i], candidates[chosen]);
            if r > max_redundancy[i] {
                max_redundancy[i] = r;
            }
        }
    }
    Ok(picks)
}

/// One chosen tweet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryEntry {
    pub tweet_id: String,
    pub category_id: String,
    pub selection_score: f64,
    pub text: String,
}

fn entry(tweet: &Tweet, category_id: &str, score: f64) -> SummaryEntry {
    SummaryEntry {
        tweet_id: tweet.id.clone(),
        category_id: category_id.to_owned(),
        selection_score: score,
        text: tweet.raw_text.clone(),
    }
}

/// Greedy relevance/diversity selection of `count` tweets from one category.
/// Picks are appended to `summary` in selection order.
pub fn dmmr_select<'t>(
    tweets: &'t [Tweet],
    category_id: &str,
    count: usize,
    vocab: &VocabVectors<'_>,
    table: &EmbeddingTable,
    cfg: &SelectorConfig,
    summary: &mut Vec<&'t Tweet>,
) -> Result<Vec<SummaryEntry>> {
    let candidates: Vec<&Tweet> = tweets.iter().collect();
    let relevance: Vec<f64> = candidates
        .iter()
        .map(|t| sim1(t, vocab, table, cfg.sim1_mode))
        .collect();
    let picks = greedy_mmr(&candidates, &relevance, count, cfg.lambda, summary, sim2)?;
    Ok(picks
        .into_iter()
        .map(|(i, score)| {
            summary.push(candidates[i]);
            entry(candidates[i], category_id, score)
        })
        .collect())
}

fn top_by_score(tweets: &[Tweet], scores: &[f64], count: usize) -> Vec<(usize, f64)> {
    let mut order: Vec<usize> = (0..tweets.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| tweets[a].id.cmp(&tweets[b].id))
    });
    order.into_iter().take(count).map(|i| (i, scores[i])).collect()
}

fn sim2_matrix(tweets: &[Tweet]) -> Vec<Vec<f64>> {
    (0..tweets.len())
        .map(|i| {
            (0..tweets.len())
                .map(|j| if i == j { 0.0 } else { sim2(&tweets[i], &tweets[j]) })
                .collect()
        })
        .collect()
}

/// Mean embedding of a tweet's keywords; zero when none is in the table.
pub fn tweet_vector(tweet: &Tweet, table: &EmbeddingTable) -> Vec<f64> {
    let mut sum = vec![0.0; table.dimension()];
    let mut n = 0usize;
    for v in tweet.keywords.iter().filter_map(|k| table.get(k)) {
        sum.iter_mut().zip(v).for_each(|(s, &x)| *s += f64::from(x));
        n += 1;
    }
    if n > 0 {
        sum.iter_mut().for_each(|s| *s /= n as f64);
    }
    sum
}

/// Inputs shared by every selector for one category.
pub struct CategoryContext<'a> {
    pub category_id: &'a str,
    pub vocab: &'a VocabVectors<'a>,
    /// Union of all category vocabularies; relevance source for classic MMR.
    pub corpus_vocab: &'a VocabVectors<'a>,
    pub table: &'a EmbeddingTable,
}

/// Runs one of the non-default selectors on a single category.
pub fn ablation_select<'t>(
    kind: SelectorKind,
    tweets: &'t [Tweet],
    count: usize,
    ctx: &CategoryContext<'_>,
    cfg: &SelectorConfig,
    summary: &mut Vec<&'t Tweet>,
) -> Result<Vec<SummaryEntry>> {
    if count > tweets.len() {
        return Err(Error::InsufficientTweets {
            required: count,
            available: tweets.len(),
        });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let picks: Vec<(usize, f64)> = match kind {
        SelectorKind::Dmmr => {
            return dmmr_select(tweets, ctx.category_id, count, ctx.vocab, ctx.table, cfg, summary);
        }
        SelectorKind::MaxSim => {
            let scores: Vec<f64> = tweets
                .iter()
                .map(|t| sim1(t, ctx.vocab, ctx.table, cfg.sim1_mode))
                .collect();
            top_by_score(tweets, &scores, count)
        }
        SelectorKind::Kmeans => {
            let mut order: Vec<usize> = (0..tweets.len()).collect();
            order.sort_by(|&a, &b| tweets[a].id.cmp(&tweets[b].id));
            let points: Vec<Vec<f64>> = order.iter().map(|&i| tweet_vector(&tweets[i], ctx.table)).collect();
            let start = (cfg.seed % tweets.len() as u64) as usize;
            let clustering = kmeans::kmeans(&points, count, start);
            kmeans::representatives(&points, &clustering)
                .into_iter()
                .map(|(p, d)| (order[p], d))
                .collect()
        }
        SelectorKind::Eigenvector => {
            let scores = graph::eigenvector_centrality(&sim2_matrix(tweets));
            top_by_score(tweets, &scores, count)
        }
        SelectorKind::Pagerank => {
            let scores = graph::pagerank(&sim2_matrix(tweets), graph::PAGERANK_DAMPING);
            top_by_score(tweets, &scores, count)
        }
        SelectorKind::Mmr => {
            let candidates: Vec<&Tweet> = tweets.iter().collect();
            let relevance: Vec<f64> = candidates
                .iter()
                .map(|t| sim1(t, ctx.corpus_vocab, ctx.table, cfg.sim1_mode))
                .collect();
            greedy_mmr(&candidates, &relevance, count, cfg.lambda, summary, sim2)?
        }
    };
    Ok(picks
        .into_iter()
        .map(|(i, score)| {
            summary.push(&tweets[i]);
            entry(&tweets[i], ctx.category_id, score)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: Vec<SummaryEntry>,
    pub importance: ImportanceVector,
    pub config: SelectorConfig,
}

impl Summary {
    /// One tweet per line in selection order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&e.text.replace(['\n', '\r'], " "));
            out.push('\n');
        }
        out
    }

    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut counts = BTreeMap::new();
        for e in &self.entries {
            *counts.entry(e.category_id.clone()).or_default() += 1;
        }
        counts
    }
}

/// Builds the summary category by category in ascending id order, sharing one
/// growing summary so redundancy is checked across categories.
pub fn summarize(
    partition: &Partition,
    importance: &ImportanceVector,
    vocabularies: &BTreeMap<String, BTreeSet<String>>,
    table: &EmbeddingTable,
    cfg: &SelectorConfig,
) -> Result<Summary> {
    cfg.validate()?;
    for (id, &count) in &importance.counts {
        if count > 0 && !partition.cells().contains_key(id) {
            return Err(Error::UnknownCategory(id.clone()));
        }
    }
    let corpus_words: BTreeSet<&str> = vocabularies.values().flatten().map(String::as_str).collect();
    let corpus_vocab = VocabVectors::new(corpus_words.iter().copied(), table);

    let mut summary: Vec<&Tweet> = Vec::new();
    let mut entries = Vec::with_capacity(importance.m);
    for (category_id, tweets) in partition.cells() {
        let count = importance.get(category_id);
        if count == 0 {
            continue;
        }
        let vocab = VocabVectors::new(
            vocabularies.get(category_id).into_iter().flatten().map(String::as_str),
            table,
        );
        let ctx = CategoryContext {
            category_id,
            vocab: &vocab,
            corpus_vocab: &corpus_vocab,
            table,
        };
        let picked = match cfg.diversity_scope {
            DiversityScope::WholeSummary => ablation_select(cfg.selector_kind, tweets, count, &ctx, cfg, &mut summary)?,
            DiversityScope::SameCategory => {
                let mut local = Vec::new();
                let picked = ablation_select(cfg.selector_kind, tweets, count, &ctx, cfg, &mut local)?;
                summary.extend(local);
                picked
            }
        };
        entries.extend(picked);
    }

    let unique: HashSet<&str> = entries.iter().map(|e| e.tweet_id.as_str()).collect();
    debug_assert_eq!(unique.len(), entries.len(), "a tweet was selected twice");
    Ok(Summary {
        entries,
        importance: importance.clone(),
        config: *cfg,
    })
}
