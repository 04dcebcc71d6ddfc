//! Assigns tweets to the ontology category whose vocabulary they overlap most.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::corpus::{DisasterDataset, Tweet};
use crate::ontology::{Category, Ontology};

/// Label written for tweets that match no category.
pub const UNCLASSIFIED: &str = "UNCLASSIFIED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchedBy {
    Seed,
    Extended,
    Both,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CategoryAssignment {
    pub tweet_id: String,
    #[serde(serialize_with = "serialize_label")]
    pub category_id: Option<String>,
    pub score: usize,
    pub matched_by: MatchedBy,
}

fn serialize_label<S: Serializer>(label: &Option<String>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(label.as_deref().unwrap_or(UNCLASSIFIED))
}

impl CategoryAssignment {
    pub fn is_classified(&self) -> bool {
        self.category_id.is_some()
    }
}

/// Overlap between a tweet's keywords and a category vocabulary.
pub fn sem_sim(tweet: &Tweet, category: &Category, use_extended: bool) -> usize {
    tweet
        .keywords
        .iter()
        .filter(|k| category.contains(k, use_extended))
        .count()
}

fn seed_and_extended_overlap(tweet: &Tweet, category: &Category) -> (usize, usize) {
    tweet.keywords.iter().fold((0, 0), |(s, e), k| {
        if category.seed_keywords.contains(k) {
            (s + 1, e)
        } else if category.extended_keywords.contains(k) {
            (s, e + 1)
        } else {
            (s, e)
        }
    })
}

/// Picks the category with the largest overlap; equal overlaps go to the smaller id.
pub fn classify(tweet: &Tweet, ontology: &Ontology, use_extended: bool) -> CategoryAssignment {
    // categories are stored in ascending id order, so a strict `>` keeps the smallest id on ties
    let mut best: Option<(&Category, usize)> = None;
    for category in ontology.categories() {
        let score = sem_sim(tweet, category, use_extended);
        if score > best.map_or(0, |(_, s)| s) {
            best = Some((category, score));
        }
    }
    match best {
        Some((category, score)) => {
            let (seed, extended) = seed_and_extended_overlap(tweet, category);
            let extended = if use_extended { extended } else { 0 };
            let matched_by = match (seed > 0, extended > 0) {
                (true, true) => MatchedBy::Both,
                (true, false) => MatchedBy::Seed,
                (false, true) => MatchedBy::Extended,
                (false, false) => unreachable!("positive score without overlap"),
            };
            CategoryAssignment {
                tweet_id: tweet.id.clone(),
                category_id: Some(category.id.clone()),
                score,
                matched_by,
            }
        }
        None => CategoryAssignment {
            tweet_id: tweet.id.clone(),
            category_id: None,
            score: 0,
            matched_by: MatchedBy::None,
        },
    }
}

/// Classified tweets grouped by category. Every ontology category has a cell,
/// possibly empty, and tweets keep their dataset order within a cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    cells: BTreeMap<String, Vec<Tweet>>,
}

impl Partition {
    pub fn new(cells: BTreeMap<String, Vec<Tweet>>) -> Self {
        Partition { cells }
    }

    pub fn cells(&self) -> &BTreeMap<String, Vec<Tweet>> {
        &self.cells
    }

    pub fn get(&self, category_id: &str) -> &[Tweet] {
        self.cells.get(category_id).map_or(&[], Vec::as_slice)
    }

    pub fn category_ids(&self) -> impl Iterator<Item = &str> {
        self.cells.keys().map(String::as_str)
    }

    pub fn counts(&self) -> BTreeMap<String, usize> {
        self.cells.iter().map(|(k, v)| (k.clone(), v.len())).collect()
    }

    pub fn total(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }

    /// Share of classified tweets per category; all zero when nothing is classified.
    pub fn fractions(&self) -> BTreeMap<String, f64> {
        let total = self.total();
        self.cells
            .iter()
            .map(|(k, v)| {
                let f = if total == 0 { 0.0 } else { v.len() as f64 / total as f64 };
                (k.clone(), f)
            })
            .collect()
    }
}

/// Coverage figures for one categorization run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationStats {
    pub total: usize,
    pub classified: usize,
    /// Tweets that the seed vocabulary alone classifies.
    pub seed_classified: usize,
    /// Tweets classified only thanks to the extended vocabulary.
    pub extended_only: usize,
    pub classified_pct: f64,
    pub seed_vocabulary_pct: f64,
    pub extended_vocabulary_gain_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Categorization {
    pub assignments: Vec<CategoryAssignment>,
    pub partition: Partition,
    pub stats: ClassificationStats,
}

impl Categorization {
    /// One JSON object per line: tweet_id, category_id, score, matched_by.
    pub fn assignments_jsonl(&self) -> String {
        let mut out = String::new();
        for a in &self.assignments {
            out.push_str(&serde_json::to_string(a).expect("assignment serializes"));
            out.push('\n');
        }
        out
    }
}

fn pct(part: usize, total: usize) -> f64 {
    if total == 0 {
        0.0
    } else {
        100.0 * part as f64 / total as f64
    }
}

/// Classifies a whole dataset. Unclassified tweets appear in `assignments`
/// but in no partition cell.
pub fn classify_corpus(dataset: &DisasterDataset, ontology: &Ontology, use_extended: bool) -> Categorization {
    let mut cells: BTreeMap<String, Vec<Tweet>> = ontology.ids().map(|id| (id.to_owned(), Vec::new())).collect();
    let mut assignments = Vec::with_capacity(dataset.tweets.len());
    let mut seed_classified = 0;

    for tweet in &dataset.tweets {
        let assignment = classify(tweet, ontology, use_extended);
        let seed_hit = ontology.categories().iter().any(|c| sem_sim(tweet, c, false) > 0);
        if seed_hit {
            seed_classified += 1;
        }
        if let Some(category_id) = &assignment.category_id {
            let mut tweet = tweet.clone();
            tweet.category = Some(category_id.clone());
            cells.get_mut(category_id).expect("category cell exists").push(tweet);
        }
        assignments.push(assignment);
    }

    let total = dataset.tweets.len();
    let classified = assignments.iter().filter(|a| a.is_classified()).count();
    let extended_only = classified - seed_classified;
    let stats = ClassificationStats {
        total,
        classified,
        seed_classified,
        extended_only,
        classified_pct: pct(classified, total),
        seed_vocabulary_pct: pct(seed_classified, total),
        extended_vocabulary_gain_pct: pct(extended_only, total),
    };
    Categorization {
        assignments,
        partition: Partition::new(cells),
        stats,
    }
}
