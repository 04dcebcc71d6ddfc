//! Similarity between disasters from their category profiles.
//!
//! Two signals are blended: how alike the most frequent keywords of each
//! category are (average per-category cosine) and how alike the category
//! distributions are (one minus base-2 Jensen-Shannon divergence).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::categorizer::Partition;
use crate::corpus::{DisasterDataset, DisasterType};
use crate::error::{Error, Result};

pub const DEFAULT_TOP_K: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryStats {
    pub count: usize,
    pub probability: f64,
    /// At most `top_k` keywords with their tweet frequencies.
    pub top_keywords: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryProfile {
    pub top_k: usize,
    pub total: usize,
    pub categories: BTreeMap<String, CategoryStats>,
}

/// Summarizes a partition: category shares and the `k` most frequent keywords per category.
pub fn build_profile(partition: &Partition, k: usize) -> Result<CategoryProfile> {
    if k == 0 {
        return Err(Error::InvalidArgument("top-k must be at least 1".into()));
    }
    let total = partition.total();
    if total == 0 {
        return Err(Error::EmptyPartition);
    }
    let categories = partition
        .cells()
        .iter()
        .map(|(id, tweets)| {
            let mut freq: BTreeMap<&str, usize> = BTreeMap::new();
            for kw in tweets.iter().flat_map(|t| &t.keywords) {
                *freq.entry(kw.as_str()).or_default() += 1;
            }
            let mut ranked: Vec<(&str, usize)> = freq.into_iter().collect();
            ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
            ranked.truncate(k);
            let stats = CategoryStats {
                count: tweets.len(),
                probability: tweets.len() as f64 / total as f64,
                top_keywords: ranked.into_iter().map(|(w, f)| (w.to_owned(), f)).collect(),
            };
            (id.clone(), stats)
        })
        .collect();
    Ok(CategoryProfile {
        top_k: k,
        total,
        categories,
    })
}

fn category_ids<'a>(px: &'a CategoryProfile, py: &'a CategoryProfile) -> BTreeSet<&'a str> {
    px.categories
        .keys()
        .chain(py.categories.keys())
        .map(String::as_str)
        .collect()
}

fn keyword_cosine(x: &BTreeMap<String, usize>, y: &BTreeMap<String, usize>) -> f64 {
    match (x.is_empty(), y.is_empty()) {
        (true, true) => return 1.0,
        (true, false) | (false, true) => return 0.0,
        _ if x == y => return 1.0,
        _ => {}
    }
    let words: BTreeSet<&String> = x.keys().chain(y.keys()).collect();
    let (mut dot, mut nx, mut ny) = (0.0, 0.0, 0.0);
    for w in words {
        let a = x.get(w).copied().unwrap_or(0) as f64;
        let b = y.get(w).copied().unwrap_or(0) as f64;
        dot += a * b;
        nx += a * a;
        ny += b * b;
    }
    (dot / (nx.sqrt() * ny.sqrt())).clamp(0.0, 1.0)
}

/// Average over categories of the cosine between top-keyword frequency vectors.
///
/// A category present on only one side scores 0; a category with no keywords
/// on either side counts as identical, so every profile is fully self-similar.
pub fn cat_ic(px: &CategoryProfile, py: &CategoryProfile) -> f64 {
    let ids = category_ids(px, py);
    if ids.is_empty() {
        return 0.0;
    }
    let empty = BTreeMap::new();
    let sum: f64 = ids
        .iter()
        .map(|id| {
            let x = px.categories.get(*id).map_or(&empty, |c| &c.top_keywords);
            let y = py.categories.get(*id).map_or(&empty, |c| &c.top_keywords);
            keyword_cosine(x, y)
        })
        .sum();
    sum / ids.len() as f64
}

fn kl_to_mixture(p: &[f64], m: &[f64]) -> f64 {
    p.iter()
        .zip(m)
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &mi)| pi * (pi / mi).log2())
        .sum()
}

/// Jensen-Shannon divergence in bits, so the result lies in `[0, 1]`.
pub fn jensen_shannon_divergence(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len(), "distributions over different supports");
    let m: Vec<f64> = p.iter().zip(q).map(|(a, b)| 0.5 * (a + b)).collect();
    let js = 0.5 * kl_to_mixture(p, &m) + 0.5 * kl_to_mixture(q, &m);
    js.clamp(0.0, 1.0)
}

/// One minus the Jensen-Shannon divergence of the category distributions.
pub fn cat_p(px: &CategoryProfile, py: &CategoryProfile) -> f64 {
    let ids = category_ids(px, py);
    let prob = |p: &CategoryProfile, id: &str| p.categories.get(id).map_or(0.0, |c| c.probability);
    let p: Vec<f64> = ids.iter().map(|id| prob(px, id)).collect();
    let q: Vec<f64> = ids.iter().map(|id| prob(py, id)).collect();
    1.0 - jensen_shannon_divergence(&p, &q)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimilarityScore {
    pub dis_sim: f64,
    pub cat_ic: f64,
    pub cat_p: f64,
    pub w1: f64,
    pub w2: f64,
}

pub fn validate_weights(w1: f64, w2: f64) -> Result<()> {
    let open_unit = |w: f64| w > 0.0 && w < 1.0;
    if !open_unit(w1) || !open_unit(w2) || (w1 + w2 - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights { w1, w2 });
    }
    Ok(())
}

/// Weighted blend `w1 * cat_ic + w2 * cat_p`.
pub fn dis_sim(px: &CategoryProfile, py: &CategoryProfile, w1: f64, w2: f64) -> Result<SimilarityScore> {
    validate_weights(w1, w2)?;
    let ic = cat_ic(px, py);
    let p = cat_p(px, py);
    Ok(SimilarityScore {
        dis_sim: w1 * ic + w2 * p,
        cat_ic: ic,
        cat_p: p,
        w1,
        w2,
    })
}

/// A dataset's identity and metadata alongside its profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisasterProfile {
    pub id: String,
    pub disaster_type: DisasterType,
    pub continent: String,
    pub profile: CategoryProfile,
}

impl DisasterProfile {
    pub fn new(dataset: &DisasterDataset, profile: CategoryProfile) -> Self {
        DisasterProfile {
            id: dataset.id.clone(),
            disaster_type: dataset.disaster_type,
            continent: dataset.continent.clone(),
            profile,
        }
    }

    /// Same disaster type on the same continent.
    pub fn is_homogeneous_with(&self, other: &DisasterProfile) -> bool {
        self.disaster_type == other.disaster_type && self.continent.eq_ignore_ascii_case(&other.continent)
    }
}

/// Finds the candidate most similar to `target`. Candidates sharing the
/// target's id are skipped; ties go to the smaller id.
pub fn most_similar<'a>(
    target: &DisasterProfile,
    candidates: &'a [DisasterProfile],
    homogeneous_only: bool,
    w1: f64,
    w2: f64,
) -> Result<(&'a DisasterProfile, SimilarityScore)> {
    validate_weights(w1, w2)?;
    let pool: Vec<&DisasterProfile> = candidates
        .iter()
        .filter(|c| c.id != target.id)
        .filter(|c| !homogeneous_only || c.is_homogeneous_with(target))
        .collect();
    if pool.is_empty() {
        return Err(Error::NoCandidates(if homogeneous_only {
            " of the same type and continent; disable the homogeneous filter"
        } else {
            ""
        }));
    }
    let mut best: Option<(&DisasterProfile, SimilarityScore)> = None;
    for candidate in pool {
        let score = dis_sim(&target.profile, &candidate.profile, w1, w2)?;
        let better = match &best {
            None => true,
            Some((b, s)) => score.dis_sim > s.dis_sim || (score.dis_sim == s.dis_sim && candidate.id < b.id),
        };
        if better {
            best = Some((candidate, score));
        }
    }
    Ok(best.expect("pool is non-empty"))
}

/// Pairwise similarity over a set of disasters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimilarityMatrix {
    pub ids: Vec<String>,
    pub scores: Vec<Vec<SimilarityScore>>,
}

impl SimilarityMatrix {
    pub fn compute(profiles: &[DisasterProfile], w1: f64, w2: f64) -> Result<Self> {
        validate_weights(w1, w2)?;
        let scores = profiles
            .iter()
            .map(|a| {
                profiles
                    .iter()
                    .map(|b| dis_sim(&a.profile, &b.profile, w1, w2))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimilarityMatrix {
            ids: profiles.iter().map(|p| p.id.clone()).collect(),
            scores,
        })
    }

    /// Most similar other disaster for row `i`, ties to the smaller id.
    pub fn row_argmax(&self, i: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for j in (0..self.ids.len()).filter(|&j| j != i) {
            let s = self.scores[i][j].dis_sim;
            best = match best {
                Some(b) if self.scores[i][b].dis_sim > s => Some(b),
                Some(b) if self.scores[i][b].dis_sim == s && self.ids[b] < self.ids[j] => Some(b),
                _ => Some(j),
            };
        }
        best
    }

    /// CSV with one row per disaster, the DisSIM matrix, then the row argmax.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dataset");
        for id in &self.ids {
            write!(out, ",{id}").unwrap();
        }
        out.push_str(",most_similar,max_dis_sim\n");
        for (i, id) in self.ids.iter().enumerate() {
            out.push_str(id);
            for s in &self.scores[i] {
                write!(out, ",{:.6}", s.dis_sim).unwrap();
            }
            match self.row_argmax(i) {
                Some(j) => writeln!(out, ",{},{:.6}", self.ids[j], self.scores[i][j].dis_sim).unwrap(),
                None => out.push_str(",,\n"),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Tweet;

    fn partition(cells: &[(&str, Vec<Vec<&str>>)]) -> Partition {
        let mut n = 0;
        Partition::new(
            cells
                .iter()
                .map(|(id, tweets)| {
                    let tweets = tweets
                        .iter()
                        .map(|kw| {
                            n += 1;
                            Tweet::from_keywords(format!("t{n}"), kw.iter().copied())
                        })
                        .collect();
                    (id.to_string(), tweets)
                })
                .collect(),
        )
    }

    #[test]
    fn profile_probabilities() {
        let p = partition(&[("a", vec![vec!["x"]; 6]), ("b", vec![vec!["y"]; 4])]);
        let prof = build_profile(&p, 5).unwrap();
        assert!((prof.categories["a"].probability - 0.6).abs() < 1e-15);
        assert!((prof.categories["b"].probability - 0.4).abs() < 1e-15);
        let single = build_profile(&partition(&[("a", vec![vec!["x"]])]), 5).unwrap();
        assert_eq!(single.categories["a"].probability, 1.0);
    }

    #[test]
    fn top_k_tie_breaks_by_word() {
        let p = partition(&[("a", vec![vec!["flood", "rain"]; 5])]);
        let prof = build_profile(&p, 1).unwrap();
        let top: Vec<_> = prof.categories["a"].top_keywords.iter().collect();
        assert_eq!(top, vec![(&"flood".to_string(), &5)]);
    }

    #[test]
    fn empty_partition_errors() {
        let p = partition(&[("a", vec![])]);
        assert!(matches!(build_profile(&p, 3), Err(Error::EmptyPartition)));
    }

    #[test]
    fn cat_ic_examples() {
        let x = build_profile(&partition(&[("a", vec![vec!["p", "q"]]), ("b", vec![vec!["r"]])]), 10).unwrap();
        let y = build_profile(&partition(&[("a", vec![vec!["p", "q"]]), ("b", vec![vec!["s"]])]), 10).unwrap();
        let z = build_profile(&partition(&[("a", vec![vec!["u"]]), ("b", vec![vec!["v"]])]), 10).unwrap();
        assert!((cat_ic(&x, &x) - 1.0).abs() < 1e-12);
        assert_eq!(cat_ic(&x, &z), 0.0);
        assert!((cat_ic(&x, &y) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn jsd_known_values() {
        // H(1/4, 3/4) - 1/2 computed by hand from the definition
        let h = -(0.25f64 * 0.25f64.log2() + 0.75 * 0.75f64.log2());
        let expected = 1.0 - (h - 0.5);
        let js = jensen_shannon_divergence(&[0.5, 0.5], &[1.0, 0.0]);
        assert!((1.0 - js - expected).abs() < 1e-12);
        assert!((1.0 - js - 0.6887).abs() < 1e-4);
        assert!((jensen_shannon_divergence(&[1.0, 0.0], &[0.0, 1.0]) - 1.0).abs() < 1e-12);
        assert_eq!(jensen_shannon_divergence(&[0.3, 0.7], &[0.3, 0.7]), 0.0);
    }

    #[test]
    fn dis_sim_weights_and_self_similarity() {
        let x = build_profile(&partition(&[("a", vec![vec!["p"]]), ("b", vec![])]), 10).unwrap();
        let s = dis_sim(&x, &x, 0.5, 0.5).unwrap();
        assert_eq!(s.dis_sim, 1.0);
        assert!(dis_sim(&x, &x, 0.0, 1.0).is_err());
        assert!(dis_sim(&x, &x, 0.6, 0.6).is_err());
        assert!((0.5 * 0.4 + 0.5 * 0.6 - 0.5f64).abs() < 1e-12);
    }

    fn dp(id: &str, t: DisasterType, continent: &str, p: &Partition) -> DisasterProfile {
        DisasterProfile {
            id: id.into(),
            disaster_type: t,
            continent: continent.into(),
            profile: build_profile(p, 10).unwrap(),
        }
    }

    #[test]
    fn most_similar_picks_argmax_and_filters() {
        let base = partition(&[("a", vec![vec!["p", "q"]; 3]), ("b", vec![vec!["r"]])]);
        let close = partition(&[("a", vec![vec!["p", "q"]; 3]), ("b", vec![vec!["s"]])]);
        let far = partition(&[("a", vec![vec!["u"]]), ("b", vec![vec!["v"]; 5])]);
        let target = dp("x", DisasterType::Natural, "asia", &base);
        let cands = vec![
            dp("far", DisasterType::Natural, "asia", &far),
            dp("close", DisasterType::ManMade, "usa", &close),
        ];
        let (best, _) = most_similar(&target, &cands, false, 0.5, 0.5).unwrap();
        assert_eq!(best.id, "close");
        let (best, _) = most_similar(&target, &cands, true, 0.5, 0.5).unwrap();
        assert_eq!(best.id, "far");
        let only_usa = &cands[1..];
        assert!(matches!(
            most_similar(&target, only_usa, true, 0.5, 0.5),
            Err(Error::NoCandidates(_))
        ));
    }

    #[test]
    fn matrix_csv_is_symmetric() {
        let a = dp(
            "a",
            DisasterType::Natural,
            "asia",
            &partition(&[("c", vec![vec!["p"]; 2]), ("d", vec![vec!["q"]])]),
        );
        let b = dp(
            "b",
            DisasterType::Natural,
            "asia",
            &partition(&[("c", vec![vec!["p"]]), ("d", vec![vec!["r"]; 3])]),
        );
        let m = SimilarityMatrix::compute(&[a, b], 0.5, 0.5).unwrap();
        assert_eq!(m.scores[0][1].dis_sim, m.scores[1][0].dis_sim);
        assert_eq!(m.row_argmax(0), Some(1));
        let csv = m.to_csv();
        assert!(csv.starts_with("dataset,a,b,most_similar,max_dis_sim\n"));
        assert_eq!(csv.lines().count(), 3);
    }
}
