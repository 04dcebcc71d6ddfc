//! Per-category summary quotas.
//!
//! A regression line maps a category's share of classified tweets to the number
//! of reference-summary tweets it earned in a similar past disaster. Predictions
//! for the target disaster are then turned into integer quotas that add up to
//! the summary length exactly.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::categorizer::Partition;
use crate::corpus::DisasterDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RegressionKind {
    /// Ordinary least squares.
    Linear,
    /// Least squares with an L2 penalty on the slope only.
    Ridge { alpha: f64 },
    /// Posterior mean under a zero-mean isotropic Gaussian prior.
    Bayesian { prior_precision: f64, noise_precision: f64 },
    /// Every category gets the same share.
    Equal,
}

impl RegressionKind {
    pub fn name(&self) -> &'static str {
        match self {
            RegressionKind::Linear => "linear",
            RegressionKind::Ridge { .. } => "ridge",
            RegressionKind::Bayesian { .. } => "bayesian",
            RegressionKind::Equal => "equal",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionModel {
    pub kind: RegressionKind,
    /// `None` for the equal-share model.
    pub coefficients: Option<Coefficients>,
    /// Posterior covariance of `[intercept, slope]`, Bayesian fits only. Informational.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub posterior_covariance: Option<[[f64; 2]; 2]>,
}

impl RegressionModel {
    pub fn predict(&self, x: f64) -> Option<f64> {
        self.coefficients.map(|c| c.slope * x + c.intercept)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingPair {
    pub category_id: String,
    /// Share of the disaster's classified tweets in this category.
    pub x: f64,
    /// Reference-summary tweets labelled with this category.
    pub y: f64,
}

/// One `(share, gold count)` pair per category of the training disaster.
pub fn build_training_pairs(dataset: &DisasterDataset, partition: &Partition) -> Result<Vec<TrainingPair>> {
    let gold = dataset
        .gold_summary
        .as_ref()
        .ok_or_else(|| Error::MissingGold(dataset.id.clone()))?;
    let mut gold_counts: BTreeMap<&str, usize> = partition.category_ids().map(|id| (id, 0)).collect();
    for entry in gold {
        *gold_counts
            .get_mut(entry.category_id.as_str())
            .ok_or_else(|| Error::UnknownCategory(entry.category_id.clone()))? += 1;
    }
    let fractions = partition.fractions();
    Ok(fractions
        .into_iter()
        .map(|(id, x)| {
            let y = gold_counts[id.as_str()] as f64;
            TrainingPair { category_id: id, x, y }
        })
        .collect())
}

struct Moments {
    n: f64,
    mean_x: f64,
    mean_y: f64,
    sxx: f64,
    sxy: f64,
}

fn moments(pairs: &[TrainingPair]) -> Moments {
    let n = pairs.len() as f64;
    let mean_x = pairs.iter().map(|p| p.x).sum::<f64>() / n;
    let mean_y = pairs.iter().map(|p| p.y).sum::<f64>() / n;
    let (sxx, sxy) = pairs.iter().fold((0.0, 0.0), |(sxx, sxy), p| {
        let dx = p.x - mean_x;
        (sxx + dx * dx, sxy + dx * (p.y - mean_y))
    });
    Moments {
        n,
        mean_x,
        mean_y,
        sxx,
        sxy,
    }
}

/// Fits the requested model. Constant `x` yields slope 0 and the mean of `y`.
pub fn fit(pairs: &[TrainingPair], kind: RegressionKind) -> Result<RegressionModel> {
    if kind == RegressionKind::Equal {
        return Ok(RegressionModel {
            kind,
            coefficients: None,
            posterior_covariance: None,
        });
    }
    if pairs.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "{} regression needs at least 2 training pairs, got {}",
            kind.name(),
            pairs.len()
        )));
    }
    if pairs.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(Error::InvalidArgument("training pairs must be finite".into()));
    }
    let m = moments(pairs);

    let (coefficients, posterior_covariance) = match kind {
        RegressionKind::Linear => {
            let slope = if m.sxx > 0.0 { m.sxy / m.sxx } else { 0.0 };
            (
                Coefficients {
                    slope,
                    intercept: m.mean_y - slope * m.mean_x,
                },
                None,
            )
        }
        RegressionKind::Ridge { alpha } => {
            if !(alpha >= 0.0 && alpha.is_finite()) {
                return Err(Error::InvalidArgument(format!("ridge alpha must be >= 0, got {alpha}")));
            }
            let denom = m.sxx + alpha;
            let slope = if denom > 0.0 { m.sxy / denom } else { 0.0 };
            (
                Coefficients {
                    slope,
                    intercept: m.mean_y - slope * m.mean_x,
                },
                None,
            )
        }
        RegressionKind::Bayesian {
            prior_precision,
            noise_precision,
        } => {
            if !(prior_precision > 0.0 && noise_precision > 0.0) {
                return Err(Error::InvalidArgument("Bayesian precisions must be positive".into()));
            }
            // precision matrix of [intercept, slope]: prior * I + noise * X^T X
            let sum_x: f64 = pairs.iter().map(|p| p.x).sum();
            let sum_xx: f64 = pairs.iter().map(|p| p.x * p.x).sum();
            let sum_y: f64 = pairs.iter().map(|p| p.y).sum();
            let sum_xy: f64 = pairs.iter().map(|p| p.x * p.y).sum();
            let a00 = prior_precision + noise_precision * m.n;
            let a01 = noise_precision * sum_x;
            let a11 = prior_precision + noise_precision * sum_xx;
            let det = a00 * a11 - a01 * a01;
            let cov = [[a11 / det, -a01 / det], [-a01 / det, a00 / det]];
            let b0 = noise_precision * sum_y;
            let b1 = noise_precision * sum_xy;
            let intercept = cov[0][0] * b0 + cov[0][1] * b1;
            let slope = cov[1][0] * b0 + cov[1][1] * b1;
            (Coefficients { slope, intercept }, Some(cov))
        }
        RegressionKind::Equal => unreachable!(),
    };

    if !coefficients.slope.is_finite() || !coefficients.intercept.is_finite() {
        return Err(Error::InvalidArgument(
            "regression produced non-finite coefficients".into(),
        ));
    }
    Ok(RegressionModel {
        kind,
        coefficients: Some(coefficients),
        posterior_covariance,
    })
}

/// Target-side input for one category.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CategorySlot {
    pub category_id: String,
    pub fraction: f64,
    pub available: usize,
}

impl CategorySlot {
    /// Slots for every cell of a partition.
    pub fn from_partition(partition: &Partition) -> Vec<CategorySlot> {
        let fractions = partition.fractions();
        partition
            .cells()
            .iter()
            .map(|(id, tweets)| CategorySlot {
                category_id: id.clone(),
                fraction: fractions[id],
                available: tweets.len(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceVector {
    pub m: usize,
    pub counts: BTreeMap<String, usize>,
    /// Model output per category before clamping and integerization.
    pub raw_predictions: BTreeMap<String, f64>,
}

impl ImportanceVector {
    pub fn get(&self, category_id: &str) -> usize {
        self.counts.get(category_id).copied().unwrap_or(0)
    }

    /// Equal split of `m` over the given slots.
    pub fn equal(slots: &[CategorySlot], m: usize) -> Result<Self> {
        let model = fit(&[], RegressionKind::Equal)?;
        predict_importance(&model, slots, m)
    }
}

/// Real-valued quotas summing to `m`, proportional to `weights` and capped by
/// `caps`. Surplus above a cap is spread over the remaining slots the same way.
fn capped_quotas(weights: &[f64], caps: &[usize], m: usize) -> Vec<f64> {
    let k = weights.len();
    let mut quota = vec![0.0; k];
    let mut fixed = vec![false; k];
    for i in 0..k {
        if caps[i] == 0 {
            fixed[i] = true;
        }
    }
    let mut remaining = m as f64;
    loop {
        let free: Vec<usize> = (0..k).filter(|&i| !fixed[i]).collect();
        if free.is_empty() {
            break;
        }
        let total: f64 = free.iter().map(|&i| weights[i]).sum();
        for &i in &free {
            quota[i] = if total > 0.0 {
                remaining * weights[i] / total
            } else {
                remaining / free.len() as f64
            };
        }
        let over: Vec<usize> = free.iter().copied().filter(|&i| quota[i] > caps[i] as f64).collect();
        if over.is_empty() {
            break;
        }
        for i in over {
            quota[i] = caps[i] as f64;
            fixed[i] = true;
            remaining -= caps[i] as f64;
        }
    }
    quota
}

/// Integer per-category quotas that sum to `m` and never exceed availability.
///
/// Raw predictions are clamped to `[0, available]`, scaled to `m`, and rounded
/// by largest remainder. Remainder ties go to the larger share, then the
/// smaller category id.
pub fn predict_importance(model: &RegressionModel, slots: &[CategorySlot], m: usize) -> Result<ImportanceVector> {
    if m == 0 {
        return Err(Error::InvalidArgument("summary length must be at least 1".into()));
    }
    let available: usize = slots.iter().map(|s| s.available).sum();
    if available < m {
        return Err(Error::InsufficientTweets { required: m, available });
    }

    let mut slots: Vec<&CategorySlot> = slots.iter().collect();
    slots.sort_by(|a, b| a.category_id.cmp(&b.category_id));
    let k = slots.len();

    let raw: Vec<f64> = slots
        .iter()
        .map(|s| model.predict(s.fraction).unwrap_or(m as f64 / k as f64))
        .collect();
    let caps: Vec<usize> = slots.iter().map(|s| s.available).collect();
    let weights: Vec<f64> = raw
        .iter()
        .zip(&caps)
        .map(|(&r, &c)| if r.is_finite() { r.clamp(0.0, c as f64) } else { 0.0 })
        .collect();

    let quota = capped_quotas(&weights, &caps, m);
    let mut counts: Vec<usize> = quota
        .iter()
        .zip(&caps)
        .map(|(&q, &c)| (q.floor() as usize).min(c))
        .collect();

    let mut order: Vec<usize> = (0..k).collect();
    let remainder = |i: usize| quota[i] - quota[i].floor();
    order.sort_by(|&a, &b| {
        remainder(b)
            .partial_cmp(&remainder(a))
            .unwrap_or(Ordering::Equal)
            .then_with(|| {
                slots[b]
                    .fraction
                    .partial_cmp(&slots[a].fraction)
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| slots[a].category_id.cmp(&slots[b].category_id))
    });

    let mut assigned: usize = counts.iter().sum();
    while assigned < m {
        let before = assigned;
        for &i in &order {
            if assigned == m {
                break;
            }
            if counts[i] < caps[i] {
                counts[i] += 1;
                assigned += 1;
            }
        }
        debug_assert!(assigned > before, "capacity was checked up front");
    }

    Ok(ImportanceVector {
        m,
        counts: slots
            .iter()
            .zip(&counts)
            .map(|(s, &c)| (s.category_id.clone(), c))
            .collect(),
        raw_predictions: slots
            .iter()
            .zip(&raw)
            .map(|(s, &r)| (s.category_id.clone(), r))
            .collect(),
    })
}
