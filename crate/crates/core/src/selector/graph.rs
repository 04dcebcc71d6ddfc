//! Centrality over a dense weighted similarity graph.

/// Iteration cap shared by both centrality measures.
pub const MAX_ITERATIONS: usize = 100;
/// L1 change below which iteration stops.
pub const TOLERANCE: f64 = 1e-10;
pub const PAGERANK_DAMPING: f64 = 0.85;

fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Principal eigenvector of a symmetric non-negative weight matrix, L2-normalized.
///
/// Iterates on `W + I`, which shares eigenvectors with `W` but cannot
/// oscillate on bipartite graphs.
pub fn eigenvector_centrality(weights: &[Vec<f64>]) -> Vec<f64> {
    let n = weights.len();
    if n == 0 {
        return Vec::new();
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..MAX_ITERATIONS {
        let mut next: Vec<f64> = (0..n)
            .map(|i| x[i] + weights[i].iter().zip(&x).map(|(w, xj)| w * xj).sum::<f64>())
            .collect();
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        next.iter_mut().for_each(|v| *v /= norm);
        let delta = l1_distance(&next, &x);
        x = next;
        if delta < TOLERANCE {
            break;
        }
    }
    x
}

/// Weighted PageRank with uniform teleport. Rows with no outgoing weight
/// spread their mass uniformly.
pub fn pagerank(weights: &[Vec<f64>], damping: f64) -> Vec<f64> {
    let n = weights.len();
    if n == 0 {
        return Vec::new();
    }
    let out_weight: Vec<f64> = weights.iter().map(|row| row.iter().sum()).collect();
    let base = (1.0 - damping) / n as f64;
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..MAX_ITERATIONS {
        let dangling: f64 = (0..n).filter(|&j| out_weight[j] == 0.0).map(|j| x[j]).sum();
        let next: Vec<f64> = (0..n)
            .map(|i| {
                let inflow: f64 = (0..n)
                    .filter(|&j| out_weight[j] > 0.0)
                    .map(|j| weights[j][i] / out_weight[j] * x[j])
                    .sum();
                base + damping * (inflow + dangling / n as f64)
            })
            .collect();
        let delta = l1_distance(&next, &x);
        x = next;
        if delta < TOLERANCE {
            break;
        }
    }
    x
}
