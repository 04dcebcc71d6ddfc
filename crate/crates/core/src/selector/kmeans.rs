//! Deterministic k-means for picking one representative per cluster.

/// Iteration cap for Lloyd updates.
pub const MAX_ITERATIONS: usize = 100;

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub centroids: Vec<Vec<f64>>,
    pub assignment: Vec<usize>,
}

/// Farthest-point seeding from `points[start]`: each new centroid is the point
/// farthest from those chosen so far, earlier index winning ties. Duplicate
/// points therefore still yield distinct seed points.
fn farthest_point_init(points: &[Vec<f64>], k: usize, start: usize) -> Vec<usize> {
    let mut chosen = vec![start];
    let mut nearest: Vec<f64> = points.iter().map(|p| dist2(p, &points[start])).collect();
    while chosen.len() < k {
        let mut best: Option<usize> = None;
        for i in (0..points.len()).filter(|i| !chosen.contains(i)) {
            if best.is_none_or(|b| nearest[i] > nearest[b]) {
                best = Some(i);
            }
        }
        let next = best.expect("k <= number of points");
        chosen.push(next);
        for (i, p) in points.iter().enumerate() {
            nearest[i] = nearest[i].min(dist2(p, &points[next]));
        }
    }
    chosen
}

fn nearest_centroid(p: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centroid) in centroids.iter().enumerate() {
        let d = dist2(p, centroid);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    best
}

/// Lloyd's algorithm seeded by [`farthest_point_init`]. Empty clusters keep their centroid.
pub fn kmeans(points: &[Vec<f64>], k: usize, start: usize) -> Clustering {
    assert!(k >= 1 && k <= points.len(), "k must be in 1..=points");
    let dim = points[0].len();
    let mut centroids: Vec<Vec<f64>> = farthest_point_init(points, k, start)
        .into_iter()
        .map(|i| points[i].clone())
        .collect();
    let mut assignment: Vec<usize> = points.iter().map(|p| nearest_centroid(p, &centroids)).collect();

    for _ in 0..MAX_ITERATIONS {
        let mut sums = vec![vec![0.0; dim]; k];
        let mut sizes = vec![0usize; k];
        for (p, &c) in points.iter().zip(&assignment) {
            sizes[c] += 1;
            sums[c].iter_mut().zip(p).for_each(|(s, x)| *s += x);
        }
        for c in 0..k {
            if sizes[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / sizes[c] as f64).collect();
            }
        }
        let next: Vec<usize> = points.iter().map(|p| nearest_centroid(p, &centroids)).collect();
        if next == assignment {
            break;
        }
        assignment = next;
    }
    Clustering { centroids, assignment }
}

/// One distinct representative per cluster: the member closest to the
/// centroid, or the closest remaining point when the cluster has none left.
/// Returns `(point index, distance to centroid)` in cluster order.
pub fn representatives(points: &[Vec<f64>], clustering: &Clustering) -> Vec<(usize, f64)> {
    let mut taken = vec![false; points.len()];
    let mut out = Vec::with_capacity(clustering.centroids.len());
    for (c, centroid) in clustering.centroids.iter().enumerate() {
        let pick = |members_only: bool| {
            let mut best: Option<(usize, f64)> = None;
            for (i, p) in points.iter().enumerate() {
                if taken[i] || (members_only && clustering.assignment[i] != c) {
                    continue;
                }
                let d = dist2(p, centroid);
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((i, d));
                }
            }
            best
        };
        let (i, d) = pick(true).or_else(|| pick(false)).expect("k <= number of points");
        taken[i] = true;
        out.push((i, d.sqrt()));
    }
    out
}
