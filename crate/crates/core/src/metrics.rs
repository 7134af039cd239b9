//! Network statistics on the simple undirected projection.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::MetricsError;
use crate::graph::{component_indices, component_indices_where, largest_component, SimpleGraph};
use crate::model::StakeholderId;

/// `2|E| / |V|`.
pub fn average_degree(graph: &SimpleGraph) -> Result<f64, MetricsError> {
    let n = graph.node_count();
    if n == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    Ok(2.0 * graph.edge_count() as f64 / n as f64)
}

/// `2|E| / (|V| (|V| - 1))`.
pub fn density(graph: &SimpleGraph) -> Result<f64, MetricsError> {
    let n = graph.node_count();
    if n < 2 {
        return Err(MetricsError::TooSmall);
    }
    Ok(2.0 * graph.edge_count() as f64 / (n as f64 * (n as f64 - 1.0)))
}

/// How nodes with fewer than two neighbors enter the average clustering.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum LowDegreeClustering {
    /// They contribute a local coefficient of zero.
    #[default]
    Zero,
    /// They are left out of the average.
    Exclude,
}

/// Local clustering coefficient of every node (zero when degree < 2).
pub fn local_clustering(graph: &SimpleGraph) -> Vec<f64> {
    (0..graph.node_count())
        .map(|v| {
            let ns = graph.neighbors(v);
            let k = ns.len();
            if k < 2 {
                return 0.0;
            }
            let mut links = 0usize;
            for (i, &a) in ns.iter().enumerate() {
                links += ns[i + 1..]
                    .iter()
                    .filter(|&&b| graph.has_edge(a, b))
                    .count();
            }
            links as f64 / (k * (k - 1) / 2) as f64
        })
        .collect()
}

pub fn average_clustering(graph: &SimpleGraph) -> Result<f64, MetricsError> {
    average_clustering_with(graph, LowDegreeClustering::Zero)
}

/// Under [`LowDegreeClustering::Exclude`] a graph with no node of degree ≥ 2
/// averages to 0.
pub fn average_clustering_with(
    graph: &SimpleGraph,
    convention: LowDegreeClustering,
) -> Result<f64, MetricsError> {
    if graph.node_count() == 0 {
        return Err(MetricsError::EmptyGraph);
    }
    let local = local_clustering(graph);
    let counted: Vec<f64> = match convention {
        LowDegreeClustering::Zero => local,
        LowDegreeClustering::Exclude => local
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| graph.degree(v) >= 2)
            .map(|(_, c)| c)
            .collect(),
    };
    if counted.is_empty() {
        return Ok(0.0);
    }
    Ok(counted.iter().sum::<f64>() / counted.len() as f64)
}

/// Degree assortativity: Pearson correlation of endpoint degrees over both
/// orientations of every edge. `None` when all endpoint degrees are equal.
pub fn assortativity(graph: &SimpleGraph) -> Result<Option<f64>, MetricsError> {
    let m = graph.edge_count();
    if m == 0 {
        return Err(MetricsError::NoEdges);
    }
    // Integer sums keep the zero-variance test exact.
    let (mut sx, mut sxx, mut sxy) = (0i128, 0i128, 0i128);
    for (a, b) in graph.edges() {
        let (da, db) = (graph.degree(a) as i128, graph.degree(b) as i128);
        sx += da + db;
        sxx += da * da + db * db;
        sxy += 2 * da * db;
    }
    let pairs = 2 * m as i128;
    let den = pairs * sxx - sx * sx;
    if den == 0 {
        return Ok(None);
    }
    let num = pairs * sxy - sx * sx;
    Ok(Some(num as f64 / den as f64))
}

/// Continuous-approximation maximum-likelihood power-law exponent:
/// `1 + n / Σ ln(k / (k_min - 0.5))` over degrees `k ≥ k_min`.
pub fn fit_power_law_gamma(degrees: &[usize], k_min: usize) -> Result<Option<f64>, MetricsError> {
    if k_min == 0 {
        return Err(MetricsError::InvalidKMin);
    }
    let shift = k_min as f64 - 0.5;
    let (n, log_sum) = degrees
        .iter()
        .filter(|&&k| k > 0 && k >= k_min)
        .fold((0usize, 0.0f64), |(n, s), &k| {
            (n + 1, s + (k as f64 / shift).ln())
        });
    if n == 0 {
        return Err(MetricsError::NoQualifyingDegrees);
    }
    if log_sum == 0.0 {
        return Ok(None);
    }
    Ok(Some(1.0 + n as f64 / log_sum))
}

pub fn degree_centrality(graph: &SimpleGraph) -> BTreeMap<StakeholderId, usize> {
    graph
        .ids()
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), graph.degree(i)))
        .collect()
}

pub fn betweenness_centrality(graph: &SimpleGraph) -> BTreeMap<StakeholderId, f64> {
    graph
        .ids()
        .iter()
        .cloned()
        .zip(betweenness_by_index(graph))
        .collect()
}

/// Unnormalized shortest-path betweenness (Brandes accumulation), each
/// unordered pair counted once, endpoints excluded.
pub fn betweenness_by_index(graph: &SimpleGraph) -> Vec<f64> {
    let n = graph.node_count();
    let mut centrality = vec![0.0; n];
    let mut stack = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = VecDeque::new();

    for s in 0..n {
        stack.clear();
        for v in 0..n {
            preds[v].clear();
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
        }
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != s {
                centrality[w] += delta[w];
            }
        }
    }
    // Every unordered pair was accumulated from both ends.
    for c in &mut centrality {
        *c /= 2.0;
    }
    centrality
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalStrategy {
    /// Remove the node with the most remaining neighbors; ties go to the
    /// smallest id. Degrees are recomputed after each removal.
    HighestDegreeFirst,
    /// Remove nodes in a seeded random order.
    Random(u64),
}

/// Largest-component size (as a fraction of the original node count) after
/// removing nodes one at a time. Starts at `(0.0, ·)` and ends at `(1.0, 0.0)`.
pub fn robustness_curve(graph: &SimpleGraph, strategy: RemovalStrategy) -> Vec<(f64, f64)> {
    let n = graph.node_count();
    if n == 0 {
        return Vec::new();
    }
    let mut alive = vec![true; n];
    let lcc = |alive: &[bool]| {
        component_indices_where(graph, |v| alive[v])
            .first()
            .map_or(0, Vec::len)
    };
    let random_order = match strategy {
        RemovalStrategy::Random(seed) => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Some(order)
        }
        RemovalStrategy::HighestDegreeFirst => None,
    };
    let mut degree = graph.degrees();

    let mut curve = Vec::with_capacity(n + 1);
    curve.push((0.0, lcc(&alive) as f64 / n as f64));
    for step in 0..n {
        let victim = match &random_order {
            Some(order) => order[step],
            None => (0..n)
                .filter(|&v| alive[v])
                .max_by(|&a, &b| degree[a].cmp(&degree[b]).then(b.cmp(&a)))
                .expect("a node remains"),
        };
        alive[victim] = false;
        for &w in graph.neighbors(victim) {
            if alive[w] {
                degree[w] -= 1;
            }
        }
        curve.push(((step + 1) as f64 / n as f64, lcc(&alive) as f64 / n as f64));
    }
    curve
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MetricsOptions {
    pub k_min: usize,
    pub clustering: LowDegreeClustering,
}

impl Default for MetricsOptions {
    fn default() -> Self {
        MetricsOptions {
            k_min: 1,
            clustering: LowDegreeClustering::Zero,
        }
    }
}

/// Network statistics of the largest component; `None` marks an undefined value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub n_nodes: usize,
    pub n_edges: usize,
    pub avg_degree: Option<f64>,
    pub density: Option<f64>,
    pub avg_clustering: Option<f64>,
    pub assortativity: Option<f64>,
    pub gamma: Option<f64>,
    /// Sizes of all components of the analysed graph, largest first.
    pub component_sizes: Vec<usize>,
}

pub fn metrics_report(graph: &SimpleGraph, options: MetricsOptions) -> MetricsReport {
    let component_sizes = component_indices(graph).iter().map(Vec::len).collect();
    let lcc = largest_component(graph);
    MetricsReport {
        n_nodes: lcc.node_count(),
        n_edges: lcc.edge_count(),
        avg_degree: average_degree(&lcc).ok(),
        density: density(&lcc).ok(),
        avg_clustering: average_clustering_with(&lcc, options.clustering).ok(),
        assortativity: assortativity(&lcc).ok().flatten(),
        gamma: fit_power_law_gamma(&lcc.degrees(), options.k_min)
            .ok()
            .flatten(),
        component_sizes,
    }
}
