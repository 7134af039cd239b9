//! Brute-force reference implementations working from a plain edge list.
#![allow(dead_code)]

use rand::Rng;

pub type Edges = Vec<(usize, usize)>;

fn matrix(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for &(a, b) in edges {
        m[a][b] = true;
        m[b][a] = true;
    }
    m
}

fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let m = matrix(n, edges);
    m.iter()
        .map(|row| row.iter().filter(|&&x| x).count())
        .collect()
}

/// Local clustering from closed walks of length three: `(A³)ᵥᵥ / (k(k-1))`.
pub fn local_clustering(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let a = matrix(n, edges);
    let k = degrees(n, edges);
    (0..n)
        .map(|v| {
            if k[v] < 2 {
                return 0.0;
            }
            let mut walks = 0usize;
            for x in 0..n {
                for y in 0..n {
                    if a[v][x] && a[x][y] && a[y][v] {
                        walks += 1;
                    }
                }
            }
            walks as f64 / (k[v] * (k[v] - 1)) as f64
        })
        .collect()
}

pub fn average_clustering(n: usize, edges: &[(usize, usize)]) -> f64 {
    let c = local_clustering(n, edges);
    c.iter().sum::<f64>() / n as f64
}

pub fn average_clustering_excluding(n: usize, edges: &[(usize, usize)]) -> f64 {
    let c = local_clustering(n, edges);
    let k = degrees(n, edges);
    let kept: Vec<f64> = (0..n).filter(|&v| k[v] >= 2).map(|v| c[v]).collect();
    if kept.is_empty() {
        0.0
    } else {
        kept.iter().sum::<f64>() / kept.len() as f64
    }
}

/// Newman's edge-based form of the degree correlation, in floating point.
/// `None` when the degree variance over edge ends vanishes.
pub fn assortativity(n: usize, edges: &[(usize, usize)]) -> Option<f64> {
    let k = degrees(n, edges);
    let m = edges.len() as f64;
    let (mut prod, mut half_sum, mut half_sq) = (0.0, 0.0, 0.0);
    for &(a, b) in edges {
        let (j, l) = (k[a] as f64, k[b] as f64);
        prod += j * l;
        half_sum += 0.5 * (j + l);
        half_sq += 0.5 * (j * j + l * l);
    }
    let mean = half_sum / m;
    let num = prod / m - mean * mean;
    let den = half_sq / m - mean * mean;
    if den.abs() < 1e-12 {
        None
    } else {
        Some(num / den)
    }
}

/// Betweenness by enumerating every simple path between each unordered pair
/// and keeping the shortest ones.
pub fn betweenness(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let a = matrix(n, edges);
    let mut score = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![s];
            let mut on_path = vec![false; n];
            on_path[s] = true;
            simple_paths(&a, t, &mut stack, &mut on_path, &mut paths);
            let Some(shortest) = paths.iter().map(Vec::len).min() else {
                continue;
            };
            let best: Vec<&Vec<usize>> = paths.iter().filter(|p| p.len() == shortest).collect();
            let total = best.len() as f64;
            for (v, slot) in score.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                let through = best.iter().filter(|p| p.contains(&v)).count() as f64;
                *slot += through / total;
            }
        }
    }
    score
}

fn simple_paths(
    a: &[Vec<bool>],
    target: usize,
    stack: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let here = *stack.last().unwrap();
    if here == target {
        out.push(stack.clone());
        return;
    }
    for next in 0..a.len() {
        if a[here][next] && !on_path[next] {
            on_path[next] = true;
            stack.push(next);
            simple_paths(a, target, stack, on_path, out);
            stack.pop();
            on_path[next] = false;
        }
    }
}

/// Component member sets via union-find, each sorted, largest first, ties by
/// smallest member.
pub fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by(|x, y| y.len().cmp(&x.len()).then(x[0].cmp(&y[0])));
    out
}

/// Every simple graph on `n` labeled nodes.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Edges> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

/// A graph with 1..=max_n nodes where each pair is linked with probability p.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> (usize, Edges) {
    let n = rng.random_range(1..=max_n);
    let p: f64 = rng.random_range(0.1..0.9);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    (n, edges)
}
