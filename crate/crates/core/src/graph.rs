//! Simple undirected graphs over stakeholder ids.

use std::collections::{BTreeSet, VecDeque};

use crate::model::StakeholderId;

/// Undirected graph without self-loops or parallel edges.
///
/// Nodes are indexed `0..n` in ascending id order, so index order and id
/// order agree everywhere (tie-breaking by index is tie-breaking by id).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    ids: Vec<StakeholderId>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Builds a graph from node ids and undirected edges. Edge endpoints are
    /// added as nodes if missing; self-loops and duplicates are dropped.
    pub fn new<N, E>(nodes: N, edges: E) -> Self
    where
        N: IntoIterator<Item = StakeholderId>,
        E: IntoIterator<Item = (StakeholderId, StakeholderId)>,
    {
        let edges: Vec<_> = edges.into_iter().collect();
        let mut set: BTreeSet<StakeholderId> = nodes.into_iter().collect();
        for (a, b) in &edges {
            set.insert(a.clone());
            set.insert(b.clone());
        }
        let ids: Vec<StakeholderId> = set.into_iter().collect();
        let index = |id: &StakeholderId| ids.binary_search(id).expect("node was inserted");
        let pairs: Vec<(usize, usize)> = edges.iter().map(|(a, b)| (index(a), index(b))).collect();
        let adj = build_adjacency(ids.len(), pairs);
        SimpleGraph { ids, adj }
    }

    /// Graph on `n` nodes named `v0`, `v1`, ... (zero-padded so that name order
    /// matches index order).
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let width = n.saturating_sub(1).to_string().len();
        let ids = (0..n)
            .map(|i| StakeholderId::new(&format!("v{i:0width$}")).expect("non-empty"))
            .collect();
        SimpleGraph {
            ids,
            adj: build_adjacency(n, edges.iter().copied()),
        }
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn ids(&self) -> &[StakeholderId] {
        &self.ids
    }

    pub fn id(&self, index: usize) -> &StakeholderId {
        &self.ids[index]
    }

    pub fn index_of(&self, id: &StakeholderId) -> Option<usize> {
        self.ids.binary_search(id).ok()
    }

    /// Sorted neighbor indices.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adj[index].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(lo, hi)` index pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// Subgraph induced by the given node indices.
    pub fn induced(&self, nodes: &[usize]) -> SimpleGraph {
        let mut keep: Vec<usize> = nodes.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![usize::MAX; self.ids.len()];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let adj = keep
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter_map(|&n| (remap[n] != usize::MAX).then_some(remap[n]))
                    .collect()
            })
            .collect();
        SimpleGraph { ids, adj }
    }
}

fn build_adjacency(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges {
        assert!(a < n && b < n, "edge ({a}, {b}) out of range for {n} nodes");
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for ns in &mut adj {
        ns.sort_unstable();
        ns.dedup();
    }
    adj
}

/// Components as sorted index lists, largest first, then by smallest member.
pub fn component_indices(graph: &SimpleGraph) -> Vec<Vec<usize>> {
    component_indices_where(graph, |_| true)
}

/// Components of the subgraph induced by nodes for which `alive` holds.
pub(crate) fn component_indices_where(
    graph: &SimpleGraph,
    alive: impl Fn(usize) -> bool,
) -> Vec<Vec<usize>> {
    let n = graph.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] || !alive(start) {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in graph.neighbors(v) {
                if !seen[w] && alive(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    // Discovery order already sorts by smallest member; stable sort keeps it.
    out.sort_by_key(|c| std::cmp::Reverse(c.len()));
    out
}

/// Connected components as id sets, largest first, ties by smallest id.
pub fn connected_components(graph: &SimpleGraph) -> Vec<Vec<StakeholderId>> {
    component_indices(graph)
        .into_iter()
        .map(|c| c.into_iter().map(|i| graph.id(i).clone()).collect())
        .collect()
}

/// Subgraph induced by the largest component (empty graph if there are no nodes).
pub fn largest_component(graph: &SimpleGraph) -> SimpleGraph {
    match component_indices(graph).first() {
        Some(c) => graph.induced(c),
        None => graph.induced(&[]),
    }
}
