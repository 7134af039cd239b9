//! Inputs shared by the benchmarks.

use std::fs;
use std::path::PathBuf;

use svc_core::{parse, AliasMap, BusinessModel, SimpleGraph};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// All committed corpus files, concatenated in name order.
pub fn corpus_text() -> String {
    let mut files: Vec<PathBuf> = fs::read_dir(corpus_dir().join("ecosystem"))
        .expect("corpus directory")
        .map(|e| e.expect("corpus entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "svc"))
        .collect();
    files.sort();
    files
        .iter()
        .map(|p| fs::read_to_string(p).expect("corpus file"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn corpus_models() -> Vec<BusinessModel> {
    parse(&corpus_text()).expect("corpus parses")
}

pub fn corpus_aliases() -> AliasMap {
    let text = fs::read_to_string(corpus_dir().join("aliases.txt")).expect("alias file");
    AliasMap::parse(&text).expect("alias file parses")
}

/// Ring of `n` nodes, each linked to the next `k` around the ring.
pub fn ring_lattice(n: usize, k: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (1..=k).map(move |d| (i, (i + d) % n)))
        .filter(|(a, b)| a != b)
        .collect();
    SimpleGraph::from_index_edges(n, &edges)
}
