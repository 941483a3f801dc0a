//! Unlabeled tree enumeration.
//!
//! Primary route: grow every class with `e - 1` edges by one leaf at each
//! vertex and keep one representative per centre-rooted AHU code. Check
//! route: decode every Prüfer sequence and deduplicate with an explicit
//! isomorphism search.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{canonicalize, Hypergraph};

pub const MAX_TREE_EDGES: usize = 10;
pub const MAX_LABELED_TREE_EDGES: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeClass {
    /// At most two edges: the path and the star coincide.
    PathAndStar,
    Path,
    Star,
    Other,
}

pub fn classify_tree(graph: &Hypergraph) -> TreeClass {
    let deg: Vec<usize> = graph.incidence().iter().map(Vec::len).collect();
    let max = deg.iter().copied().max().unwrap_or(0);
    let is_path = max <= 2;
    let is_star = max == graph.m();
    match (is_path, is_star) {
        (true, true) => TreeClass::PathAndStar,
        (true, false) => TreeClass::Path,
        (false, true) => TreeClass::Star,
        (false, false) => TreeClass::Other,
    }
}

fn adjacency(graph: &Hypergraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); graph.n()];
    for e in graph.edges() {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    adj
}

fn centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in &adj[v] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer
}

fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| ahu(adj, u, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism-invariant code of a tree (connected, 2-uniform, acyclic).
pub fn tree_code(graph: &Hypergraph) -> String {
    let adj = adjacency(graph);
    centres(&adj)
        .into_iter()
        .map(|c| ahu(&adj, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

/// Relabels a tree so vertices are numbered in BFS order from its canonical
/// centre, children ordered by code.
fn canonical_layout(graph: &Hypergraph) -> Hypergraph {
    let adj = adjacency(graph);
    let root = centres(&adj)
        .into_iter()
        .min_by_key(|&c| ahu(&adj, c, usize::MAX))
        .unwrap_or(0);
    let mut label = vec![usize::MAX; graph.n()];
    let mut order = vec![(root, usize::MAX)];
    label[root] = 0;
    let mut edges = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let (v, parent) = order[i];
        let mut kids: Vec<(String, usize)> = adj[v]
            .iter()
            .filter(|&&u| u != parent)
            .map(|&u| (ahu(&adj, u, v), u))
            .collect();
        kids.sort();
        for (_, u) in kids {
            label[u] = order.len();
            edges.push(vec![label[v], label[u]]);
            order.push((u, v));
        }
        i += 1;
    }
    canonicalize(edges, graph.n()).expect("relabelled tree is valid")
}

/// One representative per isomorphism class of trees with `n_edges` edges.
pub fn enumerate_trees(n_edges: usize) -> Result<Vec<Hypergraph>> {
    if n_edges > MAX_TREE_EDGES {
        return Err(Error::cap(
            "tree enumeration",
            format!("{n_edges} edges"),
            format!("{MAX_TREE_EDGES} edges"),
        ));
    }
    let mut level = vec![Hypergraph::empty(1)];
    for _ in 0..n_edges {
        let mut next: BTreeMap<String, Hypergraph> = BTreeMap::new();
        for t in &level {
            let n = t.n();
            for v in 0..n {
                let mut edges = t.edges().to_vec();
                edges.push(vec![v, n]);
                let g = canonicalize(edges, n + 1)?;
                next.entry(tree_code(&g))
                    .or_insert_with(|| canonical_layout(&g));
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

fn prufer_decode(seq: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("leaf exists");
        edges.push(vec![leaf, x]);
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push(vec![rest[0], rest[1]]);
    edges
}

fn extend_map(
    a: &[Vec<usize>],
    b: &[Vec<usize>],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    v: usize,
) -> bool {
    if v == a.len() {
        return true;
    }
    for w in 0..b.len() {
        if used[w] || a[v].len() != b[w].len() {
            continue;
        }
        let ok = a[v]
            .iter()
            .filter(|&&u| u < v)
            .all(|&u| b[w].contains(&map[u]));
        if !ok {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend_map(a, b, map, used, v + 1) {
            return true;
        }
        used[w] = false;
    }
    false
}

/// Exhaustive isomorphism test for small trees by degree-pruned search.
pub fn trees_isomorphic(g: &Hypergraph, h: &Hypergraph) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let (a, b) = (adjacency(g), adjacency(h));
    let mut da: Vec<usize> = a.iter().map(Vec::len).collect();
    let mut db: Vec<usize> = b.iter().map(Vec::len).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // edge counts match, so an injective adjacency-preserving map is an isomorphism
    extend_map(&a, &b, &mut vec![0; a.len()], &mut vec![false; b.len()], 0)
}

/// Tree classes via labeled enumeration plus pairwise isomorphism dedup.
pub fn enumerate_trees_labeled(n_edges: usize) -> Result<Vec<Hypergraph>> {
    if n_edges > MAX_LABELED_TREE_EDGES {
        return Err(Error::cap(
            "labeled tree enumeration",
            format!("{n_edges} edges"),
            format!("{MAX_LABELED_TREE_EDGES} edges"),
        ));
    }
    let n = n_edges + 1;
    if n_edges == 0 {
        return Ok(vec![Hypergraph::empty(1)]);
    }
    if n_edges == 1 {
        return Ok(vec![canonicalize(vec![vec![0, 1]], 2)?]);
    }
    let mut reps: Vec<Hypergraph> = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let g = canonicalize(prufer_decode(&seq, n), n)?;
        if !reps.iter().any(|r| trees_isomorphic(r, &g)) {
            reps.push(g);
        }
        // odometer over [0, n)^(n-2)
        let mut i = 0;
        while i < seq.len() {
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
    }
    Ok(reps)
}
