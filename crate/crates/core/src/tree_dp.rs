//! Exact `q(G)` and vertex states for 2-uniform forests in linear time.
//!
//! A vertex state is pushed across an edge with [`extend_pendant`] and the
//! states of one vertex in edge-disjoint subsystems are combined with
//! [`merge_at_vertex`]; merge is a commutative monoid with identity
//! [`VertexState::neutral`].

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{ratio, serde_rational, Rational};
use crate::state::VertexState;

/// State of a new degree-one vertex `w` attached by a random equation to a
/// vertex with state `s`.
pub fn extend_pendant(s: &VertexState) -> VertexState {
    let half = ratio(1, 2);
    VertexState {
        p0: &half * &s.p0 + ratio(3, 16) * &s.p01,
        p01: &half * &s.p0 + ratio(9, 16) * &s.p01,
    }
}

/// State of the same vertex after a pendant edge is hung on it.
pub fn extend_base(s: &VertexState) -> VertexState {
    VertexState {
        p0: ratio(3, 4) * &s.p0 + ratio(3, 16) * &s.p01,
        p01: ratio(9, 16) * &s.p01,
    }
}

/// State of a vertex in the union of two systems that share only that vertex.
///
/// Given `x_v`, the two systems are independent, so `x_v` stays free only if
/// it is free in both, and is forced to 0 when one side forces 0 and the
/// other does not force 1.
pub fn merge_at_vertex(a: &VertexState, b: &VertexState) -> VertexState {
    VertexState {
        p0: &a.p0 * &b.p0 + &a.p0 * &b.p01 + &a.p01 * &b.p0,
        p01: &a.p01 * &b.p01,
    }
}

/// A tree with parent pointers, derived from a 2-uniform acyclic connected
/// hypergraph.
#[derive(Debug, Clone)]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// BFS order from the root.
    order: Vec<usize>,
}

impl RootedTree {
    /// Roots at the lowest-index vertex.
    pub fn from_graph(graph: &Hypergraph) -> Result<Self> {
        Self::with_root(graph, 0)
    }

    pub fn with_root(graph: &Hypergraph, root: usize) -> Result<Self> {
        let n = graph.n();
        if n == 0 || root >= n {
            return Err(Error::NotATree(format!(
                "root {root} not in a graph on {n} vertices"
            )));
        }
        if let Some(e) = graph.edges().iter().find(|e| e.len() != 2) {
            return Err(Error::NotATree(format!(
                "edge {e:?} does not have exactly 2 vertices"
            )));
        }
        if graph.m() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {n} vertices",
                graph.m()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for e in graph.edges() {
            adj[e[0]].push(e[1]);
            adj[e[1]].push(e[0]);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    children[v].push(w);
                    queue.push_back(w);
                }
            }
        }
        if order.len() != n {
            // n-1 edges but disconnected means a cycle somewhere
            return Err(Error::NotATree(
                "graph is disconnected or has a cycle".into(),
            ));
        }
        Ok(RootedTree {
            root,
            parent,
            children,
            order,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// `q` of a tree plus the state of every vertex.
pub fn tree_q(tree: &RootedTree) -> (Rational, Vec<VertexState>) {
    let n = tree.len();
    // down[v]: state of v in the subsystem of v's subtree
    let mut down = vec![VertexState::neutral(); n];
    for &v in tree.order.iter().rev() {
        let mut s = VertexState::neutral();
        for &c in &tree.children[v] {
            s = merge_at_vertex(&s, &extend_pendant(&down[c]));
        }
        down[v] = s;
    }
    // up[v]: state of v in the subsystem outside v's subtree, plus the edge to its parent
    let mut up = vec![VertexState::neutral(); n];
    for &v in &tree.order {
        let ch = &tree.children[v];
        let contrib: Vec<VertexState> = ch.iter().map(|&c| extend_pendant(&down[c])).collect();
        let mut prefix = Vec::with_capacity(ch.len() + 1);
        prefix.push(up[v].clone());
        for c in &contrib {
            let last = prefix.last().unwrap();
            prefix.push(merge_at_vertex(last, c));
        }
        let mut suffix = VertexState::neutral();
        for (i, &c) in ch.iter().enumerate().rev() {
            let excl = merge_at_vertex(&prefix[i], &suffix);
            up[c] = extend_pendant(&excl);
            suffix = merge_at_vertex(&contrib[i], &suffix);
        }
    }
    let states: Vec<VertexState> = (0..n).map(|v| merge_at_vertex(&down[v], &up[v])).collect();
    let q = states[tree.root].q();
    (q, states)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestReport {
    pub method: String,
    pub graph: Hypergraph,
    #[serde(with = "serde_rational")]
    pub q: Rational,
    #[serde(with = "serde_rational")]
    pub p: Rational,
    /// Indexed by vertex; isolated vertices carry `None`.
    pub vertex_states: Vec<Option<VertexState>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

/// Product of per-component tree values, with all vertex states.
pub fn forest_report(graph: &Hypergraph) -> Result<ForestReport> {
    if let Some(e) = graph.edges().iter().find(|e| e.len() != 2) {
        return Err(Error::NotAForest(format!(
            "edge {e:?} does not have exactly 2 vertices"
        )));
    }
    let mut q = Rational::from_integer(1.into());
    let mut vertex_states = vec![None; graph.n()];
    for comp in graph.components() {
        let sub = graph.restrict(&comp);
        let tree = RootedTree::from_graph(&sub)
            .map_err(|e| Error::NotAForest(format!("component {comp:?}: {e}")))?;
        let (cq, states) = tree_q(&tree);
        q *= cq;
        for (local, st) in states.into_iter().enumerate() {
            vertex_states[comp[local]] = Some(st);
        }
    }
    let warnings = crate::oracle::isolated_warning(graph).into_iter().collect();
    Ok(ForestReport {
        method: "tree-dp".into(),
        graph: graph.clone(),
        p: Rational::from_integer(1.into()) - &q,
        q,
        vertex_states,
        warnings,
    })
}

pub fn forest_q(graph: &Hypergraph) -> Result<Rational> {
    forest_report(graph).map(|r| r.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{canonicalize, families};
    use num_traits::Zero;

    fn st(a: i64, b: i64, d: i64) -> VertexState {
        VertexState::new(ratio(a, d), ratio(b, d))
    }

    #[test]
    fn pendant_examples() {
        assert_eq!(extend_pendant(&st(3, 9, 16)), st(51, 105, 256));
        assert_eq!(extend_pendant(&st(51, 105, 256)), st(723, 1353, 4096));
        let zero = VertexState::new(Rational::zero(), Rational::zero());
        assert_eq!(extend_pendant(&zero), zero);
        assert_eq!(extend_pendant(&VertexState::neutral()), st(3, 9, 16));
    }

    #[test]
    fn merge_examples() {
        let leaf = st(3, 9, 16);
        assert_eq!(merge_at_vertex(&leaf, &leaf), st(63, 81, 256));
        assert_eq!(merge_at_vertex(&leaf, &VertexState::neutral()), leaf);
        let center = merge_at_vertex(&merge_at_vertex(&leaf, &leaf), &leaf);
        assert_eq!(center.p01, ratio(729, 4096));
    }

    #[test]
    fn merge_with_pendant_is_extend_base() {
        let s = st(51, 105, 256);
        assert_eq!(merge_at_vertex(&s, &st(3, 9, 16)), extend_base(&s));
    }

    #[test]
    fn paths_and_stars() {
        let t = RootedTree::from_graph(&families::path(3)).unwrap();
        assert_eq!(tree_q(&t).0, ratio(2799, 4096));
        let t = RootedTree::from_graph(&families::star(3)).unwrap();
        assert_eq!(tree_q(&t).0, ratio(2727, 4096));
    }

    #[test]
    fn path_vertex_states() {
        let (_, states) = tree_q(&RootedTree::from_graph(&families::path(2)).unwrap());
        assert_eq!(states[0], st(51, 105, 256));
        assert_eq!(states[1], st(63, 81, 256));
        assert_eq!(states[2], st(51, 105, 256));
    }

    #[test]
    fn root_choice_is_irrelevant() {
        let g = canonicalize(
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![1, 4], vec![4, 5]],
            6,
        )
        .unwrap();
        let (q0, s0) = tree_q(&RootedTree::from_graph(&g).unwrap());
        for r in 1..6 {
            let (q, s) = tree_q(&RootedTree::with_root(&g, r).unwrap());
            assert_eq!(q, q0);
            assert_eq!(s, s0);
        }
        for s in &s0 {
            assert_eq!(s.q(), q0);
        }
    }

    #[test]
    fn not_a_tree() {
        assert!(matches!(
            RootedTree::from_graph(&families::cycle(3).unwrap()),
            Err(Error::NotATree(_))
        ));
        let g = canonicalize(vec![vec![0, 1, 2]], 3).unwrap();
        assert!(RootedTree::from_graph(&g).is_err());
        let g = canonicalize(vec![vec![0, 1], vec![0, 1]], 3).unwrap();
        assert!(RootedTree::from_graph(&g).is_err());
    }

    #[test]
    fn forests() {
        assert_eq!(
            forest_q(&families::disjoint_edges(2, 2)).unwrap(),
            ratio(225, 256)
        );
        assert_eq!(forest_q(&Hypergraph::empty(0)).unwrap(), ratio(1, 1));
        let g = families::path(2).disjoint_union(&families::path(1));
        assert_eq!(forest_q(&g).unwrap(), ratio(207 * 15, 256 * 16));
        let with_iso = canonicalize(vec![vec![0, 2]], 4).unwrap();
        let rep = forest_report(&with_iso).unwrap();
        assert_eq!(rep.q, ratio(15, 16));
        assert_eq!(rep.warnings.len(), 1);
        assert!(rep.vertex_states[1].is_none());
        assert!(matches!(
            forest_q(&families::cycle(4).unwrap()),
            Err(Error::NotAForest(_))
        ));
        let dup = canonicalize(vec![vec![0, 1], vec![0, 1]], 2).unwrap();
        assert!(matches!(forest_q(&dup), Err(Error::NotAForest(_))));
    }
}
