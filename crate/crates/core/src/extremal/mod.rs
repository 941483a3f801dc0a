//! Extremal structures for 2-uniform forests and exhaustive checks of the
//! path/star tree sandwich and the balanced-path forest maximum.

mod forests;
mod trees;

pub use forests::*;
pub use trees::*;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{path_b, path_q, star_q};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{powi, ratio, serde_rational, Rational};
use crate::tree_dp::{tree_q, RootedTree};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeEntry {
    pub graph: Hypergraph,
    #[serde(with = "serde_rational")]
    pub q: Rational,
    pub classification: TreeClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeSandwichReport {
    pub n_edges: usize,
    pub classes: usize,
    #[serde(with = "serde_rational")]
    pub star_q: Rational,
    #[serde(with = "serde_rational")]
    pub path_q: Rational,
    pub min_attainers: Vec<TreeClass>,
    pub max_attainers: Vec<TreeClass>,
    pub vertex_checks: usize,
    pub violations: Vec<String>,
    pub entries: Vec<TreeEntry>,
}

impl TreeSandwichReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every tree class with `n_edges` edges, checking
/// `q(S_n) < q(T) < q(P_n)` for the others and `(9/16)^n <= v^01 <= b_n` at
/// every vertex.
pub fn verify_tree_sandwich(n_edges: usize) -> Result<TreeSandwichReport> {
    if n_edges < 1 {
        return Err(Error::InvalidArgument(
            "tree sandwich needs at least 1 edge".into(),
        ));
    }
    let trees = enumerate_trees(n_edges)?;
    let lower = powi(&ratio(9, 16), n_edges as u64);
    let upper = path_b(n_edges);
    let sq = star_q(n_edges)?;
    let pq = path_q(n_edges)?;
    let evaluated: Vec<(TreeEntry, Vec<String>, usize)> = trees
        .into_par_iter()
        .map(|g| {
            let rooted = RootedTree::from_graph(&g).expect("enumerated trees are trees");
            let (q, states) = tree_q(&rooted);
            let classification = classify_tree(&g);
            let mut bad = Vec::new();
            for (v, s) in states.iter().enumerate() {
                if s.p01 < lower || s.p01 > upper {
                    bad.push(format!(
                        "vertex {v} of {:?}: p01 = {} outside [(9/16)^n, b_n]",
                        g.edges(),
                        s.p01
                    ));
                }
            }
            let ok = match classification {
                TreeClass::Other => sq < q && q < pq,
                TreeClass::Path => q == pq,
                TreeClass::Star => q == sq,
                TreeClass::PathAndStar => q == pq && q == sq,
            };
            if !ok {
                bad.push(format!(
                    "{classification:?} tree {:?}: q = {q} breaks the sandwich",
                    g.edges()
                ));
            }
            let checks = states.len();
            (
                TreeEntry {
                    graph: g,
                    q,
                    classification,
                },
                bad,
                checks,
            )
        })
        .collect();
    let mut entries = Vec::with_capacity(evaluated.len());
    let mut violations = Vec::new();
    let mut vertex_checks = 0;
    for (e, bad, c) in evaluated {
        entries.push(e);
        violations.extend(bad);
        vertex_checks += c;
    }
    let min_q = entries
        .iter()
        .map(|e| &e.q)
        .min()
        .cloned()
        .unwrap_or_default();
    let max_q = entries
        .iter()
        .map(|e| &e.q)
        .max()
        .cloned()
        .unwrap_or_default();
    let attainers = |target: &Rational| -> Vec<TreeClass> {
        entries
            .iter()
            .filter(|e| &e.q == target)
            .map(|e| e.classification)
            .collect()
    };
    Ok(TreeSandwichReport {
        n_edges,
        classes: entries.len(),
        star_q: sq,
        path_q: pq,
        min_attainers: attainers(&min_q),
        max_attainers: attainers(&max_q),
        vertex_checks,
        violations,
        entries,
    })
}

/// Checks `q(P_{k+1}) q(P_{d-1}) > q(P_d) q(P_k)` on the disjoint unions, for
/// `1 <= k <= max_k` and `k + 2 <= d <= max_d`. Returns the failing pairs.
pub fn verify_path_exchange(max_k: usize, max_d: usize) -> Result<Vec<(usize, usize)>> {
    use crate::hypergraph::families::path;
    use crate::tree_dp::forest_q;
    let mut bad = Vec::new();
    for k in 1..=max_k {
        for d in k + 2..=max_d {
            let after = forest_q(&path(k + 1).disjoint_union(&path(d - 1)))?;
            let before = forest_q(&path(d).disjoint_union(&path(k)))?;
            if after <= before {
                bad.push((k, d));
            }
        }
    }
    Ok(bad)
}

fn csv_graph(g: &Hypergraph) -> String {
    g.edges()
        .iter()
        .map(|e| e.iter().map(usize::to_string).collect::<Vec<_>>().join("-"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl TreeSandwichReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n_edges,classification,q_num,q_den,q_approx,edges\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.n_edges,
                serde_json::to_value(e.classification)
                    .map(|v| v.as_str().unwrap_or("").to_string())
                    .unwrap_or_default(),
                e.q.numer(),
                e.q.denom(),
                crate::rational::to_f64(&e.q),
                csv_graph(&e.graph)
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sandwiches() {
        let r = verify_tree_sandwich(3).unwrap();
        assert!(r.passed());
        assert_eq!(r.star_q, ratio(2727, 4096));
        assert_eq!(r.path_q, ratio(2799, 4096));
        assert_eq!(r.min_attainers, vec![TreeClass::Star]);
        assert_eq!(r.max_attainers, vec![TreeClass::Path]);
        let r = verify_tree_sandwich(4).unwrap();
        assert!(r.passed());
        assert_eq!(r.classes, 3);
        let other: Vec<_> = r
            .entries
            .iter()
            .filter(|e| e.classification == TreeClass::Other)
            .collect();
        assert_eq!(other.len(), 1);
        assert!(r.star_q < other[0].q && other[0].q < r.path_q);
    }

    #[test]
    fn up_to_seven_edges() {
        for n in 1..=7 {
            let r = verify_tree_sandwich(n).unwrap();
            assert!(r.passed(), "{:?}", r.violations);
        }
    }

    #[test]
    fn exchange_holds() {
        assert!(verify_path_exchange(4, 7).unwrap().is_empty());
    }

    #[test]
    fn csv_has_one_row_per_class() {
        let r = verify_tree_sandwich(5).unwrap();
        assert_eq!(r.to_csv().lines().count(), 1 + 6);
    }
}
