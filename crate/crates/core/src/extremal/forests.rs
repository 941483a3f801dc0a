//! Forests without isolated vertices and the balanced-path maximizer.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{families, Hypergraph};
use crate::rational::{serde_rational, Rational};
use crate::tree_dp::forest_q;

use super::enumerate_trees;

pub const MAX_FOREST_VERTICES: usize = 9;

/// `n_vertices - m_edges` vertex-disjoint paths whose orders differ by at
/// most one, larger components first, vertices numbered consecutively.
pub fn balanced_forest(n_vertices: usize, m_edges: usize) -> Result<Hypergraph> {
    if m_edges == 0 || m_edges >= n_vertices {
        return Err(Error::InfeasibleShape(format!(
            "need 1 <= m < n for a forest without isolated vertices, got n = {n_vertices}, m = {m_edges}"
        )));
    }
    let c = n_vertices - m_edges;
    if n_vertices < 2 * c {
        return Err(Error::InfeasibleShape(format!(
            "{c} components on {n_vertices} vertices would force an isolated vertex"
        )));
    }
    let (base, extra) = (n_vertices / c, n_vertices % c);
    let mut g = Hypergraph::empty(0);
    for i in 0..c {
        let order = base + usize::from(i < extra);
        g = g.disjoint_union(&families::path(order - 1));
    }
    Ok(g)
}

fn partitions(n: usize, max_part: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(acc.clone());
        return;
    }
    for part in (2..=max_part.min(n)).rev() {
        acc.push(part);
        partitions(n - part, part, acc, out);
        acc.pop();
    }
}

/// One representative per isomorphism class of forests on `n_vertices`
/// vertices with no isolated vertex, grouped by edge count.
pub fn enumerate_forests(n_vertices: usize) -> Result<Vec<Hypergraph>> {
    if n_vertices > MAX_FOREST_VERTICES {
        return Err(Error::cap(
            "forest enumeration",
            format!("{n_vertices} vertices"),
            format!("{MAX_FOREST_VERTICES} vertices"),
        ));
    }
    let trees: Vec<Vec<Hypergraph>> = (0..n_vertices.max(1))
        .map(enumerate_trees)
        .collect::<Result<_>>()?;
    let mut parts = Vec::new();
    partitions(n_vertices, n_vertices, &mut Vec::new(), &mut parts);
    let mut out = Vec::new();
    for p in parts {
        // component i uses class choice[i]; equal sizes take non-increasing choices
        let mut choice = vec![0usize; p.len()];
        'outer: loop {
            let mut g = Hypergraph::empty(0);
            for (i, &size) in p.iter().enumerate() {
                g = g.disjoint_union(&trees[size - 1][choice[i]]);
            }
            out.push(g);
            let mut i = p.len();
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                let bound = if i > 0 && p[i - 1] == p[i] {
                    choice[i - 1] + 1
                } else {
                    trees[p[i] - 1].len()
                };
                if choice[i] + 1 < bound {
                    choice[i] += 1;
                    for c in choice.iter_mut().skip(i + 1) {
                        *c = 0;
                    }
                    break;
                }
            }
        }
    }
    out.sort_by_key(|g| g.m());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestMaxCase {
    pub m_edges: usize,
    pub classes: usize,
    pub balanced: Hypergraph,
    #[serde(with = "serde_rational")]
    pub balanced_q: Rational,
    #[serde(with = "serde_rational")]
    pub max_q: Rational,
    pub maximizers: Vec<Hypergraph>,
    pub balanced_attains_max: bool,
    pub unique_maximizer: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestMaxReport {
    pub n_vertices: usize,
    pub cases: Vec<ForestMaxCase>,
}

impl ForestMaxReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.balanced_attains_max)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "n_vertices,m_edges,classes,max_num,max_den,balanced_attains_max,unique_maximizer\n",
        );
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.n_vertices,
                c.m_edges,
                c.classes,
                c.max_q.numer(),
                c.max_q.denom(),
                c.balanced_attains_max,
                c.unique_maximizer
            ));
        }
        out
    }
}

/// For each feasible edge count, compares the balanced-path forest against
/// every forest class. Ties are recorded via `unique_maximizer`.
pub fn verify_forest_max(n_vertices: usize) -> Result<ForestMaxReport> {
    if n_vertices < 2 {
        return Err(Error::InvalidArgument("need at least 2 vertices".into()));
    }
    let forests = enumerate_forests(n_vertices)?;
    let valued: Vec<(Hypergraph, Rational)> = forests
        .into_par_iter()
        .map(|g| {
            let q = forest_q(&g)?;
            Ok((g, q))
        })
        .collect::<Result<_>>()?;
    let mut cases = Vec::new();
    for m in n_vertices.div_ceil(2)..n_vertices {
        let group: Vec<&(Hypergraph, Rational)> =
            valued.iter().filter(|(g, _)| g.m() == m).collect();
        let balanced = balanced_forest(n_vertices, m)?;
        let balanced_q = forest_q(&balanced)?;
        let max_q = group
            .iter()
            .map(|(_, q)| q)
            .max()
            .cloned()
            .unwrap_or_default();
        let maximizers: Vec<Hypergraph> = group
            .iter()
            .filter(|(_, q)| *q == max_q)
            .map(|(g, _)| g.clone())
            .collect();
        cases.push(ForestMaxCase {
            m_edges: m,
            classes: group.len(),
            balanced_attains_max: balanced_q == max_q,
            unique_maximizer: maximizers.len() == 1,
            balanced,
            balanced_q,
            max_q,
            maximizers,
        });
    }
    Ok(ForestMaxReport { n_vertices, cases })
}
