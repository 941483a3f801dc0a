//! Hypergraphs: `n` variables and an ordered multiset of variable subsets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported equation arity. A truth table over `k` variables has
/// `2^k` entries and is stored in a `u64`.
pub const MAX_ARITY: usize = 6;

/// Variables are `0..n`; every edge is stored strictly ascending.
/// Duplicate edges are distinct equations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<RawHypergraph> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawHypergraph) -> Result<Self> {
        canonicalize(raw.edges, raw.n)
    }
}

/// Sorts each edge ascending and validates indices. Repeated variables inside
/// one edge are merged.
pub fn canonicalize(raw_edges: Vec<Vec<usize>>, n: usize) -> Result<Hypergraph> {
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (i, mut e) in raw_edges.into_iter().enumerate() {
        if e.is_empty() {
            return Err(Error::EmptyEdge { edge: i });
        }
        if let Some(&bad) = e.iter().find(|&&v| v >= n) {
            return Err(Error::IndexOutOfRange {
                edge: i,
                index: bad,
                n,
            });
        }
        e.sort_unstable();
        e.dedup();
        if e.len() > MAX_ARITY {
            return Err(Error::ArityTooLarge {
                edge: i,
                arity: e.len(),
                max: MAX_ARITY,
            });
        }
        edges.push(e);
    }
    Ok(Hypergraph { n, edges })
}

impl Hypergraph {
    pub fn empty(n: usize) -> Self {
        Hypergraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[usize] {
        &self.edges[i]
    }

    /// Maximum edge size, 0 for an edgeless graph.
    pub fn k(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_uniform(&self, k: usize) -> bool {
        self.edges.iter().all(|e| e.len() == k)
    }

    /// Variables that appear in no edge.
    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                seen[v] = true;
            }
        }
        (0..self.n).filter(|&v| !seen[v]).collect()
    }

    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = vec![false; self.n];
        for e in &self.edges {
            for &v in e {
                if seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        true
    }

    /// Indices of edges incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    }

    /// Connected components that contain at least one edge, as sorted vertex
    /// lists (isolated vertices are omitted).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let r0 = find(&mut parent, e[0]);
            for &v in &e[1..] {
                let r = find(&mut parent, v);
                if r != r0 {
                    parent[r] = r0;
                }
            }
        }
        let isolated = self.isolated_vertices();
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.n {
            if isolated.binary_search(&v).is_ok() {
                continue;
            }
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        comps.sort();
        comps
    }

    /// Subgraph induced on `vertices` (which must be a union of components),
    /// relabelled to `0..vertices.len()` in ascending order.
    pub fn restrict(&self, vertices: &[usize]) -> Hypergraph {
        let mut map = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| map[e[0]] != usize::MAX)
            .map(|e| {
                let mut r: Vec<usize> = e.iter().map(|&v| map[v]).collect();
                r.sort_unstable();
                r
            })
            .collect();
        Hypergraph {
            n: vertices.len(),
            edges,
        }
    }

    /// Disjoint union, with `other`'s variables shifted past ours.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Hypergraph {
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| e.iter().map(|&v| v + self.n).collect()),
        );
        Hypergraph {
            n: self.n + other.n,
            edges,
        }
    }

    /// Same graph with edges listed in a different order.
    pub fn permute_edges(&self, order: &[usize]) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: order.iter().map(|&i| self.edges[i].clone()).collect(),
        }
    }

    /// `n m` header followed by one whitespace-separated edge per line.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.m());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_edge_list(text: &str) -> Result<Hypergraph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing `n m` header".into()))?;
        let nums = parse_usizes(header)?;
        if nums.len() != 2 {
            return Err(Error::Parse(format!("bad header `{header}`")));
        }
        let (n, m) = (nums[0], nums[1]);
        let edges: Vec<Vec<usize>> = lines.map(parse_usizes).collect::<Result<_>>()?;
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header declares {m} edges, found {}",
                edges.len()
            )));
        }
        canonicalize(edges, n)
    }

    /// Accepts the JSON schema or the edge-list text format.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
        } else {
            Self::parse_edge_list(text)
        }
    }
}

fn parse_usizes(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: `{t}`")))
        })
        .collect()
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} [", self.n)?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let parts: Vec<String> = e.iter().map(usize::to_string).collect();
            write!(f, "{{{}}}", parts.join(","))?;
        }
        write!(f, "]")
    }
}

/// Named graph families.
pub mod families {
    use super::Hypergraph;
    use crate::error::{Error, Result};

    /// `P_n`: vertices `0..=n`, edges `{i-1, i}`.
    pub fn path(n_edges: usize) -> Hypergraph {
        Hypergraph {
            n: n_edges + 1,
            edges: (1..=n_edges).map(|i| vec![i - 1, i]).collect(),
        }
    }

    /// `S_n`: leaves `0..n`, center `n`.
    pub fn star(n_edges: usize) -> Hypergraph {
        Hypergraph {
            n: n_edges + 1,
            edges: (0..n_edges).map(|i| vec![i, n_edges]).collect(),
        }
    }

    /// `C_n` for `n >= 3`.
    pub fn cycle(n_edges: usize) -> Result<Hypergraph> {
        if n_edges < 3 {
            return Err(Error::InvalidArgument(format!(
                "cycle needs at least 3 edges, got {n_edges}"
            )));
        }
        let mut edges: Vec<Vec<usize>> = (1..n_edges).map(|i| vec![i - 1, i]).collect();
        edges.push(vec![0, n_edges - 1]);
        Ok(Hypergraph { n: n_edges, edges })
    }

    /// All `C(n, k)` k-subsets of `0..n`, in lexicographic order.
    pub fn complete(n: usize, k: usize) -> Result<Hypergraph> {
        if k == 0 || k > n || k > super::MAX_ARITY {
            return Err(Error::InvalidArgument(format!(
                "complete hypergraph needs 1 <= k <= min(n, {}), got n={n} k={k}",
                super::MAX_ARITY
            )));
        }
        let mut edges = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(v + 1, n, k, cur, out);
                cur.pop();
            }
        }
        rec(0, n, k, &mut cur, &mut edges);
        Ok(Hypergraph { n, edges })
    }

    /// `count` pairwise-disjoint edges of size `k`.
    pub fn disjoint_edges(count: usize, k: usize) -> Hypergraph {
        Hypergraph {
            n: count * k,
            edges: (0..count).map(|i| (i * k..(i + 1) * k).collect()).collect(),
        }
    }

    /// Parses `path:N`, `star:N`, `cycle:N`, `complete:N:K`, `disjoint:COUNT:K`.
    pub fn by_name(spec: &str) -> Result<Hypergraph> {
        let parts: Vec<&str> = spec.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad family spec `{spec}`")))
        };
        match parts[0] {
            "path" => Ok(path(num(1)?)),
            "star" => Ok(star(num(1)?)),
            "cycle" => cycle(num(1)?),
            "complete" => complete(num(1)?, num(2)?),
            "disjoint" => Ok(disjoint_edges(num(1)?, num(2)?)),
            other => Err(Error::InvalidArgument(format!("unknown family `{other}`"))),
        }
    }
}
