//! Three equations: after fixing the variables common to all three edges,
//! the system is solvable iff a random tripartite graph has a triangle.
//!
//! Parts are the assignments of the pairwise-only intersections
//! `X_12, X_13, X_23`; equation `k` links the two parts it touches, each
//! link present independently with probability `1 - 2^{-2^{d_k}}` where
//! `d_k` counts the variables private to edge `k`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{powi, single_consistency, Rational};

/// Set sizes describing the overlap pattern of three edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TripartiteProfile {
    /// `|X_k \ (X_i ∪ X_j)|` for k = 1, 2, 3.
    pub private: [u32; 3],
    /// `|X_ij|` (pairwise intersection minus the triple one) for 12, 13, 23.
    pub pairwise: [u32; 3],
    /// `|X_1 ∩ X_2 ∩ X_3|`.
    pub inter: u32,
}

/// Cap on DP work, counted in state transitions.
pub const TRIPARTITE_WORK_CAP: u64 = 1 << 28;

impl TripartiteProfile {
    pub fn from_graph(graph: &Hypergraph) -> Result<Self> {
        if graph.m() != 3 {
            return Err(Error::InvalidArgument(format!(
                "expected 3 edges, got {}",
                graph.m()
            )));
        }
        let e: Vec<&[usize]> = (0..3).map(|i| graph.edge(i)).collect();
        let has = |i: usize, v: usize| e[i].binary_search(&v).is_ok();
        let mut private = [0u32; 3];
        let mut pairwise = [0u32; 3];
        let mut inter = 0u32;
        for v in 0..graph.n() {
            match (has(0, v), has(1, v), has(2, v)) {
                (true, true, true) => inter += 1,
                (true, true, false) => pairwise[0] += 1,
                (true, false, true) => pairwise[1] += 1,
                (false, true, true) => pairwise[2] += 1,
                (true, false, false) => private[0] += 1,
                (false, true, false) => private[1] += 1,
                (false, false, true) => private[2] += 1,
                (false, false, false) => {}
            }
        }
        Ok(TripartiteProfile {
            private,
            pairwise,
            inter,
        })
    }

    fn validate(&self) -> Result<()> {
        let [p1, p2, p3] = self.private;
        let [x12, x13, x23] = self.pairwise;
        let sizes = [p1 + x12 + x13, p2 + x12 + x23, p3 + x13 + x23];
        if sizes.iter().any(|&s| s + self.inter == 0) {
            return Err(Error::InvalidArgument(
                "every edge must be non-empty".into(),
            ));
        }
        if self.private.iter().any(|&d| d > 20) || self.inter > 20 {
            return Err(Error::cap(
                "tripartite profile",
                format!("{self:?}"),
                "sizes <= 20",
            ));
        }
        Ok(())
    }
}

/// Probability that the random tripartite graph for one fixation of the
/// common variables has no triangle.
pub fn tripartite_triangle_free(profile: &TripartiteProfile) -> Result<Rational> {
    profile.validate()?;
    let [x12, x13, x23] = profile.pairwise;
    if x12 > 6 || x13 > 6 || x23 > 6 {
        return Err(Error::cap(
            "tripartite part size",
            format!("{:?}", profile.pairwise),
            "|X_ij| <= 6",
        ));
    }
    let (n12, n13, n23) = (1usize << x12, 1usize << x13, 1usize << x23);
    if n13 * n23 > 64 {
        return Err(Error::cap("tripartite part product", n13 * n23, 64));
    }
    let work = (n12 as u64)
        .saturating_mul(1u64 << (n13 + n23))
        .saturating_mul(1u64 << (n13 * n23).min(40));
    if work > TRIPARTITE_WORK_CAP {
        return Err(Error::cap(
            "tripartite enumeration",
            work,
            TRIPARTITE_WORK_CAP,
        ));
    }
    let q: Vec<Rational> = profile
        .private
        .iter()
        .map(|&d| single_consistency(d))
        .collect();
    let miss: Vec<Rational> = q.iter().map(|x| Rational::one() - x).collect();

    // weight of each neighbourhood subset, by size
    let subset_weights = |parts: usize, k: usize| -> Vec<Rational> {
        (0..1u64 << parts)
            .map(|s| {
                let c = s.count_ones() as u64;
                powi(&q[k], c) * powi(&miss[k], parts as u64 - c)
            })
            .collect()
    };
    let w1 = subset_weights(n13, 0);
    let w2 = subset_weights(n23, 1);

    // D: set of (b, c) in Y13 x Y23 closed into a path b - a - c, bit b*n23 + c
    let mut dist: HashMap<u64, Rational> = HashMap::from([(0u64, Rational::one())]);
    for _a in 0..n12 {
        let mut next: HashMap<u64, Rational> = HashMap::new();
        for (d, pd) in &dist {
            for (s1, ws1) in w1.iter().enumerate() {
                for (s2, ws2) in w2.iter().enumerate() {
                    let mut nd = *d;
                    for b in 0..n13 {
                        if (s1 >> b) & 1 == 1 {
                            nd |= (s2 as u64) << (b * n23);
                        }
                    }
                    let w = pd * ws1 * ws2;
                    *next.entry(nd).or_insert_with(Rational::zero) += w;
                }
            }
        }
        dist = next;
    }
    Ok(dist
        .into_iter()
        .map(|(d, pd)| pd * powi(&miss[2], d.count_ones() as u64))
        .fold(Rational::zero(), |a, b| a + b))
}

/// Exact inconsistency probability of three equations: the triangle-free
/// probability raised to `2^{|X_1 ∩ X_2 ∩ X_3|}`.
pub fn tripartite_m3_inconsistency(profile: &TripartiteProfile) -> Result<Rational> {
    let per_fixation = tripartite_triangle_free(profile)?;
    Ok(powi(&per_fixation, 1u64 << profile.inter))
}

pub fn tripartite_m3_for_graph(graph: &Hypergraph) -> Result<Rational> {
    tripartite_m3_inconsistency(&TripartiteProfile::from_graph(graph)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{canonicalize, families};
    use crate::rational::ratio;

    #[test]
    fn singleton_parts() {
        let p = TripartiteProfile {
            private: [1, 1, 1],
            pairwise: [0, 0, 0],
            inter: 0,
        };
        assert_eq!(tripartite_m3_inconsistency(&p).unwrap(), ratio(37, 64));
        let g = canonicalize(vec![vec![0], vec![1], vec![2]], 3).unwrap();
        assert_eq!(TripartiteProfile::from_graph(&g).unwrap(), p);
    }

    #[test]
    fn inter_squares() {
        let base = TripartiteProfile {
            private: [1, 1, 1],
            pairwise: [0, 0, 0],
            inter: 0,
        };
        let doubled = TripartiteProfile { inter: 1, ..base };
        let p = tripartite_m3_inconsistency(&base).unwrap();
        assert_eq!(tripartite_m3_inconsistency(&doubled).unwrap(), &p * &p);
    }

    #[test]
    fn triangle_profile() {
        let p = TripartiteProfile::from_graph(&families::cycle(3).unwrap()).unwrap();
        assert_eq!(p.pairwise, [1, 1, 1]);
        assert_eq!(p.private, [0, 0, 0]);
        assert_eq!(p.inter, 0);
        // q(C_3) = 2397/4096 by enumeration
        assert_eq!(
            tripartite_m3_inconsistency(&p).unwrap(),
            ratio(4096 - 2397, 4096)
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert!(TripartiteProfile::from_graph(&families::path(2)).is_err());
        let p = TripartiteProfile {
            private: [0, 1, 1],
            pairwise: [0, 0, 0],
            inter: 0,
        };
        assert!(tripartite_m3_inconsistency(&p).is_err());
    }
}
