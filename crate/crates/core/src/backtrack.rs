//! Complete depth-first decision procedure with arc-consistency pruning.
//!
//! Variables are tried in ascending order, value 0 first. After every
//! assignment each equation keeps only the local rows compatible with the
//! current domains; a variable losing all support in some row set loses that
//! value, and an equation with no live rows is a conflict.

use serde::Serialize;

use crate::system::SystemInstance;

const D0: u8 = 1;
const D1: u8 = 2;
const BOTH: u8 = D0 | D1;

/// Search statistics.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub decisions: u64,
    pub backtracks: u64,
    pub propagations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub consistent: bool,
    pub stats: SearchStats,
}

struct Solver<'a> {
    sys: &'a SystemInstance,
    incidence: Vec<Vec<usize>>,
    // patterns[k][j][b]: rows of a k-ary table whose bit j equals b
    patterns: Vec<Vec<[u64; 2]>>,
    stats: SearchStats,
}

fn row_patterns(k: usize) -> Vec<[u64; 2]> {
    (0..k)
        .map(|j| {
            let mut ones = 0u64;
            for a in 0..1usize << k {
                if (a >> j) & 1 == 1 {
                    ones |= 1 << a;
                }
            }
            let all = crate::system::full_mask(k);
            [all & !ones, ones]
        })
        .collect()
}

impl<'a> Solver<'a> {
    fn new(sys: &'a SystemInstance) -> Self {
        let patterns = (0..=crate::hypergraph::MAX_ARITY)
            .map(row_patterns)
            .collect();
        Solver {
            sys,
            incidence: sys.graph().incidence(),
            patterns,
            stats: SearchStats::default(),
        }
    }

    fn live_rows(&self, e: usize, dom: &[u8]) -> u64 {
        let edge = self.sys.graph().edge(e);
        let pats = &self.patterns[edge.len()];
        let mut live = self.sys.tables()[e].mask();
        for (j, &v) in edge.iter().enumerate() {
            match dom[v] {
                D0 => live &= pats[j][0],
                D1 => live &= pats[j][1],
                _ => {}
            }
        }
        live
    }

    /// Prunes to a fixpoint starting from the equations in `queue`.
    /// Returns false on a conflict.
    fn propagate(&mut self, dom: &mut [u8], mut queue: Vec<usize>) -> bool {
        let m = self.sys.graph().m();
        let mut queued = vec![false; m];
        for &e in &queue {
            queued[e] = true;
        }
        while let Some(e) = queue.pop() {
            queued[e] = false;
            self.stats.propagations += 1;
            let live = self.live_rows(e, dom);
            if live == 0 {
                return false;
            }
            let edge = self.sys.graph().edge(e);
            let pats = &self.patterns[edge.len()];
            for (j, &v) in edge.iter().enumerate() {
                let mut supported = 0u8;
                if live & pats[j][0] != 0 {
                    supported |= D0;
                }
                if live & pats[j][1] != 0 {
                    supported |= D1;
                }
                let nd = dom[v] & supported;
                if nd != dom[v] {
                    dom[v] = nd;
                    for &f in &self.incidence[v] {
                        if f != e && !queued[f] {
                            queued[f] = true;
                            queue.push(f);
                        }
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, dom: &mut Vec<u8>, from: usize) -> bool {
        let Some(v) = (from..dom.len()).find(|&v| dom[v] == BOTH) else {
            return true;
        };
        for value in [D0, D1] {
            self.stats.decisions += 1;
            let mut child = dom.clone();
            child[v] = value;
            if self.propagate(&mut child, self.incidence[v].clone())
                && self.search(&mut child, v + 1)
            {
                *dom = child;
                return true;
            }
            self.stats.backtracks += 1;
        }
        false
    }
}

/// Decides consistency and reports search effort.
pub fn backtrack_search(sys: &SystemInstance) -> SearchOutcome {
    if sys.tables().iter().any(|t| t.is_inconsistent()) {
        return SearchOutcome {
            consistent: false,
            stats: SearchStats::default(),
        };
    }
    let mut solver = Solver::new(sys);
    let mut dom = vec![BOTH; sys.graph().n()];
    let consistent =
        solver.propagate(&mut dom, (0..sys.graph().m()).collect()) && solver.search(&mut dom, 0);
    SearchOutcome {
        consistent,
        stats: solver.stats,
    }
}

pub fn backtrack_consistent(sys: &SystemInstance) -> bool {
    backtrack_search(sys).consistent
}

/// A satisfying assignment (variable values in index order), if any.
pub fn backtrack_solution(sys: &SystemInstance) -> Option<Vec<bool>> {
    if sys.tables().iter().any(|t| t.is_inconsistent()) {
        return None;
    }
    let mut solver = Solver::new(sys);
    let mut dom = vec![BOTH; sys.graph().n()];
    if solver.propagate(&mut dom, (0..sys.graph().m()).collect()) && solver.search(&mut dom, 0) {
        // free variables left at BOTH take 0
        Some(dom.iter().map(|&d| d == D1).collect())
    } else {
        None
    }
}
