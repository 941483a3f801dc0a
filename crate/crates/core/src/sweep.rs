//! Bit-parallel sweeps over all `2^n` global assignments.
//!
//! Global assignment `g` lives at bit `g % 64` of word `g / 64`; bit `v` of `g`
//! is the value of `x_v`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::SystemInstance;

/// Default largest `n` for an assignment sweep (2^24 bits = 2 MiB per bitset).
pub const DEFAULT_ASSIGNMENT_CAP: usize = 24;

/// In-word patterns: bit `i` set iff bit `v` of `i` is set, for `v < 6`.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

pub type Bitset = Vec<u64>;

/// Geometry of the assignment space `F_2^n`.
#[derive(Debug, Clone)]
pub struct AssignmentSpace {
    n: usize,
    words: usize,
    last_word: u64,
}

impl AssignmentSpace {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        if n > cap {
            return Err(Error::cap(
                "assignment sweep (use the backtracking checker instead)",
                format!("n = {n}"),
                format!("n <= {cap}"),
            ));
        }
        let (words, last_word) = if n >= 6 {
            (1usize << (n - 6), u64::MAX)
        } else {
            (1, (1u64 << (1 << n)) - 1)
        };
        Ok(AssignmentSpace {
            n,
            words,
            last_word,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    fn var_word(&self, v: usize, w: usize) -> u64 {
        if v < 6 {
            LOW_PATTERNS[v]
        } else if (w >> (v - 6)) & 1 == 1 {
            u64::MAX
        } else {
            0
        }
    }

    pub fn full(&self) -> Bitset {
        let mut b = vec![u64::MAX; self.words];
        b[self.words - 1] = self.last_word;
        b
    }

    /// Assignments with `x_v = 1`.
    pub fn half_space(&self, v: usize) -> Bitset {
        (0..self.words)
            .map(|w| self.var_word(v, w))
            .zip(self.full())
            .map(|(a, u)| a & u)
            .collect()
    }

    /// Assignments whose restriction to `edge` is local assignment `a`.
    pub fn cell(&self, edge: &[usize], a: usize) -> Bitset {
        let full = self.full();
        (0..self.words)
            .map(|w| {
                edge.iter().enumerate().fold(full[w], |acc, (j, &v)| {
                    let p = self.var_word(v, w);
                    acc & if (a >> j) & 1 == 1 { p } else { !p }
                })
            })
            .collect()
    }

    /// Assignments satisfying the equation on `edge` with root set `mask`.
    pub fn satisfying(&self, edge: &[usize], mask: u64) -> Bitset {
        let mut out = vec![0u64; self.words];
        for a in 0..1usize << edge.len() {
            if (mask >> a) & 1 == 1 {
                or_assign(&mut out, &self.cell(edge, a));
            }
        }
        out
    }

    /// Solution set of a whole system.
    pub fn solutions(&self, sys: &SystemInstance) -> Bitset {
        let mut s = self.full();
        for (e, t) in sys.graph().edges().iter().zip(sys.tables()) {
            if is_zero(&s) {
                break;
            }
            and_assign(&mut s, &self.satisfying(e, t.mask()));
        }
        s
    }
}

pub fn and_assign(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= *y;
    }
}

pub fn or_assign(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x |= *y;
    }
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&w| w == 0)
}

pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// `a & !b` nonempty.
pub fn intersects_complement(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & !y != 0)
}

pub fn popcount(a: &[u64]) -> u64 {
    a.iter().map(|w| w.count_ones() as u64).sum()
}

/// How the solution set projects onto one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    Empty,
    Forced0,
    Forced1,
    Both,
}

impl Projection {
    pub fn from_flags(has0: bool, has1: bool) -> Self {
        match (has0, has1) {
            (false, false) => Projection::Empty,
            (true, false) => Projection::Forced0,
            (false, true) => Projection::Forced1,
            (true, true) => Projection::Both,
        }
    }
}

pub fn is_consistent(sys: &SystemInstance) -> Result<bool> {
    is_consistent_with_cap(sys, DEFAULT_ASSIGNMENT_CAP)
}

pub fn is_consistent_with_cap(sys: &SystemInstance, cap: usize) -> Result<bool> {
    let space = AssignmentSpace::new(sys.graph().n(), cap)?;
    Ok(!is_zero(&space.solutions(sys)))
}

pub fn solution_projection(sys: &SystemInstance, v: usize) -> Result<Projection> {
    solution_projection_with_cap(sys, v, DEFAULT_ASSIGNMENT_CAP)
}

pub fn solution_projection_with_cap(
    sys: &SystemInstance,
    v: usize,
    cap: usize,
) -> Result<Projection> {
    let n = sys.graph().n();
    if v >= n {
        return Err(Error::InvalidArgument(format!(
            "vertex {v} out of range (n = {n})"
        )));
    }
    let space = AssignmentSpace::new(n, cap)?;
    let s = space.solutions(sys);
    let h = space.half_space(v);
    Ok(Projection::from_flags(
        intersects_complement(&s, &h),
        intersects(&s, &h),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{canonicalize, families};
    use crate::system::{full_mask, random_system, RandomSource};

    fn brute_solutions(sys: &SystemInstance) -> Vec<u64> {
        (0..1u64 << sys.graph().n())
            .filter(|&g| sys.satisfied_by(g))
            .collect()
    }

    #[test]
    fn single_edge_extremes() {
        let g = families::path(1);
        let empty = SystemInstance::new(g.clone(), vec![0]).unwrap();
        let full = SystemInstance::new(g, vec![full_mask(2)]).unwrap();
        assert!(!is_consistent(&empty).unwrap());
        assert!(is_consistent(&full).unwrap());
        assert_eq!(solution_projection(&empty, 0).unwrap(), Projection::Empty);
        assert_eq!(solution_projection(&full, 1).unwrap(), Projection::Both);
    }

    #[test]
    fn single_root_forces_both_endpoints() {
        let sys = SystemInstance::new(families::path(1), vec![0b0001]).unwrap();
        assert_eq!(solution_projection(&sys, 0).unwrap(), Projection::Forced0);
        assert_eq!(solution_projection(&sys, 1).unwrap(), Projection::Forced0);
    }

    #[test]
    fn contradiction_on_shared_variable() {
        // edge01 roots {x0=0,x1=1} -> local a = 0b10; edge12 roots {x1=0,x2=0} -> a = 0b00
        let sys = SystemInstance::new(families::path(2), vec![1 << 0b10, 1 << 0b00]).unwrap();
        assert!(brute_solutions(&sys).is_empty());
        assert!(!is_consistent(&sys).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let g = canonicalize(vec![vec![0, 30]], 31).unwrap();
        let sys = SystemInstance::new(g, vec![1]).unwrap();
        assert!(matches!(
            is_consistent(&sys),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn bitset_matches_brute_force() {
        let mut rng = RandomSource::new(99);
        for n in [2usize, 5, 6, 7, 9] {
            let g = families::complete(n, 2).unwrap();
            let g = canonicalize(g.edges()[..n.min(g.m())].to_vec(), n).unwrap();
            for _ in 0..50 {
                let sys = random_system(&g, &mut rng);
                let space = AssignmentSpace::new(n, 24).unwrap();
                let s = space.solutions(&sys);
                let mut listed = Vec::new();
                for gidx in 0..1u64 << n {
                    if (s[(gidx / 64) as usize] >> (gidx % 64)) & 1 == 1 {
                        listed.push(gidx);
                    }
                }
                assert_eq!(listed, brute_solutions(&sys));
            }
        }
    }
}
