//! Equation truth tables, system instances and seeded random generation.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{canonicalize, Hypergraph};

/// Root set of one equation over its local variables.
///
/// Bit `a` of `mask` is set iff local assignment `a` is a root, where bit `j`
/// of `a` is the value of the `j`-th variable of the (ascending) edge.
/// `mask == 0` is the inconsistent equation `1 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EquationTable {
    arity: u8,
    mask: u64,
}

impl EquationTable {
    pub fn new(arity: usize, mask: u64) -> Result<Self> {
        if arity == 0 || arity > crate::hypergraph::MAX_ARITY {
            return Err(Error::InvalidArgument(format!("unsupported arity {arity}")));
        }
        if mask & !full_mask(arity) != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#x} has bits beyond 2^{arity} local assignments"
            )));
        }
        Ok(EquationTable {
            arity: arity as u8,
            mask,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_root(&self, local: usize) -> bool {
        self.mask >> local & 1 == 1
    }

    pub fn is_inconsistent(&self) -> bool {
        self.mask == 0
    }

    /// Table of the equation with the `j`-th local variable complemented.
    pub fn flip_local(&self, j: usize) -> EquationTable {
        let mut out = 0u64;
        for a in 0..1usize << self.arity {
            if self.is_root(a) {
                out |= 1 << (a ^ (1 << j));
            }
        }
        EquationTable {
            arity: self.arity,
            mask: out,
        }
    }
}

/// All-roots mask for arity `k`.
pub fn full_mask(k: usize) -> u64 {
    if k >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << k)) - 1
    }
}

/// Number of distinct tables of arity `k`, as a power of two exponent.
pub fn table_count_log2(k: usize) -> u32 {
    1 << k
}

/// A system of equations aligned with the edges of its hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSystem", into = "RawSystem")]
pub struct SystemInstance {
    graph: Hypergraph,
    tables: Vec<EquationTable>,
}

#[derive(Serialize, Deserialize)]
struct RawSystem {
    n: usize,
    edges: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

impl TryFrom<RawSystem> for SystemInstance {
    type Error = Error;

    fn try_from(raw: RawSystem) -> Result<Self> {
        let graph = canonicalize(raw.edges.clone(), raw.n)?;
        // Masks are interpreted relative to the ascending variable order;
        // input edges must therefore already be canonical.
        if graph.edges() != raw.edges.as_slice() {
            return Err(Error::Parse(
                "system edges must be listed in ascending variable order".into(),
            ));
        }
        SystemInstance::new(graph, raw.masks)
    }
}

impl From<SystemInstance> for RawSystem {
    fn from(s: SystemInstance) -> Self {
        RawSystem {
            n: s.graph.n(),
            edges: s.graph.edges().to_vec(),
            masks: s.tables.iter().map(EquationTable::mask).collect(),
        }
    }
}

impl SystemInstance {
    pub fn new(graph: Hypergraph, masks: Vec<u64>) -> Result<Self> {
        if masks.len() != graph.m() {
            return Err(Error::InvalidArgument(format!(
                "{} masks for {} edges",
                masks.len(),
                graph.m()
            )));
        }
        let tables = graph
            .edges()
            .iter()
            .zip(masks)
            .map(|(e, mask)| EquationTable::new(e.len(), mask))
            .collect::<Result<_>>()?;
        Ok(SystemInstance { graph, tables })
    }

    pub fn from_tables(graph: Hypergraph, tables: Vec<EquationTable>) -> Result<Self> {
        if tables.len() != graph.m()
            || tables
                .iter()
                .zip(graph.edges())
                .any(|(t, e)| t.arity() != e.len())
        {
            return Err(Error::InvalidArgument(
                "tables do not align with edges".into(),
            ));
        }
        Ok(SystemInstance { graph, tables })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn tables(&self) -> &[EquationTable] {
        &self.tables
    }

    pub fn masks(&self) -> Vec<u64> {
        self.tables.iter().map(EquationTable::mask).collect()
    }

    /// Does the global assignment (bit `v` = value of `x_v`) satisfy every equation?
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.graph
            .edges()
            .iter()
            .zip(&self.tables)
            .all(|(e, t)| t.is_root(local_index(e, assignment)))
    }

    /// Image under the involution that complements `x_v` in every equation.
    pub fn flip_vertex(&self, v: usize) -> SystemInstance {
        let tables = self
            .graph
            .edges()
            .iter()
            .zip(&self.tables)
            .map(|(e, t)| match e.iter().position(|&u| u == v) {
                Some(j) => t.flip_local(j),
                None => *t,
            })
            .collect();
        SystemInstance {
            graph: self.graph.clone(),
            tables,
        }
    }
}

/// Local index of `edge` under a global assignment bitmask.
pub fn local_index(edge: &[usize], assignment: u64) -> usize {
    edge.iter().enumerate().fold(0, |acc, (j, &v)| {
        acc | (((assignment >> v) & 1) as usize) << j
    })
}

/// Deterministic, platform-independent stream of random words.
///
/// Backed by ChaCha8; `(seed, stream)` pairs select independent substreams,
/// so work split across threads by index reproduces the serial result.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent substream `index` of `seed`.
    pub fn substream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        RandomSource { seed, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `0..bound`, `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        // Lemire-style rejection keeps this exact.
        let zone = u64::MAX - (u64::MAX - bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// Uniform table of arity `k`: `2^k` independent fair bits.
    pub fn table(&mut self, k: usize) -> EquationTable {
        EquationTable {
            arity: k as u8,
            mask: self.next_u64() & full_mask(k),
        }
    }
}

/// Draws one table per edge, independently and uniformly.
pub fn random_system(graph: &Hypergraph, rng: &mut RandomSource) -> SystemInstance {
    let tables = graph.edges().iter().map(|e| rng.table(e.len())).collect();
    SystemInstance {
        graph: graph.clone(),
        tables,
    }
}
