//! Seeded Monte Carlo estimation of the consistency probability.
//!
//! Trial `i` draws its tables from `RandomSource::substream(seed, i)`, so the
//! counts are identical for every thread count and chunking.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backtrack::backtrack_consistent;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::oracle::in_pool;
use crate::sweep::{and_assign, is_zero, or_assign, AssignmentSpace, Bitset};
use crate::system::{full_mask, RandomSource, SystemInstance};

pub const DEFAULT_Z: f64 = 3.0;
const CHUNK: u64 = 4096;
/// Largest `n` handled by the precomputed bitset checker.
const BITSET_CHECK_MAX_N: usize = 14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub trials: u64,
    pub successes: u64,
    pub q_hat: f64,
    /// `z * sqrt(q_hat (1 - q_hat) / trials)`.
    pub ci_halfwidth: f64,
    pub wilson: [f64; 2],
    pub seed: u64,
    pub z: f64,
}

impl McEstimate {
    pub fn from_counts(trials: u64, successes: u64, seed: u64, z: f64) -> Self {
        let q_hat = successes as f64 / trials as f64;
        McEstimate {
            trials,
            successes,
            q_hat,
            ci_halfwidth: z * (q_hat * (1.0 - q_hat) / trials as f64).sqrt(),
            wilson: wilson_interval(successes, trials, z),
            seed,
            z,
        }
    }
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> [f64; 2] {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    [(centre - half).max(0.0), (centre + half).min(1.0)]
}

#[derive(Debug, Clone)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    pub z: f64,
    pub threads: Option<usize>,
}

impl McConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        McConfig {
            trials,
            seed,
            z: DEFAULT_Z,
            threads: None,
        }
    }
}

enum Checker {
    Bitset {
        full: Bitset,
        cells: Vec<Vec<Bitset>>,
    },
    Search,
}

impl Checker {
    fn new(graph: &Hypergraph) -> Self {
        if graph.n() > BITSET_CHECK_MAX_N {
            return Checker::Search;
        }
        let space = AssignmentSpace::new(graph.n(), BITSET_CHECK_MAX_N).expect("n within bound");
        let cells = graph
            .edges()
            .iter()
            .map(|e| (0..1usize << e.len()).map(|a| space.cell(e, a)).collect())
            .collect();
        Checker::Bitset {
            full: space.full(),
            cells,
        }
    }

    fn consistent(
        &self,
        graph: &Hypergraph,
        masks: &[u64],
        scratch: &mut Bitset,
        sat: &mut Bitset,
    ) -> bool {
        match self {
            Checker::Bitset { full, cells } => {
                scratch.copy_from_slice(full);
                for (cell, &mask) in cells.iter().zip(masks) {
                    if mask == 0 {
                        return false;
                    }
                    sat.iter_mut().for_each(|w| *w = 0);
                    let mut bits = mask;
                    while bits != 0 {
                        let a = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        or_assign(sat, &cell[a]);
                    }
                    and_assign(scratch, sat);
                    if is_zero(scratch) {
                        return false;
                    }
                }
                true
            }
            Checker::Search => {
                let sys = SystemInstance::new(graph.clone(), masks.to_vec()).expect("valid masks");
                backtrack_consistent(&sys)
            }
        }
    }
}

/// Estimates `q(graph)` from uniform random tables.
pub fn mc_q(graph: &Hypergraph, cfg: &McConfig) -> Result<McEstimate> {
    mc_q_with_sampler(graph, cfg, |_, k, rng| rng.table(k).mask())
}

/// Same as [`mc_q`] with a custom table sampler `(edge index, arity, rng) -> mask`.
pub fn mc_q_with_sampler<F>(graph: &Hypergraph, cfg: &McConfig, sampler: F) -> Result<McEstimate>
where
    F: Fn(usize, usize, &mut RandomSource) -> u64 + Sync,
{
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if !(cfg.z.is_finite() && cfg.z > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "z must be positive, got {}",
            cfg.z
        )));
    }
    let checker = Checker::new(graph);
    let chunks = cfg.trials.div_ceil(CHUNK);
    let run_chunk = |c: u64| -> u64 {
        let words = match &checker {
            Checker::Bitset { full, .. } => full.len(),
            Checker::Search => 0,
        };
        let (mut scratch, mut sat) = (vec![0u64; words], vec![0u64; words]);
        let mut masks = vec![0u64; graph.m()];
        let lo = c * CHUNK;
        let hi = (lo + CHUNK).min(cfg.trials);
        (lo..hi)
            .filter(|&i| {
                let mut rng = RandomSource::substream(cfg.seed, i);
                for (e, slot) in masks.iter_mut().enumerate() {
                    let k = graph.edge(e).len();
                    *slot = sampler(e, k, &mut rng) & full_mask(k);
                }
                checker.consistent(graph, &masks, &mut scratch, &mut sat)
            })
            .count() as u64
    };
    let successes = in_pool(cfg.threads, || {
        (0..chunks).into_par_iter().map(run_chunk).sum::<u64>()
    })?;
    Ok(McEstimate::from_counts(
        cfg.trials, successes, cfg.seed, cfg.z,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::families;

    #[test]
    fn deterministic_across_threads() {
        let g = families::cycle(4).unwrap();
        let mut cfg = McConfig::new(20_000, 99);
        cfg.threads = Some(1);
        let a = mc_q(&g, &cfg).unwrap();
        cfg.threads = Some(4);
        let b = mc_q(&g, &cfg).unwrap();
        assert_eq!(a.successes, b.successes);
    }

    #[test]
    fn near_exact_on_path() {
        let est = mc_q(&families::path(3), &McConfig::new(200_000, 5)).unwrap();
        let q = 2799.0 / 4096.0;
        let sigma = (q * (1.0 - q) / 200_000.0f64).sqrt();
        assert!((est.q_hat - q).abs() <= 4.0 * sigma);
        assert!(est.wilson[0] <= est.q_hat && est.q_hat <= est.wilson[1]);
    }

    #[test]
    fn rigged_zero_table() {
        let g = families::path(3);
        let est = mc_q_with_sampler(&g, &McConfig::new(1000, 1), |e, k, rng| {
            if e == 1 {
                0
            } else {
                rng.table(k).mask()
            }
        })
        .unwrap();
        assert_eq!(est.successes, 0);
        assert_eq!(est.q_hat, 0.0);
    }

    #[test]
    fn search_path_matches_bitset_path() {
        // 20 variables forces the backtracking checker
        let g = families::path(19);
        let cfg = McConfig::new(3000, 8);
        let est = mc_q(&g, &cfg).unwrap();
        let mut hits = 0;
        for i in 0..3000 {
            let mut rng = RandomSource::substream(8, i);
            let masks: Vec<u64> = g
                .edges()
                .iter()
                .map(|e| rng.table(e.len()).mask())
                .collect();
            let sys = SystemInstance::new(g.clone(), masks).unwrap();
            hits += u64::from(crate::sweep::is_consistent(&sys).unwrap());
        }
        assert_eq!(est.successes, hits);
    }

    #[test]
    fn rejects_zero_trials() {
        assert!(mc_q(&families::path(1), &McConfig::new(0, 0)).is_err());
    }
}
