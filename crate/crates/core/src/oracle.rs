//! Exhaustive ground truth: enumerates every combination of equation tables
//! for a hypergraph and counts the solvable ones exactly.
//!
//! Instances are indexed by a mixed-radix counter over per-edge masks with
//! edge 0 least significant. Any index range can be counted on its own, and
//! counts over a partition of `0..total` add up to the full result.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{from_biguint, pow2, serde_rational, Rational};
use crate::state::VertexState;
use crate::sweep::{self, intersects, intersects_complement, is_zero, AssignmentSpace, Bitset};

/// Default cap on the number of enumerated instances.
pub const DEFAULT_INSTANCE_CAP: u64 = 1 << 32;

/// Largest precomputed satisfying-set table per edge, in words.
const TABLE_BUDGET_WORDS: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct OracleConfig {
    pub instance_cap: u64,
    pub assignment_cap: usize,
    /// Worker threads; `None` uses the current rayon pool.
    pub threads: Option<usize>,
    /// Count the innermost edge in closed form instead of enumerating its masks.
    pub collapse_last_edge: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            instance_cap: DEFAULT_INSTANCE_CAP,
            assignment_cap: sweep::DEFAULT_ASSIGNMENT_CAP,
            threads: None,
            collapse_last_edge: true,
        }
    }
}

/// Instance counts for one vertex, classified by solution projection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCounts {
    pub forced0: u64,
    pub forced1: u64,
    pub both: u64,
    pub empty: u64,
}

impl VertexCounts {
    fn add(&mut self, o: &VertexCounts) {
        self.forced0 += o.forced0;
        self.forced1 += o.forced1;
        self.both += o.both;
        self.empty += o.empty;
    }

    pub fn total(&self) -> u64 {
        self.forced0 + self.forced1 + self.both + self.empty
    }
}

/// Raw counts over some range of instance indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Counts {
    pub instances: u64,
    pub solvable: u64,
    pub vertices: Option<Vec<VertexCounts>>,
}

impl Counts {
    fn new(n: usize, want_vertices: bool) -> Self {
        Counts {
            instances: 0,
            solvable: 0,
            vertices: want_vertices.then(|| vec![VertexCounts::default(); n]),
        }
    }

    pub fn merge(mut self, o: Counts) -> Counts {
        self.instances += o.instances;
        self.solvable += o.solvable;
        if let (Some(a), Some(b)) = (self.vertices.as_mut(), o.vertices.as_ref()) {
            for (x, y) in a.iter_mut().zip(b) {
                x.add(y);
            }
        }
        self
    }

    fn add_empty(&mut self, count: u64) {
        self.instances += count;
        if let Some(vs) = self.vertices.as_mut() {
            for v in vs {
                v.empty += count;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub method: String,
    pub graph: Hypergraph,
    #[serde(with = "serde_rational")]
    pub q: Rational,
    #[serde(with = "serde_rational")]
    pub p: Rational,
    /// Decimal string; may exceed 64 bits in principle.
    pub total_instances: String,
    pub solvable_instances: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub vertex_counts: Option<Vec<VertexCounts>>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub warnings: Vec<String>,
}

impl OracleReport {
    pub fn vertex_state(&self, v: usize) -> Option<VertexState> {
        let c = self.vertex_counts.as_ref()?.get(v)?;
        let total: u64 = self.total_instances.parse().ok()?;
        let t = Rational::from_integer(total.into());
        Some(VertexState::new(
            Rational::from_integer(c.forced0.into()) / &t,
            Rational::from_integer(c.both.into()) / &t,
        ))
    }
}

/// Exact `log2` of the number of instances: `sum_i 2^{|X_i|}`.
pub fn instance_count_log2(graph: &Hypergraph) -> u64 {
    graph.edges().iter().map(|e| 1u64 << e.len()).sum()
}

pub fn instance_count(graph: &Hypergraph) -> BigUint {
    BigUint::one() << instance_count_log2(graph) as usize
}

/// Precomputed enumeration plan for one hypergraph.
pub struct Enumerator<'g> {
    graph: &'g Hypergraph,
    space: AssignmentSpace,
    radix: Vec<u64>,
    stride: Vec<u64>,
    total: u64,
    cells: Vec<Vec<Bitset>>,
    tables: Vec<Option<Vec<u64>>>,
    half: Vec<Bitset>,
    collapse: bool,
}

impl<'g> Enumerator<'g> {
    pub fn new(graph: &'g Hypergraph, cfg: &OracleConfig) -> Result<Self> {
        let log2 = instance_count_log2(graph);
        let cap_log2_ok = log2 < 64 && (1u64 << log2) <= cfg.instance_cap;
        if !cap_log2_ok {
            return Err(Error::cap(
                "exhaustive instance enumeration",
                instance_count(graph),
                cfg.instance_cap,
            ));
        }
        let space = AssignmentSpace::new(graph.n(), cfg.assignment_cap)?;
        let radix: Vec<u64> = graph
            .edges()
            .iter()
            .map(|e| 1u64 << (1u64 << e.len()))
            .collect();
        let mut stride = Vec::with_capacity(radix.len());
        let mut acc = 1u64;
        for &r in &radix {
            stride.push(acc);
            acc *= r;
        }
        let cells: Vec<Vec<Bitset>> = graph
            .edges()
            .iter()
            .map(|e| (0..1usize << e.len()).map(|a| space.cell(e, a)).collect())
            .collect();
        let words = space.words();
        let tables = graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let r = radix[i] as usize;
                (r.saturating_mul(words) <= TABLE_BUDGET_WORDS).then(|| {
                    let mut flat = Vec::with_capacity(r * words);
                    for mask in 0..r as u64 {
                        flat.extend(space.satisfying(e, mask));
                    }
                    flat
                })
            })
            .collect();
        let half = (0..graph.n()).map(|v| space.half_space(v)).collect();
        Ok(Enumerator {
            graph,
            space,
            radix,
            stride,
            total: acc,
            cells,
            tables,
            half,
            collapse: cfg.collapse_last_edge,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    fn and_with_table(&self, e: usize, mask: u64, prefix: &[u64], out: &mut Bitset) {
        let words = self.space.words();
        match &self.tables[e] {
            Some(flat) => {
                let row = &flat[mask as usize * words..(mask as usize + 1) * words];
                for ((o, p), t) in out.iter_mut().zip(prefix).zip(row) {
                    *o = p & t;
                }
            }
            None => {
                out.iter_mut().for_each(|w| *w = 0);
                for (a, cell) in self.cells[e].iter().enumerate() {
                    if (mask >> a) & 1 == 1 {
                        for ((o, p), c) in out.iter_mut().zip(prefix).zip(cell) {
                            *o |= p & c;
                        }
                    }
                }
            }
        }
    }

    /// Counts instances with index in `lo..hi`.
    pub fn count_range(&self, lo: u64, hi: u64, want_vertices: bool) -> Counts {
        let hi = hi.min(self.total);
        let mut acc = Counts::new(self.graph.n(), want_vertices);
        if lo >= hi {
            return acc;
        }
        let m = self.graph.m();
        if m == 0 {
            self.record_solution_set(&self.space.full(), 1, &mut acc);
            return acc;
        }
        let mut scratch: Vec<Bitset> = vec![vec![0u64; self.space.words()]; m];
        let full = self.space.full();
        self.walk(m - 1, &full, 0, lo, hi, &mut scratch, &mut acc);
        acc
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        &self,
        e: usize,
        prefix: &[u64],
        base: u64,
        lo: u64,
        hi: u64,
        scratch: &mut [Bitset],
        acc: &mut Counts,
    ) {
        let stride = self.stride[e];
        let r = self.radix[e];
        if e == 0 && self.collapse && lo <= base && base + r <= hi {
            self.collapse_leaf(prefix, acc);
            return;
        }
        let x_start = lo.saturating_sub(base) / stride;
        let x_end = ((hi - base).div_ceil(stride)).min(r);
        let (lower, upper) = scratch.split_at_mut(e);
        let cur = &mut upper[0];
        for x in x_start..x_end {
            let sub_lo = base + x * stride;
            let sub_hi = sub_lo + stride;
            let overlap = sub_hi.min(hi) - sub_lo.max(lo);
            self.and_with_table(e, x, prefix, cur);
            if is_zero(cur) {
                acc.add_empty(overlap);
            } else if e == 0 {
                self.record_solution_set(cur, 1, acc);
            } else {
                self.walk(e - 1, cur, sub_lo, lo, hi, lower, acc);
            }
        }
    }

    fn record_solution_set(&self, s: &[u64], count: u64, acc: &mut Counts) {
        acc.instances += count;
        if is_zero(s) {
            if let Some(vs) = acc.vertices.as_mut() {
                vs.iter_mut().for_each(|v| v.empty += count);
            }
            return;
        }
        acc.solvable += count;
        if let Some(vs) = acc.vertices.as_mut() {
            for (v, vc) in vs.iter_mut().enumerate() {
                let has1 = intersects(s, &self.half[v]);
                let has0 = intersects_complement(s, &self.half[v]);
                match (has0, has1) {
                    (true, true) => vc.both += count,
                    (true, false) => vc.forced0 += count,
                    (false, true) => vc.forced1 += count,
                    (false, false) => unreachable!(),
                }
            }
        }
    }

    /// All masks of edge 0 at once, given the solution set `prefix` of the
    /// remaining edges. Only which local assignments of edge 0 occur in
    /// `prefix` (and with which values of each vertex) matters.
    fn collapse_leaf(&self, prefix: &[u64], acc: &mut Counts) {
        let cells = &self.cells[0];
        let slots = cells.len() as u64;
        let r = self.radix[0];
        acc.instances += r;
        if is_zero(prefix) {
            if let Some(vs) = acc.vertices.as_mut() {
                vs.iter_mut().for_each(|v| v.empty += r);
            }
            return;
        }
        let mut inter: Vec<Bitset> = Vec::with_capacity(cells.len());
        for c in cells {
            inter.push(prefix.iter().zip(c).map(|(a, b)| a & b).collect());
        }
        let present: Vec<bool> = inter.iter().map(|b| !is_zero(b)).collect();
        let p = present.iter().filter(|&&x| x).count() as u64;
        let free = slots - p;
        // masks hitting none of the present slots
        let empty = 1u64 << free;
        acc.solvable += r - empty;
        if let Some(vs) = acc.vertices.as_mut() {
            for (v, vc) in vs.iter_mut().enumerate() {
                let (mut only0, mut only1) = (0u32, 0u32);
                for (b, _) in inter.iter().zip(&present).filter(|(_, &pr)| pr) {
                    let h1 = intersects(b, &self.half[v]);
                    let h0 = intersects_complement(b, &self.half[v]);
                    match (h0, h1) {
                        (true, true) => {}
                        (true, false) => only0 += 1,
                        (false, true) => only1 += 1,
                        (false, false) => unreachable!(),
                    }
                }
                let scale = 1u64 << free;
                vc.forced0 += scale * ((1u64 << only0) - 1);
                vc.forced1 += scale * ((1u64 << only1) - 1);
                vc.both += scale * ((1u64 << p) + 1 - (1u64 << only0) - (1u64 << only1));
                vc.empty += empty;
            }
        }
    }
}

/// Counts over `0..total` split into `chunks` pieces, evaluated in parallel.
/// Chunk boundaries are aligned to whole groups of the innermost edge.
pub fn count_all(en: &Enumerator<'_>, want_vertices: bool, chunks: usize) -> Counts {
    let total = en.total();
    let group = en.radix.first().copied().unwrap_or(1);
    let groups = total / group;
    let chunks = (chunks.max(1) as u64).min(groups.max(1));
    let per = groups.div_ceil(chunks) * group;
    let bounds: Vec<(u64, u64)> = (0..chunks)
        .map(|c| (c * per, ((c + 1) * per).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    count_partition(en, &bounds, want_vertices)
}

/// Sum of counts over explicit `[lo, hi)` chunks.
pub fn count_partition(en: &Enumerator<'_>, bounds: &[(u64, u64)], want_vertices: bool) -> Counts {
    let n = en.graph.n();
    bounds
        .par_iter()
        .map(|&(lo, hi)| en.count_range(lo, hi, want_vertices))
        .reduce(|| Counts::new(n, want_vertices), Counts::merge)
}

pub(crate) fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn report_from_counts(
    graph: &Hypergraph,
    counts: Counts,
    method: &str,
) -> Result<OracleReport> {
    let total = instance_count(graph);
    if BigUint::from(counts.instances) != total {
        return Err(Error::InvariantViolation(format!(
            "visited {} instances, expected {total}",
            counts.instances
        )));
    }
    if let Some(vs) = &counts.vertices {
        for (v, c) in vs.iter().enumerate() {
            if c.total() != counts.instances || c.empty != counts.instances - counts.solvable {
                return Err(Error::InvariantViolation(format!(
                    "vertex {v} counts do not sum up"
                )));
            }
        }
    }
    let q = from_biguint(BigUint::from(counts.solvable), total.clone());
    let p = Rational::one() - &q;
    let warnings = isolated_warning(graph).into_iter().collect();
    Ok(OracleReport {
        method: method.to_string(),
        graph: graph.clone(),
        q,
        p,
        total_instances: total.to_string(),
        solvable_instances: counts.solvable.to_string(),
        vertex_counts: counts.vertices,
        warnings,
    })
}

pub(crate) fn isolated_warning(graph: &Hypergraph) -> Option<String> {
    let iso = graph.isolated_vertices();
    (!iso.is_empty())
        .then(|| format!("isolated vertices {iso:?} appear in no equation and do not affect q"))
}

/// Exact `q(G)` (and optionally per-vertex projection counts) by exhaustion.
pub fn oracle_q(graph: &Hypergraph, want_vertex_states: bool) -> Result<OracleReport> {
    oracle_q_with(graph, want_vertex_states, &OracleConfig::default())
}

pub fn oracle_q_with(
    graph: &Hypergraph,
    want_vertex_states: bool,
    cfg: &OracleConfig,
) -> Result<OracleReport> {
    let en = Enumerator::new(graph, cfg)?;
    let counts = in_pool(cfg.threads, || {
        let chunks = rayon::current_num_threads() * 8;
        count_all(&en, want_vertex_states, chunks)
    })?;
    report_from_counts(graph, counts, "exact-oracle")
}

/// Exact `(p0, p01)` of vertex `v`.
pub fn oracle_vertex_state(graph: &Hypergraph, v: usize) -> Result<VertexState> {
    if v >= graph.n() {
        return Err(Error::InvalidArgument(format!(
            "vertex {v} out of range (n = {})",
            graph.n()
        )));
    }
    let rep = oracle_q(graph, true)?;
    let st = rep.vertex_state(v).expect("vertex counts requested");
    Ok(st)
}

/// `sum over ordered pairs [a,b] (a = b allowed) of Pr(a, b in S)`, via the
/// subset-union sum `2^{2n-2m} * sum_{I subset [m]} 2^{-|union_{i in I} X_i|}`.
pub fn oracle_pair_probability_sum(graph: &Hypergraph) -> Result<Rational> {
    let hist = subset_union_histogram(graph, 20)?;
    let sum = union_sum(&hist);
    Ok(pow2(2 * graph.n() as i64 - 2 * graph.m() as i64) * sum)
}

/// `hist[s]` = number of edge subsets (empty subset included) whose union has
/// `s` vertices.
pub fn subset_union_histogram(graph: &Hypergraph, max_m: usize) -> Result<Vec<u64>> {
    let m = graph.m();
    if m > max_m {
        return Err(Error::cap(
            "subset enumeration",
            format!("m = {m}"),
            format!("m <= {max_m}"),
        ));
    }
    let n = graph.n();
    let words = n.div_ceil(64).max(1);
    let masks: Vec<Vec<u64>> = graph
        .edges()
        .iter()
        .map(|e| {
            let mut b = vec![0u64; words];
            for &v in e {
                b[v / 64] |= 1 << (v % 64);
            }
            b
        })
        .collect();
    let mut hist = vec![0u64; n + 1];
    fn rec(i: usize, union: &[u64], masks: &[Vec<u64>], hist: &mut [u64]) {
        if i == masks.len() {
            let s: u32 = union.iter().map(|w| w.count_ones()).sum();
            hist[s as usize] += 1;
            return;
        }
        rec(i + 1, union, masks, hist);
        let with: Vec<u64> = union.iter().zip(&masks[i]).map(|(a, b)| a | b).collect();
        rec(i + 1, &with, masks, hist);
    }
    rec(0, &vec![0u64; words], &masks, &mut hist);
    Ok(hist)
}

/// `sum_s hist[s] * 2^{-s}`.
pub fn union_sum(hist: &[u64]) -> Rational {
    hist.iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(s, &c)| Rational::from_integer(c.into()) * pow2(-(s as i64)))
        .fold(Rational::zero(), |a, b| a + b)
}

/// First two inclusion-exclusion sums measured directly: returns
/// `(sum_a Pr(a in S), sum_[a,b] Pr(a,b in S))`, i.e. `E|S|` and `E|S|^2`,
/// by enumerating every instance and counting solutions. Small graphs only.
pub fn solution_moments_brute(
    graph: &Hypergraph,
    instance_cap: u64,
) -> Result<(Rational, Rational)> {
    let cfg = OracleConfig {
        instance_cap,
        ..OracleConfig::default()
    };
    let en = Enumerator::new(graph, &cfg)?;
    let m = graph.m();
    let words = en.space.words();
    let (mut s1, mut s2) = (BigUint::zero(), BigUint::zero());
    let mut cur = en.space.full();
    let mut buf = vec![0u64; words];
    for idx in 0..en.total() {
        cur.copy_from_slice(&en.space.full());
        for e in 0..m {
            let mask = (idx / en.stride[e]) % en.radix[e];
            en.and_with_table(e, mask, &cur, &mut buf);
            std::mem::swap(&mut cur, &mut buf);
        }
        let c = sweep::popcount(&cur);
        s1 += c;
        s2 += c * c;
    }
    let total = instance_count(graph);
    Ok((from_biguint(s1, total.clone()), from_biguint(s2, total)))
}

/// Convenience: the counts as `u64` when they fit.
pub fn solvable_count(rep: &OracleReport) -> Option<u64> {
    rep.solvable_instances.parse::<BigUint>().ok()?.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{canonicalize, families};
    use crate::rational::ratio;
    use crate::system::{random_system, RandomSource, SystemInstance};

    fn naive_cfg() -> OracleConfig {
        OracleConfig {
            collapse_last_edge: false,
            ..OracleConfig::default()
        }
    }

    /// Independent route: materialize every system and test it with the
    /// plain per-assignment predicate.
    fn brute_q(graph: &Hypergraph) -> Rational {
        let radix: Vec<u64> = graph
            .edges()
            .iter()
            .map(|e| 1u64 << (1u64 << e.len()))
            .collect();
        let total: u64 = radix.iter().product();
        let mut solvable = 0u64;
        for idx in 0..total {
            let mut rest = idx;
            let masks: Vec<u64> = radix
                .iter()
                .map(|&r| {
                    let m = rest % r;
                    rest /= r;
                    m
                })
                .collect();
            let sys = SystemInstance::new(graph.clone(), masks).unwrap();
            if (0..1u64 << graph.n()).any(|g| sys.satisfied_by(g)) {
                solvable += 1;
            }
        }
        ratio(solvable as i64, total as i64)
    }

    #[test]
    fn path_values() {
        assert_eq!(
            oracle_q(&families::path(1), false).unwrap().q,
            ratio(15, 16)
        );
        assert_eq!(
            oracle_q(&families::path(2), false).unwrap().q,
            ratio(207, 256)
        );
        assert_eq!(
            oracle_q(&families::path(3), false).unwrap().q,
            ratio(2799, 4096)
        );
    }

    #[test]
    fn star_value() {
        assert_eq!(
            oracle_q(&families::star(3), false).unwrap().q,
            ratio(2727, 4096)
        );
    }

    #[test]
    fn empty_graph_is_consistent() {
        let rep = oracle_q(&Hypergraph::empty(3), true).unwrap();
        assert_eq!(rep.q, ratio(1, 1));
        assert_eq!(rep.total_instances, "1");
        assert_eq!(rep.warnings.len(), 1);
    }

    #[test]
    fn vertex_states_single_edge() {
        let st = oracle_vertex_state(&families::path(1), 0).unwrap();
        assert_eq!(st, VertexState::new(ratio(3, 16), ratio(9, 16)));
        let st = oracle_vertex_state(&families::path(2), 2).unwrap();
        assert_eq!(st, VertexState::new(ratio(51, 256), ratio(105, 256)));
        let st = oracle_vertex_state(&families::path(2), 1).unwrap();
        assert_eq!(st, VertexState::new(ratio(63, 256), ratio(81, 256)));
        let center = oracle_vertex_state(&families::star(3), 3).unwrap();
        assert_eq!(center.p01, ratio(729, 4096));
    }

    #[test]
    fn collapse_matches_brute_and_naive() {
        let graphs = vec![
            families::path(2),
            families::cycle(3).unwrap(),
            canonicalize(vec![vec![0, 1, 2], vec![1]], 3).unwrap(),
            canonicalize(vec![vec![0], vec![0, 1], vec![1]], 2).unwrap(),
            canonicalize(vec![vec![0, 1], vec![0, 1]], 2).unwrap(),
            canonicalize(vec![vec![1, 2], vec![0]], 4).unwrap(),
        ];
        for g in graphs {
            let fast = oracle_q(&g, true).unwrap();
            let slow = oracle_q_with(&g, true, &naive_cfg()).unwrap();
            assert_eq!(fast.q, brute_q(&g), "{g}");
            assert_eq!(fast, slow, "{g}");
        }
    }

    #[test]
    fn partition_independence() {
        let g = canonicalize(vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![2]], 3).unwrap();
        let cfg = OracleConfig::default();
        let en = Enumerator::new(&g, &cfg).unwrap();
        let whole = en.count_range(0, en.total(), true);
        let mut rng = RandomSource::new(5);
        for pieces in [1usize, 2, 3, 7, 50] {
            let mut cuts: Vec<u64> = (0..pieces - 1).map(|_| rng.below(en.total())).collect();
            cuts.push(0);
            cuts.push(en.total());
            cuts.sort_unstable();
            let bounds: Vec<(u64, u64)> = cuts.windows(2).map(|w| (w[0], w[1])).collect();
            assert_eq!(count_partition(&en, &bounds, true), whole);
        }
        for t in [1usize, 2, 5] {
            let rep = oracle_q_with(
                &g,
                true,
                &OracleConfig {
                    threads: Some(t),
                    ..cfg.clone()
                },
            )
            .unwrap();
            assert_eq!(rep.solvable_instances, whole.solvable.to_string());
        }
    }

    #[test]
    fn cap_exceeded() {
        let g = families::complete(5, 3).unwrap();
        assert!(matches!(
            oracle_q(&g, false),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn pair_sum_examples() {
        assert_eq!(
            oracle_pair_probability_sum(&Hypergraph::empty(1)).unwrap(),
            ratio(4, 1)
        );
        assert_eq!(
            oracle_pair_probability_sum(&families::path(1)).unwrap(),
            ratio(5, 1)
        );
        assert_eq!(
            oracle_pair_probability_sum(&families::disjoint_edges(2, 2)).unwrap(),
            ratio(25, 1)
        );
    }

    #[test]
    fn pair_sum_matches_second_moment() {
        let graphs = vec![
            families::path(1),
            families::path(2),
            families::disjoint_edges(2, 2),
            families::cycle(3).unwrap(),
            canonicalize(vec![vec![0, 1, 2], vec![2, 3]], 4).unwrap(),
        ];
        for g in graphs {
            let (m1, m2) = solution_moments_brute(&g, 1 << 20).unwrap();
            assert_eq!(m1, pow2(g.n() as i64 - g.m() as i64), "{g}");
            assert_eq!(m2, oracle_pair_probability_sum(&g).unwrap(), "{g}");
        }
    }

    #[test]
    fn flip_involution_preserves_solvability() {
        let g = canonicalize(vec![vec![0, 1, 2], vec![1, 3], vec![0, 3]], 4).unwrap();
        let mut rng = RandomSource::new(11);
        for _ in 0..200 {
            let sys = random_system(&g, &mut rng);
            for v in 0..4 {
                let f = sys.flip_vertex(v);
                assert_eq!(
                    crate::sweep::is_consistent(&sys).unwrap(),
                    crate::sweep::is_consistent(&f).unwrap()
                );
                use crate::sweep::{solution_projection, Projection::*};
                let (a, b) = (
                    solution_projection(&sys, v).unwrap(),
                    solution_projection(&f, v).unwrap(),
                );
                let swapped = match a {
                    Forced0 => Forced1,
                    Forced1 => Forced0,
                    x => x,
                };
                assert_eq!(b, swapped);
            }
        }
    }
}
