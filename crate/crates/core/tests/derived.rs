//! Derived reference values recomputed by a naive counter written here:
//! every table tuple, every assignment, no pruning or closed-form shortcut.

use sparse_f2::closed_forms::{
    all_vars_inconsistency, cycle_q_conjecture, ie_bounds, m2_inconsistency,
    tripartite_m3_inconsistency, TripartiteProfile,
};
use sparse_f2::dimacs::to_cnf;
use sparse_f2::oracle::oracle_pair_probability_sum;
use sparse_f2::rational::{int, ratio, Rational};
use sparse_f2::sweep::is_consistent;
use sparse_f2::tree_dp::{forest_q, forest_report};
use sparse_f2::{canonicalize, families, Hypergraph, SystemInstance, VertexState};

struct Naive {
    instances: u64,
    solvable: u64,
    /// Sum over instances of the number of ordered solution pairs.
    pairs: u64,
    /// Per vertex: instances whose solutions all have x_v = 0, and those with both values.
    forced0: Vec<u64>,
    both: Vec<u64>,
}

fn satisfies(edges: &[Vec<usize>], masks: &[u64], x: u64) -> bool {
    edges.iter().zip(masks).all(|(e, &m)| {
        let local = e.iter().enumerate().fold(0usize, |acc, (j, &v)| {
            acc | ((((x >> v) & 1) as usize) << j)
        });
        (m >> local) & 1 == 1
    })
}

fn naive(g: &Hypergraph) -> Naive {
    let widths: Vec<u32> = g.edges().iter().map(|e| 1u32 << e.len()).collect();
    let total_bits: u32 = widths.iter().sum();
    assert!(total_bits <= 22, "too large for the naive counter");
    let n = g.n();
    let mut out = Naive {
        instances: 0,
        solvable: 0,
        pairs: 0,
        forced0: vec![0; n],
        both: vec![0; n],
    };
    for code in 0u64..1 << total_bits {
        let mut masks = Vec::with_capacity(widths.len());
        let mut shift = 0;
        for &w in &widths {
            masks.push((code >> shift) & ((1 << w) - 1));
            shift += w;
        }
        let sols: Vec<u64> = (0..1u64 << n)
            .filter(|&x| satisfies(g.edges(), &masks, x))
            .collect();
        out.instances += 1;
        out.pairs += (sols.len() * sols.len()) as u64;
        if !sols.is_empty() {
            out.solvable += 1;
            for v in 0..n {
                let ones = sols.iter().filter(|&&x| (x >> v) & 1 == 1).count();
                if ones == 0 {
                    out.forced0[v] += 1;
                } else if ones < sols.len() {
                    out.both[v] += 1;
                }
            }
        }
    }
    out
}

fn q_of(g: &Hypergraph) -> Rational {
    let c = naive(g);
    ratio(c.solvable as i64, c.instances as i64)
}

fn graph(edges: Vec<Vec<usize>>, n: usize) -> Hypergraph {
    canonicalize(edges, n).unwrap()
}

#[test]
fn cycle_values() {
    let c3 = q_of(&families::cycle(3).unwrap());
    assert_eq!(c3, ratio(2397, 4096));
    assert_eq!(cycle_q_conjecture(3).unwrap(), c3);
    let c4 = q_of(&families::cycle(4).unwrap());
    assert_eq!(c4, ratio(32377, 65536));
    assert_eq!(cycle_q_conjecture(4).unwrap(), c4);
}

#[test]
fn two_equation_profile() {
    let g = graph(vec![vec![0, 1], vec![1, 2, 3]], 4);
    assert_eq!(m2_inconsistency(1, 2, 1).unwrap(), int(1) - q_of(&g));
}

#[test]
fn all_variable_equations() {
    let g = graph(vec![vec![0, 1], vec![0, 1]], 2);
    assert_eq!(all_vars_inconsistency(2, 2).unwrap(), int(1) - q_of(&g));
    let g = graph(vec![vec![0]], 1);
    assert_eq!(all_vars_inconsistency(1, 1).unwrap(), int(1) - q_of(&g));
}

#[test]
fn triangle_reduction() {
    let singletons = graph(vec![vec![0], vec![1], vec![2]], 3);
    let p = int(1) - q_of(&singletons);
    assert_eq!(p, ratio(37, 64));
    let profile = TripartiteProfile::from_graph(&singletons).unwrap();
    assert_eq!(tripartite_m3_inconsistency(&profile).unwrap(), p);
    let star = families::star(3);
    let p_star = int(1) - q_of(&star);
    assert_eq!(p_star, &p * &p);
    assert_eq!(
        tripartite_m3_inconsistency(&TripartiteProfile::from_graph(&star).unwrap()).unwrap(),
        p_star
    );
}

#[test]
fn pair_sums() {
    for (g, want) in [
        (families::disjoint_edges(1, 2), 5),
        (families::disjoint_edges(2, 2), 25),
        (families::path(2), 0),
    ] {
        let c = naive(&g);
        let brute = ratio(c.pairs as i64, c.instances as i64);
        if want > 0 {
            assert_eq!(brute, int(want));
        }
        assert_eq!(oracle_pair_probability_sum(&g).unwrap(), brute);
    }
    assert_eq!(
        oracle_pair_probability_sum(&Hypergraph::empty(1)).unwrap(),
        int(4)
    );
}

#[test]
fn single_edge_bounds() {
    let g = families::disjoint_edges(1, 2);
    let ie = ie_bounds(&g).unwrap();
    assert_eq!((ie.lower.clone(), ie.upper.clone()), (ratio(1, 2), int(2)));
    let q = q_of(&g);
    assert_eq!(q, ratio(15, 16));
    assert!(ie.lower <= q && q <= ie.upper);
}

#[test]
fn forests() {
    let chair = graph(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![1, 4]], 5);
    assert_eq!(forest_q(&chair).unwrap(), q_of(&chair));
    let split = families::path(2).disjoint_union(&families::path(1));
    assert_eq!(q_of(&split), ratio(207 * 15, 256 * 16));
    assert_eq!(forest_q(&split).unwrap(), q_of(&split));
}

#[test]
fn endpoint_state() {
    let g = families::path(2);
    let c = naive(&g);
    let t = c.instances as i64;
    let want = VertexState::new(ratio(c.forced0[2] as i64, t), ratio(c.both[2] as i64, t));
    assert_eq!(want, VertexState::new(ratio(51, 256), ratio(105, 256)));
    assert_eq!(forest_report(&g).unwrap().vertex_states[2], Some(want));
}

#[test]
fn contradictory_path() {
    // x0 = 0, x1 = 1 on edge {0,1}: local index 0b10 only
    // x1 = 0, x2 = 0 on edge {1,2}: local index 0 only
    let sys = SystemInstance::new(families::path(2), vec![1 << 0b10, 1]).unwrap();
    assert!(!(0..8).any(|x| satisfies(sys.graph().edges(), &sys.masks(), x)));
    assert!(!is_consistent(&sys).unwrap());
}

#[test]
fn empty_table_cnf() {
    let sys = SystemInstance::new(families::path(1), vec![0]).unwrap();
    let cnf = to_cnf(&sys);
    assert_eq!(cnf.clauses.len(), 4);
    let sat = (0..4u32).any(|x| {
        cnf.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let v = (lit.unsigned_abs() - 1) as u32;
                let val = (x >> v) & 1 == 1;
                if lit > 0 {
                    val
                } else {
                    !val
                }
            })
        })
    });
    assert!(!sat);
}
