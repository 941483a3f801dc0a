use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::oracle::{subset_union_histogram, union_sum};
use crate::rational::{
    from_biguint, int, pow2, powi, serde_rational, single_consistency, to_f64, Rational,
};

/// Exact `p` for two equations with `|X1 \ X2| = d1`, `|X2 \ X1| = d2` and
/// `|X1 ∩ X2| = c`: `(1 - (1 - 2^{-2^{d1}})(1 - 2^{-2^{d2}}))^{2^c}`.
pub fn m2_inconsistency(d1: u32, d2: u32, c: u32) -> Result<Rational> {
    if d1 + c == 0 || d2 + c == 0 {
        return Err(Error::InvalidArgument(
            "both edges must be non-empty".into(),
        ));
    }
    if c > 20 || d1 > 20 || d2 > 20 {
        return Err(Error::cap(
            "m2 profile",
            format!("({d1},{d2},{c})"),
            "each <= 20",
        ));
    }
    let fail_given_fixed = Rational::one() - single_consistency(d1) * single_consistency(d2);
    Ok(powi(&fail_given_fixed, 1u64 << c))
}

/// `(d1, d2, c)` of a two-edge hypergraph.
pub fn m2_profile(graph: &Hypergraph) -> Result<(u32, u32, u32)> {
    if graph.m() != 2 {
        return Err(Error::InvalidArgument(format!(
            "expected 2 edges, got {}",
            graph.m()
        )));
    }
    let (x, y) = (graph.edge(0), graph.edge(1));
    let c = x.iter().filter(|v| y.contains(v)).count() as u32;
    Ok((x.len() as u32 - c, y.len() as u32 - c, c))
}

/// Lower bound `p >= 1 - prod_i (1 - 2^{-2^{|X_i|}})`, tight for pairwise
/// disjoint edges.
pub fn product_bound(graph: &Hypergraph) -> Rational {
    let prod = graph
        .edges()
        .iter()
        .map(|e| single_consistency(e.len() as u32))
        .fold(Rational::one(), |a, b| a * b);
    Rational::one() - prod
}

/// Two-term inclusion-exclusion bounds on `q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IeBounds {
    #[serde(with = "serde_rational")]
    pub lower: Rational,
    #[serde(with = "serde_rational")]
    pub upper: Rational,
    /// `sum_I 2^{-|union X_I|}` over all edge subsets, empty subset included.
    #[serde(with = "serde_rational")]
    pub union_sum: Rational,
}

/// `3·2^n/2^{m+1} - 2^{2n}/2^{2m+1}·U <= q <= 2^n/2^m`, `U` the subset-union sum.
pub fn ie_bounds(graph: &Hypergraph) -> Result<IeBounds> {
    let (n, m) = (graph.n() as i64, graph.m() as i64);
    let u = union_sum(&subset_union_histogram(graph, 20)?);
    let upper = pow2(n - m);
    let lower = int(3) * pow2(n - m - 1) - pow2(2 * n - 2 * m - 1) * &u;
    Ok(IeBounds {
        lower,
        upper,
        union_sum: u,
    })
}

/// Leading term and error scale for the complete `k`-uniform hypergraph on
/// `n` vertices: `q ≈ 2^n / 2^{C(n,k)}` with error of order
/// `n 2^n / 2^{C(n,k) + C(n-1,k-1)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompleteTerms {
    #[serde(with = "serde_rational")]
    pub leading: Rational,
    #[serde(with = "serde_rational")]
    pub error_scale: Rational,
}

const COMPLETE_EXPONENT_CAP: u64 = 1 << 16;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn small_binomial(n: usize, k: usize) -> Result<u64> {
    let b = binomial(n as u64, k as u64);
    u64::try_from(&b)
        .ok()
        .filter(|&x| x <= COMPLETE_EXPONENT_CAP)
        .ok_or_else(|| Error::cap("binomial exponent", b, COMPLETE_EXPONENT_CAP))
}

fn check_complete(n: usize, k: usize) -> Result<()> {
    if k < 2 || n < k {
        return Err(Error::InvalidArgument(format!(
            "need k >= 2 and n >= k, got n={n} k={k}"
        )));
    }
    Ok(())
}

pub fn complete_hypergraph_terms(n: usize, k: usize) -> Result<CompleteTerms> {
    check_complete(n, k)?;
    let cnk = small_binomial(n, k)? as i64;
    let cn1 = small_binomial(n - 1, k - 1)? as i64;
    Ok(CompleteTerms {
        leading: pow2(n as i64 - cnk),
        error_scale: int(n as i64) * pow2(n as i64 - cnk - cn1),
    })
}

/// Exact `sum over unordered distinct pairs {a,b} of Pr(a,b in S)` for the
/// complete `k`-uniform hypergraph, classifying pairs by their number of
/// agreeing coordinates: `2^n/2^{1+2C(n,k)} · sum_{t<n} C(n,t) 2^{C(t,k)}`.
pub fn complete_pair_sum(n: usize, k: usize) -> Result<Rational> {
    check_complete(n, k)?;
    let cnk = small_binomial(n, k)? as i64;
    let mut s = BigUint::zero();
    for t in 0..n {
        let ctk = small_binomial(t, k)?;
        s += binomial(n as u64, t as u64) << ctk as usize;
    }
    Ok(from_biguint(s, BigUint::one()) * pow2(n as i64 - 1 - 2 * cnk))
}

/// Expected cost `2^{|Y|} (Q1 + q1 Q2 + q1 q2 Q)` of solving a system split
/// into two parts after guessing the shared variables `Y`.
pub fn split_complexity_bound(
    ysize: u32,
    q1: &Rational,
    q2: &Rational,
    cost1: f64,
    cost2: f64,
    combine: f64,
) -> Result<f64> {
    if !crate::rational::is_probability(q1) || !crate::rational::is_probability(q2) {
        return Err(Error::InvalidArgument(
            "q1 and q2 must lie in [0, 1]".into(),
        ));
    }
    if [cost1, cost2, combine]
        .iter()
        .any(|c| !(c.is_finite() && *c >= 0.0))
    {
        return Err(Error::InvalidArgument(
            "costs must be finite and non-negative".into(),
        ));
    }
    let (q1, q2) = (to_f64(q1), to_f64(q2));
    Ok(2f64.powi(ysize as i32) * (cost1 + q1 * cost2 + q1 * q2 * combine))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::families;
    use crate::rational::ratio;

    #[test]
    fn m2_examples() {
        assert_eq!(m2_inconsistency(1, 1, 1).unwrap(), ratio(49, 256));
        assert_eq!(m2_inconsistency(2, 2, 0).unwrap(), ratio(31, 256));
        assert!(m2_inconsistency(0, 1, 0).is_err());
        assert_eq!(m2_profile(&families::path(2)).unwrap(), (1, 1, 1));
    }

    #[test]
    fn product_bound_examples() {
        assert_eq!(product_bound(&families::path(1)), ratio(1, 16));
        assert_eq!(
            product_bound(&families::disjoint_edges(2, 2)),
            ratio(31, 256)
        );
        assert_eq!(product_bound(&families::path(2)), ratio(31, 256));
        assert_eq!(product_bound(&Hypergraph::empty(2)), ratio(0, 1));
    }

    #[test]
    fn ie_examples() {
        let b = ie_bounds(&families::path(1)).unwrap();
        assert_eq!((b.lower, b.upper), (ratio(1, 2), ratio(2, 1)));
        // m = 0: (3·2^n/2 - 2^{2n}/2, 2^n)
        let b = ie_bounds(&Hypergraph::empty(3)).unwrap();
        assert_eq!((b.lower, b.upper), (ratio(12 - 32, 1), ratio(8, 1)));
    }

    #[test]
    fn complete_terms_examples() {
        let t = complete_hypergraph_terms(4, 2).unwrap();
        assert_eq!((t.leading, t.error_scale), (ratio(1, 4), ratio(1, 8)));
        assert_eq!(
            complete_hypergraph_terms(5, 2).unwrap().leading,
            ratio(1, 32)
        );
        for n in 2..6 {
            assert_eq!(
                complete_hypergraph_terms(n, n).unwrap().leading,
                pow2(n as i64 - 1)
            );
        }
        assert!(complete_hypergraph_terms(3, 1).is_err());
    }

    #[test]
    fn complete_pair_sum_matches_subset_sum() {
        for (n, k) in [(4usize, 2usize), (5, 2), (4, 3), (5, 3), (6, 3)] {
            let g = families::complete(n, k).unwrap();
            let ordered = crate::oracle::oracle_pair_probability_sum(&g).unwrap();
            let first = pow2(n as i64 - g.m() as i64);
            let unordered = (ordered - &first) / int(2);
            assert_eq!(complete_pair_sum(n, k).unwrap(), unordered, "n={n} k={k}");
        }
    }

    #[test]
    fn split_bound_examples() {
        let z = ratio(0, 1);
        let one = ratio(1, 1);
        assert_eq!(
            split_complexity_bound(3, &z, &z, 2.0, 5.0, 7.0).unwrap(),
            16.0
        );
        assert_eq!(
            split_complexity_bound(0, &one, &one, 1.0, 2.0, 3.0).unwrap(),
            6.0
        );
        let v = split_complexity_bound(2, &ratio(1, 2), &ratio(1, 4), 1.0, 1.0, 1.0).unwrap();
        assert_eq!(v, 6.5);
        assert!(split_complexity_bound(1, &ratio(3, 2), &z, 1.0, 1.0, 1.0).is_err());
    }
}
