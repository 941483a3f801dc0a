//! DIMACS CNF export of equation systems, and import of CNF back into
//! equation form (one equation per clause).

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::canonicalize;
use crate::system::{full_mask, SystemInstance};

/// A CNF formula over variables `1..=num_vars`; literals are signed DIMACS ints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

/// One clause per (edge, non-root local assignment); the clause is falsified
/// by exactly that local assignment.
pub fn to_cnf(sys: &SystemInstance) -> Cnf {
    let mut clauses = Vec::new();
    for (e, t) in sys.graph().edges().iter().zip(sys.tables()) {
        for a in 0..1usize << e.len() {
            if t.is_root(a) {
                continue;
            }
            let clause = e
                .iter()
                .enumerate()
                .map(|(j, &v)| {
                    let lit = v as i64 + 1;
                    if (a >> j) & 1 == 1 {
                        -lit
                    } else {
                        lit
                    }
                })
                .collect();
            clauses.push(clause);
        }
    }
    Cnf {
        num_vars: sys.graph().n(),
        clauses,
    }
}

impl Cnf {
    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{l} ");
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Cnf> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::Parse(format!("bad problem line `{line}`")));
                }
                let nv = parts[2]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable count in `{line}`")))?;
                let nc = parts[3]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad clause count in `{line}`")))?;
                header = Some((nv, nc));
                continue;
            }
            let (nv, _) =
                header.ok_or_else(|| Error::Parse("clause before `p cnf` line".into()))?;
            for tok in line.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad literal `{tok}`")))?;
                if lit == 0 {
                    clauses.push(std::mem::take(&mut cur));
                } else {
                    if lit.unsigned_abs() as usize > nv {
                        return Err(Error::Parse(format!(
                            "literal {lit} exceeds {nv} variables"
                        )));
                    }
                    cur.push(lit);
                }
            }
        }
        if !cur.is_empty() {
            clauses.push(cur);
        }
        let (num_vars, nc) = header.ok_or_else(|| Error::Parse("missing `p cnf` line".into()))?;
        if nc != clauses.len() {
            return Err(Error::Parse(format!(
                "header declares {nc} clauses, found {}",
                clauses.len()
            )));
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Each clause becomes an equation on its distinct variables whose roots
    /// are the satisfying local assignments.
    pub fn to_system(&self) -> Result<SystemInstance> {
        let mut edges = Vec::with_capacity(self.clauses.len());
        let mut masks = Vec::with_capacity(self.clauses.len());
        for (i, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Parse(format!("clause {i} is empty")));
            }
            let mut vars: Vec<usize> = c.iter().map(|l| l.unsigned_abs() as usize - 1).collect();
            vars.sort_unstable();
            vars.dedup();
            let k = vars.len();
            if k > crate::hypergraph::MAX_ARITY {
                return Err(Error::ArityTooLarge {
                    edge: i,
                    arity: k,
                    max: crate::hypergraph::MAX_ARITY,
                });
            }
            let mut mask = 0u64;
            for a in 0..1usize << k {
                let sat = c.iter().any(|&l| {
                    let j = vars
                        .binary_search(&(l.unsigned_abs() as usize - 1))
                        .unwrap();
                    let val = (a >> j) & 1 == 1;
                    val == (l > 0)
                });
                if sat {
                    mask |= 1 << a;
                }
            }
            debug_assert!(mask & !full_mask(k) == 0);
            edges.push(vars);
            masks.push(mask);
        }
        SystemInstance::new(canonicalize(edges, self.num_vars)?, masks)
    }
}

pub fn dimacs_export(sys: &SystemInstance) -> String {
    to_cnf(sys).to_dimacs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::families;

    fn brute_cnf_sat(cnf: &Cnf) -> bool {
        (0..1u64 << cnf.num_vars).any(|g| {
            cnf.clauses.iter().all(|c| {
                c.iter().any(|&l| {
                    let v = ((g >> (l.unsigned_abs() - 1)) & 1) == 1;
                    v == (l > 0)
                })
            })
        })
    }

    #[test]
    fn tautology_has_no_clauses() {
        let sys = SystemInstance::new(families::path(1), vec![0xF]).unwrap();
        assert_eq!(dimacs_export(&sys), "p cnf 2 0\n");
    }

    #[test]
    fn empty_table_gives_four_unsat_clauses() {
        let sys = SystemInstance::new(families::path(1), vec![0]).unwrap();
        let cnf = to_cnf(&sys);
        assert_eq!(cnf.clauses.len(), 4);
        assert!(cnf.clauses.iter().all(|c| c.len() == 2));
        assert!(!brute_cnf_sat(&cnf));
    }

    #[test]
    fn clause_falsified_by_exactly_its_assignment() {
        // edge {0,2}, only non-root is a = 0b01 (x0=1, x2=0) -> clause (-1 v 3)
        let g = canonicalize(vec![vec![0, 2]], 3).unwrap();
        let sys = SystemInstance::new(g, vec![0b1101]).unwrap();
        assert_eq!(to_cnf(&sys).clauses, vec![vec![-1, 3]]);
    }

    #[test]
    fn parse_round_trip_and_back_to_system() {
        let sys = SystemInstance::new(families::path(2), vec![0b0110, 0b1001]).unwrap();
        let text = dimacs_export(&sys);
        let cnf = Cnf::parse(&text).unwrap();
        assert_eq!(cnf, to_cnf(&sys));
        let back = cnf.to_system().unwrap();
        for g in 0..8u64 {
            assert_eq!(back.satisfied_by(g), sys.satisfied_by(g));
        }
    }

    #[test]
    fn parse_errors() {
        assert!(Cnf::parse("1 2 0\n").is_err());
        assert!(Cnf::parse("p cnf 2 2\n1 2 0\n").is_err());
        assert!(Cnf::parse("p cnf 2 1\n1 3 0\n").is_err());
        assert!(Cnf::parse("c comment\np cnf 2 1\n1 -2\n0\n").is_ok());
    }
}
