//! Consistency probability of randomly generated sparse equation systems
//! over GF(2).
//!
//! A system `f_1(X_1) = 0, ..., f_m(X_m) = 0` is described by its hypergraph
//! of variable subsets; each `f_i` is drawn uniformly among all Boolean
//! functions of its variables. This crate computes the probability `q` that
//! such a system has a solution, exactly (by exhaustion or tree DP), by
//! closed formulas and bounds, and by seeded Monte Carlo.

pub mod backtrack;
pub mod cli;
pub mod closed_forms;
pub mod dimacs;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod monte_carlo;
pub mod oracle;
pub mod rational;
pub mod state;
pub mod sweep;
pub mod system;
pub mod tree_dp;

pub use error::{Error, Result};
pub use hypergraph::{canonicalize, families, Hypergraph};
pub use rational::Rational;
pub use state::VertexState;
pub use system::{random_system, EquationTable, RandomSource, SystemInstance};
