//! Closed formulas, recurrences and bounds for `q` and `p`.
//!
//! Everything that has a rational value is computed exactly; the irrational
//! root-based expressions are available as `f64` for display.

mod bounds;
mod sequences;
mod tripartite;

pub use bounds::*;
pub use sequences::*;
pub use tripartite::*;
