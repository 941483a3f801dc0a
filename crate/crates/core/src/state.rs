use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{int, serde_rational, Rational};

/// Probabilities that a designated variable is forced to 0 in every solution
/// (`p0`, equal to the forced-to-1 probability by symmetry) and that it takes
/// both values across solutions (`p01`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexState {
    #[serde(with = "serde_rational")]
    pub p0: Rational,
    #[serde(with = "serde_rational")]
    pub p01: Rational,
}

impl VertexState {
    pub fn new(p0: Rational, p01: Rational) -> Self {
        VertexState { p0, p01 }
    }

    /// State of a vertex in the empty system: nothing forced, both values free.
    pub fn neutral() -> Self {
        VertexState {
            p0: Rational::zero(),
            p01: Rational::one(),
        }
    }

    /// Consistency probability of the system carrying this state: `2·p0 + p01`.
    pub fn q(&self) -> Rational {
        int(2) * &self.p0 + &self.p01
    }
}
