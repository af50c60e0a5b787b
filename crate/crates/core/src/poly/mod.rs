//! Partitions, partition-indexed polynomials, and the `W`/`U` family.

mod enumerate;
mod graph;
mod partition;
mod polynomial;

pub use enumerate::{
    u_coefficient, u_f_polynomial, u_k_polynomial, u_polynomial, weighted_u_f_polynomial,
    weighted_u_k_polynomial,
};
pub use graph::{lambda_of, rank, w_polynomial, WeightedGraph};
pub use partition::Partition;
pub use polynomial::{poly_diff, Coeff, PartitionPolynomial, TermDiff};

use thiserror::Error;

use crate::tree::{EdgeId, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("{edges} edges exceed the enumeration budget of {budget}")]
    BudgetExceeded { edges: usize, budget: usize },
    #[error("invalid edge id {0}")]
    InvalidEdge(EdgeId),
    #[error("edge ({0}, {1}) references a vertex outside the graph")]
    VertexOutOfRange(Vertex, Vertex),
    #[error("weight vector has {got} entries for {expected} vertices")]
    WeightCount { expected: usize, got: usize },
    #[error("vertex weights must be positive")]
    ZeroWeight,
    #[error("total weight does not fit in 32 bits")]
    WeightOverflow,
    #[error("partitions have positive parts only")]
    ZeroPart,
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

/// Upper bound on the number of edges whose full power set may be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_edges: usize,
}

impl Budget {
    pub const DEFAULT_MAX_EDGES: usize = 30;
    pub const ENV_VAR: &'static str = "UTREE_BUDGET";

    pub fn new(max_edges: usize) -> Self {
        Budget { max_edges }
    }

    /// Reads `UTREE_BUDGET`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget::new)
            .unwrap_or_default()
    }

    pub fn check(&self, edges: usize) -> Result<(), PolyError> {
        if edges > self.max_edges {
            Err(PolyError::BudgetExceeded {
                edges,
                budget: self.max_edges,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_MAX_EDGES)
    }
}
