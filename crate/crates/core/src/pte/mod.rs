//! The equal-power-sums relation `a =_k b` and ways to produce solutions.

mod search;
mod sequence;

pub use search::{multi_pte, prouhet, search_pte, SearchLimits};
pub use sequence::{affine, is_pte, power_sums, pte_degree, IntSequence, PteCertificate, PteDegree};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PteError {
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("negative entry {0}; pass allow_negative for pure sequence work")]
    Negative(i64),
    #[error("sequences are equal as multisets")]
    EqualMultisets,
    #[error("power sums already differ at exponent 1")]
    NoCommonPowerSums,
    #[error("k = {k} is out of range (1..={max})")]
    DegreeOutOfRange { k: u32, max: u32 },
    #[error("need at least {min} sequences, got {got}")]
    TooFewSequences { min: usize, got: usize },
    #[error("at most {max} sequences are supported, got {got}")]
    TooManySequences { max: usize, got: usize },
    #[error("arithmetic overflow in affine map")]
    Overflow,
    #[error("search visited more than {budget} candidate multisets; {} partial results", partial.len())]
    SearchBudgetExceeded {
        budget: u64,
        partial: Vec<PteCertificate>,
    },
    #[error("cannot parse sequence {0:?}")]
    Parse(String),
}
