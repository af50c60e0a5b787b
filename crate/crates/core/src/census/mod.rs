//! Subtree-type census of PTE trees and PTE-tree recognition.

mod labels;
mod recognize;
mod subtrees;

pub use labels::{label_multiset, label_multiset_from_u1, signature_from_u1, LabelMultiset, PteSignature};
pub use recognize::{pte_shapes, pte_shapes_with_vertices, recognize_pte_tree};
pub use subtrees::{
    binomial, branch_types, count_isomorphic_subtrees, count_subtrees_formula, count_subtrees_oracle,
    same_subtree_counts, symmetry_count, BranchType, OracleLimits, SubtreeAgreement,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("entry {value} exceeds alpha = {alpha}")]
    NotCompatible { value: u32, alpha: u32 },
    #[error("count overflowed 128 bits")]
    Overflow,
    #[error("tree is not laid out as T(p,s): {0}")]
    NotPteLayout(&'static str),
    #[error("enumeration exceeded its budget of {0} configurations")]
    BudgetExceeded(u64),
    #[error("malformed U_1 polynomial: {0}")]
    MalformedU1(String),
}
