//! Exact tree invariants for the Prouhet–Tarry–Escott construction.
//!
//! The crate is split into four layers:
//!
//! * [`tree`]: the tree data model, the `B(p,s)`, `T(p,s)` and `T_α(p)`
//!   builders, centroid and edge-label machinery, contraction, and AHU
//!   canonical forms.
//! * [`poly`]: partitions, sparse partition-indexed polynomials, and exact
//!   computation of the `W`, `U`, `U_k` and `U_F` polynomials by subset
//!   enumeration.
//! * [`pte`]: the equal-power-sums relation `a =_k b`, affine maps, the
//!   Thue–Morse construction and an exhaustive bounded search.
//! * [`census`]: subtree-type counting (closed form and enumeration oracle)
//!   and recognition of PTE trees from their edge labels or `U_1`.

pub mod census;
pub mod poly;
pub mod pte;
pub mod tree;

pub use census::{
    count_subtrees_formula, count_subtrees_oracle, label_multiset, recognize_pte_tree,
    same_subtree_counts, signature_from_u1, symmetry_count, BranchType, CensusError,
    LabelMultiset, PteSignature, SubtreeAgreement,
};
pub use poly::{
    lambda_of, poly_diff, rank, u_f_polynomial, u_k_polynomial, u_polynomial, w_polynomial,
    Budget, Coeff, Partition, PartitionPolynomial, PolyError, TermDiff, WeightedGraph,
};
pub use pte::{
    affine, is_pte, multi_pte, power_sums, prouhet, pte_degree, search_pte, IntSequence,
    PteCertificate, PteDegree, PteError,
};
pub use tree::{
    branch_weight, build_b_tree, build_pte_tree, build_t_tree, canonical_form, centroid,
    contract_to, edge_labels, edges_repel, CanonicalCode, EdgeId, PteShape, Tree, TreeError,
    Vertex, WeightedTree,
};
