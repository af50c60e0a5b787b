use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CensusError;
use crate::poly::PartitionPolynomial;
use crate::tree::{edge_labels, Tree};

/// Multiset of edge labels `M_T`, as label → multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LabelMultiset(BTreeMap<u32, u64>);

impl LabelMultiset {
    pub fn from_labels(labels: impl IntoIterator<Item = u32>) -> Self {
        let mut m = BTreeMap::new();
        for l in labels {
            *m.entry(l).or_insert(0) += 1;
        }
        LabelMultiset(m)
    }

    pub fn count(&self, label: u32) -> u64 {
        self.0.get(&label).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn max_label(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.0.iter().map(|(&l, &c)| (l, c))
    }
}

pub fn label_multiset(tree: &Tree) -> LabelMultiset {
    LabelMultiset::from_labels(edge_labels(tree))
}

/// Reads `M_T` off `U_1(T)`: each single-edge removal contributes `x_{N−θ} x_θ`.
pub fn label_multiset_from_u1(u1: &PartitionPolynomial, n: u64) -> Result<LabelMultiset, CensusError> {
    let mut whole = false;
    let mut m = BTreeMap::new();
    for (p, ypow, c) in u1.terms() {
        if ypow != 0 || p.size() != n || c < 0 {
            return Err(CensusError::MalformedU1(format!("unexpected term {c}·{p}")));
        }
        match p.parts() {
            [_] if c == 1 => whole = true,
            [_, small] => *m.entry(*small).or_insert(0) += c as u64,
            _ => return Err(CensusError::MalformedU1(format!("unexpected term {c}·{p}"))),
        }
    }
    if !whole {
        return Err(CensusError::MalformedU1(format!("missing x_{n}")));
    }
    Ok(LabelMultiset(m))
}

/// `(α, n, β)` of a PTE tree, with `β = Σ p_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PteSignature {
    pub alpha: u32,
    pub n: u64,
    pub beta: u64,
}

/// Decides from `U_1` alone whether the tree is a PTE tree `T_α(p)`.
///
/// The labels must be exactly `{1^{2nα−β}, 2^β, 3^{nα}, (3α+1)^n}` with
/// `N = (3α+1)n + 1`, `n ≥ 2`, `α ≥ 1`, and no label `N/2`.
pub fn signature_from_u1(u1: &PartitionPolynomial, n_vertices: u64) -> Result<Option<PteSignature>, CensusError> {
    let m = label_multiset_from_u1(u1, n_vertices)?;
    if n_vertices.is_multiple_of(2) && m.count((n_vertices / 2) as u32) > 0 {
        return Ok(None);
    }
    let Some(top) = m.max_label() else {
        return Ok(None);
    };
    if top < 4 || (top - 1) % 3 != 0 {
        return Ok(None);
    }
    let alpha = (top - 1) / 3;
    let n = m.count(top);
    let a = alpha as u64;
    if n < 2 || n_vertices != (3 * a + 1) * n + 1 {
        return Ok(None);
    }
    if m.iter().any(|(l, _)| !matches!(l, 1..=3) && l != top) {
        return Ok(None);
    }
    let beta = m.count(2);
    if m.count(3) != n * a || beta > n * a || m.count(1) != 2 * n * a - beta {
        return Ok(None);
    }
    Ok(Some(PteSignature { alpha, n, beta }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{u_k_polynomial, Partition};
    use crate::tree::{build_pte_tree, PteShape};

    #[test]
    fn m_t_of_small_trees() {
        let m = label_multiset(&Tree::path(4).unwrap());
        assert_eq!(m, LabelMultiset::from_labels([1, 2, 1]));
        let t = build_pte_tree(&PteShape::new(2, vec![1, 1]).unwrap());
        let m = label_multiset(&t);
        assert_eq!((m.count(1), m.count(2), m.count(3), m.count(7)), (6, 2, 4, 2));
        let u1 = u_k_polynomial(&t, 1);
        assert_eq!(label_multiset_from_u1(&u1, 15).unwrap(), m);
    }

    #[test]
    fn signatures() {
        let t = build_pte_tree(&PteShape::new(2, vec![1, 1]).unwrap());
        assert_eq!(
            signature_from_u1(&u_k_polynomial(&t, 1), 15).unwrap(),
            Some(PteSignature { alpha: 2, n: 2, beta: 2 })
        );
        let t = build_pte_tree(&PteShape::new(6, vec![1, 2, 6]).unwrap());
        assert_eq!(
            signature_from_u1(&u_k_polynomial(&t, 1), 58).unwrap(),
            Some(PteSignature { alpha: 6, n: 3, beta: 9 })
        );
        let p15 = Tree::path(15).unwrap();
        assert_eq!(signature_from_u1(&u_k_polynomial(&p15, 1), 15).unwrap(), None);
    }

    #[test]
    fn malformed_u1() {
        let mut u = PartitionPolynomial::new();
        u.add_term(Partition::new([2, 1]).unwrap(), 0, 2);
        assert!(matches!(signature_from_u1(&u, 3), Err(CensusError::MalformedU1(_))));
        u.add_term(Partition::new([3]).unwrap(), 0, 1);
        assert!(signature_from_u1(&u, 3).is_ok());
        u.add_term(Partition::new([1, 1, 1]).unwrap(), 0, 1);
        assert!(matches!(signature_from_u1(&u, 3), Err(CensusError::MalformedU1(_))));
    }
}
