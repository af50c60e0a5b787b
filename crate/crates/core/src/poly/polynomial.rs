use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Partition, PolyError};

/// Exact coefficient type. Accumulation is overflow-checked and panics on overflow.
pub type Coeff = i128;

/// Sparse polynomial in the `x_i` and `(y − 1)`, keyed by `(λ, ypow)`.
///
/// Zero coefficients are never stored, and iteration follows the canonical
/// order: partitions lexicographically, then the `(y − 1)` exponent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionPolynomial {
    terms: BTreeMap<(Partition, u32), Coeff>,
}

/// One term on which two polynomials disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermDiff {
    pub partition: Partition,
    pub ypow: u32,
    pub left: Coeff,
    pub right: Coeff,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    partition: Partition,
    ypow: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    terms: Vec<TermJson>,
}

impl PartitionPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, partition: Partition, ypow: u32, coeff: Coeff) {
        if coeff == 0 {
            return;
        }
        let key = (partition, ypow);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot = slot.checked_add(coeff).expect("coefficient overflow");
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    /// Coefficient of `x_λ` with no `(y − 1)` factor.
    pub fn coefficient(&self, partition: &Partition) -> Coeff {
        self.graded_coefficient(partition, 0)
    }

    pub fn graded_coefficient(&self, partition: &Partition, ypow: u32) -> Coeff {
        // BTreeMap lookups need an owned key of the tuple type.
        self.terms
            .get(&(partition.clone(), ypow))
            .copied()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, u32, Coeff)> {
        self.terms.iter().map(|((p, y), &c)| (p, *y, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> Coeff {
        self.terms.values().fold(0, |acc: Coeff, &c| {
            acc.checked_add(c).expect("coefficient overflow")
        })
    }

    pub fn max_ypow(&self) -> u32 {
        self.terms.keys().map(|(_, y)| *y).max().unwrap_or(0)
    }

    /// Keeps only the terms whose partition has at most `max_parts` parts.
    ///
    /// For a tree, removing `j` edges leaves `j + 1` parts, so this turns
    /// `U_k` into `U_m` for any `m ≤ k`.
    pub fn truncate_parts(&self, max_parts: usize) -> Self {
        PartitionPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|((p, _), _)| p.len() <= max_parts)
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
        }
    }

    /// Substitutes `x_i ↦ x(i)` and `y ↦ y`. `None` on overflow.
    pub fn evaluate(&self, x: impl Fn(u32) -> Coeff, y: Coeff) -> Option<Coeff> {
        let mut total: Coeff = 0;
        for ((p, ypow), &c) in &self.terms {
            let mut term = c;
            for &part in p.parts() {
                term = term.checked_mul(x(part))?;
            }
            term = term.checked_mul((y - 1).checked_pow(*ypow)?)?;
            total = total.checked_add(term)?;
        }
        Some(total)
    }

    pub fn to_json(&self) -> String {
        let doc = PolyJson {
            terms: self
                .terms
                .iter()
                .map(|((p, y), c)| TermJson {
                    partition: p.clone(),
                    ypow: *y,
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&doc).expect("polynomial serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, PolyError> {
        let doc: PolyJson =
            serde_json::from_str(text).map_err(|e| PolyError::Json(e.to_string()))?;
        let mut poly = PartitionPolynomial::new();
        for t in doc.terms {
            let c: Coeff = t
                .coeff
                .parse()
                .map_err(|_| PolyError::Json(format!("bad coefficient {:?}", t.coeff)))?;
            poly.add_term(t.partition, t.ypow, c);
        }
        Ok(poly)
    }

    /// SHA-256 of the canonical JSON serialisation, hex encoded.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

impl FromIterator<(Partition, u32, Coeff)> for PartitionPolynomial {
    fn from_iter<I: IntoIterator<Item = (Partition, u32, Coeff)>>(iter: I) -> Self {
        let mut poly = PartitionPolynomial::new();
        for (p, y, c) in iter {
            poly.add_term(p, y, c);
        }
        poly
    }
}

/// Terms where `left` and `right` differ, in canonical order.
pub fn poly_diff(left: &PartitionPolynomial, right: &PartitionPolynomial) -> Vec<TermDiff> {
    let mut keys: Vec<&(Partition, u32)> = left.terms.keys().chain(right.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|key| {
            let l = left.terms.get(key).copied().unwrap_or(0);
            let r = right.terms.get(key).copied().unwrap_or(0);
            (l != r).then(|| TermDiff {
                partition: key.0.clone(),
                ypow: key.1,
                left: l,
                right: r,
            })
        })
        .collect()
}
