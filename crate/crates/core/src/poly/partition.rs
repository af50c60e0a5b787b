use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::PolyError;

pub(crate) type Parts = SmallVec<[u32; 8]>;

/// An integer partition, parts weakly decreasing. Indexes the monomial `x_λ`.
///
/// Ordering is lexicographic on the parts, which is the canonical term order
/// of [`PartitionPolynomial`](super::PartitionPolynomial).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub(crate) Parts);

impl Partition {
    /// Sorts `parts` into weakly decreasing order; zero parts are rejected.
    pub fn new(parts: impl IntoIterator<Item = u32>) -> Result<Self, PolyError> {
        let mut parts: Parts = parts.into_iter().collect();
        if parts.contains(&0) {
            return Err(PolyError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub(crate) fn from_sorted(parts: Parts) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Multiplicity of the part `value`.
    pub fn multiplicity(&self, value: u32) -> usize {
        self.0.iter().filter(|&&p| p == value).count()
    }
}

impl fmt::Display for Partition {
    /// Monomial notation, e.g. `x8 x3 x2^2`; the empty partition prints `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == v {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}
