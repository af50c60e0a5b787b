use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::PteError;

/// A multiset of integers, stored weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntSequence(Vec<i64>);

impl IntSequence {
    /// Nonnegative entries only.
    pub fn new(entries: Vec<i64>) -> Result<Self, PteError> {
        if let Some(&x) = entries.iter().find(|&&x| x < 0) {
            return Err(PteError::Negative(x));
        }
        Ok(Self::new_signed(entries))
    }

    pub fn new_signed(mut entries: Vec<i64>) -> Self {
        entries.sort_unstable_by(|a, b| b.cmp(a));
        IntSequence(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn smallest(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn largest(&self) -> Option<i64> {
        self.0.first().copied()
    }

    /// Entries as `u32`, for building trees. `None` if any entry is negative or too large.
    pub fn to_u32(&self) -> Option<Vec<u32>> {
        self.0.iter().map(|&x| u32::try_from(x).ok()).collect()
    }

    /// Multiset union.
    pub fn concat(&self, other: &IntSequence) -> IntSequence {
        IntSequence::new_signed(self.0.iter().chain(&other.0).copied().collect())
    }

    pub(crate) fn translate(&self, shift: i64) -> IntSequence {
        IntSequence(self.0.iter().map(|&x| x + shift).collect())
    }
}

impl fmt::Display for IntSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IntSequence {
    type Err = PteError;

    /// Comma-separated integers, e.g. `1,2,3,6`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .split(',')
            .map(|t| t.trim())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| PteError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        IntSequence::new(entries)
    }
}

impl Serialize for IntSequence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// `(Σ s_i, Σ s_i², …, Σ s_i^k)`, exact.
pub fn power_sums(s: &IntSequence, k: u32) -> Vec<BigInt> {
    let mut sums = vec![BigInt::from(0); k as usize];
    for &x in s.entries() {
        let x = BigInt::from(x);
        let mut pow = x.clone();
        for sum in sums.iter_mut() {
            *sum += &pow;
            pow *= &x;
        }
    }
    sums
}

fn check_lengths(a: &IntSequence, b: &IntSequence) -> Result<(), PteError> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(PteError::LengthMismatch(a.len(), b.len()))
    }
}

/// `a =_k b`: distinct multisets with equal power sums for exponents `1..=k`.
pub fn is_pte(a: &IntSequence, b: &IntSequence, k: u32) -> Result<bool, PteError> {
    check_lengths(a, b)?;
    Ok(a != b && power_sums(a, k) == power_sums(b, k))
}

/// Result of [`pte_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PteDegree {
    /// Largest `k` with `a =_k b`; `0` when even the plain sums differ.
    Exact(u32),
    EqualMultisets,
}

pub fn pte_degree(a: &IntSequence, b: &IntSequence) -> Result<PteDegree, PteError> {
    check_lengths(a, b)?;
    if a == b {
        return Ok(PteDegree::EqualMultisets);
    }
    // Distinct multisets of size n cannot agree on the first n power sums.
    let bound = a.len() as u32;
    let (pa, pb) = (power_sums(a, bound), power_sums(b, bound));
    let k = pa.iter().zip(&pb).take_while(|(x, y)| x == y).count() as u32;
    Ok(PteDegree::Exact(k))
}

/// `scale · s + shift`, entrywise.
pub fn affine(
    s: &IntSequence,
    scale: i64,
    shift: i64,
    allow_negative: bool,
) -> Result<IntSequence, PteError> {
    let entries = s
        .entries()
        .iter()
        .map(|&x| {
            x.checked_mul(scale)
                .and_then(|v| v.checked_add(shift))
                .ok_or(PteError::Overflow)
        })
        .collect::<Result<Vec<_>, _>>()?;
    if allow_negative {
        Ok(IntSequence::new_signed(entries))
    } else {
        IntSequence::new(entries)
    }
}

/// A verified pair `a =_k b` with its exact degree `k ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PteCertificate {
    a: IntSequence,
    b: IntSequence,
    degree: u32,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    a: &'a IntSequence,
    b: &'a IntSequence,
    degree: u32,
    verified: bool,
}

impl PteCertificate {
    /// Measures the exact degree; fails unless the pair is a solution of degree ≥ 1.
    pub fn new(a: IntSequence, b: IntSequence) -> Result<Self, PteError> {
        match pte_degree(&a, &b)? {
            PteDegree::EqualMultisets => Err(PteError::EqualMultisets),
            PteDegree::Exact(0) => Err(PteError::NoCommonPowerSums),
            PteDegree::Exact(degree) => Ok(PteCertificate { a, b, degree }),
        }
    }

    pub fn a(&self) -> &IntSequence {
        &self.a
    }

    pub fn b(&self) -> &IntSequence {
        &self.b
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    /// Translates so the smallest entry of `a ∪ b` is 0, and orders the pair so `a < b`.
    pub fn normalized(&self) -> PteCertificate {
        let low = self.a.smallest().into_iter().chain(self.b.smallest()).min().unwrap_or(0);
        let (a, b) = (self.a.translate(-low), self.b.translate(-low));
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        PteCertificate {
            a,
            b,
            degree: self.degree,
        }
    }

    /// Re-checks the stored degree from scratch.
    pub fn verify(&self) -> bool {
        pte_degree(&self.a, &self.b) == Ok(PteDegree::Exact(self.degree)) && self.degree >= 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CertificateJson {
            a: &self.a,
            b: &self.b,
            degree: self.degree,
            verified: self.verify(),
        })
        .expect("certificate serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> IntSequence {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn power_sum_examples() {
        assert_eq!(power_sums(&seq("1,2,3,6"), 2), ints(&[12, 50]));
        assert_eq!(power_sums(&seq("0,3,4,5"), 2), ints(&[12, 50]));
        assert_eq!(power_sums(&IntSequence::new(vec![]).unwrap(), 3), ints(&[0, 0, 0]));
    }

    #[test]
    fn euler_goldbach_and_smallest_pair() {
        assert_eq!(is_pte(&seq("1,2,3,6"), &seq("0,3,4,5"), 2), Ok(true));
        assert_eq!(is_pte(&seq("1,1"), &seq("2,0"), 1), Ok(true));
        assert_eq!(is_pte(&seq("1,1"), &seq("2,0"), 2), Ok(false));
        for k in 1..5 {
            assert_eq!(is_pte(&seq("4,1,1"), &seq("1,4,1"), k), Ok(false));
        }
        assert_eq!(
            is_pte(&seq("1,2"), &seq("1"), 1),
            Err(PteError::LengthMismatch(2, 1))
        );
    }

    #[test]
    fn degrees() {
        assert_eq!(pte_degree(&seq("1,2,3,6"), &seq("0,3,4,5")), Ok(PteDegree::Exact(2)));
        assert_eq!(pte_degree(&seq("1,1"), &seq("2,0")), Ok(PteDegree::Exact(1)));
        assert_eq!(pte_degree(&seq("3,1"), &seq("1,3")), Ok(PteDegree::EqualMultisets));
        assert_eq!(pte_degree(&seq("3,1"), &seq("1,2")), Ok(PteDegree::Exact(0)));
    }

    #[test]
    fn affine_examples() {
        let a = seq("1,2,3,6");
        assert_eq!(affine(&a, 1, 1, false).unwrap(), seq("7,4,3,2"));
        let left = affine(&a, -1, 6, false).unwrap();
        let right = affine(&seq("0,3,4,5"), -1, 6, false).unwrap();
        assert_eq!(left, seq("5,4,3,0"));
        assert_eq!(right, seq("6,3,2,1"));
        assert_eq!(is_pte(&left, &right, 2), Ok(true));
        let c = affine(&a, 0, 2, false).unwrap();
        assert_eq!(c, affine(&seq("0,3,4,5"), 0, 2, false).unwrap());
        assert_eq!(affine(&a, -1, 0, false), Err(PteError::Negative(-6)));
        assert_eq!(affine(&a, -1, 0, true).unwrap().entries(), &[-1, -2, -3, -6]);
    }

    #[test]
    fn certificate_normal_form() {
        let c = PteCertificate::new(seq("7,4,3,2"), seq("6,5,4,1")).unwrap();
        assert_eq!(c.degree(), 2);
        let n = c.normalized();
        assert_eq!(n.a(), &seq("5,4,3,0"));
        assert_eq!(n.b(), &seq("6,3,2,1"));
        assert!(n.verify());
        assert_eq!(
            n.to_json(),
            r#"{"a":[5,4,3,0],"b":[6,3,2,1],"degree":2,"verified":true}"#
        );
        assert_eq!(
            PteCertificate::new(seq("1,2"), seq("2,1")),
            Err(PteError::EqualMultisets)
        );
    }

    #[test]
    fn parsing() {
        assert_eq!(seq(" 1, 2 ,3").entries(), &[3, 2, 1]);
        assert!("1,x".parse::<IntSequence>().is_err());
        assert_eq!("1,-2".parse::<IntSequence>(), Err(PteError::Negative(-2)));
    }
}
