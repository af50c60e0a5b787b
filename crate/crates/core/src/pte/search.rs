use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;

use super::{power_sums, IntSequence, PteCertificate, PteError};

pub const MAX_PROUHET_DEGREE: u32 = 20;

/// Node budget for [`search_pte`]: the number of candidate multisets examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_nodes: 20_000_000,
        }
    }
}

fn thue_morse(i: u64) -> bool {
    i.count_ones() % 2 == 1
}

/// Splits `0..2^{k+1}` by the parity of the binary digit sum.
///
/// The two halves have size `2^k` and agree on power sums up to exponent `k`;
/// the certificate records the degree measured on the output.
pub fn prouhet(k: u32) -> Result<PteCertificate, PteError> {
    if !(1..=MAX_PROUHET_DEGREE).contains(&k) {
        return Err(PteError::DegreeOutOfRange {
            k,
            max: MAX_PROUHET_DEGREE,
        });
    }
    let (odd, even): (Vec<u64>, Vec<u64>) = (0..1u64 << (k + 1)).partition(|&i| thue_morse(i));
    let a = IntSequence::new_signed(even.into_iter().map(|x| x as i64).collect());
    let b = IntSequence::new_signed(odd.into_iter().map(|x| x as i64).collect());
    let cert = PteCertificate::new(a, b)?.normalized();
    debug_assert!(cert.degree() >= k);
    Ok(cert)
}

/// Calls `visit` on every weakly increasing sequence of length `n` over `0..=max`.
fn for_each_multiset(n: usize, max: i64, mut visit: impl FnMut(&[i64]) -> bool) {
    let mut cur = vec![0i64; n];
    loop {
        if !visit(&cur) {
            return;
        }
        // Advance the rightmost entry that can still grow, reset the tail to it.
        let Some(i) = (0..n).rev().find(|&i| cur[i] < max) else {
            return;
        };
        let v = cur[i] + 1;
        for x in &mut cur[i..] {
            *x = v;
        }
    }
}

/// Every solution of size `n`, degree at least `k`, with entries in `0..=max`.
///
/// Multisets are grouped by their first `k` power sums; every pair inside a
/// group is a solution. Results are normalised (union minimum 0, `a < b`),
/// deduplicated and sorted.
pub fn search_pte(n: usize, k: u32, max: i64, limits: SearchLimits) -> Result<Vec<PteCertificate>, PteError> {
    if k == 0 {
        return Err(PteError::DegreeOutOfRange { k, max: u32::MAX });
    }
    let mut groups: HashMap<Vec<BigInt>, Vec<IntSequence>> = HashMap::new();
    let mut nodes = 0u64;
    let mut exhausted = false;
    if n > 0 && max >= 0 {
        for_each_multiset(n, max, |m| {
            nodes += 1;
            if nodes > limits.max_nodes {
                exhausted = true;
                return false;
            }
            let s = IntSequence::new_signed(m.to_vec());
            groups.entry(power_sums(&s, k)).or_default().push(s);
            true
        });
    }
    let mut found = BTreeSet::new();
    for members in groups.values() {
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if a.smallest().min(b.smallest()) != Some(0) {
                    continue;
                }
                let cert = PteCertificate::new(a.clone(), b.clone())?.normalized();
                found.insert(cert);
            }
        }
    }
    let found: Vec<PteCertificate> = found.into_iter().collect();
    if exhausted {
        Err(PteError::SearchBudgetExceeded {
            budget: limits.max_nodes,
            partial: found,
        })
    } else {
        Ok(found)
    }
}

/// `j` sequences of one common length, pairwise distinct and pairwise `=_k`.
///
/// Starting from the Thue–Morse pair `(a, b)`, each output concatenates `m`
/// blocks, block `i` being `a` or `b` shifted by `i·D` with `D` larger than
/// every entry. Any two outputs agree block by block on power sums up to `k`,
/// and the disjoint block ranges keep distinct choice patterns distinct.
pub fn multi_pte(j: usize, k: u32) -> Result<Vec<IntSequence>, PteError> {
    if j < 2 {
        return Err(PteError::TooFewSequences { min: 2, got: j });
    }
    if j > 1 << 16 {
        return Err(PteError::TooManySequences { max: 1 << 16, got: j });
    }
    let base = prouhet(k)?;
    if j == 2 {
        return Ok(vec![base.a().clone(), base.b().clone()]);
    }
    let blocks = usize::BITS - (j - 1).leading_zeros();
    let spread = base.a().largest().max(base.b().largest()).unwrap_or(0) + 1;
    let out = (0..j)
        .map(|pattern| {
            (0..blocks as usize).fold(IntSequence::new_signed(vec![]), |acc, i| {
                let pick = if pattern >> i & 1 == 0 { base.a() } else { base.b() };
                acc.concat(&pick.translate(i as i64 * spread))
            })
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pte::is_pte;

    fn seq(s: &str) -> IntSequence {
        s.parse().unwrap()
    }

    #[test]
    fn prouhet_small_cases() {
        let c = prouhet(1).unwrap();
        assert_eq!((c.a(), c.b()), (&seq("2,1"), &seq("3,0")));
        assert_eq!(c.degree(), 1);
        let c = prouhet(2).unwrap();
        let mut sides = [c.a().clone(), c.b().clone()];
        sides.sort();
        assert_eq!(sides, [seq("6,5,3,0"), seq("7,4,2,1")]);
        assert_eq!(c.degree(), 2);
        assert!(prouhet(0).is_err());
        assert!(prouhet(21).is_err());
    }

    #[test]
    fn multiset_enumeration_counts() {
        let mut count = 0;
        for_each_multiset(3, 4, |_| {
            count += 1;
            true
        });
        // C(4 + 3, 3)
        assert_eq!(count, 35);
    }

    #[test]
    fn search_examples() {
        let r = search_pte(2, 1, 3, SearchLimits::default()).unwrap();
        assert!(r.iter().any(|c| c.a() == &seq("2,1") && c.b() == &seq("3,0")));
        let r = search_pte(3, 2, 6, SearchLimits::default()).unwrap();
        assert!(r
            .iter()
            .any(|c| [c.a(), c.b()] == [&seq("6,2,1"), &seq("5,4,0")]
                || [c.a(), c.b()] == [&seq("5,4,0"), &seq("6,2,1")]));
        for max in [3, 6, 10] {
            assert!(search_pte(2, 2, max, SearchLimits::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn search_budget_is_reported() {
        let err = search_pte(3, 1, 20, SearchLimits { max_nodes: 100 }).unwrap_err();
        assert!(matches!(err, PteError::SearchBudgetExceeded { budget: 100, .. }));
    }

    #[test]
    fn multi_examples() {
        let two = multi_pte(2, 3).unwrap();
        let p = prouhet(3).unwrap();
        assert_eq!(two, vec![p.a().clone(), p.b().clone()]);

        let three = multi_pte(3, 1).unwrap();
        assert_eq!(three.len(), 3);
        for (i, x) in three.iter().enumerate() {
            for y in &three[i + 1..] {
                assert_eq!(is_pte(x, y, 1), Ok(true));
            }
        }
        assert!(multi_pte(1, 1).is_err());
    }
}
