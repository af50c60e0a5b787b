use std::collections::HashSet;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::CensusError;
use crate::tree::{canonical_form, EdgeId, Tree, Vertex};

/// The type `(q, t)` of a subtree isomorphic to `T(q, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BranchType {
    q: Vec<u32>,
    t: Vec<u32>,
}

impl BranchType {
    pub fn new(q: Vec<u32>, t: Vec<u32>) -> Result<Self, CensusError> {
        if q.len() != t.len() {
            return Err(CensusError::LengthMismatch(q.len(), t.len()));
        }
        Ok(BranchType { q, t })
    }

    /// All-zero type of length `n`: just the core star.
    pub fn zeros(n: usize) -> Self {
        BranchType {
            q: vec![0; n],
            t: vec![0; n],
        }
    }

    pub fn q(&self) -> &[u32] {
        &self.q
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// `Σ (q_i + t_i)`.
    pub fn weight(&self) -> u32 {
        self.q.iter().chain(&self.t).sum()
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.q.iter().copied().zip(self.t.iter().copied()).collect()
    }
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `N_{q,t}`: permutations `σ` fixing every pair `(q_i, t_i)`.
pub fn symmetry_count(bt: &BranchType) -> u128 {
    let mut mult: FxHashMap<(u32, u32), usize> = FxHashMap::default();
    for pair in bt.pairs() {
        *mult.entry(pair).or_insert(0) += 1;
    }
    mult.values().map(|&m| factorial(m)).product()
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_compatible(alpha: u32, p: &[u32], bt: &BranchType) -> Result<(), CensusError> {
    if p.len() != bt.len() {
        return Err(CensusError::LengthMismatch(p.len(), bt.len()));
    }
    match p.iter().find(|&&x| x > alpha) {
        Some(&value) => Err(CensusError::NotCompatible { value, alpha }),
        None => Ok(()),
    }
}

/// `P_{α,q,t}(p)`: the number of subtrees of type `(q, t)` in `T_α(p)`.
///
/// Sums `Π_i C(p_i, q_{π(i)}) C(α − p_i, t_{π(i)})` over the distinct
/// arrangements of the pairs `(q_j, t_j)`, which equals the permutation sum
/// divided by `N_{q,t}` without leaving the integers.
pub fn count_subtrees_formula(alpha: u32, p: &[u32], bt: &BranchType) -> Result<u128, CensusError> {
    check_compatible(alpha, p, bt)?;
    let mut arrangement = bt.pairs();
    arrangement.sort_unstable();
    let mut total: u128 = 0;
    loop {
        let mut term: u128 = 1;
        for (&pi, &(qj, tj)) in p.iter().zip(&arrangement) {
            term = term
                .checked_mul(binomial(pi, qj))
                .and_then(|x| x.checked_mul(binomial(alpha - pi, tj)))
                .ok_or(CensusError::Overflow)?;
            if term == 0 {
                break;
            }
        }
        total = total.checked_add(term).ok_or(CensusError::Overflow)?;
        if !next_permutation(&mut arrangement) {
            return Ok(total);
        }
    }
}

/// Cap on the number of (permutation, branch choice) configurations the oracle visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_configurations: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_configurations: 10_000_000,
        }
    }
}

/// Whole 4-paths and 4-stars hanging from one `v_i`, as edge-id lists.
struct Hanging {
    paths: Vec<[EdgeId; 3]>,
    stars: Vec<[EdgeId; 3]>,
}

fn read_layout(tree: &Tree) -> Result<(Vec<EdgeId>, Vec<Hanging>), CensusError> {
    let core = tree
        .core_edges()
        .ok_or(CensusError::NotPteLayout("no core edges"))?
        .to_vec();
    let center = tree
        .core_center()
        .ok_or(CensusError::NotPteLayout("core has fewer than two edges"))?;
    let rooted = tree.rooted(center);
    let mut hanging = Vec::with_capacity(core.len());
    for &e in &core {
        let vi = rooted.child_of_edge(tree.edges()[e]);
        let mut h = Hanging {
            paths: Vec::new(),
            stars: Vec::new(),
        };
        for &(hub, first) in tree.neighbors(vi) {
            if hub == center {
                continue;
            }
            let below: Vec<(Vertex, EdgeId)> = tree
                .neighbors(hub)
                .iter()
                .copied()
                .filter(|&(w, _)| w != vi)
                .collect();
            match below[..] {
                [(a, second)] => {
                    let tail: Vec<(Vertex, EdgeId)> = tree
                        .neighbors(a)
                        .iter()
                        .copied()
                        .filter(|&(w, _)| w != hub)
                        .collect();
                    match tail[..] {
                        [(b, third)] if tree.degree(b) == 1 => h.paths.push([first, second, third]),
                        _ => return Err(CensusError::NotPteLayout("branch is not a 4-path")),
                    }
                }
                [(l1, second), (l2, third)] if tree.degree(l1) == 1 && tree.degree(l2) == 1 => {
                    h.stars.push([first, second, third])
                }
                _ => return Err(CensusError::NotPteLayout("branch is neither a 4-path nor a 4-star")),
            }
        }
        hanging.push(h);
    }
    Ok((core, hanging))
}

fn subsets_of_size(len: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < left {
                break;
            }
            cur.push(i);
            go(i + 1, len, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= len {
        go(0, len, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Counts set-distinct subtrees of a `T(p, s)` layout that contain the whole
/// core and keep, at each `v_i`, `q_{π(i)}` whole 4-paths and `t_{π(i)}`
/// whole 4-stars, taking the union over every permutation `π`.
pub fn count_subtrees_oracle(tree: &Tree, bt: &BranchType, limits: OracleLimits) -> Result<u128, CensusError> {
    let (core, hanging) = read_layout(tree)?;
    let n = hanging.len();
    if bt.len() != n {
        return Err(CensusError::LengthMismatch(n, bt.len()));
    }
    let pairs = bt.pairs();
    let words = tree.edge_count().div_ceil(64).max(1);
    let mut base = vec![0u64; words];
    for &e in &core {
        base[e / 64] |= 1 << (e % 64);
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut visited = 0u64;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        // Per-branch choices under this permutation.
        let mut options: Vec<Vec<Vec<EdgeId>>> = Vec::with_capacity(n);
        for (i, h) in hanging.iter().enumerate() {
            let (q, t) = pairs[perm[i]];
            let mut here = Vec::new();
            for ps in subsets_of_size(h.paths.len(), q as usize) {
                for ss in subsets_of_size(h.stars.len(), t as usize) {
                    let edges: Vec<EdgeId> = ps
                        .iter()
                        .flat_map(|&x| h.paths[x])
                        .chain(ss.iter().flat_map(|&x| h.stars[x]))
                        .collect();
                    here.push(edges);
                }
            }
            options.push(here);
        }
        if options.iter().all(|o| !o.is_empty()) {
            let mut idx = vec![0usize; n];
            'product: loop {
                visited += 1;
                if visited > limits.max_configurations {
                    return Err(CensusError::BudgetExceeded(limits.max_configurations));
                }
                let mut set = base.clone();
                for (i, &c) in idx.iter().enumerate() {
                    for &e in &options[i][c] {
                        set[e / 64] |= 1 << (e % 64);
                    }
                }
                seen.insert(set);
                for i in (0..n).rev() {
                    idx[i] += 1;
                    if idx[i] < options[i].len() {
                        continue 'product;
                    }
                    idx[i] = 0;
                }
                break;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(seen.len() as u128)
}

/// Outcome of [`same_subtree_counts`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubtreeAgreement {
    Agree { types_checked: usize },
    Differ { branch_type: BranchType, left: u128, right: u128 },
}

impl SubtreeAgreement {
    pub fn agrees(&self) -> bool {
        matches!(self, SubtreeAgreement::Agree { .. })
    }
}

/// Every type of length `n` with `Σ(q_i + t_i) ≤ k` and entries `≤ alpha`,
/// one representative per multiset of pairs (pairs listed in decreasing order).
pub fn branch_types(n: usize, k: u32, alpha: u32) -> Vec<BranchType> {
    fn go(
        n: usize,
        left: u32,
        alpha: u32,
        cap: (u32, u32),
        cur: &mut Vec<(u32, u32)>,
        out: &mut Vec<BranchType>,
    ) {
        if cur.len() == n {
            out.push(BranchType {
                q: cur.iter().map(|p| p.0).collect(),
                t: cur.iter().map(|p| p.1).collect(),
            });
            return;
        }
        for q in (0..=alpha.min(left)).rev() {
            for t in (0..=alpha.min(left - q)).rev() {
                if (q, t) > cap {
                    continue;
                }
                cur.push((q, t));
                go(n, left - q - t, alpha, (q, t), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(n, k, alpha, (u32::MAX, u32::MAX), &mut Vec::new(), &mut out);
    out
}

/// Compares `|S_{q,t}(T_α(p))|` and `|S_{q,t}(T_α(p'))|` for all types of weight `≤ k`.
pub fn same_subtree_counts(alpha: u32, p: &[u32], p2: &[u32], k: u32) -> Result<SubtreeAgreement, CensusError> {
    if p.len() != p2.len() {
        return Err(CensusError::LengthMismatch(p.len(), p2.len()));
    }
    let types = branch_types(p.len(), k, alpha);
    for bt in &types {
        let left = count_subtrees_formula(alpha, p, bt)?;
        let right = count_subtrees_formula(alpha, p2, bt)?;
        if left != right {
            return Ok(SubtreeAgreement::Differ {
                branch_type: bt.clone(),
                left,
                right,
            });
        }
    }
    Ok(SubtreeAgreement::Agree {
        types_checked: types.len(),
    })
}

/// Number of subtrees of `host` (anywhere, not only around a core) isomorphic to `pattern`.
///
/// Brute force over all edge subsets of the right size; meant for hosts of
/// at most ~20 vertices.
pub fn count_isomorphic_subtrees(host: &Tree, pattern: &Tree, limits: OracleLimits) -> Result<u128, CensusError> {
    let m = pattern.edge_count();
    if m == 0 {
        return Ok(host.vertex_count() as u128);
    }
    let want = canonical_form(pattern);
    let mut count = 0u128;
    let mut visited = 0u64;
    for subset in subsets_of_size(host.edge_count(), m) {
        visited += 1;
        if visited > limits.max_configurations {
            return Err(CensusError::BudgetExceeded(limits.max_configurations));
        }
        let mut ids: FxHashMap<Vertex, Vertex> = FxHashMap::default();
        let mut edges = Vec::with_capacity(m);
        for &e in &subset {
            let (u, v) = host.edges()[e];
            let next = ids.len() as Vertex;
            let a = *ids.entry(u).or_insert(next);
            let next = ids.len() as Vertex;
            let b = *ids.entry(v).or_insert(next);
            edges.push((a, b));
        }
        if ids.len() != m + 1 {
            continue;
        }
        if let Ok(sub) = Tree::new(m + 1, edges) {
            if canonical_form(&sub) == want {
                count += 1;
            }
        }
    }
    Ok(count)
}
