//! Exact `U_k`/`U_F` by enumerating removed edge sets.
//!
//! The tree is hung from a root once. Removing the edge above vertex `c`
//! cuts off the subtree of `c`; with a set of removed edges, the part owned
//! by a removed edge is its subtree weight minus the subtree weights of the
//! removed edges nearest below it. Candidates are visited in preorder, so a
//! newly added edge never has a removed descendant yet and only its nearest
//! removed ancestor needs adjusting. Each subset costs `O(|A|)` plus a sort
//! of `|A| + 1` parts.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::partition::Parts;
use super::{Budget, Coeff, Partition, PartitionPolynomial, PolyError};
use crate::tree::{EdgeId, Rooted, Tree, WeightedTree};

#[derive(Debug, Clone, Copy)]
struct Candidate {
    tin: u32,
    tout: u32,
    below: u32,
}

struct Layout {
    total: u32,
    /// Removable edges, sorted by the preorder index of their lower endpoint.
    cands: Vec<Candidate>,
}

impl Layout {
    fn new(wt: &WeightedTree, edges: Option<&[EdgeId]>) -> Result<Self, PolyError> {
        let tree = wt.tree();
        let root = tree.root().unwrap_or(0);
        let rooted = Rooted::new(tree, root, Some(wt.weights()));
        let total = u32::try_from(rooted.below[root as usize]).map_err(|_| PolyError::WeightOverflow)?;
        let mut ids: Vec<EdgeId> = match edges {
            Some(f) => {
                if let Some(&e) = f.iter().find(|&&e| e >= tree.edge_count()) {
                    return Err(PolyError::InvalidEdge(e));
                }
                f.to_vec()
            }
            None => (0..tree.edge_count()).collect(),
        };
        ids.sort_unstable();
        ids.dedup();
        let mut cands: Vec<Candidate> = ids
            .into_iter()
            .map(|e| {
                let c = rooted.child_of_edge(tree.edges()[e]) as usize;
                Candidate {
                    tin: rooted.tin[c],
                    tout: rooted.tout[c],
                    below: rooted.below[c] as u32,
                }
            })
            .collect();
        cands.sort_unstable_by_key(|c| c.tin);
        Ok(Layout { total, cands })
    }

    fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let (a, b) = (&self.cands[a], &self.cands[b]);
        a.tin <= b.tin && b.tout <= a.tout
    }
}

/// Depth-first walk over removed sets in increasing candidate order.
struct Walker<'a> {
    layout: &'a Layout,
    max_size: usize,
    /// `chosen[d]` is the candidate removed at depth `d` (index 0 unused).
    chosen: Vec<usize>,
    /// `parts[0]` is the root's part, `parts[d]` the part under `chosen[d]`.
    parts: Vec<u32>,
}

impl<'a> Walker<'a> {
    fn new(layout: &'a Layout, max_size: usize) -> Self {
        let mut parts = vec![0; max_size + 1];
        parts[0] = layout.total;
        Walker {
            layout,
            max_size,
            chosen: vec![usize::MAX; max_size + 1],
            parts,
        }
    }

    fn nearest_chosen_ancestor(&self, depth: usize, j: usize) -> usize {
        (1..=depth)
            .rev()
            .find(|&d| self.layout.is_ancestor(self.chosen[d], j))
            .unwrap_or(0)
    }

    fn push(&mut self, depth: usize, j: usize) -> usize {
        let parent = self.nearest_chosen_ancestor(depth, j);
        let below = self.layout.cands[j].below;
        self.parts[parent] -= below;
        self.parts[depth + 1] = below;
        self.chosen[depth + 1] = j;
        parent
    }

    fn pop(&mut self, depth: usize, parent: usize) {
        let j = self.chosen[depth + 1];
        self.parts[parent] += self.layout.cands[j].below;
    }

    fn current(&self, depth: usize) -> Parts {
        let mut key: Parts = self.parts[..=depth].iter().copied().collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        key
    }

    /// Emits every set extending the current one (including itself).
    fn walk(&mut self, depth: usize, start: usize, out: &mut FxHashMap<Parts, u64>) {
        *out.entry(self.current(depth)).or_insert(0) += 1;
        if depth == self.max_size {
            return;
        }
        for j in start..self.layout.cands.len() {
            let parent = self.push(depth, j);
            self.walk(depth + 1, j + 1, out);
            self.pop(depth, parent);
        }
    }

    /// Counts removed sets of exactly `target.len() − 1` edges whose parts equal `target`.
    ///
    /// A removed edge's part is final once the walk moves past its subtree;
    /// finished parts that are not in `target` prune the branch.
    fn count_target(&mut self, depth: usize, start: usize, target: &[u32]) -> u64 {
        if depth == self.max_size {
            return (self.current(depth).as_slice() == target) as u64;
        }
        let mut total = 0;
        for j in start..self.layout.cands.len() {
            if !self.closed_parts_fit(depth, self.layout.cands[j].tin, target) {
                // Later candidates close at least the same parts.
                break;
            }
            let parent = self.push(depth, j);
            total += self.count_target(depth + 1, j + 1, target);
            self.pop(depth, parent);
        }
        total
    }

    fn closed_parts_fit(&self, depth: usize, next_tin: u32, target: &[u32]) -> bool {
        let mut budget: Parts = target.iter().copied().collect();
        for d in 1..=depth {
            let c = &self.layout.cands[self.chosen[d]];
            if c.tout >= next_tin {
                continue;
            }
            match budget.iter().position(|&p| p == self.parts[d]) {
                Some(i) => {
                    budget.swap_remove(i);
                }
                None => return false,
            }
        }
        true
    }
}

fn merge(mut a: FxHashMap<Parts, u64>, b: FxHashMap<Parts, u64>) -> FxHashMap<Parts, u64> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

fn removal_polynomial(layout: &Layout, max_size: usize) -> PartitionPolynomial {
    let max_size = max_size.min(layout.cands.len());
    let mut base = FxHashMap::default();
    base.insert(Walker::new(layout, max_size).current(0), 1);
    let counts = if max_size == 0 {
        base
    } else {
        let counts = (0..layout.cands.len())
            .into_par_iter()
            .fold(
                || (Walker::new(layout, max_size), FxHashMap::default()),
                |(mut walker, mut acc), j| {
                    let parent = walker.push(0, j);
                    walker.walk(1, j + 1, &mut acc);
                    walker.pop(0, parent);
                    (walker, acc)
                },
            )
            .map(|(_, acc)| acc)
            .reduce(FxHashMap::default, merge);
        merge(counts, base)
    };
    counts
        .into_iter()
        .map(|(parts, c)| (Partition::from_sorted(parts), 0, c as Coeff))
        .collect()
}

/// `U_k(T) = Σ_{A⊆E, |A|≤k} x_{λ(E∖A)}`.
pub fn u_k_polynomial(tree: &Tree, k: usize) -> PartitionPolynomial {
    weighted_u_k_polynomial(&WeightedTree::unit(tree.clone()), k)
}

/// `U_k` of a weighted tree; part sizes are total weights.
pub fn weighted_u_k_polynomial(wt: &WeightedTree, k: usize) -> PartitionPolynomial {
    let layout = Layout::new(wt, None).expect("unit weights fit");
    removal_polynomial(&layout, k)
}

/// The full `U(T)`, guarded by `budget`.
pub fn u_polynomial(tree: &Tree, budget: &Budget) -> Result<PartitionPolynomial, PolyError> {
    budget.check(tree.edge_count())?;
    Ok(u_k_polynomial(tree, tree.edge_count()))
}

/// `U_F(T) = Σ_{A⊆F} x_{λ(E∖A)}`.
pub fn u_f_polynomial(
    tree: &Tree,
    f: &[EdgeId],
    budget: &Budget,
) -> Result<PartitionPolynomial, PolyError> {
    weighted_u_f_polynomial(&WeightedTree::unit(tree.clone()), f, budget)
}

pub fn weighted_u_f_polynomial(
    wt: &WeightedTree,
    f: &[EdgeId],
    budget: &Budget,
) -> Result<PartitionPolynomial, PolyError> {
    let layout = Layout::new(wt, Some(f))?;
    budget.check(layout.cands.len())?;
    Ok(removal_polynomial(&layout, layout.cands.len()))
}

/// `[x_λ] U(T)` without building the whole polynomial.
///
/// Only removed sets of size `ℓ(λ) − 1` can produce `x_λ`; the walk is
/// pruned as soon as a finished part is not a part of `λ`.
pub fn u_coefficient(tree: &Tree, lambda: &Partition) -> Coeff {
    let n = tree.vertex_count() as u64;
    if lambda.is_empty() || lambda.size() != n || lambda.len() > tree.vertex_count() {
        return 0;
    }
    let layout = Layout::new(&WeightedTree::unit(tree.clone()), None).expect("unit weights fit");
    let size = lambda.len() - 1;
    let target = lambda.parts();
    if size == 0 {
        return 1;
    }
    let count: u64 = (0..layout.cands.len())
        .into_par_iter()
        .map_init(
            || Walker::new(&layout, size),
            |walker, j| {
                let parent = walker.push(0, j);
                let c = walker.count_target(1, j + 1, target);
                walker.pop(0, parent);
                c
            },
        )
        .sum();
    count as Coeff
}
