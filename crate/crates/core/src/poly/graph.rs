use rustc_hash::FxHashMap;

use super::{Budget, Coeff, Partition, PartitionPolynomial, PolyError};
use crate::tree::{EdgeId, Tree, Vertex, WeightedTree};

/// A vertex-weighted multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    weights: Vec<u32>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>, weights: Vec<u32>) -> Result<Self, PolyError> {
        if weights.len() != n {
            return Err(PolyError::WeightCount {
                expected: n,
                got: weights.len(),
            });
        }
        if weights.contains(&0) {
            return Err(PolyError::ZeroWeight);
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u as usize >= n || v as usize >= n) {
            return Err(PolyError::VertexOutOfRange(u, v));
        }
        Ok(WeightedGraph { n, edges, weights })
    }

    pub fn unit(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, PolyError> {
        WeightedGraph::new(n, edges, vec![1; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
}

impl From<&WeightedTree> for WeightedGraph {
    fn from(wt: &WeightedTree) -> Self {
        WeightedGraph {
            n: wt.tree().vertex_count(),
            edges: wt.tree().edges().to_vec(),
            weights: wt.weights().to_vec(),
        }
    }
}

impl From<&Tree> for WeightedGraph {
    fn from(t: &Tree) -> Self {
        WeightedGraph {
            n: t.vertex_count(),
            edges: t.edges().to_vec(),
            weights: vec![1; t.vertex_count()],
        }
    }
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

/// Component weights and component count of `G|_A`.
fn components(g: &WeightedGraph, a: impl Iterator<Item = EdgeId>) -> (Partition, usize) {
    let mut dsu = Dsu::new(g.n);
    let mut count = g.n;
    for e in a {
        let (u, v) = g.edges[e];
        if dsu.union(u, v) {
            count -= 1;
        }
    }
    let mut totals: FxHashMap<u32, u32> = FxHashMap::default();
    for v in 0..g.n as u32 {
        let r = dsu.find(v);
        *totals.entry(r).or_insert(0) += g.weights[v as usize];
    }
    let lambda = Partition::new(totals.into_values()).expect("weights are positive");
    (lambda, count)
}

fn check_edges(g: &WeightedGraph, a: &[EdgeId]) -> Result<(), PolyError> {
    match a.iter().find(|&&e| e >= g.edges.len()) {
        Some(&e) => Err(PolyError::InvalidEdge(e)),
        None => Ok(()),
    }
}

/// `λ(A)`: the total weights of the components of `G|_A`.
pub fn lambda_of(g: &WeightedGraph, a: &[EdgeId]) -> Result<Partition, PolyError> {
    check_edges(g, a)?;
    Ok(components(g, a.iter().copied()).0)
}

/// `r(A) = |V| − k(G|_A)`.
pub fn rank(g: &WeightedGraph, a: &[EdgeId]) -> Result<usize, PolyError> {
    check_edges(g, a)?;
    Ok(g.n - components(g, a.iter().copied()).1)
}

/// The states-model `W(G, ω) = Σ_{A⊆E} x_{λ(A)} (y − 1)^{|A| − r(A)}`.
///
/// Enumerates all `2^{|E|}` edge subsets with a fresh union-find each time.
pub fn w_polynomial(g: &WeightedGraph, budget: &Budget) -> Result<PartitionPolynomial, PolyError> {
    let m = g.edge_count();
    budget.check(m)?;
    let mut acc: FxHashMap<(Partition, u32), u64> = FxHashMap::default();
    for mask in 0u64..(1u64 << m) {
        let subset = (0..m).filter(|&e| mask >> e & 1 == 1);
        let (lambda, k) = components(g, subset);
        let size = mask.count_ones() as usize;
        let nullity = (size - (g.n - k)) as u32;
        *acc.entry((lambda, nullity)).or_insert(0) += 1;
    }
    Ok(acc
        .into_iter()
        .map(|((p, y), c)| (p, y, c as Coeff))
        .collect())
}
