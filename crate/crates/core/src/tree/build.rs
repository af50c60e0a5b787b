use serde::{Deserialize, Serialize};

use super::{EdgeId, Tree, TreeError, Vertex};

/// The pair `(α, p)` naming the tree `T_α(p)` up to isomorphism.
///
/// `p` is kept weakly decreasing: `T_α(p)` only depends on `p` up to permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PteShape {
    alpha: u32,
    p: Vec<u32>,
}

impl PteShape {
    pub fn new(alpha: u32, mut p: Vec<u32>) -> Result<Self, TreeError> {
        if p.len() < 2 {
            return Err(TreeError::TooFewBranches(p.len()));
        }
        if let Some(&value) = p.iter().find(|&&x| x > alpha) {
            return Err(TreeError::NotCompatible { value, alpha });
        }
        p.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PteShape { alpha, p })
    }

    pub fn alpha(&self) -> u32 {
        self.alpha
    }

    pub fn p(&self) -> &[u32] {
        &self.p
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// `α − p`, aligned with [`PteShape::p`].
    pub fn s(&self) -> Vec<u32> {
        self.p.iter().map(|&x| self.alpha - x).collect()
    }

    /// `Σ p_i`.
    pub fn beta(&self) -> u64 {
        self.p.iter().map(|&x| x as u64).sum()
    }

    /// `(3α + 1)n + 1`.
    pub fn vertex_count(&self) -> usize {
        (3 * self.alpha as usize + 1) * self.n() + 1
    }
}

struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn vertex(&mut self) -> Vertex {
        self.n += 1;
        (self.n - 1) as Vertex
    }

    fn edge(&mut self, u: Vertex, v: Vertex) -> EdgeId {
        self.edges.push((u, v));
        self.edges.len() - 1
    }

    /// Hangs `p` 4-paths and then `s` 4-stars from `root`, each glued by one leaf.
    fn hang_branches(&mut self, root: Vertex, p: u32, s: u32) {
        for _ in 0..p {
            let a = self.vertex();
            let b = self.vertex();
            let c = self.vertex();
            self.edge(root, a);
            self.edge(a, b);
            self.edge(b, c);
        }
        for _ in 0..s {
            let hub = self.vertex();
            let l1 = self.vertex();
            let l2 = self.vertex();
            self.edge(root, hub);
            self.edge(hub, l1);
            self.edge(hub, l2);
        }
    }
}

/// `B(p, s)`, rooted at vertex 0.
pub fn build_b_tree(p: u32, s: u32) -> Tree {
    let mut b = Builder {
        n: 0,
        edges: Vec::new(),
    };
    let root = b.vertex();
    b.hang_branches(root, p, s);
    Tree::new(b.n, b.edges)
        .and_then(|t| t.with_root(root))
        .expect("B(p,s) is a tree")
}

/// `T(p, s)`: the trees `B(p_i, s_i)` with their roots joined to a new centre.
///
/// Vertex 0 is the centre and the root; the core edges `c v_i` are recorded
/// in branch order.
pub fn build_t_tree(p: &[u32], s: &[u32]) -> Result<Tree, TreeError> {
    if p.len() != s.len() {
        return Err(TreeError::LengthMismatch(p.len(), s.len()));
    }
    if p.len() < 2 {
        return Err(TreeError::TooFewBranches(p.len()));
    }
    let mut b = Builder {
        n: 0,
        edges: Vec::new(),
    };
    let center = b.vertex();
    let mut core = Vec::with_capacity(p.len());
    for (&pi, &si) in p.iter().zip(s) {
        let vi = b.vertex();
        core.push(b.edge(center, vi));
        b.hang_branches(vi, pi, si);
    }
    Tree::new(b.n, b.edges)?.with_root(center)?.with_core(core)
}

/// `T_α(p) = T(p, α − p)`.
pub fn build_pte_tree(shape: &PteShape) -> Tree {
    build_t_tree(shape.p(), &shape.s()).expect("a valid shape always builds")
}
