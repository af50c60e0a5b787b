//! Tree data model and the structural operations built on it.

mod build;
mod canon;
mod centroid;
mod contract;
mod io;
mod random;

pub use build::{build_b_tree, build_pte_tree, build_t_tree, PteShape};
pub use canon::{canonical_form, CanonicalCode};
pub use centroid::{branch_weight, centroid, edge_labels, edges_repel};
pub use contract::contract_to;
pub use io::{to_dot, TreeJson};
pub use random::random_tree;

use thiserror::Error;

/// Dense vertex id in `0..N`.
pub type Vertex = u32;
/// Stable edge id: the position of the edge in construction order.
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    Empty,
    #[error("expected {expected} edges for {vertices} vertices, got {got}")]
    EdgeCount {
        vertices: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge ({0}, {1}) references a vertex outside the tree")]
    VertexOutOfRange(Vertex, Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge set is not connected")]
    Disconnected,
    #[error("invalid vertex {0}")]
    InvalidVertex(Vertex),
    #[error("invalid edge id {0}")]
    InvalidEdge(EdgeId),
    #[error("core edges do not form a star")]
    CoreNotStar,
    #[error("sequences p and s have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("T(p,s) needs at least two branches, got {0}")]
    TooFewBranches(usize),
    #[error("sequence entry {value} exceeds alpha = {alpha}")]
    NotCompatible { value: u32, alpha: u32 },
    #[error("weight vector has {got} entries for {expected} vertices")]
    WeightCount { expected: usize, got: usize },
    #[error("vertex {0} has weight 0; weights must be positive")]
    ZeroWeight(Vertex),
    #[error("relation is undefined for a tree with two centroid vertices")]
    DoubleCentroid,
    #[error("edges must be distinct")]
    SameEdge,
    #[error("edge set does not induce a connected subtree")]
    SubtreeNotConnected,
    #[error("malformed tree JSON: {0}")]
    Json(String),
}

/// An undirected tree on vertices `0..N`.
///
/// Edges keep the order they were supplied in; that order is the [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    root: Option<Vertex>,
    core: Option<Vec<EdgeId>>,
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                vertices: n,
                expected: n - 1,
                got: edges.len(),
            });
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = rustc_hash::FxHashSet::default();
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u as usize >= n || v as usize >= n {
                return Err(TreeError::VertexOutOfRange(u, v));
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge(u, v));
            }
            adj[u as usize].push((v, id));
            adj[v as usize].push((u, id));
        }
        // n - 1 edges plus connectivity rules out cycles.
        let mut visited = vec![false; n];
        let mut stack = vec![0usize];
        visited[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &(w, _) in &adj[u] {
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    reached += 1;
                    stack.push(w as usize);
                }
            }
        }
        if reached != n {
            return Err(TreeError::Disconnected);
        }
        Ok(Tree {
            n,
            edges,
            adj,
            root: None,
            core: None,
        })
    }

    /// The single-vertex tree.
    pub fn singleton() -> Self {
        Tree::new(1, Vec::new()).expect("singleton is a tree")
    }

    pub fn path(n: usize) -> Result<Self, TreeError> {
        let edges = (1..n as Vertex).map(|v| (v - 1, v)).collect();
        Tree::new(n, edges)
    }

    /// `K_{1,n-1}` centred at vertex 0.
    pub fn star(n: usize) -> Result<Self, TreeError> {
        let edges = (1..n as Vertex).map(|v| (0, v)).collect();
        Tree::new(n, edges)
    }

    pub fn with_root(mut self, root: Vertex) -> Result<Self, TreeError> {
        self.check_vertex(root)?;
        self.root = Some(root);
        Ok(self)
    }

    /// Marks `core` as the core edge set; the edges must share one common vertex.
    pub fn with_core(mut self, core: Vec<EdgeId>) -> Result<Self, TreeError> {
        for &e in &core {
            self.check_edge(e)?;
        }
        if !self.is_star(&core) {
            return Err(TreeError::CoreNotStar);
        }
        self.core = Some(core);
        Ok(self)
    }

    fn is_star(&self, edges: &[EdgeId]) -> bool {
        match edges {
            [] => false,
            [_] => true,
            [first, rest @ ..] => {
                let (a, b) = self.edges[*first];
                [a, b].into_iter().any(|hub| {
                    rest.iter().all(|&e| {
                        let (u, v) = self.edges[e];
                        u == hub || v == hub
                    })
                }) && {
                    let mut sorted = edges.to_vec();
                    sorted.sort_unstable();
                    sorted.windows(2).all(|w| w[0] != w[1])
                }
            }
        }
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

    pub fn edge(&self, e: EdgeId) -> Result<(Vertex, Vertex), TreeError> {
        self.edges.get(e).copied().ok_or(TreeError::InvalidEdge(e))
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, EdgeId)] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn root(&self) -> Option<Vertex> {
        self.root
    }

    pub fn core_edges(&self) -> Option<&[EdgeId]> {
        self.core.as_deref()
    }

    /// The common vertex of the core star, when the core has at least two edges.
    pub fn core_center(&self) -> Option<Vertex> {
        let core = self.core.as_ref()?;
        match core.as_slice() {
            [e, f, ..] => {
                let (a, b) = self.edges[*e];
                let (c, d) = self.edges[*f];
                if a == c || a == d {
                    Some(a)
                } else {
                    Some(b)
                }
            }
            _ => None,
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), TreeError> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(TreeError::InvalidVertex(v))
        }
    }

    pub(crate) fn check_edge(&self, e: EdgeId) -> Result<(), TreeError> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(TreeError::InvalidEdge(e))
        }
    }

    /// Relabels vertices by `perm` (old id `v` becomes `perm[v]`); edge order is kept.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<Tree, TreeError> {
        if perm.len() != self.n {
            return Err(TreeError::WeightCount {
                expected: self.n,
                got: perm.len(),
            });
        }
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        let mut t = Tree::new(self.n, edges)?;
        t.root = self.root.map(|r| perm[r as usize]);
        t.core = self.core.clone();
        Ok(t)
    }

    pub(crate) fn rooted(&self, root: Vertex) -> Rooted {
        Rooted::new(self, root, None)
    }
}

/// A tree together with a positive weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedTree {
    tree: Tree,
    weights: Vec<u32>,
}

impl WeightedTree {
    pub fn new(tree: Tree, weights: Vec<u32>) -> Result<Self, TreeError> {
        if weights.len() != tree.vertex_count() {
            return Err(TreeError::WeightCount {
                expected: tree.vertex_count(),
                got: weights.len(),
            });
        }
        if let Some(v) = weights.iter().position(|&w| w == 0) {
            return Err(TreeError::ZeroWeight(v as Vertex));
        }
        Ok(WeightedTree { tree, weights })
    }

    /// `(T, 1_V)`.
    pub fn unit(tree: Tree) -> Self {
        let weights = vec![1; tree.vertex_count()];
        WeightedTree { tree, weights }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, v: Vertex) -> u32 {
        self.weights[v as usize]
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn into_parts(self) -> (Tree, Vec<u32>) {
        (self.tree, self.weights)
    }
}

/// A tree hung from a root: parents, preorder and subtree weights.
#[derive(Debug, Clone)]
pub(crate) struct Rooted {
    pub parent: Vec<Option<Vertex>>,
    pub preorder: Vec<Vertex>,
    pub tin: Vec<u32>,
    pub tout: Vec<u32>,
    /// Total weight (vertex count when unweighted) of the subtree below each vertex.
    pub below: Vec<u64>,
}

impl Rooted {
    pub fn new(tree: &Tree, root: Vertex, weights: Option<&[u32]>) -> Self {
        let n = tree.vertex_count();
        let mut parent = vec![None; n];
        let mut preorder = Vec::with_capacity(n);
        let mut tin = vec![0u32; n];
        let mut tout = vec![0u32; n];
        let mut stack = vec![root];
        let mut visited = vec![false; n];
        visited[root as usize] = true;
        while let Some(u) = stack.pop() {
            tin[u as usize] = preorder.len() as u32;
            preorder.push(u);
            // Reverse so children are visited in adjacency order.
            for &(w, _) in tree.neighbors(u).iter().rev() {
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    parent[w as usize] = Some(u);
                    stack.push(w);
                }
            }
        }
        let mut below: Vec<u64> = match weights {
            Some(w) => w.iter().map(|&x| x as u64).collect(),
            None => vec![1; n],
        };
        for &u in preorder.iter().rev() {
            if let Some(p) = parent[u as usize] {
                below[p as usize] += below[u as usize];
            }
        }
        // Subtree of u occupies preorder positions tin[u] .. tin[u] + count[u].
        let mut count = vec![1u32; n];
        for &u in preorder.iter().rev() {
            if let Some(p) = parent[u as usize] {
                count[p as usize] += count[u as usize];
            }
        }
        for v in 0..n {
            tout[v] = tin[v] + count[v] - 1;
        }
        Rooted {
            parent,
            preorder,
            tin,
            tout,
            below,
        }
    }

    /// The endpoint of `e` farther from the root.
    pub fn child_of_edge(&self, (u, v): (Vertex, Vertex)) -> Vertex {
        if self.parent[v as usize] == Some(u) {
            v
        } else {
            u
        }
    }

    /// True if `a` is an ancestor of `b` (or equal).
    pub fn is_ancestor(&self, a: Vertex, b: Vertex) -> bool {
        self.tin[a as usize] <= self.tin[b as usize] && self.tout[b as usize] <= self.tout[a as usize]
    }

    pub fn children<'a>(&'a self, tree: &'a Tree, v: Vertex) -> impl Iterator<Item = Vertex> + 'a {
        tree.neighbors(v)
            .iter()
            .map(|&(w, _)| w)
            .filter(move |&w| self.parent[w as usize] == Some(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edge_lists() {
        assert_eq!(Tree::new(0, vec![]), Err(TreeError::Empty));
        assert!(matches!(Tree::new(3, vec![(0, 1)]), Err(TreeError::EdgeCount { .. })));
        assert_eq!(Tree::new(2, vec![(0, 0)]), Err(TreeError::SelfLoop(0)));
        assert_eq!(Tree::new(2, vec![(0, 2)]), Err(TreeError::VertexOutOfRange(0, 2)));
        assert_eq!(
            Tree::new(3, vec![(0, 1), (1, 0)]),
            Err(TreeError::DuplicateEdge(1, 0))
        );
        assert_eq!(
            Tree::new(4, vec![(0, 1), (1, 2), (2, 0)]),
            Err(TreeError::Disconnected)
        );
    }

    #[test]
    fn core_must_be_a_star() {
        let p4 = Tree::path(4).unwrap();
        assert!(p4.clone().with_core(vec![0, 1]).is_ok());
        assert_eq!(p4.clone().with_core(vec![0, 2]), Err(TreeError::CoreNotStar));
        assert_eq!(p4.with_core(vec![]), Err(TreeError::CoreNotStar));
    }

    #[test]
    fn weights_are_validated() {
        let t = Tree::path(3).unwrap();
        assert!(matches!(
            WeightedTree::new(t.clone(), vec![1, 2]),
            Err(TreeError::WeightCount { .. })
        ));
        assert_eq!(
            WeightedTree::new(t.clone(), vec![1, 0, 1]),
            Err(TreeError::ZeroWeight(1))
        );
        assert_eq!(WeightedTree::unit(t).total_weight(), 3);
    }

    #[test]
    fn rooted_view_sizes() {
        let t = Tree::path(5).unwrap();
        let r = t.rooted(2);
        assert_eq!(r.below[2], 5);
        assert_eq!(r.below[1], 2);
        assert_eq!(r.below[0], 1);
        assert!(r.is_ancestor(2, 0));
        assert!(!r.is_ancestor(1, 3));
    }
}
