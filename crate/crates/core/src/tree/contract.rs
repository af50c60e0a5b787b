use super::{EdgeId, Tree, TreeError, Vertex, WeightedTree};

/// Contracts every edge outside `subtree_edges`, summing weights.
///
/// The result `S_{ω,T}` has the vertices of the subtree `(W, F)`, relabelled
/// `0..|W|` in increasing original id, and the edges of `F` in the order given.
/// An empty `F` leaves a single vertex carrying all the weight.
pub fn contract_to(wt: &WeightedTree, subtree_edges: &[EdgeId]) -> Result<WeightedTree, TreeError> {
    let tree = wt.tree();
    let n = tree.vertex_count();
    let mut in_f = vec![false; tree.edge_count()];
    for &e in subtree_edges {
        tree.check_edge(e)?;
        in_f[e] = true;
    }
    let mut in_w = vec![false; n];
    for &e in subtree_edges {
        let (u, v) = tree.edge(e)?;
        in_w[u as usize] = true;
        in_w[v as usize] = true;
    }
    if subtree_edges.is_empty() {
        in_w[tree.root().unwrap_or(0) as usize] = true;
    }
    let new_id: Vec<Option<Vertex>> = {
        let mut next = 0;
        in_w.iter()
            .map(|&w| {
                w.then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect()
    };
    let kept = new_id.iter().flatten().count();

    // Each component of (V, E \ F) holds exactly one kept vertex when F is a subtree.
    let mut owner: Vec<Option<Vertex>> = vec![None; n];
    let mut weights = vec![0u32; kept];
    for start in 0..n {
        let Some(id) = new_id[start] else { continue };
        let mut stack = vec![start as Vertex];
        owner[start] = Some(id);
        while let Some(u) = stack.pop() {
            weights[id as usize] += wt.weight(u);
            for &(w, e) in tree.neighbors(u) {
                if in_f[e] || owner[w as usize].is_some() {
                    continue;
                }
                if new_id[w as usize].is_some() {
                    return Err(TreeError::SubtreeNotConnected);
                }
                owner[w as usize] = Some(id);
                stack.push(w);
            }
        }
    }
    let edges = subtree_edges
        .iter()
        .map(|&e| {
            let (u, v) = tree.edges()[e];
            (new_id[u as usize].unwrap(), new_id[v as usize].unwrap())
        })
        .collect();
    let contracted = Tree::new(kept, edges).map_err(|_| TreeError::SubtreeNotConnected)?;
    WeightedTree::new(contracted, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_pte_tree, PteShape};

    #[test]
    fn all_edges_is_identity() {
        let t = Tree::path(5).unwrap();
        let wt = WeightedTree::new(t, vec![1, 2, 3, 4, 5]).unwrap();
        let all: Vec<EdgeId> = (0..4).collect();
        assert_eq!(contract_to(&wt, &all).unwrap(), wt);
    }

    #[test]
    fn empty_set_collapses_to_one_vertex() {
        let wt = WeightedTree::unit(Tree::path(6).unwrap());
        let c = contract_to(&wt, &[]).unwrap();
        assert_eq!(c.tree().vertex_count(), 1);
        assert_eq!(c.weights(), &[6]);
    }

    #[test]
    fn core_contraction_of_t2_11() {
        let t = build_pte_tree(&PteShape::new(2, vec![1, 1]).unwrap());
        let core = t.core_edges().unwrap().to_vec();
        let c = contract_to(&WeightedTree::unit(t), &core).unwrap();
        assert_eq!(c.tree().vertex_count(), 3);
        let mut w = c.weights().to_vec();
        w.sort_unstable();
        assert_eq!(w, vec![1, 7, 7]);
        assert_eq!(c.total_weight(), 15);
    }

    #[test]
    fn disconnected_edge_set_is_rejected() {
        let wt = WeightedTree::unit(Tree::path(5).unwrap());
        assert_eq!(contract_to(&wt, &[0, 2]), Err(TreeError::SubtreeNotConnected));
        assert_eq!(contract_to(&wt, &[9]), Err(TreeError::InvalidEdge(9)));
    }
}
