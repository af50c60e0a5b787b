use crate::tree::{build_pte_tree, canonical_form, centroid, PteShape, Tree};

/// Returns `(α, p)` when `tree` is isomorphic to some `T_α(p)` with `α ≥ 1`.
///
/// Hangs the tree from its centroid, reads `α` from the branch size `3α + 1`
/// and `p_i` as the number of 4-paths under `v_i`, then confirms the
/// candidate by comparing canonical forms.
pub fn recognize_pte_tree(tree: &Tree) -> Option<PteShape> {
    let c = match centroid(tree)[..] {
        [c] => c,
        _ => return None,
    };
    let rooted = tree.rooted(c);
    let branches: Vec<_> = rooted.children(tree, c).collect();
    if branches.len() < 2 {
        return None;
    }
    let size = rooted.below[branches[0] as usize];
    if size < 4 || !(size - 1).is_multiple_of(3) || branches.iter().any(|&v| rooted.below[v as usize] != size) {
        return None;
    }
    let alpha = ((size - 1) / 3) as u32;
    let mut p = Vec::with_capacity(branches.len());
    for &vi in &branches {
        let hubs: Vec<_> = rooted.children(tree, vi).collect();
        if hubs.len() != alpha as usize || hubs.iter().any(|&h| rooted.below[h as usize] != 3) {
            return None;
        }
        // A 3-vertex hanging subtree is a path (one child) or a cherry (two).
        let paths = hubs.iter().filter(|&&h| rooted.children(tree, h).count() == 1).count();
        p.push(paths as u32);
    }
    let shape = PteShape::new(alpha, p).ok()?;
    (canonical_form(&build_pte_tree(&shape)) == canonical_form(tree)).then_some(shape)
}

/// All shapes `T_α(p)` for fixed `α` and `n`, `p` weakly decreasing.
pub fn pte_shapes(alpha: u32, n: usize) -> Vec<PteShape> {
    fn go(n: usize, cap: u32, cur: &mut Vec<u32>, alpha: u32, out: &mut Vec<PteShape>) {
        if cur.len() == n {
            out.push(PteShape::new(alpha, cur.clone()).expect("compatible by construction"));
            return;
        }
        for x in (0..=cap).rev() {
            cur.push(x);
            go(n, x, cur, alpha, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        go(n, alpha, &mut Vec::new(), alpha, &mut out);
    }
    out
}

/// Every shape with `α ≥ 1` whose tree has exactly `n_vertices` vertices.
pub fn pte_shapes_with_vertices(n_vertices: usize) -> Vec<PteShape> {
    let mut out = Vec::new();
    if n_vertices < 2 {
        return out;
    }
    let edges = n_vertices - 1;
    for alpha in 1u32.. {
        let branch = 3 * alpha as usize + 1;
        if 2 * branch > edges {
            break;
        }
        if edges.is_multiple_of(branch) {
            out.extend(pte_shapes(alpha, edges / branch));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let s = PteShape::new(2, vec![2, 0]).unwrap();
        assert_eq!(recognize_pte_tree(&build_pte_tree(&s)), Some(s));
        assert_eq!(recognize_pte_tree(&Tree::star(5).unwrap()), None);
        assert_eq!(recognize_pte_tree(&Tree::path(15).unwrap()), None);
        assert_eq!(recognize_pte_tree(&Tree::singleton()), None);
    }

    #[test]
    fn shape_enumeration() {
        // multisets of size 2 over 0..=2
        assert_eq!(pte_shapes(2, 2).len(), 6);
        assert!(pte_shapes(2, 1).is_empty());
        let with15 = pte_shapes_with_vertices(15);
        assert_eq!(with15.len(), 6);
        assert!(with15.iter().all(|s| s.vertex_count() == 15));
        // N = 9: (α=1, n=2)
        assert_eq!(pte_shapes_with_vertices(9).len(), 3);
    }
}
