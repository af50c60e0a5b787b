use std::fmt;

use super::{centroid, Tree, Vertex};

/// AHU code of a tree rooted at its centroid; equal codes iff isomorphic trees.
///
/// The code is the balanced-parenthesis word `(` children… `)` with child
/// words sorted, stored as bytes so that comparison is plain lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("code is ASCII"))
    }
}

pub(crate) fn rooted_code(tree: &Tree, root: Vertex) -> Vec<u8> {
    let rooted = tree.rooted(root);
    let mut codes: Vec<Option<Vec<u8>>> = vec![None; tree.vertex_count()];
    for &u in rooted.preorder.iter().rev() {
        let mut kids: Vec<Vec<u8>> = rooted
            .children(tree, u)
            .map(|w| codes[w as usize].take().expect("children are coded first"))
            .collect();
        kids.sort_unstable();
        let mut code = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
        code.push(b'(');
        for k in kids {
            code.extend_from_slice(&k);
        }
        code.push(b')');
        codes[u as usize] = Some(code);
    }
    codes[root as usize].take().expect("root is coded")
}

pub fn canonical_form(tree: &Tree) -> CanonicalCode {
    let code = match centroid(tree)[..] {
        [c] => rooted_code(tree, c),
        [a, b] => rooted_code(tree, a).min(rooted_code(tree, b)),
        _ => unreachable!("centroid has one or two vertices"),
    };
    CanonicalCode(code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_pte_tree, PteShape};

    fn t(alpha: u32, p: Vec<u32>) -> Tree {
        build_pte_tree(&PteShape::new(alpha, p).unwrap())
    }

    #[test]
    fn relabelled_copies_agree() {
        let a = t(2, vec![1, 1]);
        let n = a.vertex_count() as Vertex;
        let perm: Vec<Vertex> = (0..n).map(|v| (v * 7 + 3) % n).collect();
        let b = a.relabel(&perm).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn smallest_pair_differs() {
        assert_ne!(canonical_form(&t(2, vec![1, 1])), canonical_form(&t(2, vec![2, 0])));
    }

    #[test]
    fn branch_order_is_immaterial() {
        use crate::tree::build_t_tree;
        let a = build_t_tree(&[1, 2, 6], &[5, 4, 0]).unwrap();
        let b = build_t_tree(&[6, 1, 2], &[0, 5, 4]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn double_centroid_paths() {
        let p4 = Tree::path(4).unwrap();
        let q4 = Tree::new(4, vec![(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&p4), canonical_form(&q4));
        assert_ne!(canonical_form(&p4), canonical_form(&Tree::star(4).unwrap()));
        assert_eq!(canonical_form(&Tree::singleton()).to_string(), "()");
    }
}
