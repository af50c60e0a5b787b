use rand::Rng;

use super::{Tree, Vertex};

/// Uniform random labelled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    assert!(n >= 1);
    if n <= 2 {
        return Tree::path(n).expect("small path");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &c in &code {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a leaf exists");
        edges.push((leaf as Vertex, c as Vertex));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.push(std::cmp::Reverse(c));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().unwrap();
    let std::cmp::Reverse(b) = leaves.pop().unwrap();
    edges.push((a as Vertex, b as Vertex));
    Tree::new(n, edges).expect("Prüfer decoding yields a tree")
}
