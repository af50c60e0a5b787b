use itertools::Itertools;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use utree_core::census::{
    binomial, branch_types, count_isomorphic_subtrees, pte_shapes, pte_shapes_with_vertices,
    OracleLimits,
};
use utree_core::pte::SearchLimits;
use utree_core::tree::random_tree;
use utree_core::{
    build_pte_tree, build_t_tree, canonical_form, count_subtrees_formula, count_subtrees_oracle,
    label_multiset, recognize_pte_tree, same_subtree_counts, search_pte, signature_from_u1,
    symmetry_count, u_k_polynomial, BranchType, LabelMultiset, PteShape, PteSignature,
    SubtreeAgreement, Tree, Vertex,
};

/// Every ordered `(q, t)` of length `n` with `Σ(q_i + t_i) ≤ k`.
fn ordered_types(n: usize, k: u32) -> Vec<BranchType> {
    let mut out = Vec::new();
    let cells = 2 * n;
    for values in (0..cells).map(|_| 0..=k).multi_cartesian_product() {
        if values.iter().sum::<u32>() <= k {
            let (q, t): (Vec<u32>, Vec<u32>) = values.chunks(2).map(|c| (c[0], c[1])).unzip();
            out.push(BranchType::new(q, t).unwrap());
        }
    }
    out
}

/// The subtree-count formula read literally: the sum over all `n!` permutations, then divided.
fn literal_formula(alpha: u32, p: &[u32], bt: &BranchType) -> u128 {
    let n = p.len();
    let mut total = 0u128;
    for perm in (0..n).permutations(n) {
        let mut term = 1u128;
        for i in 0..n {
            term *= binomial(p[i], bt.q()[perm[i]]) * binomial(alpha - p[i], bt.t()[perm[i]]);
        }
        total += term;
    }
    let sym = symmetry_count(bt);
    assert_eq!(total % sym, 0, "division by the symmetry count is exact");
    total / sym
}

fn universe(max_alpha: u32, max_n: usize) -> Vec<PteShape> {
    (0..=max_alpha)
        .flat_map(|a| (2..=max_n).flat_map(move |n| pte_shapes(a, n)))
        .collect()
}

fn shuffled(tree: &Tree, rng: &mut ChaCha8Rng) -> Tree {
    let mut perm: Vec<Vertex> = (0..tree.vertex_count() as Vertex).collect();
    perm.shuffle(rng);
    tree.relabel(&perm).unwrap()
}

#[test]
fn formula_matches_oracle_exhaustively() {
    let mut checked = 0;
    for shape in universe(3, 3) {
        let tree = build_pte_tree(&shape);
        for bt in ordered_types(shape.n(), 4) {
            let formula = count_subtrees_formula(shape.alpha(), shape.p(), &bt).unwrap();
            let oracle = count_subtrees_oracle(&tree, &bt, OracleLimits::default()).unwrap();
            assert_eq!(formula, oracle, "{shape:?} {bt:?}");
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn distinct_arrangements_equal_the_literal_quotient() {
    for shape in universe(3, 3) {
        for bt in ordered_types(shape.n(), 3) {
            assert_eq!(
                count_subtrees_formula(shape.alpha(), shape.p(), &bt).unwrap(),
                literal_formula(shape.alpha(), shape.p(), &bt)
            );
        }
    }
}

#[test]
fn symmetry_count_is_a_stabiliser_size() {
    for bt in ordered_types(4, 3) {
        let n = bt.len();
        let stab = (0..n)
            .permutations(n)
            .filter(|s| (0..n).all(|i| bt.q()[s[i]] == bt.q()[i] && bt.t()[s[i]] == bt.t()[i]))
            .count();
        assert_eq!(symmetry_count(&bt), stab as u128);
    }
}

#[test]
fn solutions_give_equal_subtree_counts() {
    for n in 2..=3 {
        for k in 1..=2 {
            for cert in search_pte(n, k, 6, SearchLimits::default()).unwrap() {
                let a = cert.a().to_u32().unwrap();
                let b = cert.b().to_u32().unwrap();
                let alpha = *a.iter().chain(&b).max().unwrap();
                let agreement = same_subtree_counts(alpha, &a, &b, cert.degree()).unwrap();
                assert!(agreement.agrees(), "{cert:?}");
                // one more level is always visible
                let beyond = same_subtree_counts(alpha, &a, &b, cert.degree() + 1).unwrap();
                assert!(!beyond.agrees(), "{cert:?}");
            }
        }
    }
    assert!(same_subtree_counts(6, &[1, 2, 6], &[0, 4, 5], 2).unwrap().agrees());
    match same_subtree_counts(2, &[1, 1], &[2, 0], 2).unwrap() {
        SubtreeAgreement::Differ { branch_type, left, right } => {
            assert_eq!(branch_type.weight(), 2);
            assert_ne!(left, right);
        }
        other => panic!("expected a witness, got {other:?}"),
    }
    assert!(same_subtree_counts(2, &[1, 1], &[2, 0], 0).unwrap().agrees());
}

#[test]
fn label_multiset_formula() {
    for shape in universe(4, 4) {
        let (a, n, beta) = (shape.alpha() as u64, shape.n() as u64, shape.beta());
        let mut expected: Vec<u32> = Vec::new();
        expected.extend(std::iter::repeat_n(1, (2 * n * a - beta) as usize));
        expected.extend(std::iter::repeat_n(2, beta as usize));
        expected.extend(std::iter::repeat_n(3, (n * a) as usize));
        expected.extend(std::iter::repeat_n(3 * shape.alpha() + 1, n as usize));
        assert_eq!(
            label_multiset(&build_pte_tree(&shape)),
            LabelMultiset::from_labels(expected),
            "{shape:?}"
        );
    }
}

#[test]
fn recognition_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for shape in universe(4, 4).into_iter().filter(|s| s.alpha() >= 1) {
        let tree = shuffled(&build_pte_tree(&shape), &mut rng);
        assert_eq!(recognize_pte_tree(&tree).as_ref(), Some(&shape));
        let u1 = u_k_polynomial(&tree, 1);
        assert_eq!(
            signature_from_u1(&u1, tree.vertex_count() as u64).unwrap(),
            Some(PteSignature {
                alpha: shape.alpha(),
                n: shape.n() as u64,
                beta: shape.beta(),
            })
        );
    }
    let t = build_pte_tree(&PteShape::new(6, vec![1, 2, 6]).unwrap());
    let found = recognize_pte_tree(&shuffled(&t, &mut rng)).unwrap();
    assert_eq!((found.alpha(), found.p()), (6, &[6, 2, 1][..]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_trees_are_recognised_exactly(n in 1usize..50, seed in any::<u64>()) {
        let t = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let code = canonical_form(&t);
        let member = pte_shapes_with_vertices(n)
            .into_iter()
            .find(|s| canonical_form(&build_pte_tree(s)) == code);
        prop_assert_eq!(recognize_pte_tree(&t), member.clone());
        let sig = signature_from_u1(&u_k_polynomial(&t, 1), n as u64).unwrap();
        if member.is_none() {
            // labels alone never mistake a random tree for a PTE tree here
            prop_assert_eq!(sig, None);
        }
    }
}

/// Copies of `T(q, t)` anywhere in the tree versus those around the core.
///
/// The enumeration over the core decomposition is a lower bound for the
/// number of all isomorphic copies; small patterns can also sit off-centre.
/// Mismatches are printed, not treated as failures.
#[test]
fn copies_outside_the_core_experiment() {
    let mut mismatches = 0;
    let mut compared = 0;
    for shape in universe(2, 4).into_iter().filter(|s| s.vertex_count() <= 20) {
        let host = build_pte_tree(&shape);
        for bt in branch_types(shape.n(), 3, shape.alpha()) {
            let pattern = build_t_tree(bt.q(), bt.t()).unwrap();
            let around_core = count_subtrees_formula(shape.alpha(), shape.p(), &bt).unwrap();
            let anywhere =
                count_isomorphic_subtrees(&host, &pattern, OracleLimits::default()).unwrap();
            assert!(anywhere >= around_core);
            compared += 1;
            if anywhere != around_core {
                mismatches += 1;
                println!(
                    "{shape:?} type {bt:?}: {around_core} around the core, {anywhere} in total"
                );
            }
        }
    }
    println!("{mismatches} of {compared} types have copies away from the core");
    assert!(compared > 0);
}
