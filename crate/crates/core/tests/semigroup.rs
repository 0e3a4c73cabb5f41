use std::collections::BTreeMap;

use grassmann::polyring::ExponentVector;
use grassmann::semigroup::{
    all_decompositions, count_gradation, decompose, enumerate_gradation_elements, gradation, is_member, PathMultiset,
};
use grassmann::trees::{parse_tree, random_tree_spec, LeafPair, Tree};
use grassmann::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ev(v: &[u32]) -> ExponentVector {
    ExponentVector::new(v.to_vec())
}

fn even_gradations(n: usize, cap: u32) -> Vec<ExponentVector> {
    ExponentVector::all_up_to(n, cap).into_iter().filter(|e| e.degree() % 2 == 0).collect()
}

fn sample_trees(n: usize, count: usize, seed: u64) -> Vec<Tree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trees = vec![Tree::caterpillar(n).unwrap()];
    trees.extend((0..count).map(|_| parse_tree(&random_tree_spec(n, &mut rng)).unwrap()));
    trees
}

// Among all ways of writing an element as a sum of paths, exactly one has no
// unordered intersection, and it is the one `decompose` finds.
fn check_uniqueness(tree: &Tree, cap: u32) {
    let n = tree.n_leaves();
    for lambda in even_gradations(n, cap) {
        let mut by_value: BTreeMap<Vec<i64>, Vec<PathMultiset>> = BTreeMap::new();
        for m in all_decompositions(n, &lambda) {
            by_value.entry(m.sum_on(tree).unwrap()).or_default().push(m);
        }
        for (x, ms) in by_value {
            let canonical: Vec<_> = ms.iter().filter(|m| m.is_canonical(tree)).collect();
            assert_eq!(canonical.len(), 1, "tree {} value {x:?}", tree.to_spec());
            assert_eq!(&decompose(tree, &x).unwrap(), canonical[0]);
            assert_eq!(gradation(tree, &x).unwrap(), lambda);
        }
    }
}

#[test]
fn unique_decomposition_small_trees() {
    for n in 3..=5 {
        for tree in sample_trees(n, 4, 11 + n as u64) {
            check_uniqueness(&tree, 8);
        }
    }
}

#[test]
fn unique_decomposition_six_leaves() {
    for tree in sample_trees(6, 3, 71) {
        check_uniqueness(&tree, 6);
    }
}

#[test]
fn decompose_inverts_sum_on_canonical_multisets() {
    for tree in sample_trees(6, 3, 5) {
        for lambda in even_gradations(6, 6) {
            for m in all_decompositions(6, &lambda).into_iter().filter(|m| m.is_canonical(&tree)) {
                assert_eq!(decompose(&tree, &m.sum_on(&tree).unwrap()).unwrap(), m);
            }
        }
    }
}

#[test]
fn gradation_pieces_match_oracle_on_every_tree() {
    for n in 4..=6 {
        let cap = if n == 6 { 6 } else { 8 };
        for tree in sample_trees(n, 2, 100 + n as u64) {
            for lambda in even_gradations(n, cap) {
                let els = enumerate_gradation_elements(&tree, &lambda).unwrap();
                assert_eq!(BigInt::from(els.len()), count_gradation(n, &lambda), "{}", tree.to_spec());
                for el in &els {
                    assert!(el.decomposition.is_canonical(&tree));
                    assert_eq!(el.decomposition.gradation(n), lambda);
                }
            }
        }
    }
}

#[test]
fn oracle_frozen_values() {
    let cases: [(&[u32], i64); 6] = [
        (&[1, 1, 1, 1], 2),
        (&[2, 1, 1, 1, 1], 3),
        (&[2, 2, 2, 2], 3),
        (&[1, 1, 1, 1, 1, 1], 5),
        (&[2, 2, 2, 2, 2], 6),
        (&[4, 4, 4, 4, 4], 16),
    ];
    for (lambda, expected) in cases {
        assert_eq!(count_gradation(lambda.len(), &ev(lambda)), BigInt::from(expected), "{lambda:?}");
    }
}

// Independent count: enumerate every multiset and discard the ones whose
// support contains an embracing pair.
#[test]
fn oracle_matches_filtered_full_enumeration() {
    let cases: [(&[u32], usize); 6] = [
        (&[1, 1, 1, 1], 3),
        (&[2, 1, 1, 1, 1], 6),
        (&[2, 2, 2, 2], 6),
        (&[1, 1, 1, 1, 1, 1], 15),
        (&[2, 2, 2, 2, 2], 22),
        (&[4, 4, 4, 4, 4], 158),
    ];
    for (lambda, total) in cases {
        let n = lambda.len();
        let all = all_decompositions(n, &ev(lambda));
        assert_eq!(all.len(), total);
        let embracing = all
            .iter()
            .filter(|m| {
                let s: Vec<LeafPair> = m.iter().map(|(p, _)| p).collect();
                s.iter().any(|p| s.iter().any(|q| p.embraces(q)))
            })
            .count();
        assert_eq!(BigInt::from(total - embracing), count_gradation(n, &ev(lambda)));
    }
}

#[test]
fn odd_degree_pieces_are_empty() {
    assert_eq!(count_gradation(5, &ev(&[1, 1, 1, 0, 0])), BigInt::from(0));
    assert_eq!(count_gradation(4, &ev(&[3, 0, 0, 1])), BigInt::from(0));
    assert_eq!(count_gradation(4, &ev(&[1, 1, 0, 0])), BigInt::from(1));
}

// Forgetting the two edges of the last cherry sends S(T_{n+1}) to S(T_n)
// and commutes with the canonical decomposition.
#[test]
fn projection_commutes_with_decomposition() {
    for n in 3..=5 {
        let big = Tree::caterpillar(n + 1).unwrap();
        let small = Tree::caterpillar(n).unwrap();
        let keep = small.num_edges();
        for lambda in even_gradations(n + 1, 8) {
            for el in enumerate_gradation_elements(&big, &lambda).unwrap() {
                let x = &el.values[..keep];
                assert!(is_member(&small, x).unwrap());
                let projected: PathMultiset = el
                    .decomposition
                    .iter()
                    .filter(|(p, _)| p.i < n)
                    .map(|(p, m)| (LeafPair::new(p.i, p.j.min(n)).unwrap(), m))
                    .collect();
                assert_eq!(decompose(&small, x).unwrap(), projected);
            }
        }
    }
}

#[test]
fn non_members_are_rejected() {
    let t = Tree::caterpillar(5).unwrap();
    for x in [[1, 0, 0, 0, 0, 0, 0], [1, 1, 1, 0, 0, 0, 0], [0, 0, 2, 1, 1, 0, 0], [3, 1, 0, 0, 0, 0, 0]] {
        assert!(!is_member(&t, &x).unwrap(), "{x:?}");
    }
    assert!(is_member(&t, &[1, 1, 0, 0, 0, 0, 0]).unwrap());
}
