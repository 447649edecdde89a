mod common;

use std::collections::{BTreeSet, VecDeque};

use arbor::tree::{enumerate_matched_trees, find_matching, Color, MatchedTree, VertexId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

fn all_small_trees(max_pairs: usize) -> Vec<MatchedTree> {
    (1..=max_pairs)
        .flat_map(|n| enumerate_matched_trees(n).unwrap())
        .collect()
}

/// `u <= v` from a BFS along directed edges starting at `v`.
fn reachable_from(tree: &MatchedTree, v: VertexId) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([v.0]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for e in tree.edges() {
            if e.tail == x && seen.insert(e.head.0) {
                queue.push_back(e.head);
            }
        }
    }
    seen
}

#[test]
fn greedy_matching_agrees_with_exhaustive_search_up_to_eight_vertices() {
    for n in 1..=8 {
        let mut with_matching = 0usize;
        for_each_labeled_tree(n, |edges| {
            let greedy = find_matching(n, edges).unwrap();
            let all = all_perfect_matchings(n, edges);
            assert!(all.len() <= 1, "a tree has at most one perfect matching");
            assert_eq!(greedy, all.into_iter().next(), "{edges:?}");
            with_matching += usize::from(greedy.is_some());
        });
        if n % 2 == 1 {
            assert_eq!(with_matching, 0);
        }
    }
}

#[test]
fn enumeration_matches_brute_force_up_to_four_pairs() {
    for n in 1..=4 {
        let ours = enumerate_matched_trees(n).unwrap();
        assert_eq!(ours.len(), brute_force_matched_tree_count(n), "n = {n}");
        let codes: BTreeSet<String> = ours.iter().map(MatchedTree::canonical_code).collect();
        assert_eq!(codes.len(), ours.len());
    }
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_matched_trees(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 3, 8, 27]);
}

#[test]
fn free_tree_oracle_counts() {
    let counts: Vec<usize> = (1..=10).map(|n| free_trees(n).len()).collect();
    assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
}

#[test]
fn order_facts_on_enumerated_trees() {
    for tree in all_small_trees(4) {
        let vs: Vec<VertexId> = tree.vertices().collect();
        for &v in &vs {
            let down = reachable_from(&tree, v);
            for &u in &vs {
                assert_eq!(tree.leq(u, v).unwrap(), down.contains(&u.0));
                let edge = tree.edges().iter().any(|e| e.tail == v && e.head == u);
                assert_eq!(tree.covers_one(u, v).unwrap(), edge);
                // Hasse covers: u < v with nothing strictly between
                let strictly_between = vs
                    .iter()
                    .any(|&x| x != u && x != v && tree.leq(u, x).unwrap() && tree.leq(x, v).unwrap());
                let cover = u != v && tree.leq(u, v).unwrap() && !strictly_between;
                assert_eq!(cover, edge);
                if u != v && tree.leq(u, v).unwrap() {
                    assert!(!tree.leq(v, u).unwrap(), "antisymmetry");
                }
            }
        }
        for v in tree.minimal_elements() {
            assert_eq!(tree.color(v), Color::W);
        }
        for v in tree.maximal_elements() {
            assert_eq!(tree.color(v), Color::B);
        }
        let bs: Vec<VertexId> = vs.iter().copied().filter(|&v| tree.color(v) == Color::B).collect();
        let ws: Vec<VertexId> = vs.iter().copied().filter(|&v| tree.color(v) == Color::W).collect();
        let set = |xs: Vec<VertexId>| xs.into_iter().collect::<BTreeSet<_>>();
        for &b in &bs {
            for &b2 in &bs {
                let sub = set(tree.below_set(b).unwrap()).is_subset(&set(tree.below_set(b2).unwrap()));
                assert_eq!(tree.leq(b, b2).unwrap(), sub);
            }
        }
        for &w in &ws {
            for &w2 in &ws {
                let sup = set(tree.above_set(w).unwrap()).is_superset(&set(tree.above_set(w2).unwrap()));
                assert_eq!(tree.leq(w, w2).unwrap(), sup);
            }
        }
        // canonical order is a linear extension, minimal first
        let order = tree.canonical_order();
        for (i, &a) in order.iter().enumerate() {
            assert_eq!(tree.position(a), i);
            for &b in &order[i + 1..] {
                assert!(!tree.leq(b, a).unwrap() || a == b);
            }
        }
    }
}

#[test]
fn matched_edges_point_from_b_to_w() {
    for tree in all_small_trees(5) {
        for e in tree.edges() {
            if e.matched {
                assert_eq!((tree.color(e.tail), tree.color(e.head)), (Color::B, Color::W));
                assert_eq!(tree.mate(e.tail), e.head);
            } else {
                assert_eq!((tree.color(e.tail), tree.color(e.head)), (Color::W, Color::B));
            }
        }
    }
}

#[test]
fn canonical_code_ignores_labels_and_listing_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let known: BTreeSet<String> = enumerate_matched_trees(5)
        .unwrap()
        .iter()
        .map(MatchedTree::canonical_code)
        .collect();
    for _ in 0..200 {
        let t = random_matched_tree(&mut rng, 5);
        assert!(known.contains(&t.canonical_code()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn directed_paths_walk_down(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_matched_tree(&mut rng, n);
        for hi in tree.vertices() {
            for lo in tree.vertices() {
                let path = tree.directed_path(hi, lo).unwrap();
                if tree.leq(lo, hi).unwrap() {
                    let mut cur = hi;
                    for e in &path {
                        prop_assert_eq!(tree.edge(*e).tail, cur);
                        cur = tree.edge(*e).head;
                    }
                    prop_assert_eq!(cur, lo);
                } else {
                    prop_assert!(path.is_empty());
                }
            }
        }
    }

    #[test]
    fn uncolored_input_gets_a_valid_coloring(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_matched_tree(&mut rng, n);
        let edges: Vec<(usize, usize)> = tree.edges().iter().map(|e| (e.tail.0, e.head.0)).collect();
        let rebuilt = tree_from_edges(tree.vertex_count(), &edges);
        prop_assert_eq!(rebuilt.color(VertexId(0)), Color::W);
        let same = rebuilt.canonical_code() == tree.canonical_code();
        // either the same matched tree or its color-reversed twin
        prop_assert!(same || tree.color(VertexId(0)) == Color::B);
    }
}
