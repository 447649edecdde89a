mod common;

use arbor::form::{FramedPlumbing, Sign};
use arbor::pairing::{pairing_by_conjugation, pairing_closed_form, phi_inverse_matrix, phi_matrix, BasisChange};
use arbor::tree::{enumerate_matched_trees, Color, MatchedTree};
use arbor::IntMatrix;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;

/// `Φ` straight from the edge list: an edge `x -> y` makes `x` an upper
/// cover of `y` and `y` a lower cover of `x`.
fn phi_from_edges(tree: &MatchedTree) -> IntMatrix {
    let mut m = IntMatrix::zeros(tree.basis_labels());
    for e in tree.edges() {
        let (x, y) = (tree.position(e.tail), tree.position(e.head));
        m.set(x, y, BigInt::from(1));
        m.set(y, x, BigInt::from(-1));
    }
    m
}

#[test]
fn phi_inverts_on_enumerated_trees() {
    for n in 1..=5 {
        for tree in enumerate_matched_trees(n).unwrap() {
            assert_eq!(phi_matrix(&tree), phi_from_edges(&tree));
            assert!(BasisChange::new(&tree).is_inverse_pair());
        }
    }
}

#[test]
fn closed_form_matches_conjugation_exhaustively_up_to_six_vertices() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=3 {
        for tree in enumerate_matched_trees(n).unwrap() {
            for framing in [admissible_framing(&mut rng, &tree), random_framing(&mut rng, &tree)] {
                let base = FramedPlumbing::new(tree.clone(), framing, vec![Sign::Plus; tree.edge_count()]).unwrap();
                for fp in base.all_plumbings() {
                    assert_eq!(pairing_closed_form(&fp), pairing_by_conjugation(&fp));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closed_form_matches_conjugation(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_matched_tree(&mut rng, n);
        let framing = random_framing(&mut rng, &tree);
        let fp = random_plumbing(&mut rng, &tree, framing);
        prop_assert_eq!(pairing_closed_form(&fp), pairing_by_conjugation(&fp));
    }

    #[test]
    fn diagonal_and_vanishing_entries(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_matched_tree(&mut rng, n);
        let framing = random_framing(&mut rng, &tree);
        let fp = random_plumbing(&mut rng, &tree, framing.clone());
        let p = pairing_by_conjugation(&fp);
        for v in tree.vertices() {
            let expected: BigInt = match tree.color(v) {
                Color::B => tree.below_set(v).unwrap().iter().map(|w| &framing[w.0]).sum(),
                Color::W => tree.above_set(v).unwrap().iter().map(|b| &framing[b.0]).sum(),
            };
            prop_assert_eq!(p.get(v, v), &expected);
        }
        for b in tree.vertices().filter(|&v| tree.color(v) == Color::B) {
            for w in tree.vertices().filter(|&v| tree.color(v) == Color::W) {
                if !tree.leq(w, b).unwrap() {
                    prop_assert!(p.get(b, w).is_zero());
                    prop_assert!(p.get(w, b).is_zero());
                }
            }
        }
    }

    #[test]
    fn phi_inverse_is_an_integer_inverse(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_matched_tree(&mut rng, n);
        let phi = phi_from_edges(&tree);
        let inv = phi_inverse_matrix(&tree);
        prop_assert!((&phi * &inv).is_identity());
        prop_assert!((&inv * &phi).is_identity());
        let det = rational_determinant(&phi.rows());
        prop_assert!(det == BigInt::from(1) || det == BigInt::from(-1));
    }
}
