//! The Seifert form carried over to the homology of the surface complement.
//!
//! `Φ: H₁(Σ) -> H₁(S³ \ Σ)` sends `a` to `a⁺ - a⁻`. In the core-circle basis
//! `h_v` and the meridian basis `c_v` it is read off the cover relation of
//! the matched tree, and its inverse off the sets `W_b` and `B_w`. The
//! pairing `θ̄(x, y) = θ(Φ⁻¹x, Φ⁻¹y)` is computed two independent ways:
//! by matrix conjugation and by closed-form path counts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::form::{seifert_matrix, FramedPlumbing, Sign};
use crate::linalg::IntMatrix;
use crate::tree::{Color, EdgeId, MatchedTree, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("edge #{0} does not exist")]
    UnknownEdge(usize),
    #[error("edges do not form a directed path (break after position {0})")]
    EdgesNotOnDirectedPath(usize),
}

/// `Φ` in canonical order: column `h_v` has `+1` at every upper cover of
/// `v` and `-1` at every lower cover.
pub fn phi_matrix(tree: &MatchedTree) -> IntMatrix {
    let mut m = IntMatrix::zeros(tree.basis_labels());
    for v in tree.vertices() {
        let col = tree.position(v);
        for u in tree.upper_covers(v) {
            m.set(tree.position(u), col, BigInt::one());
        }
        for u in tree.lower_covers(v) {
            m.set(tree.position(u), col, -BigInt::one());
        }
    }
    m
}

/// `Φ⁻¹` in canonical order: `c_b -> Σ_{w ∈ W_b} h_w`,
/// `c_w -> -Σ_{b ∈ B_w} h_b`.
pub fn phi_inverse_matrix(tree: &MatchedTree) -> IntMatrix {
    let mut m = IntMatrix::zeros(tree.basis_labels());
    for v in tree.vertices() {
        let col = tree.position(v);
        match tree.color(v) {
            Color::B => {
                for w in tree.below_set_unchecked(v) {
                    m.set(tree.position(w), col, BigInt::one());
                }
            }
            Color::W => {
                for b in tree.above_set_unchecked(v) {
                    m.set(tree.position(b), col, -BigInt::one());
                }
            }
        }
    }
    m
}

/// `Φ` and `Φ⁻¹` for one tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub phi: IntMatrix,
    pub phi_inverse: IntMatrix,
}

impl BasisChange {
    pub fn new(tree: &MatchedTree) -> Self {
        let change = BasisChange {
            phi: phi_matrix(tree),
            phi_inverse: phi_inverse_matrix(tree),
        };
        debug_assert!((&change.phi * &change.phi_inverse).is_identity());
        change
    }

    pub fn is_inverse_pair(&self) -> bool {
        (&self.phi * &self.phi_inverse).is_identity() && (&self.phi_inverse * &self.phi).is_identity()
    }
}

/// `θ̄` in the meridian basis, rows and columns in canonical order
/// (`c_v` at the position of `v`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingMatrix {
    matrix: IntMatrix,
    positions: Vec<usize>,
}

impl PairingMatrix {
    fn new(tree: &MatchedTree, matrix: IntMatrix) -> Self {
        let positions = tree.vertices().map(|v| tree.position(v)).collect();
        PairingMatrix { matrix, positions }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `θ̄(c_u, c_v)`.
    pub fn get(&self, u: VertexId, v: VertexId) -> &BigInt {
        self.matrix.get(self.positions[u.0], self.positions[v.0])
    }
}

/// `(Φ⁻¹)ᵀ θ Φ⁻¹`.
pub fn pairing_by_conjugation(fp: &FramedPlumbing) -> PairingMatrix {
    let tree = fp.tree();
    let theta = seifert_matrix(fp);
    let inv = phi_inverse_matrix(tree);
    let conj = &(&inv.transpose() * &theta) * &inv;
    PairingMatrix::new(tree, conj)
}

/// `θ̄` entry by entry from the closed forms.
///
/// * `θ̄(c_b, c_b') = Σ_{w ∈ W_b ∩ W_b'} f(w)`
/// * `θ̄(c_w, c_w') = Σ_{b ∈ B_w ∩ B_w'} f(b)`
/// * with `γ` the directed path from `b` down to `w` (empty if none):
///   `θ̄(c_w, c_b) = N₋,∼m(γ) - N₊,m(γ)` and
///   `θ̄(c_b, c_w) = N₋,m(γ) - N₊,∼m(γ)`, both zero without a path.
pub fn pairing_closed_form(fp: &FramedPlumbing) -> PairingMatrix {
    let tree = fp.tree();
    let mut m = IntMatrix::zeros(tree.basis_labels());
    for u in tree.vertices() {
        for v in tree.vertices() {
            let value = match (tree.color(u), tree.color(v)) {
                (Color::B, Color::B) => tree
                    .vertices()
                    .filter(|&w| tree.color(w) == Color::W && tree.le(w, u) && tree.le(w, v))
                    .map(|w| fp.f(w).clone())
                    .sum(),
                (Color::W, Color::W) => tree
                    .vertices()
                    .filter(|&b| tree.color(b) == Color::B && tree.le(u, b) && tree.le(v, b))
                    .map(|b| fp.f(b).clone())
                    .sum(),
                (Color::W, Color::B) => {
                    let n = counts_unchecked(fp, &tree.path_unchecked(v, u));
                    BigInt::from(n.minus_unmatched) - BigInt::from(n.plus_matched)
                }
                (Color::B, Color::W) => {
                    let n = counts_unchecked(fp, &tree.path_unchecked(u, v));
                    BigInt::from(n.minus_matched) - BigInt::from(n.plus_unmatched)
                }
            };
            if !value.is_zero() {
                m.set(tree.position(u), tree.position(v), value);
            }
        }
    }
    PairingMatrix::new(tree, m)
}

/// Numbers of `ε = ±1` edges on a path, split by membership in the matching.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathEdgeCounts {
    pub plus_matched: usize,
    pub minus_matched: usize,
    pub plus_unmatched: usize,
    pub minus_unmatched: usize,
}

/// Counts for `gamma`, which must be a directed path (each edge's head is
/// the next edge's tail).
pub fn path_edge_counts(fp: &FramedPlumbing, gamma: &[EdgeId]) -> Result<PathEdgeCounts, PairingError> {
    let tree = fp.tree();
    for e in gamma {
        if e.0 >= tree.edge_count() {
            return Err(PairingError::UnknownEdge(e.0));
        }
    }
    for (i, pair) in gamma.windows(2).enumerate() {
        if tree.edge(pair[0]).head != tree.edge(pair[1]).tail {
            return Err(PairingError::EdgesNotOnDirectedPath(i));
        }
    }
    Ok(counts_unchecked(fp, gamma))
}

fn counts_unchecked(fp: &FramedPlumbing, gamma: &[EdgeId]) -> PathEdgeCounts {
    let tree = fp.tree();
    let mut c = PathEdgeCounts::default();
    for &e in gamma {
        match (tree.edge(e).matched, fp.eps(e)) {
            (true, Sign::Plus) => c.plus_matched += 1,
            (true, Sign::Minus) => c.minus_matched += 1,
            (false, Sign::Plus) => c.plus_unmatched += 1,
            (false, Sign::Minus) => c.minus_unmatched += 1,
        }
    }
    c
}
