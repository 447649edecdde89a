//! Framed plumbings and their Seifert forms.
//!
//! A [`FramedPlumbing`] is a matched tree together with a framing
//! `f: V -> Z` (full right-handed twists of the annulus at each vertex) and
//! a plumbing sign `ε: E -> {±1}` choosing a positive or negative Murasugi
//! sum along each edge. The surface itself is never embedded; everything
//! here is computed from the Seifert matrix in the core-circle basis `h_v`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{IntMatrix, IntPolynomial};
use crate::tree::{Color, EdgeId, MatchedTree, TreeError, VertexId};

/// Plumbing sign of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("framing has {got} values for {expected} vertices")]
    FramingLength { expected: usize, got: usize },
    #[error("plumbing has {got} signs for {expected} edges")]
    PlumbingLength { expected: usize, got: usize },
    #[error("no framing given for vertex `{0}`")]
    MissingFraming(String),
    #[error("framing of vertex `{0}` is zero")]
    ZeroFraming(String),
}

/// A matched tree with framing and plumbing signs.
///
/// `framing` is indexed by [`VertexId`], `plumbing` by [`EdgeId`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedPlumbing {
    tree: MatchedTree,
    framing: Vec<BigInt>,
    plumbing: Vec<Sign>,
}

impl FramedPlumbing {
    pub fn new(tree: MatchedTree, framing: Vec<BigInt>, plumbing: Vec<Sign>) -> Result<Self, FormError> {
        if framing.len() != tree.vertex_count() {
            return Err(FormError::FramingLength {
                expected: tree.vertex_count(),
                got: framing.len(),
            });
        }
        if plumbing.len() != tree.edge_count() {
            return Err(FormError::PlumbingLength {
                expected: tree.edge_count(),
                got: plumbing.len(),
            });
        }
        Ok(FramedPlumbing {
            tree,
            framing,
            plumbing,
        })
    }

    /// Framing given by label; every edge gets `sign`.
    pub fn with_labels(tree: MatchedTree, framing: &[(&str, i64)], sign: Sign) -> Result<Self, FormError> {
        let by_label: HashMap<&str, i64> = framing.iter().copied().collect();
        let f = tree
            .vertices()
            .map(|v| {
                let label = tree.label(v);
                by_label
                    .get(label)
                    .map(|&x| BigInt::from(x))
                    .ok_or_else(|| FormError::MissingFraming(label.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let eps = vec![sign; tree.edge_count()];
        FramedPlumbing::new(tree, f, eps)
    }

    pub fn tree(&self) -> &MatchedTree {
        &self.tree
    }

    pub fn framing(&self) -> &[BigInt] {
        &self.framing
    }

    pub fn plumbing(&self) -> &[Sign] {
        &self.plumbing
    }

    pub fn f(&self, v: VertexId) -> &BigInt {
        &self.framing[v.0]
    }

    pub fn eps(&self, e: EdgeId) -> Sign {
        self.plumbing[e.0]
    }

    /// Same tree and framing, different plumbing signs.
    pub fn with_plumbing(&self, plumbing: Vec<Sign>) -> Result<Self, FormError> {
        FramedPlumbing::new(self.tree.clone(), self.framing.clone(), plumbing)
    }

    /// Plumbing number `k`: edge `e` is negative iff bit `e` of `k` is set.
    pub fn plumbing_from_index(edge_count: usize, k: u64) -> Vec<Sign> {
        (0..edge_count)
            .map(|e| if (k >> e) & 1 == 1 { Sign::Minus } else { Sign::Plus })
            .collect()
    }

    pub fn plumbing_index(&self) -> u64 {
        self.plumbing
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Minus)
            .fold(0, |acc, (e, _)| acc | (1 << e))
    }

    /// All `2^|E|` plumbings of the same framed tree, by plumbing index.
    pub fn all_plumbings(&self) -> impl Iterator<Item = FramedPlumbing> + '_ {
        let m = self.tree.edge_count();
        assert!(m < 64, "too many edges to enumerate plumbings");
        (0..1u64 << m).map(move |k| FramedPlumbing {
            tree: self.tree.clone(),
            framing: self.framing.clone(),
            plumbing: FramedPlumbing::plumbing_from_index(m, k),
        })
    }

    pub(crate) fn require_nonzero_framing(&self) -> Result<(), FormError> {
        match self.tree.vertices().find(|v| self.framing[v.0].is_zero()) {
            Some(v) => Err(FormError::ZeroFraming(self.tree.label(v).to_string())),
            None => Ok(()),
        }
    }

    pub fn check_admissible(&self, level: AdmissibilityLevel) -> AdmissibilityReport {
        check_admissible(&self.tree, &self.framing, level)
    }
}

/// Seifert matrix `θ(h_u, h_v)` in canonical order.
///
/// Diagonal entries are the framings. For `v <₁ v'` a positive edge gives
/// `θ(v', v) = 1`, a negative edge gives `θ(v, v') = -1`; everything else is
/// zero.
pub fn seifert_matrix(fp: &FramedPlumbing) -> IntMatrix {
    let tree = fp.tree();
    let mut m = IntMatrix::zeros(tree.basis_labels());
    for v in tree.vertices() {
        let i = tree.position(v);
        m.set(i, i, fp.f(v).clone());
    }
    for e in tree.edge_ids() {
        let edge = tree.edge(e);
        let (lo, hi) = (tree.position(edge.head), tree.position(edge.tail));
        match fp.eps(e) {
            Sign::Plus => m.set(hi, lo, BigInt::one()),
            Sign::Minus => m.set(lo, hi, -BigInt::one()),
        }
    }
    m
}

/// `θᵀ - θ`: entry `(u, v)` is `+1` iff `u <₁ v`, `-1` iff `v <₁ u`.
pub fn intersection_matrix(fp: &FramedPlumbing) -> IntMatrix {
    let theta = seifert_matrix(fp);
    &theta.transpose() - &theta
}

/// `det(θ - tθᵀ)`, with the global sign fixed so that `Δ(1) = 1`.
pub fn alexander_polynomial(fp: &FramedPlumbing) -> Result<IntPolynomial, FormError> {
    fp.require_nonzero_framing()?;
    let theta = seifert_matrix(fp);
    let theta_t = theta.transpose();
    let n = theta.dim();
    let values: Vec<BigInt> = (0..=n)
        .map(|t| {
            let t = BigInt::from(t);
            (&theta - &theta_t.scale(&t)).determinant()
        })
        .collect();
    let poly = IntPolynomial::interpolate(&values);
    if poly.eval(&BigInt::one()).is_negative() {
        Ok(poly.negate())
    } else {
        Ok(poly)
    }
}

/// `|det(θ + θᵀ)|`.
pub fn knot_determinant(fp: &FramedPlumbing) -> BigInt {
    let theta = seifert_matrix(fp);
    (&theta + &theta.transpose()).determinant().abs()
}

/// Signature of `θ + θᵀ`.
pub fn knot_signature(fp: &FramedPlumbing) -> i64 {
    let theta = seifert_matrix(fp);
    (&theta + &theta.transpose()).signature()
}

/// Genus of the plumbed surface, `|V| / 2`.
pub fn surface_genus(fp: &FramedPlumbing) -> usize {
    fp.tree().vertex_count() / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdmissibilityLevel {
    /// Framings nonzero.
    Basic,
    /// Additionally `|f(v)| >= 2` and `v -> |f(v)|` injective.
    Theorem,
    /// Additionally `f < 0` on `B` and `f > 0` on `W`.
    Alternating,
}

impl fmt::Display for AdmissibilityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdmissibilityLevel::Basic => "basic",
            AdmissibilityLevel::Theorem => "theorem",
            AdmissibilityLevel::Alternating => "alternating",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ZeroFraming {
        vertex: String,
    },
    UnitFraming {
        vertex: String,
    },
    RepeatedMagnitude {
        first: String,
        second: String,
        magnitude: BigInt,
    },
    WrongSign {
        vertex: String,
        color: Color,
        value: BigInt,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroFraming { vertex } => write!(f, "f({vertex}) = 0"),
            Violation::UnitFraming { vertex } => write!(f, "|f({vertex})| = 1"),
            Violation::RepeatedMagnitude {
                first,
                second,
                magnitude,
            } => {
                write!(f, "|f({first})| = |f({second})| = {magnitude}")
            }
            Violation::WrongSign { vertex, color, value } => {
                let want = if *color == Color::B { "negative" } else { "positive" };
                write!(f, "f({vertex}) = {value} on {color}-vertex, expected {want}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub level: AdmissibilityLevel,
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks a framing (indexed by [`VertexId`]) against `level` and every
/// level below it. Violations are listed in canonical vertex order.
pub fn check_admissible(tree: &MatchedTree, framing: &[BigInt], level: AdmissibilityLevel) -> AdmissibilityReport {
    let mut violations = Vec::new();
    let order = tree.canonical_order();
    for &v in order {
        if framing[v.0].is_zero() {
            violations.push(Violation::ZeroFraming {
                vertex: tree.label(v).to_string(),
            });
        }
    }
    if level >= AdmissibilityLevel::Theorem {
        let mut seen: HashMap<BigInt, VertexId> = HashMap::new();
        for &v in order {
            let mag = framing[v.0].abs();
            if mag.is_one() {
                violations.push(Violation::UnitFraming {
                    vertex: tree.label(v).to_string(),
                });
            }
            if mag.is_zero() {
                continue;
            }
            if let Some(&first) = seen.get(&mag) {
                violations.push(Violation::RepeatedMagnitude {
                    first: tree.label(first).to_string(),
                    second: tree.label(v).to_string(),
                    magnitude: mag,
                });
            } else {
                seen.insert(mag, v);
            }
        }
    }
    if level >= AdmissibilityLevel::Alternating {
        for &v in order {
            let value = &framing[v.0];
            let color = tree.color(v);
            let ok = match color {
                Color::B => value.is_negative(),
                Color::W => value.is_positive(),
            };
            if !ok {
                violations.push(Violation::WrongSign {
                    vertex: tree.label(v).to_string(),
                    color,
                    value: value.clone(),
                });
            }
        }
    }
    AdmissibilityReport { level, violations }
}
