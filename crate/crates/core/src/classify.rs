//! Deciding whether two plumbing labelings of the same framed tree can give
//! equivalent surfaces.
//!
//! An equivalence of surfaces induces an isomorphism on the homology of the
//! complements that preserves the pairing `θ̄` and carries the support of
//! sutured Floer homology (the box `∏_v [0, |f(v)| - 1]`) to itself. When
//! `v -> |f(v)|` is injective and every `|f(v)| >= 2`, the box edges have
//! pairwise distinct divisibilities, which forces the isomorphism to be
//! `c_v -> ±c'_v`. So two labelings can only be equivalent if a diagonal sign
//! conjugation carries one pairing matrix to the other; this module searches
//! for such signs and otherwise reports an entry that no signs can fix.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::form::{check_admissible, AdmissibilityLevel, FormError, FramedPlumbing, Sign, Violation};
use crate::linalg::IntMatrix;
use crate::pairing::{pairing_by_conjugation, PairingMatrix};
use crate::tree::{MatchedTree, VertexId};

/// Labelings are enumerated exhaustively; beyond this many edges the count
/// is refused.
pub const MAX_CLASSIFY_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("the two plumbings have different {0}")]
    MismatchedUnderlying(&'static str),
    #[error("framing is not admissible: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InadmissibleFraming(Vec<Violation>),
    #[error("{0} edges is too many to enumerate all labelings (limit {MAX_CLASSIFY_EDGES})")]
    TooManyEdges(usize),
    #[error("torus parameter p = {0} must be positive")]
    InvalidTorusParameter(i64),
}

/// The lattice box `∏_v [0, |f(v)| - 1]` of Spin^c structures with nonzero
/// sutured Floer homology, axes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinCBox {
    labels: Vec<String>,
    sides: Vec<BigInt>,
}

impl SpinCBox {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of lattice points along each axis.
    pub fn sides(&self) -> &[BigInt] {
        &self.sides
    }

    pub fn volume(&self) -> BigInt {
        self.sides.iter().product()
    }

    /// Axes of length 1, which collapse the box.
    pub fn degenerate_axes(&self) -> Vec<&str> {
        self.labels
            .iter()
            .zip(&self.sides)
            .filter(|(_, s)| s.is_one())
            .map(|(l, _)| l.as_str())
            .collect()
    }

    /// Number of non-degenerate axes.
    pub fn dimension(&self) -> usize {
        self.sides.iter().filter(|s| **s > BigInt::one()).count()
    }

    pub fn contains(&self, point: &[BigInt]) -> bool {
        point.len() == self.sides.len() && point.iter().zip(&self.sides).all(|(a, s)| !a.is_negative() && a < s)
    }

    /// Image of the box under `c_v -> σ_v c_v`, translated back to start at
    /// the origin. `signs` is indexed by axis.
    pub fn image_under(&self, signs: &[Sign]) -> SpinCBox {
        assert_eq!(signs.len(), self.sides.len());
        let sides = self
            .sides
            .iter()
            .zip(signs)
            .map(|(s, sign)| {
                let far = s - BigInt::one();
                let (lo, hi) = match sign {
                    Sign::Plus => (BigInt::zero(), far),
                    Sign::Minus => (-far, BigInt::zero()),
                };
                hi - lo + BigInt::one()
            })
            .collect();
        SpinCBox {
            labels: self.labels.clone(),
            sides,
        }
    }

    /// Side lengths sorted, i.e. the divisibilities of the box edges.
    pub fn side_multiset(&self) -> Vec<BigInt> {
        let mut s = self.sides.clone();
        s.sort();
        s
    }
}

pub fn spin_c_support(fp: &FramedPlumbing) -> Result<SpinCBox, ClassifyError> {
    fp.require_nonzero_framing()?;
    let tree = fp.tree();
    Ok(SpinCBox {
        labels: tree.basis_labels(),
        sides: tree.canonical_order().iter().map(|&v| fp.f(v).abs()).collect(),
    })
}

/// Rank of sutured Floer homology of the solid torus `T(p,1;2)` in the
/// Spin^c structure `i`: one for `0 <= i < p`, zero otherwise.
pub fn sfh_torus_rank(p: i64, i: i64) -> Result<u8, ClassifyError> {
    if p <= 0 {
        return Err(ClassifyError::InvalidTorusParameter(p));
    }
    Ok(u8::from((0..p).contains(&i)))
}

/// `c_v -> σ_v c'_v`, indexed by [`VertexId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn identity(n: usize) -> Self {
        SignVector(vec![Sign::Plus; n])
    }

    pub fn get(&self, v: VertexId) -> Sign {
        self.0[v.0]
    }

    /// `label=±1` pairs in canonical order.
    pub fn describe(&self, tree: &MatchedTree) -> String {
        tree.canonical_order()
            .iter()
            .map(|&v| format!("{}={}", tree.label(v), self.0[v.0]))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Which argument of the inequivalence proof the obstruction comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObstructionCase {
    /// A matched edge `b => w` with different signs; the entry `(c_b, c_w)`
    /// is 0 on one side and ±1 on the other.
    MatchedEdge,
    /// All matched edges agree and an unmatched edge `w2 -> b1` differs; the
    /// entry `(c_b2, c_w1)` is `N - 1` against `N`.
    UnmatchedEdge,
    Other,
}

impl fmt::Display for ObstructionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionCase::MatchedEdge => "matched-edge",
            ObstructionCase::UnmatchedEdge => "unmatched-edge",
            ObstructionCase::Other => "other",
        })
    }
}

/// An entry `(c_row, c_col)` whose two values cannot be matched by any
/// admissible sign change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub row: VertexId,
    pub col: VertexId,
    pub left: BigInt,
    pub right: BigInt,
    pub case: ObstructionCase,
}

impl Obstruction {
    pub fn describe(&self, tree: &MatchedTree) -> String {
        format!(
            "(c_{}, c_{}) {} vs {} [{}]",
            tree.label(self.row),
            tree.label(self.col),
            self.left,
            self.right,
            self.case
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceReport {
    /// `θ̄(u, v) = σ_u σ_v θ̄'(u, v)` for all `u, v`.
    Equivalent(SignVector),
    Inequivalent(Obstruction),
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceReport::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&SignVector> {
        match self {
            EquivalenceReport::Equivalent(s) => Some(s),
            EquivalenceReport::Inequivalent(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            EquivalenceReport::Equivalent(_) => None,
            EquivalenceReport::Inequivalent(o) => Some(o),
        }
    }
}

/// Decides whether the surfaces of two labelings of the same framed tree
/// can be equivalent.
///
/// The framing must pass [`AdmissibilityLevel::Theorem`].
pub fn surfaces_equivalent(a: &FramedPlumbing, b: &FramedPlumbing) -> Result<EquivalenceReport, ClassifyError> {
    if a.tree() != b.tree() {
        return Err(ClassifyError::MismatchedUnderlying("trees"));
    }
    if a.framing() != b.framing() {
        return Err(ClassifyError::MismatchedUnderlying("framings"));
    }
    require_theorem_admissible(a.tree(), a.framing())?;
    let pa = pairing_by_conjugation(a);
    let pb = pairing_by_conjugation(b);
    Ok(compare_pairings(a, &pa, b, &pb))
}

fn require_theorem_admissible(tree: &MatchedTree, framing: &[BigInt]) -> Result<(), ClassifyError> {
    let report = check_admissible(tree, framing, AdmissibilityLevel::Theorem);
    if report.passed() {
        Ok(())
    } else {
        Err(ClassifyError::InadmissibleFraming(report.violations))
    }
}

fn compare_pairings(
    a: &FramedPlumbing,
    pa: &PairingMatrix,
    b: &FramedPlumbing,
    pb: &PairingMatrix,
) -> EquivalenceReport {
    let tree = a.tree();
    let identity: Vec<usize> = (0..tree.vertex_count()).collect();
    match find_signs(pa.matrix(), pb.matrix(), &identity) {
        Ok(by_position) => {
            let signs = tree.vertices().map(|v| by_position[tree.position(v)]).collect();
            EquivalenceReport::Equivalent(SignVector(signs))
        }
        Err((i, j)) => {
            let order = tree.canonical_order();
            EquivalenceReport::Inequivalent(classify_obstruction(a, pa, b, pb).unwrap_or_else(|| Obstruction {
                row: order[i],
                col: order[j],
                left: pa.matrix().get(i, j).clone(),
                right: pb.matrix().get(i, j).clone(),
                case: ObstructionCase::Other,
            }))
        }
    }
}

/// The entry singled out by the two-case inequivalence argument, when its
/// absolute values differ.
fn classify_obstruction(
    a: &FramedPlumbing,
    pa: &PairingMatrix,
    b: &FramedPlumbing,
    pb: &PairingMatrix,
) -> Option<Obstruction> {
    let tree = a.tree();
    let differing: Vec<_> = tree.edge_ids().filter(|&e| a.eps(e) != b.eps(e)).collect();
    let candidates = differing
        .iter()
        .filter(|&&e| tree.edge(e).matched)
        .map(|&e| (tree.edge(e).tail, tree.edge(e).head, ObstructionCase::MatchedEdge))
        .chain(differing.iter().filter(|&&e| !tree.edge(e).matched).map(|&e| {
            let edge = tree.edge(e);
            (
                tree.mate(edge.tail),
                tree.mate(edge.head),
                ObstructionCase::UnmatchedEdge,
            )
        }));
    // the unmatched-edge argument only applies once all matched edges agree
    let matched_differ = differing.iter().any(|&e| tree.edge(e).matched);
    for (row, col, case) in candidates {
        if case == ObstructionCase::UnmatchedEdge && matched_differ {
            break;
        }
        let (left, right) = (pa.get(row, col), pb.get(row, col));
        if left.abs() != right.abs() {
            return Some(Obstruction {
                row,
                col,
                left: left.clone(),
                right: right.clone(),
                case,
            });
        }
    }
    None
}

/// Finds signs (by position) with `a[i][j] = σ_i σ_j b[perm i][perm j]`,
/// pinning the first position of each constraint component to `+1`.
/// On failure returns an offending position pair of `a`.
fn find_signs(a: &IntMatrix, b: &IntMatrix, perm: &[usize]) -> Result<Vec<Sign>, (usize, usize)> {
    let n = a.dim();
    let mut relation: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); n];
    for i in 0..n {
        if a.get(i, i) != b.get(perm[i], perm[i]) {
            return Err((i, i));
        }
        for j in i + 1..n {
            let mut need: Option<Sign> = None;
            for (r, c) in [(i, j), (j, i)] {
                let x = a.get(r, c);
                let y = b.get(perm[r], perm[c]);
                let s = if x.is_zero() && y.is_zero() {
                    continue;
                } else if x == y {
                    Sign::Plus
                } else if *x == -y {
                    Sign::Minus
                } else {
                    return Err((r, c));
                };
                match need {
                    Some(prev) if prev != s => return Err((r, c)),
                    _ => need = Some(s),
                }
            }
            if let Some(s) = need {
                relation[i].push((j, s));
                relation[j].push((i, s));
            }
        }
    }
    let mut signs: Vec<Option<Sign>> = vec![None; n];
    for start in 0..n {
        if signs[start].is_some() {
            continue;
        }
        signs[start] = Some(Sign::Plus);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let su = signs[u].expect("assigned before push");
            for &(x, s) in &relation[u] {
                let want = if s == Sign::Plus { su } else { su.flip() };
                match signs[x] {
                    None => {
                        signs[x] = Some(want);
                        stack.push(x);
                    }
                    Some(have) if have != want => return Err((u.min(x), u.max(x))),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(signs.into_iter().map(|s| s.expect("all assigned")).collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Accept framings with repeated `|f|` values and additionally search
    /// signed vertex permutations that preserve `|f|`. The resulting count
    /// is flagged heuristic: it bounds the number of surfaces from below
    /// only relative to the maps searched.
    pub permissive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCount {
    pub labelings: u64,
    pub classes: usize,
    /// Plumbing index of the smallest labeling in each class, ascending.
    pub representatives: Vec<u64>,
    /// For each plumbing index, the position of its class in
    /// `representatives`.
    pub class_of: Vec<usize>,
    /// Set when the framing is not admissible and the count came from the
    /// permissive search.
    pub heuristic: bool,
}

/// Partitions all `2^|E|` plumbings of `(tree, framing)` into equivalence
/// classes.
pub fn count_classes(tree: &MatchedTree, framing: &[BigInt]) -> Result<ClassCount, ClassifyError> {
    count_classes_with(tree, framing, ClassifyOptions::default())
}

pub fn count_classes_with(
    tree: &MatchedTree,
    framing: &[BigInt],
    options: ClassifyOptions,
) -> Result<ClassCount, ClassifyError> {
    let m = tree.edge_count();
    if m > MAX_CLASSIFY_EDGES {
        return Err(ClassifyError::TooManyEdges(m));
    }
    let base = FramedPlumbing::new(tree.clone(), framing.to_vec(), vec![Sign::Plus; m])?;
    let admissible = require_theorem_admissible(tree, framing);
    let heuristic = match admissible {
        Ok(()) => false,
        Err(e) if !options.permissive => return Err(e),
        Err(_) => {
            base.require_nonzero_framing()?;
            true
        }
    };

    let labelings = 1u64 << m;
    let plumbings: Vec<FramedPlumbing> = base.all_plumbings().collect();
    let pairings: Vec<PairingMatrix> = plumbings.iter().map(pairing_by_conjugation).collect();

    let mut classes = UnionFind::new(plumbings.len());
    let mut buckets: HashMap<Vec<BigInt>, Vec<usize>> = HashMap::new();
    let magnitude_groups = magnitude_groups(tree, framing);
    for k in 0..plumbings.len() {
        let key = if heuristic {
            unordered_fingerprint(pairings[k].matrix())
        } else {
            pair_fingerprint(pairings[k].matrix())
        };
        let reps = buckets.entry(key).or_default();
        let matched = reps.iter().copied().find(|&r| {
            if heuristic {
                signed_permutation_equivalent(pairings[r].matrix(), pairings[k].matrix(), &magnitude_groups)
            } else {
                compare_pairings(&plumbings[r], &pairings[r], &plumbings[k], &pairings[k]).is_equivalent()
            }
        });
        match matched {
            Some(r) => classes.union(r, k),
            None => reps.push(k),
        }
    }

    let roots: Vec<usize> = (0..plumbings.len()).filter(|&k| classes.find(k) == k).collect();
    let mut representatives: Vec<u64> = roots.into_iter().map(|k| classes.min_member(k) as u64).collect();
    representatives.sort_unstable();
    let class_of = (0..plumbings.len())
        .map(|k| {
            let rep = classes.min_member(k) as u64;
            representatives.binary_search(&rep).expect("representative listed")
        })
        .collect();
    Ok(ClassCount {
        labelings,
        classes: representatives.len(),
        representatives,
        class_of,
        heuristic,
    })
}

/// Per unordered pair `{i, j}` the sorted pair `|a_ij|, |a_ji|`, plus the
/// diagonal. Invariant under diagonal sign conjugation.
fn pair_fingerprint(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.dim();
    let mut key = Vec::with_capacity(n * n);
    for i in 0..n {
        key.push(a.get(i, i).clone());
        for j in i + 1..n {
            let (x, y) = (a.get(i, j).abs(), a.get(j, i).abs());
            if x <= y {
                key.extend([x, y]);
            } else {
                key.extend([y, x]);
            }
        }
    }
    key
}

/// Sorted diagonal followed by sorted off-diagonal magnitudes. Invariant
/// under signed permutations.
fn unordered_fingerprint(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.dim();
    let mut diag: Vec<BigInt> = (0..n).map(|i| a.get(i, i).clone()).collect();
    let mut off: Vec<BigInt> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j).abs())
        .collect();
    diag.sort();
    off.sort();
    diag.extend(off);
    diag
}

/// Group id per canonical position; positions share a group iff their
/// `|f|` values agree.
fn magnitude_groups(tree: &MatchedTree, framing: &[BigInt]) -> Vec<usize> {
    let mut ids: HashMap<BigInt, usize> = HashMap::new();
    tree.canonical_order()
        .iter()
        .map(|v| {
            let next = ids.len();
            *ids.entry(framing[v.0].abs()).or_insert(next)
        })
        .collect()
}

/// Is there a permutation within `groups` and signs with
/// `a[i][j] = σ_i σ_j b[π i][π j]`?
fn signed_permutation_equivalent(a: &IntMatrix, b: &IntMatrix, groups: &[usize]) -> bool {
    fn extend(a: &IntMatrix, b: &IntMatrix, groups: &[usize], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        let n = a.dim();
        if i == n {
            return find_signs(a, b, perm).is_ok();
        }
        for cand in 0..n {
            if used[cand] || groups[cand] != groups[i] || a.get(i, i) != b.get(cand, cand) {
                continue;
            }
            let consistent = perm.iter().enumerate().all(|(k, &pk)| {
                a.get(i, k).abs() == b.get(cand, pk).abs() && a.get(k, i).abs() == b.get(pk, cand).abs()
            });
            if !consistent {
                continue;
            }
            perm.push(cand);
            used[cand] = true;
            if extend(a, b, groups, perm, used) {
                return true;
            }
            used[cand] = false;
            perm.pop();
        }
        false
    }
    let mut used = vec![false; a.dim()];
    extend(a, b, groups, &mut Vec::with_capacity(a.dim()), &mut used)
}

/// Disjoint sets over `0..n` with path halving; roots track their smallest
/// member.
struct UnionFind {
    parent: Vec<usize>,
    min: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            min: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.min[ra] = self.min[ra].min(self.min[rb]);
        }
    }

    fn min_member(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.min[r]
    }
}
