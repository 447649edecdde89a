//! Brute-force oracles and generators shared by the integration tests.
//! Nothing here calls into the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use arbor::form::{FramedPlumbing, Sign};
use arbor::tree::{Color, MatchedTree, VertexSpec};
use arbor::IntMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

// ---------------------------------------------------------------- trees

/// Labeled tree on `0..n` from a Prüfer sequence of length `n - 2`.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    if n == 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Calls `f` on every labeled tree on `n` vertices (`n^(n-2)` of them).
pub fn for_each_labeled_tree(n: usize, mut f: impl FnMut(&[(usize, usize)])) {
    if n <= 2 {
        f(&prufer_decode(&[], n));
        return;
    }
    let len = n - 2;
    let mut seq = vec![0usize; len];
    loop {
        f(&prufer_decode(&seq, n));
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Every perfect matching of the graph, as sorted edge-index lists.
pub fn all_perfect_matchings(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn go(
        n: usize,
        edges: &[(usize, usize)],
        used: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(v) = (0..n).find(|&v| !used[v]) else {
            let mut m = chosen.clone();
            m.sort_unstable();
            out.push(m);
            return;
        };
        for (i, &(a, b)) in edges.iter().enumerate() {
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if used[other] {
                continue;
            }
            used[v] = true;
            used[other] = true;
            chosen.push(i);
            go(n, edges, used, chosen, out);
            chosen.pop();
            used[v] = false;
            used[other] = false;
        }
    }
    let mut out = Vec::new();
    if n.is_multiple_of(2) {
        go(n, edges, &mut vec![false; n], &mut Vec::new(), &mut out);
    }
    out
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    adj
}

fn rooted_code(adj: &[Vec<(usize, usize)>], v: usize, parent: usize, tag: &dyn Fn(usize, usize) -> String) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&(x, _)| x != parent)
        .map(|&(x, e)| format!("{}{}", tag(usize::MAX, e), rooted_code(adj, x, v, tag)))
        .collect();
    kids.sort();
    format!("{}[{}]", tag(v, usize::MAX), kids.concat())
}

/// Isomorphism invariant of a decorated tree: the least rooted code over
/// all roots. `tag(v, MAX)` decorates vertices, `tag(MAX, e)` edges.
pub fn all_roots_code(n: usize, edges: &[(usize, usize)], tag: &dyn Fn(usize, usize) -> String) -> String {
    let adj = adjacency(n, edges);
    (0..n).map(|r| rooted_code(&adj, r, usize::MAX, tag)).min().unwrap()
}

/// Non-isomorphic free trees on `n` vertices, by leaf growth.
pub fn free_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let plain = |_: usize, _: usize| String::new();
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size - 1 {
                let mut grown = t.clone();
                grown.push((v, size - 1));
                if seen.insert(all_roots_code(size, &grown, &plain)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

fn two_coloring(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let adj = adjacency(n, edges);
    let mut side = vec![false; n];
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(x, _) in &adj[u] {
            if !seen[x] {
                seen[x] = true;
                side[x] = !side[u];
                stack.push(x);
            }
        }
    }
    side
}

/// Matched trees with `n_pairs` pairs counted by brute force: every labeled
/// tree, filtered by exhaustive matching search, both colorings, deduped by
/// the all-roots code with colors and matched edges marked.
pub fn brute_force_matched_tree_count(n_pairs: usize) -> usize {
    let n = 2 * n_pairs;
    let mut seen = BTreeSet::new();
    for_each_labeled_tree(n, |edges| {
        let matchings = all_perfect_matchings(n, edges);
        let Some(m) = matchings.first() else { return };
        let side = two_coloring(n, edges);
        for flip in [false, true] {
            let tag = |v: usize, e: usize| {
                if v != usize::MAX {
                    if side[v] ^ flip { "B" } else { "W" }.to_string()
                } else if m.contains(&e) {
                    "=".to_string()
                } else {
                    "-".to_string()
                }
            };
            seen.insert(all_roots_code(n, edges, &tag));
        }
    });
    seen.len()
}

/// Builds a matched tree from an uncolored edge list on `0..n`, labels
/// `v0, v1, ...`.
pub fn tree_from_edges(n: usize, edges: &[(usize, usize)]) -> MatchedTree {
    let vertices = (0..n).map(|i| VertexSpec::uncolored(format!("v{i}"))).collect();
    MatchedTree::build(vertices, edges.iter().map(|&(a, b)| (format!("v{a}"), format!("v{b}")))).unwrap()
}

/// Random matched tree with `n_pairs` pairs: each step hangs a new matched
/// pair off a random existing vertex. Every matched tree arises this way.
/// Vertex listing order is shuffled.
pub fn random_matched_tree<R: Rng>(rng: &mut R, n_pairs: usize) -> MatchedTree {
    let mut colors = vec![Color::B, Color::W];
    let mut edges = vec![(0usize, 1usize)];
    for _ in 1..n_pairs {
        let x = rng.gen_range(0..colors.len());
        let v = colors.len();
        colors.push(colors[x].flip());
        colors.push(colors[x]);
        edges.push((x, v));
        edges.push((v, v + 1));
    }
    let mut order: Vec<usize> = (0..colors.len()).collect();
    order.shuffle(rng);
    let vertices = order
        .iter()
        .map(|&i| VertexSpec::new(format!("x{i}"), colors[i]))
        .collect();
    MatchedTree::build(vertices, edges.iter().map(|&(a, b)| (format!("x{a}"), format!("x{b}")))).unwrap()
}

/// Distinct magnitudes `{2, ..., 2n+1}` in random order, negative on `B`,
/// positive on `W`.
pub fn admissible_framing<R: Rng>(rng: &mut R, tree: &MatchedTree) -> Vec<BigInt> {
    let mut mags: Vec<i64> = (2..2 + tree.vertex_count() as i64).collect();
    mags.shuffle(rng);
    signed_framing(tree, &mags)
}

pub fn signed_framing(tree: &MatchedTree, mags: &[i64]) -> Vec<BigInt> {
    tree.vertices()
        .zip(mags)
        .map(|(v, &m)| match tree.color(v) {
            Color::B => BigInt::from(-m),
            Color::W => BigInt::from(m),
        })
        .collect()
}

/// Arbitrary nonzero framing in `[-9, 9]`.
pub fn random_framing<R: Rng>(rng: &mut R, tree: &MatchedTree) -> Vec<BigInt> {
    tree.vertices()
        .map(|_| {
            let x: i64 = rng.gen_range(1..=9);
            BigInt::from(if rng.gen_bool(0.5) { x } else { -x })
        })
        .collect()
}

pub fn random_plumbing<R: Rng>(rng: &mut R, tree: &MatchedTree, framing: Vec<BigInt>) -> FramedPlumbing {
    let eps = tree
        .edge_ids()
        .map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
        .collect();
    FramedPlumbing::new(tree.clone(), framing, eps).unwrap()
}

// -------------------------------------------------------------- algebra

fn to_rational(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Determinant by Gaussian elimination over the rationals.
pub fn rational_determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut a = to_rational(rows);
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let factor = &row[c] / &pivot;
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &factor * p;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Characteristic polynomial `det(xI - A)` by Faddeev-LeVerrier,
/// coefficients in degree order.
pub fn characteristic_polynomial(rows: &[Vec<BigInt>]) -> Vec<BigRational> {
    let n = rows.len();
    let a = to_rational(rows);
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut trace = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                trace += &a[i][l] * &m[l][i];
            }
        }
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

fn sign_changes(coeffs: &[BigRational]) -> i64 {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count() as i64
}

/// Signature of a symmetric matrix via Descartes' rule on its
/// characteristic polynomial, exact because every root is real.
pub fn descartes_signature(rows: &[Vec<BigInt>]) -> i64 {
    let p = characteristic_polynomial(rows);
    let q: Vec<BigRational> = p
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    sign_changes(&p) - sign_changes(&q)
}

/// A sign vector `s` (first entry `+1`) with `a[u][v] = s_u s_v b[u][v]`,
/// by trying all of them.
pub fn naive_sign_search(a: &IntMatrix, b: &IntMatrix) -> Option<Vec<i8>> {
    let n = a.dim();
    assert_eq!(n, b.dim());
    if n == 0 {
        return Some(Vec::new());
    }
    'outer: for mask in 0u64..(1u64 << (n - 1)) {
        let s: Vec<i8> = (0..n)
            .map(|i| if i > 0 && mask >> (i - 1) & 1 == 1 { -1 } else { 1 })
            .collect();
        for u in 0..n {
            for v in 0..n {
                let rhs = b.get(u, v) * BigInt::from(s[u] * s[v]);
                if *a.get(u, v) != rhs {
                    continue 'outer;
                }
            }
        }
        return Some(s);
    }
    None
}

pub fn product(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc * x)
}
