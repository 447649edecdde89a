//! Matched trees.
//!
//! A matched tree is a bipartite tree (color classes `B` and `W`) carrying
//! its perfect matching, directed so that matched edges run `B -> W` and
//! unmatched edges run `W -> B`. A tree has at most one perfect matching, so
//! the matching and orientation are derived from the underlying graph and
//! never supplied by the caller.
//!
//! The orientation induces a partial order: `u <= v` iff there is a
//! (possibly empty) directed path from `v` to `u`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Color class of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    B,
    W,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::B => Color::W,
            Color::W => Color::B,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::B => 'B',
            Color::W => 'W',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Index of a vertex in input order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Index of an edge in input order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("tree has no vertices")]
    Empty,
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("edge {0}-{1} does not join a B-vertex to a W-vertex")]
    NotBipartite(String, String),
    #[error("tree admits no perfect matching")]
    NoPerfectMatching,
    #[error("vertex `{label}` has color {actual}, expected {expected}")]
    WrongColor {
        label: String,
        actual: Color,
        expected: Color,
    },
    #[error("number of matched pairs must be at least 1")]
    InvalidPairCount,
}

/// Input record for [`MatchedTree::build`]. A missing color is inferred.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub label: String,
    pub color: Option<Color>,
}

impl VertexSpec {
    pub fn new(label: impl Into<String>, color: Color) -> Self {
        VertexSpec {
            label: label.into(),
            color: Some(color),
        }
    }

    pub fn uncolored(label: impl Into<String>) -> Self {
        VertexSpec {
            label: label.into(),
            color: None,
        }
    }
}

/// An oriented edge. `tail -> head`; `head <₁ tail` in the induced order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub matched: bool,
}

/// Anything that names a vertex of a given tree.
pub trait VertexRef {
    fn resolve(&self, tree: &MatchedTree) -> Result<VertexId, TreeError>;
}

impl VertexRef for VertexId {
    fn resolve(&self, tree: &MatchedTree) -> Result<VertexId, TreeError> {
        if self.0 < tree.vertex_count() {
            Ok(*self)
        } else {
            Err(TreeError::UnknownVertex(format!("#{}", self.0)))
        }
    }
}

impl VertexRef for &str {
    fn resolve(&self, tree: &MatchedTree) -> Result<VertexId, TreeError> {
        tree.vertex(self)
            .ok_or_else(|| TreeError::UnknownVertex(self.to_string()))
    }
}

impl VertexRef for &String {
    fn resolve(&self, tree: &MatchedTree) -> Result<VertexId, TreeError> {
        self.as_str().resolve(tree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedTree {
    labels: Vec<String>,
    colors: Vec<Color>,
    edges: Vec<Edge>,
    mate: Vec<VertexId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    // below[v][u] == (u <= v)
    below: Vec<Vec<bool>>,
    canonical_order: Vec<VertexId>,
    position: Vec<usize>,
    index: HashMap<String, VertexId>,
}

impl MatchedTree {
    /// Validates a tree and derives its matching, orientation and canonical
    /// order.
    ///
    /// Colors may be given for all, some or none of the vertices. Missing
    /// colors are propagated along edges from the first colored vertex; if
    /// no vertex is colored the first listed vertex is put in `W`.
    pub fn build<I, A, B>(vertices: Vec<VertexSpec>, edges: I) -> Result<MatchedTree, TreeError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        if vertices.is_empty() {
            return Err(TreeError::Empty);
        }
        let n = vertices.len();
        let mut index = HashMap::with_capacity(n);
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.label.clone(), VertexId(i)).is_some() {
                return Err(TreeError::DuplicateLabel(v.label.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let lookup = |s: &str| {
                index
                    .get(s)
                    .map(|v: &VertexId| v.0)
                    .ok_or_else(|| TreeError::UnknownVertex(s.to_string()))
            };
            pairs.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        let adjacency = check_tree(n, &pairs)?;

        // Colors: BFS from the first colored vertex (or vertex 0 as W).
        let (seed, seed_color) = vertices
            .iter()
            .enumerate()
            .find_map(|(i, v)| v.color.map(|c| (i, c)))
            .unwrap_or((0, Color::W));
        let mut colors: Vec<Option<Color>> = vec![None; n];
        colors[seed] = Some(seed_color);
        let mut queue = VecDeque::from([seed]);
        while let Some(u) = queue.pop_front() {
            let cu = colors[u].expect("colored on push");
            for &(x, _) in &adjacency[u] {
                if colors[x].is_some() {
                    continue;
                }
                let cx = cu.flip();
                if let Some(given) = vertices[x].color {
                    if given != cx {
                        return Err(TreeError::NotBipartite(
                            vertices[u].label.clone(),
                            vertices[x].label.clone(),
                        ));
                    }
                }
                colors[x] = Some(cx);
                queue.push_back(x);
            }
        }
        let colors: Vec<Color> = colors.into_iter().map(|c| c.expect("connected")).collect();

        let matched = match find_matching(n, &pairs)? {
            Some(m) => m,
            None => return Err(TreeError::NoPerfectMatching),
        };
        let mut is_matched = vec![false; pairs.len()];
        for e in matched {
            is_matched[e] = true;
        }

        let mut oriented = Vec::with_capacity(pairs.len());
        let mut mate = vec![VertexId(0); n];
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            let (a_id, b_id) = (VertexId(a), VertexId(b));
            let a_is_b = colors[a] == Color::B;
            // matched: B -> W, unmatched: W -> B
            let (tail, head) = if a_is_b == is_matched[i] {
                (a_id, b_id)
            } else {
                (b_id, a_id)
            };
            if is_matched[i] {
                mate[a] = b_id;
                mate[b] = a_id;
            }
            out_edges[tail.0].push(EdgeId(i));
            in_edges[head.0].push(EdgeId(i));
            oriented.push(Edge {
                tail,
                head,
                matched: is_matched[i],
            });
        }

        let mut below = vec![vec![false; n]; n];
        for (v, row) in below.iter_mut().enumerate() {
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                row[u] = true;
                stack.extend(out_edges[u].iter().map(|e| oriented[e.0].head.0));
            }
        }

        let mut tree = MatchedTree {
            labels: vertices.into_iter().map(|v| v.label).collect(),
            colors,
            edges: oriented,
            mate,
            out_edges,
            in_edges,
            below,
            canonical_order: Vec::new(),
            position: Vec::new(),
            index,
        };
        tree.canonical_order = tree.compute_canonical_order();
        tree.position = vec![0; n];
        for (i, v) in tree.canonical_order.iter().enumerate() {
            tree.position[v.0] = i;
        }
        Ok(tree)
    }

    /// The path `w1 <= b1 <- w2 <= b2 <- ... <= b_n` with matching `{b_i w_i}`.
    pub fn chain(n_pairs: usize) -> Result<MatchedTree, TreeError> {
        if n_pairs < 1 {
            return Err(TreeError::InvalidPairCount);
        }
        let mut vertices = Vec::with_capacity(2 * n_pairs);
        let mut edges = Vec::with_capacity(2 * n_pairs - 1);
        for i in 1..=n_pairs {
            vertices.push(VertexSpec::new(format!("w{i}"), Color::W));
            vertices.push(VertexSpec::new(format!("b{i}"), Color::B));
            edges.push((format!("b{i}"), format!("w{i}")));
            if i > 1 {
                edges.push((format!("w{i}"), format!("b{}", i - 1)));
            }
        }
        MatchedTree::build(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn pair_count(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.colors[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The vertex matched to `v`.
    pub fn mate(&self, v: VertexId) -> VertexId {
        self.mate[v.0]
    }

    /// Edge ids of the matching, in input order.
    pub fn matching(&self) -> Vec<EdgeId> {
        self.edge_ids().filter(|e| self.edges[e.0].matched).collect()
    }

    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.out_edges[u.0]
            .iter()
            .chain(self.out_edges[v.0].iter())
            .copied()
            .find(|e| {
                let edge = self.edges[e.0];
                (edge.tail == u && edge.head == v) || (edge.tail == v && edge.head == u)
            })
    }

    /// Vertices `u` with `u <₁ v`.
    pub fn lower_covers(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.out_edges[v.0].iter().map(|e| self.edges[e.0].head)
    }

    /// Vertices `u` with `v <₁ u`.
    pub fn upper_covers(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.in_edges[v.0].iter().map(|e| self.edges[e.0].tail)
    }

    /// Vertices in canonical order (minimal first).
    pub fn canonical_order(&self) -> &[VertexId] {
        &self.canonical_order
    }

    /// Position of `v` in [`canonical_order`](Self::canonical_order).
    pub fn position(&self, v: VertexId) -> usize {
        self.position[v.0]
    }

    /// Labels in canonical order.
    pub fn basis_labels(&self) -> Vec<String> {
        self.canonical_order.iter().map(|v| self.labels[v.0].clone()).collect()
    }

    /// `u <= v`: there is a possibly empty directed path from `v` to `u`.
    pub fn leq(&self, u: impl VertexRef, v: impl VertexRef) -> Result<bool, TreeError> {
        let (u, v) = (u.resolve(self)?, v.resolve(self)?);
        Ok(self.le(u, v))
    }

    /// `u <₁ v`: the directed path from `v` to `u` is a single edge.
    pub fn covers_one(&self, u: impl VertexRef, v: impl VertexRef) -> Result<bool, TreeError> {
        let (u, v) = (u.resolve(self)?, v.resolve(self)?);
        Ok(self.lower_covers(v).any(|x| x == u))
    }

    pub(crate) fn le(&self, u: VertexId, v: VertexId) -> bool {
        self.below[v.0][u.0]
    }

    /// `W_b`: the `W`-vertices below `b`, in canonical order.
    pub fn below_set(&self, b: impl VertexRef) -> Result<Vec<VertexId>, TreeError> {
        let b = self.expect_color(b, Color::B)?;
        Ok(self.below_set_unchecked(b))
    }

    /// `B_w`: the `B`-vertices above `w`, in canonical order.
    pub fn above_set(&self, w: impl VertexRef) -> Result<Vec<VertexId>, TreeError> {
        let w = self.expect_color(w, Color::W)?;
        Ok(self.above_set_unchecked(w))
    }

    pub(crate) fn below_set_unchecked(&self, b: VertexId) -> Vec<VertexId> {
        self.canonical_order
            .iter()
            .copied()
            .filter(|&w| self.colors[w.0] == Color::W && self.le(w, b))
            .collect()
    }

    pub(crate) fn above_set_unchecked(&self, w: VertexId) -> Vec<VertexId> {
        self.canonical_order
            .iter()
            .copied()
            .filter(|&b| self.colors[b.0] == Color::B && self.le(w, b))
            .collect()
    }

    fn expect_color(&self, v: impl VertexRef, expected: Color) -> Result<VertexId, TreeError> {
        let v = v.resolve(self)?;
        let actual = self.colors[v.0];
        if actual != expected {
            return Err(TreeError::WrongColor {
                label: self.labels[v.0].clone(),
                actual,
                expected,
            });
        }
        Ok(v)
    }

    /// The directed path from `hi` down to `lo`, or empty when `lo` is not
    /// below `hi`.
    pub fn directed_path(&self, hi: impl VertexRef, lo: impl VertexRef) -> Result<Vec<EdgeId>, TreeError> {
        let (hi, lo) = (hi.resolve(self)?, lo.resolve(self)?);
        Ok(self.path_unchecked(hi, lo))
    }

    pub(crate) fn path_unchecked(&self, hi: VertexId, lo: VertexId) -> Vec<EdgeId> {
        let mut path = Vec::new();
        if !self.le(lo, hi) {
            return path;
        }
        let mut cur = hi;
        while cur != lo {
            let step = self.out_edges[cur.0]
                .iter()
                .copied()
                .find(|e| self.le(lo, self.edges[e.0].head))
                .expect("lo is below cur");
            path.push(step);
            cur = self.edges[step.0].head;
        }
        path
    }

    /// Vertices with nothing strictly below them.
    pub fn minimal_elements(&self) -> Vec<VertexId> {
        self.vertices().filter(|v| self.out_edges[v.0].is_empty()).collect()
    }

    /// Vertices with nothing strictly above them.
    pub fn maximal_elements(&self) -> Vec<VertexId> {
        self.vertices().filter(|v| self.in_edges[v.0].is_empty()).collect()
    }

    /// Color-aware canonical form. Two trees have equal codes iff there is a
    /// color-preserving isomorphism between them.
    pub fn canonical_code(&self) -> String {
        let n = self.vertex_count();
        let neighbors = self.neighbors();
        centroids(n, &neighbors)
            .into_iter()
            .map(|root| self.rooted_code(root, &neighbors))
            .min()
            .expect("at least one centroid")
    }

    fn neighbors(&self) -> Vec<Vec<(usize, bool)>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            adj[e.tail.0].push((e.head.0, e.matched));
            adj[e.head.0].push((e.tail.0, e.matched));
        }
        adj
    }

    fn rooted_code(&self, root: usize, adj: &[Vec<(usize, bool)>]) -> String {
        fn go(t: &MatchedTree, v: usize, parent: usize, adj: &[Vec<(usize, bool)>]) -> String {
            let mut children: Vec<String> = adj[v]
                .iter()
                .filter(|(x, _)| *x != parent)
                .map(|&(x, m)| format!("{}{}", if m { 'm' } else { 'u' }, go(t, x, v, adj)))
                .collect();
            children.sort();
            format!("{}({})", t.colors[v].as_char(), children.concat())
        }
        go(self, root, usize::MAX, adj)
    }

    /// Rooted code of the down-set of each vertex (children = lower covers).
    fn down_codes(&self) -> Vec<String> {
        let n = self.vertex_count();
        let mut codes: Vec<Option<String>> = vec![None; n];
        fn go(t: &MatchedTree, v: usize, memo: &mut Vec<Option<String>>) -> String {
            if let Some(c) = &memo[v] {
                return c.clone();
            }
            let mut children: Vec<String> = t.out_edges[v]
                .iter()
                .map(|e| {
                    let edge = t.edges[e.0];
                    format!("{}{}", if edge.matched { 'm' } else { 'u' }, go(t, edge.head.0, memo))
                })
                .collect();
            children.sort();
            let code = format!("{}({})", t.colors[v].as_char(), children.concat());
            memo[v] = Some(code.clone());
            code
        }
        (0..n).map(|v| go(self, v, &mut codes)).collect()
    }

    /// Topological order, minimal first; ties broken by down-set code, then
    /// by label.
    fn compute_canonical_order(&self) -> Vec<VertexId> {
        let n = self.vertex_count();
        let codes = self.down_codes();
        let mut pending: Vec<usize> = self.out_edges.iter().map(Vec::len).collect();
        let mut ready = BinaryHeap::new();
        for v in 0..n {
            if pending[v] == 0 {
                ready.push(Reverse((codes[v].clone(), self.labels[v].clone(), v)));
            }
        }
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse((_, _, v))) = ready.pop() {
            order.push(VertexId(v));
            for e in &self.in_edges[v] {
                let t = self.edges[e.0].tail.0;
                pending[t] -= 1;
                if pending[t] == 0 {
                    ready.push(Reverse((codes[t].clone(), self.labels[t].clone(), t)));
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        order
    }
}

/// Checks that `pairs` forms a tree on `n` vertices and returns adjacency
/// lists of `(neighbor, edge index)`.
fn check_tree(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<Vec<(usize, usize)>>, TreeError> {
    if n == 0 {
        return Err(TreeError::Empty);
    }
    if pairs.len() + 1 != n {
        return Err(TreeError::NotATree(format!("{} vertices but {} edges", n, pairs.len())));
    }
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if a >= n || b >= n {
            return Err(TreeError::UnknownVertex(format!("#{}", a.max(b))));
        }
        if a == b {
            return Err(TreeError::NotATree("self-loop".into()));
        }
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &(x, _) in &adj[u] {
            if !seen[x] {
                seen[x] = true;
                count += 1;
                stack.push(x);
            }
        }
    }
    if count != n {
        return Err(TreeError::NotATree("disconnected".into()));
    }
    Ok(adj)
}

/// Unique perfect matching of an uncolored tree, as sorted edge indices.
///
/// Repeatedly matches a leaf to its only remaining neighbor and deletes
/// both. Returns `None` when a leaf is left without a neighbor.
pub fn find_matching(n: usize, edges: &[(usize, usize)]) -> Result<Option<Vec<usize>>, TreeError> {
    let adj = check_tree(n, edges)?;
    if n % 2 == 1 {
        return Ok(None);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut consumed = vec![false; n];
    let mut leaves: VecDeque<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut matched = Vec::with_capacity(n / 2);
    while let Some(leaf) = leaves.pop_front() {
        if consumed[leaf] {
            continue;
        }
        let Some(&(partner, edge)) = adj[leaf].iter().find(|(x, _)| !consumed[*x]) else {
            return Ok(None);
        };
        consumed[leaf] = true;
        consumed[partner] = true;
        matched.push(edge);
        for &(x, _) in &adj[partner] {
            if !consumed[x] {
                degree[x] -= 1;
                if degree[x] <= 1 {
                    leaves.push_back(x);
                }
            }
        }
    }
    if matched.len() * 2 != n {
        return Ok(None);
    }
    matched.sort_unstable();
    Ok(Some(matched))
}

fn centroids(n: usize, adj: &[Vec<(usize, bool)>]) -> Vec<usize> {
    // iterative post-order subtree sizes from root 0
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &(x, _) in &adj[u] {
            if !seen[x] {
                seen[x] = true;
                parent[x] = u;
                stack.push(x);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().rev() {
        if parent[u] != usize::MAX {
            size[parent[u]] += size[u];
        }
    }
    let mut best = usize::MAX;
    let mut result = Vec::new();
    for v in 0..n {
        let mut heaviest = n - size[v];
        for &(x, _) in &adj[v] {
            if x != parent[v] {
                heaviest = heaviest.max(size[x]);
            }
        }
        match heaviest.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = heaviest;
                result = vec![v];
            }
            std::cmp::Ordering::Equal => result.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    result
}

/// All matched trees with `n_pairs` matched pairs, up to color-preserving
/// isomorphism, sorted by canonical code.
///
/// Grown from `T₁` by repeatedly attaching a new vertex `v` to an existing
/// vertex and a new leaf matched to `v`. Vertices of the `k`-th pair are
/// labelled `bk` and `wk`.
pub fn enumerate_matched_trees(n_pairs: usize) -> Result<Vec<MatchedTree>, TreeError> {
    if n_pairs < 1 {
        return Err(TreeError::InvalidPairCount);
    }
    let t1 = MatchedTree::build(
        vec![VertexSpec::new("b1", Color::B), VertexSpec::new("w1", Color::W)],
        [("b1", "w1")],
    )?;
    let mut level = vec![t1];
    for k in 2..=n_pairs {
        let mut next: BTreeMap<String, MatchedTree> = BTreeMap::new();
        for tree in &level {
            for x in tree.vertices() {
                let (v, l) = match tree.color(x) {
                    Color::B => (
                        VertexSpec::new(format!("w{k}"), Color::W),
                        VertexSpec::new(format!("b{k}"), Color::B),
                    ),
                    Color::W => (
                        VertexSpec::new(format!("b{k}"), Color::B),
                        VertexSpec::new(format!("w{k}"), Color::W),
                    ),
                };
                let mut vertices: Vec<VertexSpec> = tree
                    .vertices()
                    .map(|u| VertexSpec::new(tree.label(u), tree.color(u)))
                    .collect();
                let mut edges: Vec<(String, String)> = tree
                    .edges
                    .iter()
                    .map(|e| (tree.label(e.tail).to_string(), tree.label(e.head).to_string()))
                    .collect();
                edges.push((tree.label(x).to_string(), v.label.clone()));
                edges.push((v.label.clone(), l.label.clone()));
                vertices.push(v);
                vertices.push(l);
                let grown = MatchedTree::build(vertices, edges)?;
                next.entry(grown.canonical_code()).or_insert(grown);
            }
        }
        level = next.into_values().collect();
    }
    level.sort_by_cached_key(MatchedTree::canonical_code);
    Ok(level)
}
