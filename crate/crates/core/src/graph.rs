//! Labeled graphs attached to words (the quasi-threshold graph of nested
//! matched pairs, the indifference graph of inner squares, their (n, r)
//! specializations and fan graphs), partition enumeration into independent
//! sets, graph Stirling numbers and chromatic polynomials.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::closed_form::binomial;
use crate::poly::IntPolynomial;
use crate::word::{heights, matched_pairs, path_geometry, DyckWord};

/// Default cap on the vertex count for partition enumeration.
pub const DEFAULT_ENUM_BOUND: usize = 14;

/// Errors from graph construction and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// The graph is too large for partition enumeration.
    #[error("graph has {vertices} vertices, above the enumeration bound {bound}")]
    BoundExceeded {
        /// Vertex count of the offending graph.
        vertices: usize,
        /// Configured bound.
        bound: usize,
    },
    /// The inclusion-exclusion sum failed to divide by k!, so the input was
    /// not a chromatic polynomial.
    #[error("inclusion-exclusion sum not divisible by {k}!: input is not a chromatic polynomial")]
    InexactDivision {
        /// The class count whose factorial failed to divide.
        k: usize,
    },
    /// A block structure is not a partition of the expected vertex set.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}

/// A simple graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl LabeledGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = LabeledGraph::empty(n);
        for u in 1..=n {
            for v in (u + 1)..=n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "no loops");
        assert!(u >= 1 && v >= 1 && u <= self.n && v <= self.n, "endpoint out of range");
        self.edges.insert((u.min(v), u.max(v)));
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Disjoint union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &LabeledGraph) -> LabeledGraph {
        let mut g = LabeledGraph::empty(self.n + other.n);
        g.edges = self.edges.clone();
        for &(u, v) in &other.edges {
            g.edges.insert((u + self.n, v + self.n));
        }
        g
    }

    /// Adds a dominating vertex as the new vertex 1, shifting existing labels
    /// up by one.
    pub fn add_dominating_vertex(&self) -> LabeledGraph {
        let mut g = LabeledGraph::empty(self.n + 1);
        for &(u, v) in &self.edges {
            g.edges.insert((u + 1, v + 1));
        }
        for v in 2..=g.n {
            g.edges.insert((1, v));
        }
        g
    }

    fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n + 1]; self.n + 1];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// DOT rendering with every vertex listed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph g {\n");
        for v in 1..=self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// JSON adjacency form `{n, edges}` with the edge list sorted.
    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|&(u, v)| Value::Array(vec![Value::from(u), Value::from(v)]))
            .collect();
        let mut obj = Map::new();
        obj.insert("n".into(), Value::from(self.n));
        obj.insert("edges".into(), Value::Array(edges));
        Value::Object(obj)
    }
}

/// A partition of `{1..n}` into nonempty blocks. Blocks are stored sorted,
/// ordered by their smallest element (restricted-growth order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Validates and canonicalizes a block list covering `{1..n}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let mut seen = vec![false; n + 1];
        let mut canon: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(GraphError::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &v in &b {
                if v == 0 || v > n {
                    return Err(GraphError::InvalidPartition(format!(
                        "element {v} out of range 1..={n}"
                    )));
                }
                if seen[v] {
                    return Err(GraphError::InvalidPartition(format!(
                        "element {v} appears twice"
                    )));
                }
                seen[v] = true;
            }
            canon.push(b);
        }
        if let Some(v) = (1..=n).find(|&v| !seen[v]) {
            return Err(GraphError::InvalidPartition(format!("element {v} missing")));
        }
        canon.sort_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks: canon })
    }

    /// The partition of `{}` into zero blocks.
    pub fn empty() -> Self {
        SetPartition {
            n: 0,
            blocks: Vec::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&v).is_ok())
    }

    /// True when no block spans an edge of `g`.
    pub fn is_independent_in(&self, g: &LabeledGraph) -> bool {
        self.blocks.iter().all(|b| {
            b.iter()
                .enumerate()
                .all(|(i, &u)| b[i + 1..].iter().all(|&v| !g.has_edge(u, v)))
        })
    }

    /// JSON form: array of sorted blocks.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.blocks
                .iter()
                .map(|b| Value::Array(b.iter().map(|&v| Value::from(v)).collect()))
                .collect(),
        )
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, v) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// The quasi-threshold graph of a Dyck word: vertex i is the i-th x and
/// `{i, j}` is an edge exactly when one matched interval strictly contains
/// the other.
pub fn build_g(w: &DyckWord) -> LabeledGraph {
    let pairs = matched_pairs(w);
    let mut g = LabeledGraph::empty(pairs.len());
    for i in 0..pairs.len() {
        for j in (i + 1)..pairs.len() {
            // x positions increase with the index, so containment can only be
            // pairs[i] around pairs[j]
            if pairs[j].1 < pairs[i].1 {
                g.add_edge(i + 1, j + 1);
            }
        }
    }
    g
}

/// The indifference graph of a Dyck word: edges are exactly the inner squares
/// of the staircase path.
pub fn build_h(w: &DyckWord) -> LabeledGraph {
    let geo = path_geometry(w);
    let mut g = LabeledGraph::empty(w.half_length());
    for &(i, j) in &geo.inner_squares {
        g.add_edge(i, j);
    }
    g
}

/// The threshold graph on `rn` vertices obtained by iterating "add an
/// isolated vertex, then r-1 dominating vertices" n times. In the concise
/// left-to-right labeling the isolated vertices sit at labels `ar`, and
/// `{i, j}` with `i < j` is an edge exactly when `i` is not such a label.
pub fn build_g_nr(n: usize, r: usize) -> LabeledGraph {
    assert!(n >= 1 && r >= 1);
    let total = r * n;
    let mut g = LabeledGraph::empty(total);
    for i in 1..=total {
        if i % r == 0 {
            continue;
        }
        for j in (i + 1)..=total {
            g.add_edge(i, j);
        }
    }
    g
}

/// The indifference graph on `rn` vertices with edges covered by cliques on
/// `{i, ..., ir}` for each `i = 1..n`.
pub fn build_h_nr(n: usize, r: usize) -> LabeledGraph {
    assert!(n >= 1 && r >= 1);
    let mut g = LabeledGraph::empty(r * n);
    for i in 1..=n {
        for u in i..=(i * r) {
            for v in (u + 1)..=(i * r) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// A fan of `a` copies of `K_b` sharing the single vertex 1, plus `c`
/// isolated vertices.
pub fn build_fan(a: usize, b: usize, c: usize) -> LabeledGraph {
    assert!(a >= 1 && b >= 1);
    let mut g = LabeledGraph::empty(a * (b - 1) + 1 + c);
    let mut next = 2;
    for _ in 0..a {
        let members: Vec<usize> = std::iter::once(1)
            .chain(next..next + (b - 1))
            .collect();
        next += b - 1;
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

// Restricted-growth backtracking over independent-set partitions. `target`
// restricts the final block count; the visitor receives blocks as slices of
// vertex lists.
fn visit_partitions<F: FnMut(&[Vec<usize>])>(
    g: &LabeledGraph,
    target: Option<usize>,
    visit: &mut F,
) {
    let n = g.vertex_count();
    if n == 0 {
        if target.unwrap_or(0) == 0 {
            visit(&[]);
        }
        return;
    }
    let adj = g.adjacency();
    let mut blocks: Vec<Vec<usize>> = Vec::new();

    fn go<F: FnMut(&[Vec<usize>])>(
        v: usize,
        n: usize,
        adj: &[Vec<bool>],
        blocks: &mut Vec<Vec<usize>>,
        target: Option<usize>,
        visit: &mut F,
    ) {
        if v > n {
            if target.is_none_or(|k| blocks.len() == k) {
                visit(blocks);
            }
            return;
        }
        if let Some(k) = target {
            // not enough vertices left to open the missing blocks
            if blocks.len() + (n - v + 1) < k {
                return;
            }
        }
        let openable = target.map_or(true, |k| blocks.len() < k);
        for b in 0..blocks.len() {
            if blocks[b].iter().all(|&u| !adj[u][v]) {
                blocks[b].push(v);
                go(v + 1, n, adj, blocks, target, visit);
                blocks[b].pop();
            }
        }
        if openable {
            blocks.push(vec![v]);
            go(v + 1, n, adj, blocks, target, visit);
            blocks.pop();
        }
    }

    go(1, n, &adj, &mut blocks, target, visit);
}

fn check_bound(g: &LabeledGraph, bound: usize) -> Result<(), GraphError> {
    if g.vertex_count() > bound {
        Err(GraphError::BoundExceeded {
            vertices: g.vertex_count(),
            bound,
        })
    } else {
        Ok(())
    }
}

/// All partitions of the vertex set into exactly `k` nonempty independent
/// sets, in restricted-growth order, under the default enumeration bound.
pub fn enumerate_partitions(g: &LabeledGraph, k: usize) -> Result<Vec<SetPartition>, GraphError> {
    enumerate_partitions_bounded(g, k, DEFAULT_ENUM_BOUND)
}

/// As [`enumerate_partitions`] with an explicit vertex bound.
pub fn enumerate_partitions_bounded(
    g: &LabeledGraph,
    k: usize,
    bound: usize,
) -> Result<Vec<SetPartition>, GraphError> {
    check_bound(g, bound)?;
    let mut out = Vec::new();
    visit_partitions(g, Some(k), &mut |blocks| {
        out.push(SetPartition {
            n: g.vertex_count(),
            blocks: blocks.to_vec(),
        });
    });
    Ok(out)
}

/// The graph Stirling number: partitions of the vertex set into `k` nonempty
/// independent sets.
pub fn graph_stirling(g: &LabeledGraph, k: usize) -> Result<BigInt, GraphError> {
    graph_stirling_bounded(g, k, DEFAULT_ENUM_BOUND)
}

/// As [`graph_stirling`] with an explicit vertex bound.
pub fn graph_stirling_bounded(
    g: &LabeledGraph,
    k: usize,
    bound: usize,
) -> Result<BigInt, GraphError> {
    check_bound(g, bound)?;
    let mut count = BigInt::zero();
    visit_partitions(g, Some(k), &mut |_| count += 1);
    Ok(count)
}

/// All graph Stirling numbers at once, indexed by block count `0..=n`.
pub fn graph_stirling_vector(g: &LabeledGraph, bound: usize) -> Result<Vec<BigInt>, GraphError> {
    check_bound(g, bound)?;
    let mut counts = vec![BigInt::zero(); g.vertex_count() + 1];
    visit_partitions(g, None, &mut |blocks| counts[blocks.len()] += 1);
    Ok(counts)
}

/// The chromatic polynomial via the falling-factorial expansion over graph
/// Stirling numbers.
pub fn chromatic_polynomial(g: &LabeledGraph) -> Result<IntPolynomial, GraphError> {
    chromatic_polynomial_bounded(g, DEFAULT_ENUM_BOUND)
}

/// As [`chromatic_polynomial`] with an explicit vertex bound.
pub fn chromatic_polynomial_bounded(
    g: &LabeledGraph,
    bound: usize,
) -> Result<IntPolynomial, GraphError> {
    let counts = graph_stirling_vector(g, bound)?;
    let mut poly = IntPolynomial::zero();
    for (k, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        poly = &poly + &(&IntPolynomial::constant(c.clone()) * &IntPolynomial::falling_factorial(k));
    }
    Ok(poly)
}

/// The chromatic polynomial of the quasi-threshold graph of `w`, as the
/// product of `(t - a_i)` over the heights of the x's.
pub fn chromatic_from_heights(w: &DyckWord) -> IntPolynomial {
    let mut poly = IntPolynomial::one();
    for a in heights(w) {
        poly = &poly * &IntPolynomial::linear(-BigInt::from(a), BigInt::one());
    }
    poly
}

/// Recovers a graph Stirling number from a chromatic polynomial by
/// inclusion-exclusion: `(1/k!) sum_i (-1)^i C(k,i) p(k-i)`.
pub fn stirling_from_chromatic(p: &IntPolynomial, k: usize) -> Result<BigInt, GraphError> {
    let mut sum = BigInt::zero();
    for i in 0..=k {
        let term = binomial(k as i64, i as i64) * p.eval(&BigInt::from(k - i));
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let kfact: BigInt = (1..=k).map(BigInt::from).product();
    if (&sum % &kfact).is_zero() {
        Ok(sum / kfact)
    } else {
        Err(GraphError::InexactDivision { k })
    }
}

/// Counts proper colorings with palette `{1..t}` by exhaustion; the test
/// oracle for chromatic polynomials.
pub fn count_colorings_brute(g: &LabeledGraph, t: usize) -> BigInt {
    let n = g.vertex_count();
    if n == 0 {
        return BigInt::one();
    }
    let adj = g.adjacency();
    fn go(v: usize, n: usize, t: usize, colors: &mut Vec<usize>, adj: &[Vec<bool>]) -> BigInt {
        if v > n {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for c in 1..=t {
            if (1..v).all(|u| !adj[u][v] || colors[u] != c) {
                colors[v] = c;
                total += go(v + 1, n, t, colors, adj);
            }
        }
        total
    }
    let mut colors = vec![0; n + 1];
    go(1, n, t, &mut colors, &adj)
}
