//! The q-analog weight machinery: matching matrices in a complete bipartite
//! graph with their zero-marking weight, the encoding of a matching as a pair
//! of bit strings plus a permutation, and the inductive partition weight on
//! the quasi-threshold graph of a Dyck word whose generating polynomial is
//! the q-deformed Stirling coefficient.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{build_g, enumerate_partitions_bounded, GraphError, SetPartition, DEFAULT_ENUM_BOUND};
use crate::qpoly::{q_binomial, q_factorial, QPolynomial};
use crate::word::{DyckWord, Letter};

/// Errors from the weight machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QWeightError {
    /// Matrix data does not encode a matching.
    #[error("invalid matching matrix: {0}")]
    BadMatrix(String),
    /// Encoded triple cannot be decoded back to a matching.
    #[error("invalid encoding: {0}")]
    BadEncoding(String),
    /// The partition does not fit the word's graph.
    #[error("partition does not fit the word: {0}")]
    BadPartition(String),
    /// Partition enumeration hit its bound.
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A 0-1 matrix whose ones occupy pairwise distinct rows and columns; the
/// matrix form of a matching in the complete bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchMatrix {
    rows: usize,
    cols: usize,
    ones: BTreeSet<(usize, usize)>,
}

impl MatchMatrix {
    /// Validates bounds and row/column distinctness of the ones.
    pub fn new(
        rows: usize,
        cols: usize,
        ones: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, QWeightError> {
        let ones: BTreeSet<(usize, usize)> = ones.into_iter().collect();
        let mut seen_rows = BTreeSet::new();
        let mut seen_cols = BTreeSet::new();
        for &(i, j) in &ones {
            if i == 0 || i > rows || j == 0 || j > cols {
                return Err(QWeightError::BadMatrix(format!(
                    "one at ({i}, {j}) outside {rows} x {cols}"
                )));
            }
            if !seen_rows.insert(i) {
                return Err(QWeightError::BadMatrix(format!("two ones in row {i}")));
            }
            if !seen_cols.insert(j) {
                return Err(QWeightError::BadMatrix(format!("two ones in column {j}")));
            }
        }
        Ok(MatchMatrix { rows, cols, ones })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Matching size.
    pub fn size(&self) -> usize {
        self.ones.len()
    }

    pub fn ones(&self) -> &BTreeSet<(usize, usize)> {
        &self.ones
    }
}

/// Marks every 0 lying below a 1 in its column or to the right of a 1 in its
/// row, and returns the number of unmarked 0's.
pub fn matrix_weight(m: &MatchMatrix) -> usize {
    let mut row_one = vec![None; m.rows + 1];
    let mut col_one = vec![None; m.cols + 1];
    for &(i, j) in &m.ones {
        row_one[i] = Some(j);
        col_one[j] = Some(i);
    }
    let mut unmarked = 0;
    for i in 1..=m.rows {
        for j in 1..=m.cols {
            if row_one[i] == Some(j) {
                continue;
            }
            let below_a_one = col_one[j].is_some_and(|i1| i1 < i);
            let right_of_a_one = row_one[i].is_some_and(|j1| j1 < j);
            if !below_a_one && !right_of_a_one {
                unmarked += 1;
            }
        }
    }
    unmarked
}

/// The bit-strings-and-permutation encoding of a matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCode {
    /// Rows of the matrix carrying a 1.
    pub sigma: Vec<bool>,
    /// Columns of the matrix carrying a 1.
    pub tau: Vec<bool>,
    /// Row index (within the selected rows) of the 1 in each selected column,
    /// left to right; a permutation of `1..=k`.
    pub pi: Vec<usize>,
}

impl MatchingCode {
    /// Renders a bit string like `0101110`.
    pub fn bits(v: &[bool]) -> String {
        v.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Sum over the 1's of a bit string of the number of 0's to the left.
pub fn zeros(bits: &[bool]) -> usize {
    let mut zeros_seen = 0;
    let mut total = 0;
    for &b in bits {
        if b {
            total += zeros_seen;
        } else {
            zeros_seen += 1;
        }
    }
    total
}

/// Number of inversions of a permutation in one-line notation.
pub fn inversions(pi: &[usize]) -> usize {
    let mut inv = 0;
    for (a, &x) in pi.iter().enumerate() {
        for &y in &pi[a + 1..] {
            if x > y {
                inv += 1;
            }
        }
    }
    inv
}

/// Encodes a matching matrix as (sigma, tau, pi).
pub fn matching_encode(m: &MatchMatrix) -> MatchingCode {
    let mut sigma = vec![false; m.rows];
    let mut tau = vec![false; m.cols];
    for &(i, j) in &m.ones {
        sigma[i - 1] = true;
        tau[j - 1] = true;
    }
    let rows_with: Vec<usize> = (1..=m.rows).filter(|&i| sigma[i - 1]).collect();
    let cols_with: Vec<usize> = (1..=m.cols).filter(|&j| tau[j - 1]).collect();
    let mut pi = Vec::with_capacity(m.size());
    for &j in &cols_with {
        let &(i, _) = m
            .ones
            .iter()
            .find(|&&(_, jj)| jj == j)
            .expect("selected column holds a one");
        let minor_row = rows_with.binary_search(&i).expect("row is selected") + 1;
        pi.push(minor_row);
    }
    MatchingCode { sigma, tau, pi }
}

/// Decodes (sigma, tau, pi) back to the matching matrix; the exact inverse of
/// [`matching_encode`].
pub fn matching_decode(code: &MatchingCode) -> Result<MatchMatrix, QWeightError> {
    let rows_with: Vec<usize> = (1..=code.sigma.len())
        .filter(|&i| code.sigma[i - 1])
        .collect();
    let cols_with: Vec<usize> = (1..=code.tau.len())
        .filter(|&j| code.tau[j - 1])
        .collect();
    let k = rows_with.len();
    if cols_with.len() != k || code.pi.len() != k {
        return Err(QWeightError::BadEncoding(format!(
            "mismatched one-counts: {} rows, {} columns, permutation of length {}",
            k,
            cols_with.len(),
            code.pi.len()
        )));
    }
    let mut seen = vec![false; k + 1];
    for &v in &code.pi {
        if v == 0 || v > k || seen[v] {
            return Err(QWeightError::BadEncoding(
                "pi is not a permutation".into(),
            ));
        }
        seen[v] = true;
    }
    let ones = code
        .pi
        .iter()
        .enumerate()
        .map(|(jj, &ii)| (rows_with[ii - 1], cols_with[jj]));
    MatchMatrix::new(code.sigma.len(), code.tau.len(), ones)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(1, n, k, &mut cur, &mut out);
    out
}

fn permutations_of(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (1..=k).collect();
    fn go(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == items.len() {
            out.push(items.clone());
            return;
        }
        for i in at..items.len() {
            items.swap(at, i);
            go(items, at + 1, out);
            items.swap(at, i);
        }
    }
    go(&mut items, 0, &mut out);
    out
}

/// Both sides of the matching-weight identity: the left side sums `q^f(M)`
/// over every size-k matching in the r by s bipartite graph (enumerated
/// exhaustively over row subsets, column subsets and permutations), the right
/// side is `q^((r-k)(s-k)) C(r,k)_q C(s,k)_q [k]_q!`.
pub fn q_matching_sum(r: usize, s: usize, k: usize) -> (QPolynomial, QPolynomial) {
    let mut lhs = QPolynomial::zero();
    for rows in subsets_of_size(r, k) {
        for cols in subsets_of_size(s, k) {
            for pi in permutations_of(k) {
                let ones = pi
                    .iter()
                    .enumerate()
                    .map(|(jj, &ii)| (rows[ii - 1], cols[jj]));
                let m = MatchMatrix::new(r, s, ones).expect("construction is a matching");
                lhs += &QPolynomial::q_power(matrix_weight(&m));
            }
        }
    }
    let rhs = if k > r || k > s {
        QPolynomial::zero()
    } else {
        (&(&q_binomial(r as i64, k as i64) * &q_binomial(s as i64, k as i64))
            * &q_factorial(k as i64))
            .shift((r - k) * (s - k))
    };
    (lhs, rhs)
}

/// A total order on independent sets, used to sort the blocks of projected
/// partitions before building the matching matrix.
pub trait BlockOrder {
    /// Compares two blocks given as ascending vertex-label slices.
    fn cmp_blocks(&self, a: &[usize], b: &[usize]) -> Ordering;
}

/// The default order: lexicographic on the ascending label sequences.
#[derive(Clone, Copy, Debug, Default)]
pub struct LexOrder;

impl BlockOrder for LexOrder {
    fn cmp_blocks(&self, a: &[usize], b: &[usize]) -> Ordering {
        a.cmp(b)
    }
}

/// A pseudo-random total order: blocks compare by a seeded FNV-1a hash of
/// their label sequence, with the lexicographic order as tie-break. Any seed
/// gives a valid total order; the weight sums must not depend on it.
#[derive(Clone, Copy, Debug)]
pub struct SeededOrder {
    seed: u64,
}

impl SeededOrder {
    pub fn new(seed: u64) -> Self {
        SeededOrder { seed }
    }

    fn hash(&self, block: &[usize]) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325u64 ^ self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        for &v in block {
            for byte in (v as u64).to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

impl BlockOrder for SeededOrder {
    fn cmp_blocks(&self, a: &[usize], b: &[usize]) -> Ordering {
        self.hash(a).cmp(&self.hash(b)).then_with(|| a.cmp(b))
    }
}

/// The inductive weight of a partition of the quasi-threshold graph of `w`
/// into nonempty independent sets.
///
/// For `w = xD` the weight is 0; an irreducible word strips its forced
/// dominating singleton; a reducible word splits into its first irreducible
/// component versus the remainder, projects the partition onto the two vertex
/// groups, sorts both block lists by `order`, and adds the matrix weight of
/// the merge pattern.
pub fn partition_weight(
    w: &DyckWord,
    p: &SetPartition,
    order: &dyn BlockOrder,
) -> Result<usize, QWeightError> {
    let m = w.half_length();
    if p.ground_size() != m {
        return Err(QWeightError::BadPartition(format!(
            "partition of {} elements against a word with {m} x's",
            p.ground_size()
        )));
    }
    if p.blocks().iter().any(|b| b.is_empty()) {
        return Err(QWeightError::BadPartition("empty block".into()));
    }
    if !p.is_independent_in(&build_g(w)) {
        return Err(QWeightError::BadPartition(
            "a block spans an edge of the word's graph".into(),
        ));
    }
    Ok(weight_rec(
        w.word().letters(),
        1,
        p.blocks().to_vec(),
        order,
    ))
}

// letters: a Dyck factor; lo: original label of its first x; blocks: the
// projected partition on the labels [lo, lo + #x).
fn weight_rec(
    letters: &[Letter],
    lo: usize,
    blocks: Vec<Vec<usize>>,
    order: &dyn BlockOrder,
) -> usize {
    if letters.is_empty() {
        return 0;
    }
    if letters.len() == 2 {
        return 0;
    }
    // first return to balance
    let mut excess = 0i64;
    let mut cut = letters.len();
    for (i, l) in letters.iter().enumerate() {
        excess += if *l == Letter::X { 1 } else { -1 };
        if excess == 0 {
            cut = i + 1;
            break;
        }
    }

    if cut == letters.len() {
        // irreducible: the first x dominates, its singleton is forced
        let dominating = vec![lo];
        let rest: Vec<Vec<usize>> = blocks
            .iter()
            .filter(|b| **b != dominating)
            .cloned()
            .collect();
        debug_assert_eq!(rest.len() + 1, blocks.len());
        return weight_rec(&letters[1..letters.len() - 1], lo + 1, rest, order);
    }

    // reducible: first component versus the remainder
    let m1 = letters[..cut]
        .iter()
        .filter(|l| **l == Letter::X)
        .count();
    let boundary = lo + m1 - 1;
    let mut left_blocks: Vec<Vec<usize>> = Vec::new();
    let mut right_blocks: Vec<Vec<usize>> = Vec::new();
    let mut merged: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for b in &blocks {
        let split = b.partition_point(|&v| v <= boundary);
        let (l, r) = (b[..split].to_vec(), b[split..].to_vec());
        match (l.is_empty(), r.is_empty()) {
            (false, true) => left_blocks.push(l),
            (true, false) => right_blocks.push(r),
            (false, false) => {
                merged.push((l.clone(), r.clone()));
                left_blocks.push(l);
                right_blocks.push(r);
            }
            (true, true) => unreachable!("blocks are nonempty"),
        }
    }
    left_blocks.sort_by(|a, b| order.cmp_blocks(a, b));
    right_blocks.sort_by(|a, b| order.cmp_blocks(a, b));
    let ones = merged.iter().map(|(l, r)| {
        let i = left_blocks
            .iter()
            .position(|b| b == l)
            .expect("projection is listed");
        let j = right_blocks
            .iter()
            .position(|b| b == r)
            .expect("projection is listed");
        (i + 1, j + 1)
    });
    let m = MatchMatrix::new(left_blocks.len(), right_blocks.len(), ones)
        .expect("merge pattern is a matching");
    let f = matrix_weight(&m);

    weight_rec(&letters[..cut], lo, left_blocks, order)
        + weight_rec(&letters[cut..], lo + m1, right_blocks, order)
        + f
}

/// The weight generating polynomial `sum_P q^wt(P)` over all partitions of
/// the word's graph into `k` nonempty independent sets.
pub fn q_graph_stirling(
    w: &DyckWord,
    k: usize,
    order: &dyn BlockOrder,
) -> Result<QPolynomial, QWeightError> {
    q_graph_stirling_bounded(w, k, order, DEFAULT_ENUM_BOUND)
}

/// As [`q_graph_stirling`] with an explicit enumeration bound.
pub fn q_graph_stirling_bounded(
    w: &DyckWord,
    k: usize,
    order: &dyn BlockOrder,
    bound: usize,
) -> Result<QPolynomial, QWeightError> {
    let g = build_g(w);
    let mut total = QPolynomial::zero();
    for p in enumerate_partitions_bounded(&g, k, bound)? {
        let wt = partition_weight(w, &p, order)?;
        total += &QPolynomial::q_power(wt);
    }
    Ok(total)
}
