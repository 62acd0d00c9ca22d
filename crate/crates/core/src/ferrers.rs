//! Ferrers boards above staircase paths and non-attacking rook counts,
//! realizing the rook-placement route to the Stirling sequence of a word.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::word::{DyckWord, Letter, Word};

/// The set of unit squares above a word's staircase path, inside its bounding
/// box. Squares are labeled by their top-right corner; column `i` carries the
/// top `col_heights[i-1]` squares, and the heights are weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FerrersBoard {
    squares: BTreeSet<(usize, usize)>,
    col_heights: Vec<usize>,
    n_cols: usize,
    m_rows: usize,
}

impl FerrersBoard {
    /// Builds a top-aligned board from weakly decreasing column heights.
    pub fn from_heights(col_heights: Vec<usize>, m_rows: usize) -> Self {
        assert!(
            col_heights.windows(2).all(|w| w[0] >= w[1]),
            "column heights must be weakly decreasing"
        );
        assert!(col_heights.iter().all(|&h| h <= m_rows));
        let mut squares = BTreeSet::new();
        for (i, &h) in col_heights.iter().enumerate() {
            for j in (m_rows - h + 1)..=m_rows {
                squares.insert((i + 1, j));
            }
        }
        let n_cols = col_heights.len();
        FerrersBoard {
            squares,
            col_heights,
            n_cols,
            m_rows,
        }
    }

    pub fn squares(&self) -> &BTreeSet<(usize, usize)> {
        &self.squares
    }

    pub fn col_heights(&self) -> &[usize] {
        &self.col_heights
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    /// Bounding box `(n_cols, m_rows)`.
    pub fn bounding_box(&self) -> (usize, usize) {
        (self.n_cols, self.m_rows)
    }
}

/// The board of a word: with `m` x's and `n` D's, the squares above the
/// staircase path inside the `[0,n] x [0,m]` box. Column `i` holds squares
/// `(i, j)` for `y_i < j <= m`, where `y_i` counts the x's before the i-th D.
pub fn board_of(w: &Word) -> FerrersBoard {
    let m = w.x_count();
    let n = w.d_count();
    let mut squares = BTreeSet::new();
    let mut col_heights = Vec::with_capacity(n);
    let mut xs_seen = 0;
    let mut col = 0;
    for l in w.letters() {
        match l {
            Letter::X => xs_seen += 1,
            Letter::D => {
                col += 1;
                col_heights.push(m - xs_seen);
                for j in (xs_seen + 1)..=m {
                    squares.insert((col, j));
                }
            }
        }
    }
    FerrersBoard {
        squares,
        col_heights,
        n_cols: n,
        m_rows: m,
    }
}

/// Number of ways to place `k` non-attacking rooks on the board: `k`-subsets
/// of squares with pairwise distinct columns and pairwise distinct rows.
/// Counted directly from the square set, column by column.
pub fn rook_count(board: &FerrersBoard, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::one();
    }
    if k > board.n_cols || k > board.m_rows {
        return BigInt::zero();
    }
    let columns: Vec<Vec<usize>> = (1..=board.n_cols)
        .map(|c| {
            board
                .squares
                .range((c, 0)..=(c, usize::MAX))
                .map(|&(_, j)| j)
                .collect()
        })
        .collect();

    fn go(columns: &[Vec<usize>], left: usize, used: &mut Vec<bool>) -> BigInt {
        if left == 0 {
            return BigInt::one();
        }
        if columns.len() < left {
            return BigInt::zero();
        }
        // skip this column, or place a rook in any free row of it
        let mut total = go(&columns[1..], left, used);
        for &row in &columns[0] {
            if !used[row] {
                used[row] = true;
                total += go(&columns[1..], left - 1, used);
                used[row] = false;
            }
        }
        total
    }

    let mut used = vec![false; board.m_rows + 1];
    go(&columns, k, &mut used)
}

// Second route, kept as an internal oracle: the Ferrers column recurrence
// r_k(B) = r_k(B') + (h - k + 1) r_{k-1}(B') with B' the board minus its
// tallest column of height h.
#[cfg(test)]
fn rook_count_by_recurrence(board: &FerrersBoard, k: usize) -> BigInt {
    let mut heights = board.col_heights.to_vec();
    heights.sort_unstable(); // ascending; recurse on the last (tallest)
    let mut dp = vec![BigInt::zero(); k + 1];
    dp[0] = BigInt::one();
    for &h in &heights {
        for j in (1..=k).rev() {
            let free = h as i64 - (j as i64 - 1);
            if free > 0 {
                let add = BigInt::from(free) * &dp[j - 1];
                dp[j] += add;
            }
        }
    }
    dp[k].clone()
}

/// The Stirling sequence of a Dyck word by rook placements:
/// `S_w(k) = r_{n-k}(F_w)` where `n` is the number of x's.
pub fn stirling_via_rooks(w: &DyckWord, k: usize) -> BigInt {
    let n = w.half_length();
    if k > n {
        return BigInt::zero();
    }
    rook_count(&board_of(w.word()), n - k)
}
