//! Classical Stirling and Bell numbers, the alternating-sum closed form for
//! the Stirling sequence of an arbitrary word, and the positive summation
//! formula for words of the shape `(x^s D^s)^n` with its three equivalent
//! coefficient evaluations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::IntPolynomial;
use crate::rewrite::{normal_order, NormalForm, RewriteError};
use crate::word::{associated_dyck, heights, Word};

/// Memoized triangles of Stirling numbers (both kinds) and Bell numbers.
///
/// Rows are built on demand; a fresh table per call site is cheap at desk
/// scale, so the free functions below construct one internally.
#[derive(Debug, Default)]
pub struct StirlingTables {
    second: Vec<Vec<BigInt>>,
    first: Vec<Vec<BigInt>>,
}

impl StirlingTables {
    pub fn new() -> Self {
        StirlingTables::default()
    }

    fn grow_second(&mut self, n: usize) {
        if self.second.is_empty() {
            self.second.push(vec![BigInt::one()]);
        }
        while self.second.len() <= n {
            let np = self.second.len();
            let prev = &self.second[np - 1];
            let mut row = Vec::with_capacity(np + 1);
            row.push(BigInt::zero());
            for k in 1..=np {
                let carry = if k < prev.len() {
                    BigInt::from(k) * &prev[k]
                } else {
                    BigInt::zero()
                };
                row.push(&prev[k - 1] + carry);
            }
            self.second.push(row);
        }
    }

    fn grow_first(&mut self, a: usize) {
        if self.first.is_empty() {
            self.first.push(vec![BigInt::one()]);
        }
        while self.first.len() <= a {
            let ap = self.first.len();
            let prev = &self.first[ap - 1];
            let mut row = Vec::with_capacity(ap + 1);
            row.push(BigInt::zero());
            for b in 1..=ap {
                let carry = if b < prev.len() {
                    BigInt::from(ap - 1) * &prev[b]
                } else {
                    BigInt::zero()
                };
                row.push(&prev[b - 1] + carry);
            }
            self.first.push(row);
        }
    }

    /// Stirling number of the second kind `{n, k}`.
    pub fn second(&mut self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.grow_second(n);
        self.second[n][k].clone()
    }

    /// Unsigned Stirling number of the first kind `[a, b]`.
    pub fn first_unsigned(&mut self, a: usize, b: usize) -> BigInt {
        if b > a {
            return BigInt::zero();
        }
        self.grow_first(a);
        self.first[a][b].clone()
    }

    /// Bell number `B_n`, the row sum of `{n, .}`.
    pub fn bell(&mut self, n: usize) -> BigInt {
        self.grow_second(n);
        self.second[n].iter().sum()
    }
}

/// `{n, k}` via the recurrence with base `1_{n=k}`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    StirlingTables::new().second(n, k)
}

/// `[a, b]`, counting permutations of `a` symbols with exactly `b` cycles.
pub fn stirling1_unsigned(a: usize, b: usize) -> BigInt {
    StirlingTables::new().first_unsigned(a, b)
}

/// The Bell number `B_n`.
pub fn bell(n: usize) -> BigInt {
    StirlingTables::new().bell(n)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k) as u64;
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n as u64 - i) / BigInt::from(i + 1);
    }
    acc
}

/// The alternating closed form for `S_w(k)` of an arbitrary word:
/// with `x^a w D^b` the associated Dyck word and `a_i` its heights,
/// `S_w(k) = (1/(k+b)!) sum_l (-1)^l C(k+b, l) prod_i (k+b-l-a_i)`.
///
/// The division by `(k+b)!` is exact; failure to divide would indicate a
/// height or offset bug and panics.
pub fn closed_form_sw(w: &Word, k: usize) -> BigInt {
    let assoc = associated_dyck(w);
    let hs = heights(&assoc.dyck);
    let kb = k + assoc.b;
    let mut sum = BigInt::zero();
    for l in 0..=kb {
        let mut prod = binomial(kb as i64, l as i64);
        for &a in &hs {
            prod *= BigInt::from(kb as i64 - l as i64 - a as i64);
            if prod.is_zero() {
                break;
            }
        }
        if l % 2 == 0 {
            sum += prod;
        } else {
            sum -= prod;
        }
    }
    let kbfact = factorial(kb);
    assert!(
        (&sum % &kbfact).is_zero(),
        "closed form sum must divide by (k+b)!"
    );
    sum / kbfact
}

/// Coefficient `f(n, s, l)` as the nested-binomial sum over compositions
/// `i_1 + ... + i_{s-1} = l`; out-of-range compositions contribute zero.
pub fn f_nested(n: usize, s: usize, l: usize) -> BigInt {
    assert!(n >= 1 && s >= 1);
    // recurse over the composition positions, tracking the budget
    // j(n-1) - i_1 - ... - i_{j-1} available at position j
    fn go(remaining_positions: usize, l: usize, budget: i64, n1: i64) -> BigInt {
        if remaining_positions == 0 {
            return if l == 0 { BigInt::one() } else { BigInt::zero() };
        }
        let mut total = BigInt::zero();
        for i in 0..=l {
            let c = binomial(budget, i as i64);
            if c.is_zero() {
                continue;
            }
            total += c * go(remaining_positions - 1, l - i, budget + n1 - i as i64, n1);
        }
        total
    }
    go(s - 1, l, n as i64 - 1, n as i64 - 1)
}

/// The polynomial `((1+x)(1+2x)...(1+(s-1)x))^(n-1)` whose coefficients are
/// the `f(n, s, l)`; expanded once and reused for all `l`.
pub fn f_genfunc_poly(n: usize, s: usize) -> IntPolynomial {
    assert!(n >= 1 && s >= 1);
    let mut base = IntPolynomial::one();
    for i in 1..s {
        base = &base * &IntPolynomial::linear(BigInt::one(), BigInt::from(i));
    }
    base.pow(n - 1)
}

/// `f(n, s, l)` by coefficient extraction from [`f_genfunc_poly`].
pub fn f_genfunc(n: usize, s: usize, l: usize) -> BigInt {
    f_genfunc_poly(n, s).coeff(l)
}

/// `f(n, s, l)` via unsigned Stirling numbers of the first kind:
/// the coefficient of `x^l` in `(sum_j [s, s-j] x^j)^(n-1)`.
pub fn f_stirling1(n: usize, s: usize, l: usize) -> BigInt {
    assert!(n >= 1 && s >= 1);
    let mut tables = StirlingTables::new();
    let row = IntPolynomial::from_coeffs((0..s).map(|j| tables.first_unsigned(s, s - j)).collect());
    row.pow(n - 1).coeff(l)
}

/// The positive summation formula for `w = (x^s D^s)^n`:
/// `S_w(k) = sum_l f(n, s, l) {s(n-1)+1-l, k-(s-1)}`.
pub fn summation_sw(n: usize, s: usize, k: usize) -> BigInt {
    assert!(n >= 1 && s >= 1);
    let poly = f_genfunc_poly(n, s);
    let mut tables = StirlingTables::new();
    let mut total = BigInt::zero();
    let top = (s - 1) * (n - 1);
    for l in 0..=top {
        let f = poly.coeff(l);
        if f.is_zero() {
            continue;
        }
        let inner = if k + 1 >= s {
            tables.second(s * (n - 1) + 1 - l, k - (s - 1))
        } else {
            BigInt::zero()
        };
        total += f * inner;
    }
    total
}

/// The Bell number of a word: the sum of its normal-order coefficients.
pub fn bell_word(w: &Word) -> Result<BigInt, RewriteError> {
    Ok(normal_order(w)?.coeff_sum())
}

/// As [`bell_word`] but reusing an existing normal form.
pub fn bell_of_normal_form(nf: &NormalForm) -> BigInt {
    nf.coeff_sum()
}
