//! Polynomials in the deformation parameter q, with the q-integer,
//! q-factorial, q-binomial and Carlitz q-Stirling machinery built on them.
//!
//! Every public quantity produced here has nonnegative integer coefficients;
//! the canonical rendering is `c0 + c1*q + c2*q^2 + ...` with zero terms
//! omitted.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

/// A dense polynomial in q over the integers, exponent 0 first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPolynomial::from_coeffs(vec![c])
    }

    /// The monomial `q^e`.
    pub fn q_power(e: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[e] = BigInt::one();
        QPolynomial { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficients, exponent 0 first.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    /// Value at q = 1, i.e. the classical specialization.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: usize) -> QPolynomial {
        if self.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e];
        coeffs.extend_from_slice(&self.coeffs);
        QPolynomial { coeffs }
    }

    /// Exact division, defined only when the remainder vanishes.
    ///
    /// The divisors arising here (q-factorials, q-integers) are monic, so the
    /// quotient stays over the integers whenever the division is exact.
    pub fn exact_div(&self, divisor: &QPolynomial) -> Option<QPolynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(QPolynomial::zero());
        }
        let d = divisor.coeffs.len() - 1;
        let lead = &divisor.coeffs[d];
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return None;
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i].clone();
            if c.is_zero() {
                continue;
            }
            if !(&c % lead).is_zero() {
                return None;
            }
            let f = &c / lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - d + j;
                rem[idx] -= &f * dc;
            }
            quot[i - d] = f;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(QPolynomial::from_coeffs(quot))
        } else {
            None
        }
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// JSON form: the dense coefficient array as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(c.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}*")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;

    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        *self = &*self + rhs;
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;

    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

/// The q-integer `[m]_q = 1 + q + ... + q^(m-1)`; `[0]_q = 0`.
pub fn q_int(m: usize) -> QPolynomial {
    QPolynomial::from_coeffs(vec![BigInt::one(); m])
}

/// The q-factorial `[a]_q!`, with `[0]_q! = 1` and zero for negative `a`.
pub fn q_factorial(a: i64) -> QPolynomial {
    if a < 0 {
        return QPolynomial::zero();
    }
    let mut acc = QPolynomial::one();
    for m in 1..=a as usize {
        acc = &acc * &q_int(m);
    }
    acc
}

/// The q-binomial coefficient, zero outside `0 <= b <= a`.
pub fn q_binomial(a: i64, b: i64) -> QPolynomial {
    if b < 0 || b > a {
        return QPolynomial::zero();
    }
    q_factorial(a)
        .exact_div(&(&q_factorial(b) * &q_factorial(a - b)))
        .expect("q-factorial ratio divides exactly")
}

/// Falling product `[r]_q [r-1]_q ... [r-j+1]_q`.
pub fn q_falling(r: usize, j: usize) -> QPolynomial {
    if j > r {
        return QPolynomial::zero();
    }
    let mut acc = QPolynomial::one();
    for i in 0..j {
        acc = &acc * &q_int(r - i);
    }
    acc
}

/// Carlitz q-Stirling number of the second kind, via the recurrence
/// `{n, k}_q = q^(k-1) {n-1, k-1}_q + [k]_q {n-1, k}_q` with base `1_{n=k}`.
pub fn q_stirling_carlitz(n: usize, k: usize) -> QPolynomial {
    if k > n {
        return QPolynomial::zero();
    }
    // row DP over n' = 0..n
    let mut row = vec![QPolynomial::one()]; // {0, 0}_q
    for np in 1..=n {
        let mut next = Vec::with_capacity(np + 1);
        next.push(QPolynomial::zero()); // {np, 0}_q = 0 for np > 0
        for kp in 1..=np {
            let from_new_block = if kp >= 1 && kp - 1 < row.len() {
                row[kp - 1].shift(kp - 1)
            } else {
                QPolynomial::zero()
            };
            let from_existing = if kp < row.len() {
                &q_int(kp) * &row[kp]
            } else {
                QPolynomial::zero()
            };
            next.push(&from_new_block + &from_existing);
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(QPolynomial::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn q_int_and_factorial() {
        assert_eq!(q_int(3), qp(&[1, 1, 1]));
        assert_eq!(q_int(0), QPolynomial::zero());
        // (1)(1+q)(1+q+q^2)
        assert_eq!(q_factorial(3), qp(&[1, 2, 2, 1]));
        assert_eq!(q_factorial(0), QPolynomial::one());
        assert_eq!(q_factorial(-1), QPolynomial::zero());
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(4, 2), qp(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, 0), QPolynomial::one());
        assert_eq!(q_binomial(3, 3), QPolynomial::one());
        assert_eq!(q_binomial(3, -1), QPolynomial::zero());
        assert_eq!(q_binomial(3, 4), QPolynomial::zero());
    }

    // Pascal-type recurrence C(a,b)_q = C(a-1,b-1)_q + q^b C(a-1,b)_q as the
    // second route.
    fn q_binomial_pascal(a: i64, b: i64) -> QPolynomial {
        if b < 0 || b > a {
            return QPolynomial::zero();
        }
        if b == 0 || b == a {
            return QPolynomial::one();
        }
        &q_binomial_pascal(a - 1, b - 1) + &q_binomial_pascal(a - 1, b).shift(b as usize)
    }

    #[test]
    fn q_binomial_routes_agree() {
        for a in 0..=8i64 {
            for b in 0..=a {
                assert_eq!(q_binomial(a, b), q_binomial_pascal(a, b), "({a}, {b})");
            }
        }
    }

    #[test]
    fn carlitz_values() {
        assert_eq!(q_stirling_carlitz(3, 2), qp(&[0, 2, 1])); // 2q + q^2
        assert_eq!(q_stirling_carlitz(3, 0), QPolynomial::zero());
        assert_eq!(q_stirling_carlitz(0, 0), QPolynomial::one());
        for n in 0..=6 {
            assert_eq!(
                q_stirling_carlitz(n, n),
                QPolynomial::q_power(n * (n.max(1) - 1) / 2),
                "diagonal n = {n}"
            );
        }
    }

    #[test]
    fn exact_division_detects_remainders() {
        let num = &q_int(3) * &q_int(2);
        assert_eq!(num.exact_div(&q_int(2)), Some(q_int(3)));
        assert_eq!(q_int(3).exact_div(&q_int(2)), None);
    }

    #[test]
    fn display_canonical() {
        assert_eq!(qp(&[0, 2, 1]).to_string(), "2*q + q^2");
        assert_eq!(qp(&[1, 0, 3]).to_string(), "1 + 3*q^2");
        assert_eq!(QPolynomial::zero().to_string(), "0");
        assert_eq!(QPolynomial::q_power(1).to_string(), "q");
    }

    #[test]
    fn eval_at_one_sums_coefficients() {
        assert_eq!(qp(&[1, 2, 3]).eval_at_one(), BigInt::from(6));
        assert_eq!(q_binomial(4, 2).eval_at_one(), BigInt::from(6));
    }
}
