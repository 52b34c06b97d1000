//! Exact counting functions: Stirling numbers of the second kind, Bell
//! numbers, binomials and factorials, all as arbitrary precision integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Triangle of Stirling numbers of the second kind, `S(n, r)` for
/// `0 <= r <= n <= max_n`, built with `S(n, r) = r S(n-1, r) + S(n-1, r-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = vec![BigInt::zero(); n + 1];
            for r in 1..=n {
                let stay = if r < n { &prev[r] * r } else { BigInt::zero() };
                row[r] = stay + &prev[r - 1];
            }
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, r)`, zero when `r > n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: usize, r: usize) -> BigInt {
        if r > n {
            return BigInt::zero();
        }
        self.rows[n][r].clone()
    }

    pub fn bell(&self, n: usize) -> BigInt {
        self.rows[n].iter().sum()
    }

    /// Overwrites one entry. Used by the self-test fault injection.
    #[doc(hidden)]
    pub fn set(&mut self, n: usize, r: usize, value: BigInt) {
        self.rows[n][r] = value;
    }
}

/// Stirling number of the second kind `S(n, r)`.
pub fn stirling2(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    if n == 0 {
        return BigInt::one();
    }
    if r == 0 {
        return BigInt::zero();
    }
    let mut prev = vec![BigInt::zero(); r + 1];
    prev[0] = BigInt::one();
    for i in 1..=n {
        let mut curr = vec![BigInt::zero(); r + 1];
        for j in 1..=i.min(r) {
            curr[j] = &prev[j - 1] + &prev[j] * j;
        }
        prev = curr;
    }
    prev[r].clone()
}

/// Bell number via the Bell triangle.
pub fn bell(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_else(BigInt::one));
        for v in &row {
            let s = next.last().unwrap() + v;
            next.push(s);
        }
        row = next;
    }
    row[0].clone()
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `(-1)^(m-1) (m-1)!`, the Möbius value of the full interval of the
/// lattice of partitions of an `m`-set.
pub fn signed_factorial(m: usize) -> BigInt {
    debug_assert!(m >= 1);
    let f = factorial(m as u64 - 1);
    if m % 2 == 0 {
        -f
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_stirling_values() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(5, 3), BigInt::from(25));
        assert_eq!(stirling2(0, 0), BigInt::one());
        for k in 1..10 {
            assert_eq!(stirling2(k, k), BigInt::one());
            assert_eq!(stirling2(k, 0), BigInt::zero());
        }
    }

    #[test]
    fn bell_matches_stirling_row_sums() {
        let table = StirlingTable::new(20);
        for n in 0..=20 {
            let row: BigInt = (0..=n).map(|r| stirling2(n, r)).sum();
            assert_eq!(bell(n), row);
            assert_eq!(table.bell(n), row);
            for r in 0..=n {
                assert_eq!(table.get(n, r), stirling2(n, r));
            }
        }
        assert_eq!(bell(3), BigInt::from(5));
        assert_eq!(bell(13), BigInt::from(27_644_437u64));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(6, 4), BigInt::from(15));
        assert_eq!(binomial(7, 4), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::zero());
        // C(103, 51) does not fit in 64 bits
        assert!(binomial(103, 51) > BigInt::from(u64::MAX));
    }

    #[test]
    fn signed_factorials() {
        assert_eq!(signed_factorial(1), BigInt::one());
        assert_eq!(signed_factorial(4), BigInt::from(-6));
        assert_eq!(signed_factorial(5), BigInt::from(24));
    }
}
