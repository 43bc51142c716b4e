//! Exact Catalan and ballot number arithmetic.
//!
//! C(n) counts 321-avoiding permutations of [n]; the ballot triangle C(n,k)
//! refines it by block number. Everything is computed with big integers via
//! binomial differences, never floating point.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum CatalanError {
    #[error("k = {k} out of range for n = {n} (need 0 <= k <= n)")]
    KOutOfRange { n: usize, k: usize },
}

/// binom(a, b); zero when b > a.
pub fn binomial(a: usize, b: usize) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut out = BigUint::one();
    for i in 0..b {
        out = out * BigUint::from(a - i) / BigUint::from(i + 1);
    }
    out
}

/// C(n) = binom(2n, n) - binom(2n, n+1).
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) - binomial(2 * n, n + 1)
}

/// Ballot number C(n, k) = binom(2n-k-1, n-1) - binom(2n-k-1, n) for
/// 1 <= k <= n, with C(n, 0) = 1 if n = 0 and 0 otherwise.
pub fn ballot(n: usize, k: usize) -> Result<BigUint, CatalanError> {
    if k > n {
        return Err(CatalanError::KOutOfRange { n, k });
    }
    if k == 0 {
        return Ok(if n == 0 { BigUint::one() } else { BigUint::zero() });
    }
    Ok(binomial(2 * n - k - 1, n - 1) - binomial(2 * n - k - 1, n))
}

/// Coefficients 0..=n_max of (x c(x))^k, where c(x) is the Catalan
/// generating function, by truncated self-convolution. The coefficient of
/// x^n is the ballot number C(n, k).
pub fn gf_coefficients(k: usize, n_max: usize) -> Vec<BigUint> {
    let len = n_max + 1;
    // x c(x) has coefficients 0, C(0), C(1), ...
    let mut base = vec![BigUint::zero(); len];
    for n in 1..len {
        base[n] = catalan(n - 1);
    }
    let mut out = vec![BigUint::zero(); len];
    out[0] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); len];
        for i in 0..len {
            if out[i].is_zero() {
                continue;
            }
            for j in 1..len - i {
                if !base[j].is_zero() {
                    let add = &out[i] * &base[j];
                    next[i + j] += add;
                }
            }
        }
        out = next;
    }
    out
}

/// Precomputed Catalan numbers C(0..=n_max) and the ballot triangle rows
/// C(n, 1..=n).
#[derive(Debug, Clone)]
pub struct CatalanTable {
    n_max: usize,
    catalan: Vec<BigUint>,
    triangle: Vec<Vec<BigUint>>,
}

impl CatalanTable {
    pub fn new(n_max: usize) -> Self {
        let catalan: Vec<BigUint> = (0..=n_max).map(catalan).collect();
        let triangle: Vec<Vec<BigUint>> = (0..=n_max)
            .map(|n| (1..=n).map(|k| ballot(n, k).expect("k in range")).collect())
            .collect();
        for n in 1..=n_max {
            let sum: BigUint = triangle[n].iter().sum();
            debug_assert_eq!(sum, catalan[n], "row {n} does not sum to C({n})");
        }
        CatalanTable { n_max, catalan, triangle }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn catalan(&self, n: usize) -> &BigUint {
        &self.catalan[n]
    }

    /// Row n as C(n, 1), ..., C(n, n).
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.triangle[n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{enumerate_avoiders, Permutation};

    const SMALL_CATALAN: [u64; 13] =
        [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];

    #[test]
    fn catalan_small_values() {
        for (n, &c) in SMALL_CATALAN.iter().enumerate() {
            assert_eq!(catalan(n), BigUint::from(c), "C({n})");
        }
        assert_eq!(catalan(20), BigUint::from(6564120420u64));
    }

    #[test]
    fn catalan_counts_avoiders() {
        let pat: Permutation = "321".parse().unwrap();
        for n in 0..=8 {
            assert_eq!(
                BigUint::from(enumerate_avoiders(n, &pat).count()),
                catalan(n)
            );
        }
    }

    #[test]
    fn ballot_row_four() {
        let row: Vec<BigUint> = (1..=4).map(|k| ballot(4, k).unwrap()).collect();
        let expected: Vec<BigUint> = [5u32, 5, 3, 1].iter().map(|&x| BigUint::from(x)).collect();
        assert_eq!(row, expected);
    }

    #[test]
    fn ballot_edges() {
        assert_eq!(ballot(0, 0).unwrap(), BigUint::one());
        assert_eq!(ballot(3, 0).unwrap(), BigUint::zero());
        assert_eq!(ballot(10, 1).unwrap(), BigUint::from(4862u32));
        assert_eq!(
            ballot(4, 5).unwrap_err(),
            CatalanError::KOutOfRange { n: 4, k: 5 }
        );
        for n in 1..=12 {
            assert_eq!(ballot(n, 1).unwrap(), catalan(n - 1), "C({n},1)");
            assert_eq!(ballot(n, n).unwrap(), BigUint::one(), "C({n},{n})");
        }
    }

    #[test]
    fn ballot_triangle_recurrence() {
        // C(n, k) = C(n, k+1) + C(n-1, k-1) inside the triangle.
        for n in 2..=12 {
            for k in 1..n {
                let lhs = ballot(n, k).unwrap();
                let rhs = ballot(n, k + 1).unwrap() + ballot(n - 1, k - 1).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn gf_coefficients_match_ballot() {
        for k in 0..=12 {
            let coeffs = gf_coefficients(k, 12);
            for n in 0..=12 {
                let expected = if k <= n {
                    ballot(n, k).unwrap()
                } else {
                    BigUint::zero()
                };
                assert_eq!(coeffs[n], expected, "k = {k}, n = {n}");
            }
        }
    }

    #[test]
    fn gf_power_one_is_shifted_catalan() {
        let coeffs = gf_coefficients(1, 10);
        assert_eq!(coeffs[0], BigUint::zero());
        for n in 1..=10 {
            assert_eq!(coeffs[n], catalan(n - 1));
        }
    }

    #[test]
    fn catalan_convolution_recurrence_to_20() {
        for n in 0..20 {
            let sum: BigUint = (0..=n).map(|i| catalan(i) * catalan(n - i)).sum();
            assert_eq!(sum, catalan(n + 1), "n = {n}");
        }
    }

    #[test]
    fn table_rows_sum_to_catalan() {
        let table = CatalanTable::new(12);
        for n in 1..=12 {
            let sum: BigUint = table.row(n).iter().sum();
            assert_eq!(&sum, table.catalan(n));
            assert_eq!(table.row(n)[0], catalan(n - 1));
        }
        assert_eq!(table.n_max(), 12);
    }
}
