//! Binomial coefficients with the `-1` extension used throughout the
//! resummed formulas: `binom(n, -1) = 0` for `n >= 0`,
//! `binom(-1, -1) = 1`, and `binom(-1, k) = 0` for `k >= 0`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn binom<S: Scalar>(n: i64, k: i64) -> Result<S> {
    binom_int(n, k).map(S::from_bigint)
}

pub fn binom_int(n: i64, k: i64) -> Result<BigInt> {
    if n < -1 || k < -1 {
        return Err(Error::BinomialDomain { n, k });
    }
    if k == -1 {
        return Ok(BigInt::from(u8::from(n == -1)));
    }
    if n == -1 || k > n {
        return Ok(BigInt::from(0));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for r in 0..k {
        acc = acc * (n - r) / (r + 1);
    }
    Ok(acc)
}

/// Pascal table for the hot loops of the constant sums.
///
/// Panics on arguments below `-1`: in those loops every range is bounded so
/// that this cannot happen, and reaching it is a bug.
#[derive(Debug, Clone)]
pub struct BinomTable {
    rows: Vec<Vec<i128>>,
}

impl BinomTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![1i128; n + 1];
            for k in 1..n {
                row[k] = rows[n - 1][k - 1] + rows[n - 1][k];
            }
            rows.push(row);
        }
        Self { rows }
    }

    #[inline]
    pub fn get(&self, n: i64, k: i64) -> i128 {
        assert!(n >= -1 && k >= -1, "binomial argument below -1: ({n}, {k})");
        if k == -1 {
            return i128::from(n == -1);
        }
        if n == -1 || k > n {
            return 0;
        }
        self.rows[n as usize][k as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn b(n: i64, k: i64) -> BigRational {
        binom(n, k).unwrap()
    }

    #[test]
    fn standard_values() {
        assert_eq!(b(5, 2), BigRational::from_i64(10));
        assert_eq!(b(0, 0), BigRational::from_i64(1));
        assert_eq!(b(2, 3), BigRational::from_i64(0));
    }

    #[test]
    fn minus_one_convention() {
        assert_eq!(b(3, -1), BigRational::from_i64(0));
        assert_eq!(b(0, -1), BigRational::from_i64(0));
        assert_eq!(b(-1, -1), BigRational::from_i64(1));
        assert_eq!(b(-1, 0), BigRational::from_i64(0));
    }

    #[test]
    fn rejects_below_minus_one() {
        assert!(matches!(
            binom::<BigRational>(-2, 0),
            Err(Error::BinomialDomain { n: -2, k: 0 })
        ));
        assert!(binom::<f64>(3, -4).is_err());
    }

    #[test]
    fn table_matches_bigint() {
        let t = BinomTable::new(30);
        for n in -1..=30 {
            for k in -1..=32 {
                assert_eq!(BigInt::from(t.get(n, k)), binom_int(n, k).unwrap());
            }
        }
    }
}
