//! Closed-form tree coefficients after resummation over the layer indices.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::kernel::binom_int;
use crate::scalar::Scalar;

fn b(n: i64, k: i64) -> BigInt {
    binom_int(n, k).expect("ranges keep arguments >= -1")
}

/// Coefficient of `<1>[ℓ]` in `h_n^(0)`.
pub fn coeff_10<S: Scalar>(n: usize, l: usize) -> S {
    S::from_bigint(b(n as i64 - 1, l as i64))
}

/// Coefficient of `<20>[m1,m2,ℓ]` in `h_n^(1)`.
pub fn coeff_20<S: Scalar>(n: usize, m1: usize, m2: usize, l: usize) -> S {
    S::from_bigint(coeff_20_int(n, m1, m2, l))
}

fn coeff_20_int(n: usize, m1: usize, m2: usize, l: usize) -> BigInt {
    let (n, m1, m2, l) = (n as i64, m1 as i64, m2 as i64, l as i64);
    (m1.max(m2) + 1..=n - l)
        .map(|i| b(n - i - 1, l - 1) * b(i - 1, m1) * b(i - 1, m2))
        .sum()
}

/// `c^{<210>}`: the coefficient of `<210>[m1,m2,m3,m4,ℓ]` in `h_n^(2)` is
/// twice this value.
pub fn coeff_210<S: Scalar>(n: usize, m: [usize; 4], l: usize) -> S {
    S::from_bigint(coeff_210_int(n, m, l))
}

fn coeff_210_int(n: usize, m: [usize; 4], l: usize) -> BigInt {
    let n = n as i64;
    let l = l as i64;
    let [m1, m2, m3, m4] = m.map(|x| x as i64);
    let lo = m1.max(m2).max(m3).max(m4) + 1;
    let mut acc = BigInt::zero();
    for i in lo..=n - l {
        let outer = b(n - i - 1, l - 1) * b(i - 1, m4);
        if outer.is_zero() {
            continue;
        }
        for j in 1..=i {
            acc += &outer * b(j - 1, m1) * b(j - 1, m2) * b(i - j - 1, m3 - 1);
        }
    }
    acc
}

/// `c^{<211>}`: the right-hand side of layer `n` contains
/// `4 c^{<211>} <211>[m1..m6]`.
pub fn coeff_211<S: Scalar>(n: usize, m: [usize; 6]) -> S {
    let [m1, m2, m3, m4, m5, m6] = m;
    S::from_bigint(coeff_210_int(n, [m1, m2, m3, m4], m5) * b(n as i64 - 1, m6 as i64))
}

/// Coefficient of `<40>[m1..m6]` in the right-hand side of layer `n`.
pub fn coeff_40<S: Scalar>(n: usize, m: [usize; 6]) -> S {
    let [m1, m2, m3, m4, m5, m6] = m;
    S::from_bigint(coeff_20_int(n, m1, m2, m5) * coeff_20_int(n, m3, m4, m6))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Q = BigRational;

    #[test]
    fn single_layer_values() {
        assert_eq!(coeff_211::<Q>(1, [0; 6]), Q::from_i64(1));
        assert_eq!(coeff_40::<Q>(1, [0; 6]), Q::from_i64(1));
        assert_eq!(coeff_20::<Q>(1, 0, 0, 0), Q::from_i64(1));
    }

    #[test]
    fn second_layer_values() {
        // n = 2, ℓ = 1 forces m1 = m2 = 0
        assert_eq!(coeff_20::<Q>(2, 0, 0, 1), Q::from_i64(1));
        assert_eq!(coeff_20::<Q>(2, 1, 0, 1), Q::from_i64(0));
        // ℓ = 0 leaves only i = n
        assert_eq!(coeff_20::<Q>(2, 0, 0, 0), Q::from_i64(1));
        assert_eq!(coeff_20::<Q>(2, 1, 1, 0), Q::from_i64(1));
        assert_eq!(coeff_211::<Q>(2, [0, 0, 0, 0, 1, 0]), Q::from_i64(1));
        assert_eq!(coeff_40::<Q>(2, [0; 6]), Q::from_i64(1));
        assert_eq!(coeff_40::<Q>(2, [0, 0, 1, 1, 1, 0]), Q::from_i64(1));
    }

    #[test]
    fn out_of_range_labels_vanish() {
        assert_eq!(coeff_40::<Q>(2, [2, 0, 0, 0, 0, 0]), Q::from_i64(0));
        // m5 > n-1-max(m1..m4): empty index range
        assert_eq!(coeff_211::<Q>(3, [1, 0, 0, 0, 2, 0]), Q::from_i64(0));
    }

    #[test]
    fn float_matches_exact() {
        let exact: Q = coeff_211(4, [1, 0, 1, 0, 1, 2]);
        let approx: f64 = coeff_211(4, [1, 0, 1, 0, 1, 2]);
        assert_eq!(exact.to_f64(), approx);
    }

    proptest! {
        #[test]
        fn product_leaf_swap(n in 1usize..7, m in proptest::array::uniform6(0usize..6)) {
            let [m1, m2, m3, m4, m5, m6] = m;
            prop_assert_eq!(coeff_211::<Q>(n, m), coeff_211::<Q>(n, [m2, m1, m3, m4, m5, m6]));
            prop_assert_eq!(coeff_40::<Q>(n, m), coeff_40::<Q>(n, [m2, m1, m3, m4, m5, m6]));
            prop_assert_eq!(coeff_40::<Q>(n, m), coeff_40::<Q>(n, [m1, m2, m4, m3, m5, m6]));
        }

        #[test]
        fn wide_branch_swap(n in 1usize..7, m in proptest::array::uniform6(0usize..6)) {
            let [m1, m2, m3, m4, m5, m6] = m;
            prop_assert_eq!(coeff_40::<Q>(n, m), coeff_40::<Q>(n, [m3, m4, m1, m2, m6, m5]));
        }

        #[test]
        fn first_order_total(n in 1usize..9) {
            let total = (0..n).map(|l| coeff_10::<Q>(n, l)).fold(Q::from_i64(0), |a, x| a + x);
            prop_assert_eq!(total, Q::from_i64(1 << (n - 1)));
        }
    }
}
