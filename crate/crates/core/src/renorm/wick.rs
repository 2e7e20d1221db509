use std::collections::BTreeMap;

use serde::Serialize;

use crate::kernel::{binom, dij_closed};
use crate::scalar::Scalar;

/// `T(i,k) = Σ_{m2=0}^{i} Σ_{m1=k}^{i} (-2)^{-(m1+m2)} binom(i,m1) binom(i,m2) binom(m1-k+m2, m2)`.
pub fn t_coefficient<S: Scalar>(i: usize, k: usize) -> S {
    let half = S::ratio(-1, 2);
    let mut acc = S::zero();
    for m2 in 0..=i {
        for m1 in k..=i {
            let b = binom::<S>(i as i64, m1 as i64).unwrap()
                * binom::<S>(i as i64, m2 as i64).unwrap()
                * binom::<S>((m1 - k + m2) as i64, m2 as i64).unwrap();
            acc = acc + S::powi(&half, (m1 + m2) as i32) * b;
        }
    }
    acc
}

/// `C^(1)_{ε,n} = Σ_k coefficients[k] · C(ε,k)`; the mollifier-dependent
/// `C(ε,k)` stay symbolic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WickStructure<S> {
    pub layer: usize,
    pub coefficients: BTreeMap<usize, S>,
}

impl<S: Scalar> WickStructure<S> {
    /// Evaluates the constant for given values of `C(ε,k)`.
    pub fn evaluate(&self, c_eps: impl Fn(usize) -> S) -> S {
        self.coefficients
            .iter()
            .fold(S::zero(), |acc, (&k, w)| acc + w.clone() * c_eps(k))
    }
}

/// Resummed route: `k -> (-2)^k T(n-1, k)` for `k < n`.
///
/// With an exact scalar the result is checked against
/// [`wick_structure_unresummed`] before it is returned.
pub fn wick_structure<S: Scalar>(n: usize) -> WickStructure<S> {
    assert!(n >= 1, "layers start at 1");
    let coefficients = (0..n)
        .map(|k| (k, S::powi(&S::from_i64(-2), k as i32) * t_coefficient::<S>(n - 1, k)))
        .collect();
    let w = WickStructure { layer: n, coefficients };
    if S::EXACT {
        assert_eq!(w, wick_structure_unresummed(n), "Wick routes disagree at layer {n}");
    }
    w
}

/// Unresummed route: `Σ_{m1,m2<n} binom(n-1,m1) binom(n-1,m2) D_{m1,m2}`,
/// with `G_k` and `G̃_k` identified (both evaluate to `C(ε,k)` for an even
/// mollifier).
pub fn wick_structure_unresummed<S: Scalar>(n: usize) -> WickStructure<S> {
    assert!(n >= 1, "layers start at 1");
    let mut coefficients: BTreeMap<usize, S> = BTreeMap::new();
    let top = n as i64 - 1;
    for m1 in 0..n {
        for m2 in 0..n {
            let w = binom::<S>(top, m1 as i64).unwrap() * binom::<S>(top, m2 as i64).unwrap();
            for (k, c) in dij_closed::<S>(m1, m2).collapse_reflection() {
                let e = coefficients.entry(k).or_insert_with(S::zero);
                *e = e.clone() + w.clone() * c;
            }
        }
    }
    coefficients.retain(|_, c| !c.is_zero());
    WickStructure { layer: n, coefficients }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    #[test]
    fn t_values() {
        assert_eq!(t_coefficient::<Q>(0, 0), q(1, 1));
        assert_eq!(t_coefficient::<Q>(1, 0), q(1, 2));
        assert_eq!(t_coefficient::<Q>(1, 1), q(-1, 4));
    }

    #[test]
    fn first_layers() {
        let w1 = wick_structure::<Q>(1);
        assert_eq!(w1.coefficients, BTreeMap::from([(0, q(1, 1))]));
        let w2 = wick_structure::<Q>(2);
        assert_eq!(w2.coefficients, BTreeMap::from([(0, q(1, 2)), (1, q(1, 2))]));
        let w3 = wick_structure::<Q>(3);
        assert_eq!(w3.coefficients, BTreeMap::from([(0, q(3, 8)), (1, q(5, 8)), (2, q(1, 4))]));
        let w4 = wick_structure::<Q>(4);
        assert_eq!(
            w4.coefficients,
            BTreeMap::from([(0, q(5, 16)), (1, q(11, 16)), (2, q(1, 2)), (3, q(1, 8))])
        );
    }

    #[test]
    fn routes_agree() {
        for n in 1..=8 {
            assert_eq!(wick_structure::<Q>(n), wick_structure_unresummed::<Q>(n), "layer {n}");
        }
    }

    #[test]
    fn float_route() {
        let w = wick_structure::<f64>(4);
        assert!((w.coefficients[&1] - 11.0 / 16.0).abs() < 1e-15);
        assert!((w.evaluate(|_| 1.0) - 13.0 / 8.0).abs() < 1e-14);
    }
}
