//! Probabilists' Hermite polynomials and the Gaussian triple-product
//! integral
//!
//! `A_{n1,n2,n3} = ∫ H_{n1}(x/√(2t)) H_{n2}(x/√(2t)) H_{n3}(x/√(2t)) G(t,x)³ dx`,
//!
//! which always has the form `c / (4√3 π t)` with `c` rational.

mod quadrature;

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::scalar::{Real, Scalar};

pub use quadrature::{quadrature_oracle, unit_prefactor, QUADRATURE_DEGREE_BUDGET};

/// `H_n` in the monomial basis; `coeffs[r]` multiplies `x^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitePoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> HermitePoly<S> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }
}

/// `H_0 = 1`, `H_1 = x`, `H_{n+1} = x H_n - n H_{n-1}`.
pub fn hermite<S: Scalar>(n: usize) -> HermitePoly<S> {
    let mut prev: Vec<S> = vec![S::one()];
    if n == 0 {
        return HermitePoly { coeffs: prev };
    }
    let mut cur: Vec<S> = vec![S::zero(), S::one()];
    for k in 1..n {
        let mut next = vec![S::zero(); k + 2];
        for (r, c) in cur.iter().enumerate() {
            next[r + 1] = next[r + 1].clone() + c.clone();
        }
        let kk = S::from_i64(k as i64);
        for (r, c) in prev.iter().enumerate() {
            next[r] = next[r].clone() - kk.clone() * c.clone();
        }
        prev = std::mem::replace(&mut cur, next);
    }
    HermitePoly { coeffs: cur }
}

/// Numeric `H_n(x)` by the three-term recurrence.
pub fn hermite_value<F: Real>(n: usize, x: F) -> F {
    let mut prev = F::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for k in 1..n {
        let next = x * cur - F::of_usize(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Value of `A_{n1,n2,n3}` as the rational multiplier of `1/(4√3 π t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleIntegralValue<S> {
    pub coefficient: S,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Closed form of the triple product: zero for odd `n1+n2+n3 = 2M`, otherwise
///
/// `2^{-M} Σ_r Π_j (-1)^{r_j} 3^{r_j - n_j/2} n_j!/(r_j!(n_j-2r_j)!) · (2M-2R)!/(M-R)!`
///
/// over `0 <= r_j <= n_j/2`, `R = r1+r2+r3`. All powers of three are
/// gathered into one integer exponent `R - M`.
pub fn triple_integral<S: Scalar>(n1: usize, n2: usize, n3: usize) -> TripleIntegralValue<S> {
    let total = n1 + n2 + n3;
    if total % 2 == 1 {
        return TripleIntegralValue { coefficient: S::zero() };
    }
    let half = total / 2;
    let ns = [n1, n2, n3];
    // Σ over r of the integer part, times 3^R; the common denominator is 6^M
    let per_index: Vec<Vec<BigInt>> = ns
        .iter()
        .map(|&n| {
            (0..=n / 2)
                .map(|r| factorial(n) / (factorial(r) * factorial(n - 2 * r)))
                .collect()
        })
        .collect();
    let mut sum = BigInt::zero();
    for (r1, a1) in per_index[0].iter().enumerate() {
        for (r2, a2) in per_index[1].iter().enumerate() {
            for (r3, a3) in per_index[2].iter().enumerate() {
                let r = r1 + r2 + r3;
                let rest = factorial(total - 2 * r) / factorial(half - r);
                let mut term = a1 * a2 * a3 * rest * num_traits::pow(BigInt::from(3), r);
                if r % 2 == 1 {
                    term = -term;
                }
                sum += term;
            }
        }
    }
    let denom = num_traits::pow(BigInt::from(6), half);
    TripleIntegralValue {
        coefficient: S::from_bigint(sum) / S::from_bigint(denom),
    }
}

/// Memo table for [`triple_integral`], keyed by the sorted triple. Safe for
/// concurrent readers and writers.
#[derive(Debug, Default)]
pub struct TripleIntegrals<S> {
    cache: RwLock<HashMap<[usize; 3], S>>,
}

impl<S: Scalar> TripleIntegrals<S> {
    pub fn new() -> Self {
        Self { cache: RwLock::new(HashMap::new()) }
    }

    pub fn get(&self, n1: usize, n2: usize, n3: usize) -> S {
        let mut key = [n1, n2, n3];
        key.sort_unstable();
        if let Some(v) = self.cache.read().expect("poisoned memo").get(&key) {
            return v.clone();
        }
        let v = triple_integral::<S>(key[0], key[1], key[2]).coefficient;
        self.cache
            .write()
            .expect("poisoned memo")
            .entry(key)
            .or_insert(v)
            .clone()
    }

    pub fn len(&self) -> usize {
        self.cache.read().expect("poisoned memo").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_i64(x)).collect()
    }

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(hermite::<Q>(0).coeffs(), ints(&[1]).as_slice());
        assert_eq!(hermite::<Q>(1).coeffs(), ints(&[0, 1]).as_slice());
        assert_eq!(hermite::<Q>(2).coeffs(), ints(&[-1, 0, 1]).as_slice());
        assert_eq!(
            hermite::<Q>(6).coeffs(),
            ints(&[-15, 0, 45, 0, -15, 0, 1]).as_slice()
        );
    }

    #[test]
    fn parity_and_numeric_agreement() {
        for n in 0..12 {
            let p = hermite::<Q>(n);
            for (r, c) in p.coeffs().iter().enumerate() {
                if (r + n) % 2 == 1 {
                    assert!(c.is_zero());
                }
            }
            let x = 0.37f64;
            let exact = p.eval(&Q::ratio(37, 100));
            assert!((Scalar::to_f64(&exact) - hermite_value(n, x)).abs() < 1e-9);
        }
    }

    #[test]
    fn triple_examples() {
        assert_eq!(triple_integral::<Q>(0, 0, 0).coefficient, Q::from_i64(1));
        assert_eq!(triple_integral::<Q>(1, 0, 0).coefficient, Q::from_i64(0));
        assert_eq!(triple_integral::<Q>(2, 0, 0).coefficient, Q::ratio(-2, 3));
    }

    #[test]
    fn triple_oracle_by_direct_moments() {
        // Independent route: with y = x√(3/2t), A·(4√3πt) = E[Π H_{n_j}(Y/√3)]
        // for Y ~ N(0,1), via the exact moments E[Y^{2m}] = (2m-1)!!.
        fn gaussian_moment(p: usize) -> Q {
            if p % 2 == 1 {
                return Q::from_i64(0);
            }
            (1..p).step_by(2).fold(Q::from_i64(1), |acc, k| acc * Q::from_i64(k as i64))
        }
        for n1 in 0..6 {
            for n2 in 0..6 {
                for n3 in 0..6 {
                    let prod = [n1, n2, n3].iter().fold(vec![Q::from_i64(1)], |acc, &n| {
                        let h = hermite::<Q>(n);
                        let mut out = vec![Q::from_i64(0); acc.len() + n];
                        for (a, ca) in acc.iter().enumerate() {
                            for (b, cb) in h.coeffs().iter().enumerate() {
                                out[a + b] = out[a + b].clone() + ca * cb;
                            }
                        }
                        out
                    });
                    // substitute x = y/√3: x^p -> y^p 3^{-p/2}; odd p vanish
                    let mut expect = Q::from_i64(0);
                    for (p, c) in prod.iter().enumerate() {
                        if p % 2 == 0 {
                            let scale = <Q as Scalar>::powi(&Q::from_i64(3), -((p / 2) as i32));
                            expect += c * gaussian_moment(p) * scale;
                        }
                    }
                    assert_eq!(triple_integral::<Q>(n1, n2, n3).coefficient, expect, "({n1},{n2},{n3})");
                }
            }
        }
    }

    #[test]
    fn memo_is_symmetric() {
        let memo = TripleIntegrals::<Q>::new();
        let a = memo.get(4, 2, 6);
        assert_eq!(memo.get(6, 4, 2), a);
        assert_eq!(memo.len(), 1);
        assert_eq!(a, triple_integral::<Q>(2, 6, 4).coefficient);
    }
}
