use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::graphs::{tall_tree_log_with, wide_tree_log_with};
use super::wick::{wick_structure, WickStructure};
use crate::hermite::TripleIntegrals;
use crate::kernel::BinomTable;
use crate::scalar::Scalar;

/// `value · (1/(4√3π)) · log ε`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LogConstant(pub BigRational);

impl LogConstant {
    pub const UNIT: &'static str = "1/(4*sqrt(3)*pi) * log(eps)";

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(&self.0).unwrap_or(f64::NAN)
    }

    /// Multiplier of `log ε` in absolute units.
    pub fn coefficient_of_log_eps(&self) -> f64 {
        self.to_f64() / (4.0 * 3f64.sqrt() * std::f64::consts::PI)
    }
}

impl std::ops::Add for &LogConstant {
    type Output = LogConstant;
    fn add(self, rhs: Self) -> LogConstant {
        LogConstant(&self.0 + &rhs.0)
    }
}

impl fmt::Display for LogConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for LogConstant {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.collect_str(&self.0)
    }
}

/// `Σ_e acc[e] (-2)^{-e}` as an exact fraction.
fn combine_powers(acc: &[i128]) -> BigRational {
    let top = acc.len().saturating_sub(1);
    let mut num = BigInt::zero();
    for (e, &v) in acc.iter().enumerate() {
        if v != 0 {
            let signed = if e % 2 == 0 { BigInt::from(v) } else { -BigInt::from(v) };
            num += signed << (top - e);
        }
    }
    BigRational::new(num, BigInt::from(1) << top)
}

/// Dense 5-index table.
struct Table5 {
    n: usize,
    data: Vec<i128>,
}

impl Table5 {
    fn idx(&self, a: usize, b: usize, c: usize, d: usize, e: usize) -> usize {
        (((a * self.n + b) * self.n + c) * self.n + d) * self.n + e
    }

    fn get(&self, a: usize, b: usize, c: usize, d: usize, e: usize) -> i128 {
        self.data[self.idx(a, b, c, d, e)]
    }
}

/// Largest layer accepted by [`c2_log`] and [`c3_log`]. The label sums are
/// accumulated in `i128` with checked arithmetic and stay in range at least
/// this far.
pub const MAX_LAYER: usize = 18;

/// `acc += a·b·c`, panicking on `i128` overflow instead of wrapping.
#[inline]
fn mac(acc: &mut i128, a: i128, b: i128, c: i128) {
    *acc = a
        .checked_mul(b)
        .and_then(|ab| ab.checked_mul(c))
        .and_then(|abc| acc.checked_add(abc))
        .expect("integer overflow in the label sums");
}

fn bi(table: &BinomTable, n: usize, k: usize) -> i128 {
    table.get(n as i64, k as i64)
}

/// `c^{<210>}` for all labels below `n`, i.e. the `<211>` coefficient
/// without its `binom(n-1, m6)` factor.
fn tall_label_sums(n: usize, b: &BinomTable) -> Table5 {
    let mut t = Table5 { n, data: vec![0; n.pow(5)] };
    let ni = n as i64;
    for m1 in 0..n {
        for m2 in 0..n {
            for m3 in 0..n {
                for m4 in 0..n {
                    let lo = m1.max(m2).max(m3).max(m4) + 1;
                    for m5 in 0..n {
                        let mut s = 0i128;
                        for i in lo..=n.saturating_sub(m5) {
                            let outer = b.get(ni - i as i64 - 1, m5 as i64 - 1) * bi(b, i - 1, m4);
                            if outer == 0 {
                                continue;
                            }
                            for j in 1..=i {
                                let inner = bi(b, j - 1, m1) * bi(b, j - 1, m2);
                                mac(&mut s, outer, inner, b.get(i as i64 - j as i64 - 1, m3 as i64 - 1));
                            }
                        }
                        let k = t.idx(m1, m2, m3, m4, m5);
                        t.data[k] = s;
                    }
                }
            }
        }
    }
    t
}

/// `Σ_i binom(n-i-1, m5-1) binom(i-1, m1) binom(i-1, m2)` indexed `[m1][m2][m5]`.
fn wide_label_sums(n: usize, b: &BinomTable) -> Vec<i128> {
    let mut out = vec![0i128; n * n * n];
    for m1 in 0..n {
        for m2 in 0..n {
            for m5 in 0..n {
                let mut s = 0;
                for i in 1..=n {
                    mac(&mut s, b.get(n as i64 - i as i64 - 1, m5 as i64 - 1), bi(b, i - 1, m1), bi(b, i - 1, m2));
                }
                out[(m1 * n + m2) * n + m5] = s;
            }
        }
    }
    out
}

fn quad_indices(n: usize) -> Vec<[usize; 4]> {
    let mut v = Vec::with_capacity(n.pow(4));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    v.push([a, b, c, d]);
                }
            }
        }
    }
    v
}

/// Log coefficient of the tall-graph constant `C^(2)` at layer `n`.
pub fn c2_log(n: usize) -> LogConstant {
    assert!((1..=MAX_LAYER).contains(&n), "layer {n} outside 1..={MAX_LAYER}");
    let b = BinomTable::new(4 * n);
    let sums = tall_label_sums(n, &b);
    let memo = TripleIntegrals::<BigRational>::new();
    let total: BigRational = quad_indices(n)
        .into_par_iter()
        .map(|[m3, m5, k1, k2]| {
            let mut acc = vec![0i128; 4 * n + 1];
            for m1 in 0..n {
                for m2 in 0..n {
                    for m4 in k2..n {
                        for m6 in k1..n {
                            let bk = bi(&b, m1 + m6 - k1, m1) * bi(&b, m2 + m4 - k2, m2)
                                + bi(&b, m1 + m4 - k2, m1) * bi(&b, m2 + m6 - k1, m2);
                            if bk == 0 {
                                continue;
                            }
                            let e = m1 + m2 + m4 + m6 + 2 - k1 - k2;
                            mac(&mut acc[e], bk, sums.get(m1, m2, m3, m4, m5), bi(&b, n - 1, m6));
                        }
                    }
                }
            }
            let brace = combine_powers(&acc);
            if brace.is_zero() {
                return brace;
            }
            brace * tall_tree_log_with(&memo, m3, m5, k1, k2)
        })
        .reduce(BigRational::zero, |a, b| a + b);
    LogConstant(total * BigRational::from_i64(4))
}

fn c3_brace(n: usize, b: &BinomTable, sums: &[i128], m5: usize, m6: usize, k1: usize, k2: usize) -> BigRational {
    let s = |m1: usize, m2: usize, m5: usize| sums[(m1 * n + m2) * n + m5];
    let mut acc = vec![0i128; 4 * n + 1];
    for m1 in 0..n {
        for m2 in 0..n {
            let si = s(m1, m2, m5);
            if si == 0 {
                continue;
            }
            for m3 in k2..n {
                for m4 in k1..n {
                    let bk = bi(b, m1 + m4 - k1, m1) * bi(b, m2 + m3 - k2, m2)
                        + bi(b, m1 + m3 - k2, m1) * bi(b, m2 + m4 - k1, m2);
                    mac(&mut acc[m1 + m2 + m3 + m4 + 2 - k1 - k2], bk, si, s(m3, m4, m6));
                }
            }
        }
    }
    combine_powers(&acc)
}

/// Log coefficient of the wide-graph constant `C^(3)` at layer `n`. The
/// two orderings of `(k1, k2)` are summed separately.
pub fn c3_log(n: usize) -> LogConstant {
    assert!((1..=MAX_LAYER).contains(&n), "layer {n} outside 1..={MAX_LAYER}");
    let b = BinomTable::new(4 * n);
    let sums = wide_label_sums(n, &b);
    let memo = TripleIntegrals::<BigRational>::new();
    let total: BigRational = quad_indices(n)
        .into_par_iter()
        .map(|[m5, m6, k1, k2]| {
            let brace = c3_brace(n, &b, &sums, m5, m6, k1, k2);
            if brace.is_zero() {
                return brace;
            }
            brace * wide_tree_log_with(&memo, m5, k1, k2, m6)
        })
        .reduce(BigRational::zero, |a, b| a + b);
    LogConstant(total * BigRational::from_i64(2))
}

/// `c3_log` with the identical graphs for `(k1,k2)` and `(k2,k1)` merged
/// before multiplying. Must agree with [`c3_log`].
pub fn c3_log_symmetrized(n: usize) -> LogConstant {
    assert!((1..=MAX_LAYER).contains(&n), "layer {n} outside 1..={MAX_LAYER}");
    let b = BinomTable::new(4 * n);
    let sums = wide_label_sums(n, &b);
    let memo = TripleIntegrals::<BigRational>::new();
    let mut total = BigRational::zero();
    for m5 in 0..n {
        for m6 in 0..n {
            for k1 in 0..n {
                for k2 in k1..n {
                    let mut brace = c3_brace(n, &b, &sums, m5, m6, k1, k2);
                    if k2 != k1 {
                        brace += c3_brace(n, &b, &sums, m5, m6, k2, k1);
                    }
                    if !brace.is_zero() {
                        total += brace * wide_tree_log_with(&memo, m5, k1, k2, m6);
                    }
                }
            }
        }
    }
    LogConstant(total * BigRational::from_i64(2))
}

/// All constants of one layer.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerConstants {
    pub wick: WickStructure<BigRational>,
    pub c2: LogConstant,
    pub c3: LogConstant,
}

impl LayerConstants {
    pub fn layer(&self) -> usize {
        self.wick.layer
    }

    pub fn log_total(&self) -> LogConstant {
        &self.c2 + &self.c3
    }
}

pub fn layer_constants(n: usize) -> LayerConstants {
    LayerConstants { wick: wick_structure(n), c2: c2_log(n), c3: c3_log(n) }
}
