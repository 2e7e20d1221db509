//! Log coefficients of the two contracted fourth-order graphs: each graph
//! integrates in space to `r/(4√3 π t)` and the functions here return `r`.

use crate::hermite::TripleIntegrals;
use crate::kernel::binom;
use crate::scalar::Scalar;

fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::from_i64(k as i64))
}

fn pow2<S: Scalar>(e: usize) -> S {
    S::powi(&S::from_i64(2), e as i32)
}

/// `(-2)^{-e}`
fn neg_half_pow<S: Scalar>(e: usize) -> S {
    S::powi(&S::ratio(-1, 2), e as i32)
}

fn sign<S: Scalar>(e: usize) -> S {
    if e.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

/// Tall graph `𝒢_{m3,m5,k1,k2}`, with its three cases on `d = m3 - k2`:
/// `d ∈ {-1, 0}` is a single squared Hermite term, `d >= 1` and `d <= -2`
/// telescope into an alternating `A`-part plus a half-weight `B`-part.
pub fn tall_tree_log_with<S: Scalar>(memo: &TripleIntegrals<S>, m3: usize, m5: usize, k1: usize, k2: usize) -> S {
    let d = m3 as i64 - k2 as i64;
    let half = S::ratio(1, 2);
    let mut acc = S::zero();
    let triple = |s: usize, n2: usize, n3: usize| {
        // t^{s+m3+k2} from the kernels against t^{-(n1+n2+n3)/2} from the
        // Hermite factors
        assert_eq!(2 * s + n2 + n3, 2 * (s + m3 + k2), "powers of t do not cancel");
        memo.get(2 * s, n2, n3)
    };
    for s in 0..=k1 {
        let pre = neg_half_pow::<S>(m5 + k1 - s + 1) * binom::<S>((m5 + k1 - s) as i64, m5 as i64).unwrap();
        let base = pre
            / (factorial::<S>(s) * factorial::<S>(m3) * factorial::<S>(k2) * pow2::<S>(s + m3 + k2));
        match d {
            -1 | 0 => {
                let a = (2 * m3 + 1).min(2 * k2);
                acc = acc + half.clone() * base * triple(s, a, a);
            }
            d if d >= 1 => {
                let d = d as usize;
                for l in 1..=d {
                    acc = acc + sign::<S>(l + 1) * base.clone() * triple(s, 2 * m3 + 1 - l, 2 * k2 + l - 1);
                }
                acc = acc + sign::<S>(d) * half.clone() * base * triple(s, m3 + k2, m3 + k2);
            }
            _ => {
                let gap = k2 - m3 - 1;
                for l in 1..=gap {
                    acc = acc + sign::<S>(l + 1) * base.clone() * triple(s, 2 * m3 + l, 2 * k2 - l);
                }
                acc = acc + sign::<S>(gap) * half.clone() * base * triple(s, m3 + k2, m3 + k2);
            }
        }
    }
    acc
}

pub fn tall_tree_log<S: Scalar>(m3: usize, m5: usize, k1: usize, k2: usize) -> S {
    tall_tree_log_with(&TripleIntegrals::new(), m3, m5, k1, k2)
}

/// Wide graph `𝒢̄_{m5;k1,k2;m6}`.
pub fn wide_tree_log_with<S: Scalar>(memo: &TripleIntegrals<S>, m5: usize, k1: usize, k2: usize, m6: usize) -> S {
    let mut acc = S::zero();
    for s in 0..=m5 {
        let pre = neg_half_pow::<S>(m6 + m5 - s + 1) * binom::<S>((m6 + m5 - s) as i64, m6 as i64).unwrap();
        let denom = factorial::<S>(k1) * factorial::<S>(k2) * factorial::<S>(s) * pow2::<S>(k1 + k2 + s);
        acc = acc - pre / denom * memo.get(2 * k1, 2 * k2, 2 * s);
    }
    acc
}

pub fn wide_tree_log<S: Scalar>(m5: usize, k1: usize, k2: usize, m6: usize) -> S {
    wide_tree_log_with(&TripleIntegrals::new(), m5, k1, k2, m6)
}
