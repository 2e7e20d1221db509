//! `D_{i,j} = G'_i * G̃'_j` over the basis `{G_k, G̃_k}`, by three routes:
//! closed form, the recursion, and explicit lattice-path enumeration.

use std::collections::BTreeMap;

use super::{binom, BasisKernel, KernelCombo};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest `i + j` accepted by [`dij_lattice_paths`].
pub const LATTICE_PATH_BUDGET: usize = 20;

fn neg_half_pow<S: Scalar>(e: i64) -> S {
    S::powi(&S::from_i64(-2), -(e as i32))
}

/// Closed form:
/// `D_{i,j} = -Σ_{k≤i} (-2)^{-(i+j-k+1)} binom(i+j-k, j) G̃_k
///            -Σ_{k≤j} (-2)^{-(i+j-k+1)} binom(i+j-k, i) G_k`.
pub fn dij_closed<S: Scalar>(i: usize, j: usize) -> KernelCombo<S> {
    let (ii, jj) = (i as i64, j as i64);
    let mut out = KernelCombo::zero();
    for k in 0..=ii {
        let c: S = binom(ii + jj - k, jj).expect("in range");
        out.add_term(BasisKernel::reflected(k as usize), -(neg_half_pow::<S>(ii + jj - k + 1) * c));
    }
    for k in 0..=jj {
        let c: S = binom(ii + jj - k, ii).expect("in range");
        out.add_term(BasisKernel::direct(k as usize), -(neg_half_pow::<S>(ii + jj - k + 1) * c));
    }
    out
}

/// All `D_{a,b}` for `a <= max_i`, `b <= max_j`, filled by the recursion
/// `D_{a,b} = -(D_{a-1,b} + D_{a,b-1})/2` with boundary rows
/// `D_{0,b} = -D_{0,b-1}/2 + G_b/2`, `D_{a,0} = -D_{a-1,0}/2 + G̃_a/2`
/// and `D_{0,0} = (G_0 + G̃_0)/2`.
#[derive(Debug, Clone)]
pub struct DijTable<S> {
    cols: usize,
    cells: Vec<KernelCombo<S>>,
}

impl<S: Scalar> DijTable<S> {
    pub fn new(max_i: usize, max_j: usize) -> Self {
        let cols = max_j + 1;
        let half = S::ratio(1, 2);
        let neg_half = S::ratio(-1, 2);
        let mut cells: Vec<KernelCombo<S>> = Vec::with_capacity((max_i + 1) * cols);
        for a in 0..=max_i {
            for b in 0..=max_j {
                let cell = match (a, b) {
                    (0, 0) => KernelCombo::from_terms([
                        (BasisKernel::direct(0), half.clone()),
                        (BasisKernel::reflected(0), half.clone()),
                    ]),
                    (0, b) => {
                        cells[b - 1].scale(&neg_half)
                            + KernelCombo::single(BasisKernel::direct(b), half.clone())
                    }
                    (a, 0) => {
                        cells[(a - 1) * cols].scale(&neg_half)
                            + KernelCombo::single(BasisKernel::reflected(a), half.clone())
                    }
                    (a, b) => {
                        (cells[(a - 1) * cols + b].clone() + cells[a * cols + b - 1].clone())
                            .scale(&neg_half)
                    }
                };
                cells.push(cell);
            }
        }
        Self { cols, cells }
    }

    pub fn get(&self, i: usize, j: usize) -> &KernelCombo<S> {
        &self.cells[i * self.cols + j]
    }
}

pub fn dij_recursion<S: Scalar>(i: usize, j: usize) -> KernelCombo<S> {
    DijTable::new(i, j).get(i, j).clone()
}

/// Brute force: walks every path in `W(i, j)` (down/left steps, stopping
/// anywhere on the boundary `{x = 0} ∪ {y = 0}`) and sums
/// `(-2)^{-len} F(end)` with `F(0,0) = (G + G̃)/2`, `F(0,b) = G_b/2`,
/// `F(a,0) = G̃_a/2`.
pub fn dij_lattice_paths<S: Scalar>(i: usize, j: usize) -> Result<KernelCombo<S>> {
    if i + j > LATTICE_PATH_BUDGET {
        return Err(Error::EnumerationBudget {
            total: i + j,
            budget: LATTICE_PATH_BUDGET,
        });
    }
    // (end site, path length) -> number of paths
    let mut tally: BTreeMap<((usize, usize), usize), u64> = BTreeMap::new();
    let mut stack = vec![(i, j, 0usize)];
    while let Some((x, y, len)) = stack.pop() {
        let on_boundary = x == 0 || y == 0;
        if on_boundary {
            *tally.entry(((x, y), len)).or_default() += 1;
            // travel along the boundary
            if x == 0 && y > 0 {
                stack.push((0, y - 1, len + 1));
            } else if y == 0 && x > 0 {
                stack.push((x - 1, 0, len + 1));
            }
        } else {
            stack.push((x - 1, y, len + 1));
            stack.push((x, y - 1, len + 1));
        }
    }

    let half = S::ratio(1, 2);
    let mut out = KernelCombo::zero();
    for (((x, y), len), count) in tally {
        let w = neg_half_pow::<S>(len as i64) * S::from_i64(count as i64) * half.clone();
        match (x, y) {
            (0, 0) => {
                out.add_term(BasisKernel::direct(0), w.clone());
                out.add_term(BasisKernel::reflected(0), w);
            }
            (0, b) => out.add_term(BasisKernel::direct(b), w),
            (a, _) => out.add_term(BasisKernel::reflected(a), w),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    fn combo(terms: &[(BasisKernel, Q)]) -> KernelCombo<Q> {
        KernelCombo::from_terms(terms.iter().cloned())
    }

    #[test]
    fn base_case() {
        let want = combo(&[(BasisKernel::direct(0), q(1, 2)), (BasisKernel::reflected(0), q(1, 2))]);
        assert_eq!(dij_closed::<Q>(0, 0), want);
        assert_eq!(dij_recursion::<Q>(0, 0), want);
        assert_eq!(dij_lattice_paths::<Q>(0, 0).unwrap(), want);
    }

    #[test]
    fn one_step_cases() {
        let d01 = combo(&[
            (BasisKernel::direct(0), q(-1, 4)),
            (BasisKernel::reflected(0), q(-1, 4)),
            (BasisKernel::direct(1), q(1, 2)),
        ]);
        assert_eq!(dij_recursion::<Q>(0, 1), d01);
        let d10 = combo(&[
            (BasisKernel::reflected(1), q(1, 2)),
            (BasisKernel::direct(0), q(-1, 4)),
            (BasisKernel::reflected(0), q(-1, 4)),
        ]);
        assert_eq!(dij_lattice_paths::<Q>(1, 0).unwrap(), d10);
        assert_eq!(dij_closed::<Q>(1, 0), d10);
    }

    #[test]
    fn worked_identity_d11() {
        // 4 G_1' * G̃_1' = -G_1 - G̃_1 + G_0 + G̃_0
        let four = dij_closed::<Q>(1, 1).scale(&q(4, 1));
        let want = combo(&[
            (BasisKernel::direct(1), q(-1, 1)),
            (BasisKernel::reflected(1), q(-1, 1)),
            (BasisKernel::direct(0), q(1, 1)),
            (BasisKernel::reflected(0), q(1, 1)),
        ]);
        assert_eq!(four, want);
    }

    #[test]
    fn worked_identity_d01() {
        // 4 G_0' * G̃_1' = 2 G̃_1 - G_0 - G̃_0; in D_{i,j} = G'_i * G̃'_j the
        // reflected factor carries index j, so this is D_{0,1} reflected.
        let four = dij_closed::<Q>(0, 1).reflect().scale(&q(4, 1));
        let want = combo(&[
            (BasisKernel::reflected(1), q(2, 1)),
            (BasisKernel::direct(0), q(-1, 1)),
            (BasisKernel::reflected(0), q(-1, 1)),
        ]);
        assert_eq!(four, want);
    }

    #[test]
    fn three_routes_agree_on_examples() {
        assert_eq!(dij_closed::<Q>(0, 2), dij_recursion::<Q>(0, 2));
        assert_eq!(dij_closed::<Q>(5, 3), dij_recursion::<Q>(5, 3));
        assert_eq!(dij_closed::<Q>(3, 4), dij_lattice_paths::<Q>(3, 4).unwrap());
    }

    #[test]
    fn reflection_symmetry() {
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(dij_closed::<Q>(j, i), dij_closed::<Q>(i, j).reflect());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            dij_lattice_paths::<Q>(11, 10),
            Err(Error::EnumerationBudget { total: 21, budget: 20 })
        ));
    }

    #[test]
    fn float_scalar_runs_the_same_recursion() {
        let exact = dij_closed::<Q>(4, 2);
        let approx = dij_recursion::<f64>(4, 2);
        for (b, c) in exact.iter() {
            assert!((Scalar::to_f64(c) - approx.coeff(*b)).abs() < 1e-15);
        }
    }
}
