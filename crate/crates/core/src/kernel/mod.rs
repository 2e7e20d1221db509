//! Exact symbolic algebra for heat-kernel convolutions.
//!
//! Kernels are finite rational combinations of the basis family
//! `G_k = G * (∂²G)^{*k} = t^k/k! ∂^{2k} G` and its space-time reflection
//! `G̃_k(z) = G_k(-z)`.

mod binomial;
mod conv;
mod dij;
mod scaling;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

pub use binomial::{binom, binom_int, BinomTable};
pub use conv::{mild_telescoping_check, resummation_identity_holds, ConvPolynomial};
pub use dij::{dij_closed, dij_lattice_paths, dij_recursion, DijTable, LATTICE_PATH_BUDGET};
pub use scaling::{heat_kernel, heat_kernel_family, scaling_check, ScalingReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    Direct,
    Reflected,
}

/// `G_k` (direct) or `G̃_k` (reflected).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisKernel {
    pub family: Family,
    pub k: usize,
}

impl BasisKernel {
    pub const fn direct(k: usize) -> Self {
        Self { family: Family::Direct, k }
    }

    pub const fn reflected(k: usize) -> Self {
        Self { family: Family::Reflected, k }
    }

    pub fn reflect(self) -> Self {
        let family = match self.family {
            Family::Direct => Family::Reflected,
            Family::Reflected => Family::Direct,
        };
        Self { family, ..self }
    }
}

impl fmt::Display for BasisKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Direct => write!(f, "G_{}", self.k),
            Family::Reflected => write!(f, "Gt_{}", self.k),
        }
    }
}

/// Finite linear combination of basis kernels. Zero coefficients are never
/// stored, so structural equality is equality of kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelCombo<S> {
    terms: BTreeMap<BasisKernel, S>,
}

impl<S: Scalar> Default for KernelCombo<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> KernelCombo<S> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn single(basis: BasisKernel, coeff: S) -> Self {
        let mut out = Self::zero();
        out.add_term(basis, coeff);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (BasisKernel, S)>) -> Self {
        let mut out = Self::zero();
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn add_term(&mut self, basis: BasisKernel, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(basis).or_insert_with(S::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&basis);
        }
    }

    pub fn coeff(&self, basis: BasisKernel) -> S {
        self.terms.get(&basis).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisKernel, &S)> {
        self.terms.iter()
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, c)| (*b, c.clone() * factor.clone())))
    }

    /// Termwise `G_k <-> G̃_k`.
    pub fn reflect(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, c)| (b.reflect(), c.clone())))
    }

    /// Collapses `G_k` and `G̃_k` onto the same slot `k`. This is the
    /// evaluation at the origin against an even mollifier, where
    /// `(G_k * ρ²)(0) = (G̃_k * ρ²)(0)`.
    pub fn collapse_reflection(&self) -> BTreeMap<usize, S> {
        let mut out: BTreeMap<usize, S> = BTreeMap::new();
        for (b, c) in &self.terms {
            let slot = out.entry(b.k).or_insert_with(S::zero);
            *slot = slot.clone() + c.clone();
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Canonical text form, e.g. `1/2·G_0 - 1/4·Gt_1`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl<S: Scalar> fmt::Display for KernelCombo<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (b, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (idx, neg) {
                (0, true) => write!(f, "-{mag}·{b}")?,
                (0, false) => write!(f, "{mag}·{b}")?,
                (_, true) => write!(f, " - {mag}·{b}")?,
                (_, false) => write!(f, " + {mag}·{b}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Add for KernelCombo<S> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<S: Scalar> Sub for KernelCombo<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<S: Scalar> Neg for KernelCombo<S> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::from_terms(self.terms.into_iter().map(|(b, c)| (b, -c)))
    }
}

impl<S: Scalar> Mul<S> for KernelCombo<S> {
    type Output = Self;

    fn mul(self, rhs: S) -> Self {
        self.scale(&rhs)
    }
}

/// `Ḡ_j = G * ∂²G * (δ + ∂²G)^{*(j-1)} = Σ_{i=1}^{j} binom(j-1, i-1) G_i`,
/// and `Ḡ_0 = G`.
pub fn expand_gbar<S: Scalar>(j: usize) -> KernelCombo<S> {
    if j == 0 {
        return KernelCombo::single(BasisKernel::direct(0), S::one());
    }
    KernelCombo::from_terms((1..=j).map(|i| {
        let c = binom::<S>(j as i64 - 1, i as i64 - 1).expect("in-range binomial");
        (BasisKernel::direct(i), c)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use num_traits::Zero;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    #[test]
    fn gbar_small_cases() {
        let g0: KernelCombo<Q> = expand_gbar(0);
        assert_eq!(g0, KernelCombo::single(BasisKernel::direct(0), q(1, 1)));
        let g1: KernelCombo<Q> = expand_gbar(1);
        assert_eq!(g1, KernelCombo::single(BasisKernel::direct(1), q(1, 1)));
        let g3: KernelCombo<Q> = expand_gbar(3);
        let want = KernelCombo::from_terms([
            (BasisKernel::direct(1), q(1, 1)),
            (BasisKernel::direct(2), q(2, 1)),
            (BasisKernel::direct(3), q(1, 1)),
        ]);
        assert_eq!(g3, want);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut c = KernelCombo::single(BasisKernel::direct(2), q(1, 3));
        c.add_term(BasisKernel::direct(2), q(-1, 3));
        assert!(c.is_zero());
        assert_eq!(c.to_string(), "0");
    }

    #[test]
    fn canonical_text_is_sorted_by_family_then_index() {
        let c = KernelCombo::from_terms([
            (BasisKernel::reflected(0), q(1, 4)),
            (BasisKernel::direct(1), q(-1, 4)),
            (BasisKernel::direct(0), q(1, 4)),
            (BasisKernel::reflected(1), q(-1, 4)),
        ]);
        assert_eq!(c.canonical(), "1/4·G_0 - 1/4·G_1 + 1/4·Gt_0 - 1/4·Gt_1");
    }

    fn small_combo() -> impl Strategy<Value = KernelCombo<Q>> {
        prop::collection::vec((any::<bool>(), 0usize..5, -6i64..6, 1i64..5), 0..6).prop_map(|v| {
            KernelCombo::from_terms(v.into_iter().map(|(refl, k, n, d)| {
                let b = if refl { BasisKernel::reflected(k) } else { BasisKernel::direct(k) };
                (b, q(n, d))
            }))
        })
    }

    proptest! {
        #[test]
        fn module_axioms(a in small_combo(), b in small_combo(), n in -5i64..5, d in 1i64..4) {
            let s = q(n, d);
            prop_assert_eq!((a.clone() + b.clone()) * s.clone(), a.clone() * s.clone() + b.clone() * s.clone());
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert!((a.clone() - a.clone()).is_zero());
            for (basis, c) in (a.clone() + b.clone()).iter() {
                prop_assert_eq!(c.clone(), a.coeff(*basis) + b.coeff(*basis));
                prop_assert!(!c.is_zero());
            }
        }

        #[test]
        fn reflection_is_an_involution(a in small_combo()) {
            prop_assert_eq!(a.reflect().reflect(), a);
        }
    }
}
