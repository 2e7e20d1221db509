//! The convolution algebra generated by `δ` and `P = ∂²G`.
//!
//! Convolution is commutative, `δ` is its unit, and `P` is treated as a
//! formal variable, so kernels built from `G`, `δ` and `P` become
//! polynomials in `P`, optionally carrying one leading factor of `G`.

use std::ops::{Add, Mul, Sub};

use super::{binom, BasisKernel, KernelCombo};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct ConvPolynomial<S> {
    /// `coeffs[r]` multiplies `P^{*r}`; trailing zeros are trimmed.
    coeffs: Vec<S>,
    /// Whether the whole polynomial is convolved with `G`.
    g_prefactor: bool,
}

impl<S: Scalar> ConvPolynomial<S> {
    pub fn new(coeffs: Vec<S>, g_prefactor: bool) -> Self {
        let mut out = Self { coeffs, g_prefactor };
        out.trim();
        out
    }

    pub fn delta() -> Self {
        Self::new(vec![S::one()], false)
    }

    /// `P = ∂²G`.
    pub fn p() -> Self {
        Self::new(vec![S::zero(), S::one()], false)
    }

    /// `H = δ + P`.
    pub fn h() -> Self {
        Self::delta() + Self::p()
    }

    /// The heat kernel `G` itself.
    pub fn g() -> Self {
        Self::new(vec![S::one()], true)
    }

    pub fn zero() -> Self {
        Self::new(Vec::new(), false)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn has_g_prefactor(&self) -> bool {
        self.g_prefactor
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn negated(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect(), self.g_prefactor)
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::delta(), |acc, _| acc * self.clone())
    }

    /// `G * self`; `None` if the polynomial already carries a `G`.
    pub fn convolve_g(&self) -> Option<Self> {
        (!self.g_prefactor).then(|| Self::new(self.coeffs.clone(), true))
    }

    /// `∂²(G * Q) = P * Q`; `None` for polynomials without a `G` prefactor
    /// (the algebra has no symbol for `∂²δ`).
    pub fn laplacian(&self) -> Option<Self> {
        if !self.g_prefactor {
            return None;
        }
        let mut c = vec![S::zero()];
        c.extend(self.coeffs.iter().cloned());
        Some(Self::new(c, false))
    }

    /// `Ḡ_j` in this algebra: `G` for `j = 0`, else `G * P * H^{j-1}`.
    pub fn gbar(j: usize) -> Self {
        if j == 0 {
            return Self::g();
        }
        (Self::p() * Self::h().pow(j - 1))
            .convolve_g()
            .expect("no G prefactor yet")
    }

    /// Maps `G * P^r` to the basis kernel `G_r`.
    pub fn to_kernel_combo(&self) -> Option<KernelCombo<S>> {
        self.g_prefactor.then(|| {
            KernelCombo::from_terms(
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(r, c)| (BasisKernel::direct(r), c.clone())),
            )
        })
    }
}

impl<S: Scalar> Add for ConvPolynomial<S> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        assert_eq!(
            self.g_prefactor, rhs.g_prefactor,
            "cannot add terms with and without a G prefactor"
        );
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|r| {
                let a = self.coeffs.get(r).cloned().unwrap_or_else(S::zero);
                let b = rhs.coeffs.get(r).cloned().unwrap_or_else(S::zero);
                a + b
            })
            .collect();
        Self::new(coeffs, self.g_prefactor)
    }
}

impl<S: Scalar> Sub for ConvPolynomial<S> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Add::add(self, rhs.negated())
    }
}

impl<S: Scalar> Mul for ConvPolynomial<S> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        assert!(
            !(self.g_prefactor && rhs.g_prefactor),
            "G * G is outside the algebra"
        );
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in rhs.coeffs.iter().enumerate() {
                coeffs[a + b] = coeffs[a + b].clone() + ca.clone() * cb.clone();
            }
        }
        Self::new(coeffs, self.g_prefactor || rhs.g_prefactor)
    }
}

/// Checks `Σ_{j=i}^{k} G * ∂²Ḡ_{j-i} = Ḡ_{k+1-i}` together with the
/// geometric identity `(H - δ) * Σ_{j<m} H^j = H^m - δ`, `m = k - i`,
/// as exact polynomial identities.
pub fn mild_telescoping_check<S: Scalar>(i: usize, k: usize) -> bool {
    if i == 0 || k < i {
        return false;
    }
    let lhs = (i..=k)
        .map(|j| {
            ConvPolynomial::<S>::gbar(j - i)
                .laplacian()
                .and_then(|p| p.convolve_g())
                .expect("Ḡ carries a G prefactor")
        })
        .fold(ConvPolynomial::zero(), |acc, t| acc + t);
    let rhs = ConvPolynomial::gbar(k + 1 - i);

    let m = k - i;
    let h = ConvPolynomial::<S>::h();
    let geometric = (0..m).fold(ConvPolynomial::zero(), |acc, j| acc + h.pow(j));
    let left = (h.clone() - ConvPolynomial::delta()) * geometric;
    let right = h.pow(m) - ConvPolynomial::delta();

    lhs == rhs && left == right
}

/// `Σ_{j=1}^{i} Σ_{m=0}^{i-j} binom(i-j-1, m-1) H_m = Σ_{m=0}^{i-1} binom(i-1, m) H_m`
/// for generic placeholders `H_m`, compared coefficient by coefficient.
pub fn resummation_identity_holds<S: Scalar>(i: usize) -> bool {
    if i == 0 {
        return true;
    }
    let i = i as i64;
    let mut lhs = vec![S::zero(); i as usize];
    for j in 1..=i {
        for m in 0..=(i - j) {
            let c: S = binom(i - j - 1, m - 1).expect("in range");
            lhs[m as usize] = lhs[m as usize].clone() + c;
        }
    }
    let rhs: Vec<S> = (0..i).map(|m| binom(i - 1, m).expect("in range")).collect();
    lhs == rhs
}
