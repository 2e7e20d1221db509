//! Exact and floating-point toolkit for renormalising a multi-layer KPZ
//! hierarchy: heat-kernel algebra, Hermite triple integrals, decorated
//! trees, renormalisation constants and a finite-difference simulator.

// `!(x <= bound)` is used on purpose: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod error;
pub mod hermite;
pub mod kernel;
pub mod quadrature;
pub mod renorm;
pub mod scalar;
pub mod sim;
pub mod trees;

pub use error::{Error, Result};
pub use scalar::{Real, Scalar};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

pub type ExactCombo = kernel::KernelCombo<Rational>;
pub type FloatCombo = kernel::KernelCombo<f64>;
pub type ExactPolynomial = kernel::ConvPolynomial<Rational>;
pub type ExactDijTable = kernel::DijTable<Rational>;
pub type ExactTripleIntegrals = hermite::TripleIntegrals<Rational>;
