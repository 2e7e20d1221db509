use crate::error::{Error, Result};
use crate::quadrature::gauss_hermite;
use crate::scalar::Real;

use super::hermite_value;

/// Largest `n1 + n2 + n3` accepted by [`quadrature_oracle`].
pub const QUADRATURE_DEGREE_BUDGET: usize = 24;

/// `1/(4√3 π t)`, the unit in which triple integrals are expressed.
pub fn unit_prefactor<F: Real>(t: F) -> F {
    F::one() / (F::lit(4.0) * F::lit(3.0).sqrt() * F::PI() * t)
}

/// Numerical `A_{n1,n2,n3}(t)` by Gauss–Hermite quadrature.
///
/// With `x = u √(4t/3)` the weight `G(t,x)³` becomes
/// `(4πt)^{-3/2} √(4t/3) e^{-u²}` and the Hermite arguments become
/// `u √(2/3)`, so the integrand is a polynomial of degree `n1+n2+n3`
/// against `e^{-u²}`; the rule uses `(n1+n2+n3)/2 + 2` nodes or more.
pub fn quadrature_oracle<F: Real>(n1: usize, n2: usize, n3: usize, t: F) -> Result<F> {
    let total = n1 + n2 + n3;
    if total > QUADRATURE_DEGREE_BUDGET {
        return Err(Error::DegreeBudget {
            total,
            budget: QUADRATURE_DEGREE_BUDGET,
        });
    }
    if t <= F::zero() {
        return Err(Error::InvalidArgument(format!("t must be positive, got {t}")));
    }
    let order = (total / 2 + 2).max(8);
    let (nodes, weights) = gauss_hermite::<F>(order);
    let scale = (F::lit(2.0) / F::lit(3.0)).sqrt();
    let sum: F = nodes
        .iter()
        .zip(&weights)
        .map(|(&u, &w)| {
            let v = u * scale;
            w * hermite_value(n1, v) * hermite_value(n2, v) * hermite_value(n3, v)
        })
        .sum();
    let four_pi_t = F::lit(4.0) * F::PI() * t;
    let jacobian = (F::lit(4.0) * t / F::lit(3.0)).sqrt();
    Ok(sum * jacobian / (four_pi_t * four_pi_t.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermite::triple_integral;
    use crate::scalar::Scalar;

    #[test]
    fn flat_triple() {
        let v = quadrature_oracle(0, 0, 0, 1.0f64).unwrap();
        let expect = 1.0 / (4.0 * 3f64.sqrt() * std::f64::consts::PI);
        assert!((v - expect).abs() < 1e-15);
        assert!((v - 0.045944).abs() < 1e-6);
    }

    #[test]
    fn second_degree_triple() {
        let v = quadrature_oracle(2, 0, 0, 1.0f64).unwrap();
        assert!((v / unit_prefactor(1.0) + 2.0 / 3.0).abs() < 1e-13);
    }

    #[test]
    fn odd_pair_at_half_time() {
        let v = quadrature_oracle(1, 1, 0, 0.5f64).unwrap();
        let c = triple_integral::<f64>(1, 1, 0).coefficient;
        assert!((v / unit_prefactor(0.5) - c).abs() < 1e-13);
    }

    #[test]
    fn degree_budget() {
        assert!(matches!(
            quadrature_oracle(10, 10, 6, 1.0f64),
            Err(Error::DegreeBudget { total: 26, budget: 24 })
        ));
        assert!(quadrature_oracle(0, 0, 0, -1.0f64).is_err());
    }

    #[test]
    fn single_precision() {
        let v = quadrature_oracle(2, 2, 0, 1.0f32).unwrap();
        let c = triple_integral::<f64>(2, 2, 0).coefficient;
        assert!(((v / unit_prefactor(1.0f32)) as f64 - c).abs() < 1e-4);
        let _ = Scalar::to_f64(&c);
    }
}
