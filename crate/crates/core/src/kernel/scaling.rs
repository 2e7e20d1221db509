//! Pointwise evaluation of `G_i` on the whole line and the parabolic
//! self-similarity `G_i(λ²t, λx) = λ^{-1} G_i(t, x)`.

use crate::hermite::hermite_value;
use crate::scalar::Real;

/// Whole-line heat kernel of `∂_t - ∂_x²`: `(4πt)^{-1/2} exp(-x²/4t)`, zero
/// for `t <= 0`.
pub fn heat_kernel<F: Real>(t: F, x: F) -> F {
    if t <= F::zero() {
        return F::zero();
    }
    let four = F::lit(4.0);
    (-(x * x) / (four * t)).exp() / (four * F::PI() * t).sqrt()
}

/// `G_i(t, x) = t^i/i! ∂_x^{2i} G = H_{2i}(x/√(2t)) G(t, x) / (2^i i!)`.
pub fn heat_kernel_family<F: Real>(i: usize, t: F, x: F) -> F {
    if t <= F::zero() {
        return F::zero();
    }
    let two = F::lit(2.0);
    let u = x / (two * t).sqrt();
    let mut norm = F::one();
    for r in 1..=i {
        norm = norm * two * F::of_usize(r);
    }
    hermite_value::<F>(2 * i, u) * heat_kernel(t, x) / norm
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport<F> {
    pub tolerance: F,
    pub worst_point: Option<(F, F)>,
    pub worst_relative_error: F,
}

impl<F: Real> ScalingReport<F> {
    pub fn passed(&self) -> bool {
        self.worst_relative_error <= self.tolerance
    }
}

/// Compares `G_i(λ²t, λx)` with `λ^{-1} G_i(t, x)` at every sample point
/// (`t > 0`). Relative error is measured against `max(|lhs|, |rhs|)`, with an
/// absolute floor at the kernel's own scale so sign changes of the
/// Hermite factor do not inflate it.
pub fn scaling_check<F: Real>(i: usize, points: &[(F, F)], lambda: F, tolerance: F) -> ScalingReport<F> {
    let mut report = ScalingReport {
        tolerance,
        worst_point: None,
        worst_relative_error: F::zero(),
    };
    for &(t, x) in points {
        assert!(t > F::zero() && lambda > F::zero(), "scaling check needs t > 0, λ > 0");
        let lhs = heat_kernel_family(i, lambda * lambda * t, lambda * x);
        let rhs = heat_kernel_family(i, t, x) / lambda;
        let floor = heat_kernel(lambda * lambda * t, F::zero()) * F::lit(1e-3);
        let scale = lhs.abs().max(rhs.abs()).max(floor);
        let err = (lhs - rhs).abs() / scale;
        if report.worst_point.is_none() || err > report.worst_relative_error {
            report.worst_relative_error = err;
            report.worst_point = Some((t, x));
        }
    }
    report
}
