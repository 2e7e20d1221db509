use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::kernel::heat_kernel_family;
use crate::quadrature::gauss_legendre;
use crate::scalar::Real;

/// Half-width of each 1-D factor: the product support `[-a,a]²` lies in
/// the unit ball.
pub const SUPPORT_HALF_WIDTH: f64 = FRAC_1_SQRT_2;

const NORMALISATION_TOLERANCE: f64 = 1e-8;

/// One even probability density on `[-a, a]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    /// `c (1 - (u/a)²)^power`.
    PolynomialBump { power: u32, norm: f64 },
    /// Linear interpolation of samples on a uniform grid spanning `[-a, a]`.
    Tabulated { values: Vec<f64> },
}

impl Profile {
    pub fn polynomial_bump(power: u32) -> Result<Self> {
        if power < 2 {
            return Err(Error::Mollifier(format!("bump power must be at least 2, got {power}")));
        }
        let (x, w) = gauss_legendre::<f64>(power as usize + 1);
        let mass: f64 = x.iter().zip(&w).map(|(s, w)| w * (1.0 - s * s).powi(power as i32)).sum();
        Ok(Self::PolynomialBump { power, norm: 1.0 / (SUPPORT_HALF_WIDTH * mass) })
    }

    pub fn tabulated(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::Mollifier(format!("need an odd number (>= 3) of samples, got {n}")));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Mollifier("samples must be finite and non-negative".into()));
        }
        if values.iter().zip(values.iter().rev()).any(|(a, b)| (a - b).abs() > 1e-12 * a.abs().max(1.0)) {
            return Err(Error::Mollifier("samples are not even".into()));
        }
        if values[0] != 0.0 {
            return Err(Error::Mollifier("samples must vanish at the support boundary".into()));
        }
        let h = 2.0 * SUPPORT_HALF_WIDTH / (n - 1) as f64;
        let mass: f64 = values.iter().sum::<f64>() * h;
        if (mass - 1.0).abs() > NORMALISATION_TOLERANCE {
            return Err(Error::Mollifier(format!("samples integrate to {mass}, not 1")));
        }
        Ok(Self::Tabulated { values })
    }

    pub fn value(&self, u: f64) -> f64 {
        let a = SUPPORT_HALF_WIDTH;
        if u.abs() >= a {
            return 0.0;
        }
        match self {
            Self::PolynomialBump { power, norm } => {
                let s = u / a;
                norm * (1.0 - s * s).powi(*power as i32)
            }
            Self::Tabulated { values } => {
                let h = 2.0 * a / (values.len() - 1) as f64;
                let pos = (u + a) / h;
                let idx = (pos.floor() as usize).min(values.len() - 2);
                let frac = pos - idx as f64;
                values[idx] * (1.0 - frac) + values[idx + 1] * frac
            }
        }
    }

    /// Points where the profile stops being a single polynomial.
    fn breakpoints(&self) -> Vec<f64> {
        let a = SUPPORT_HALF_WIDTH;
        match self {
            Self::PolynomialBump { .. } => vec![-a, a],
            Self::Tabulated { values } => {
                let h = 2.0 * a / (values.len() - 1) as f64;
                (0..values.len()).map(|i| -a + i as f64 * h).collect()
            }
        }
    }

    /// `(φ ∗ φ)(v)`, exact up to rounding: the integrand is a polynomial on
    /// every piece between breakpoints and each piece gets a Gauss rule of
    /// sufficient order.
    pub fn self_convolution(&self, v: f64) -> f64 {
        let a = SUPPORT_HALF_WIDTH;
        if v.abs() >= 2.0 * a {
            return 0.0;
        }
        let (lo, hi) = ((-a).max(v - a), a.min(v + a));
        let own = self.breakpoints();
        let mut cuts: Vec<f64> = own
            .iter()
            .copied()
            .chain(own.iter().map(|b| v - b))
            .filter(|c| *c > lo && *c < hi)
            .collect();
        cuts.push(lo);
        cuts.push(hi);
        cuts.sort_by(f64::total_cmp);
        let order = match self {
            Self::PolynomialBump { power, .. } => 2 * *power as usize + 1,
            Self::Tabulated { .. } => 2,
        };
        let (x, w) = gauss_legendre::<f64>(order);
        cuts.windows(2)
            .map(|pair| {
                let (p, q) = (pair[0], pair[1]);
                let (mid, half) = (0.5 * (p + q), 0.5 * (q - p));
                x.iter()
                    .zip(&w)
                    .map(|(s, w)| {
                        let u = mid + half * s;
                        w * self.value(u) * self.value(v - u)
                    })
                    .sum::<f64>()
                    * half
            })
            .sum()
    }
}

/// Separable space-time mollifier `ρ(t,x) = φ_t(t) φ_x(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifierSpec {
    pub time: Profile,
    pub space: Profile,
}

impl MollifierSpec {
    pub fn polynomial_bump(power: u32) -> Result<Self> {
        let p = Profile::polynomial_bump(power)?;
        Ok(Self { time: p.clone(), space: p })
    }

    /// `ρ^(2)(t,x) = (ρ∗ρ)(t,x)` at unit scale.
    pub fn rho2(&self, t: f64, x: f64) -> f64 {
        self.time.self_convolution(t) * self.space.self_convolution(x)
    }
}

impl Default for MollifierSpec {
    fn default() -> Self {
        Self::polynomial_bump(8).expect("valid power")
    }
}

/// `C(ε,k) = (G_k ∗ ρ_ε^(2))(0)` by space-time quadrature.
///
/// `ρ^(2)` is even, so this is `∫_0^{2aε²} ∫ G_k(t,x) ρ_ε^(2)(t,x) dx dt`.
/// The time integral uses `t = u²`; the space integral is cut at sixteen
/// heat-kernel widths. The resolution is doubled until two successive
/// values agree.
pub fn c_eps_k<F: Real>(eps: F, k: usize, rho: &MollifierSpec) -> Result<F> {
    if !(eps > F::zero() && eps <= F::one()) {
        return Err(Error::InvalidArgument(format!("ε must lie in (0, 1], got {eps}")));
    }
    let tol = F::lit(1e-10).max(F::lit(200.0) * F::epsilon());
    let mut previous: Option<F> = None;
    let mut estimate = F::infinity();
    for panels in [4usize, 8, 16, 32, 64] {
        let (value, scale) = c_eps_k_at(eps, k, rho, panels);
        if let Some(prev) = previous {
            estimate = (value - prev).abs();
            if estimate <= tol * scale {
                return Ok(value);
            }
        }
        previous = Some(value);
    }
    Err(Error::QuadratureNonConvergence { estimate: estimate.to_f64().unwrap_or(f64::NAN) })
}

/// Returns the value and `∫∫ |integrand|`, the scale for the stopping rule.
fn c_eps_k_at<F: Real>(eps: F, k: usize, rho: &MollifierSpec, panels: usize) -> (F, F) {
    let a = F::lit(SUPPORT_HALF_WIDTH);
    let two = F::lit(2.0);
    let rule = gauss_legendre::<F>(16);
    let eps2 = eps * eps;
    let u_max = (two * a).sqrt() * eps;
    let x_max = two * a * eps;
    let width = F::lit(16.0);
    let mut value = F::zero();
    let mut scale = F::zero();
    let du = u_max / F::of_usize(panels);
    for p in 0..panels {
        let u0 = du * F::of_usize(p);
        for (su, wu) in rule.0.iter().zip(&rule.1) {
            let u = u0 + du * (F::one() + *su) / two;
            let t = u * u;
            let jac_t = two * u * du / two * *wu;
            let r_t = F::lit(rho.time.self_convolution((t / eps2).to_f64().unwrap())) / eps2;
            if r_t == F::zero() {
                continue;
            }
            let l = x_max.min(width * t.sqrt());
            let dx = l / F::of_usize(panels);
            for q in 0..2 * panels {
                let x0 = -l + dx * F::of_usize(q);
                for (sx, wx) in rule.0.iter().zip(&rule.1) {
                    let x = x0 + dx * (F::one() + *sx) / two;
                    let r_x = F::lit(rho.space.self_convolution((x / eps).to_f64().unwrap())) / eps;
                    let f = heat_kernel_family(k, t, x) * r_t * r_x * jac_t * dx / two * *wx;
                    value = value + f;
                    scale = scale + f.abs();
                }
            }
        }
    }
    (value, scale)
}
