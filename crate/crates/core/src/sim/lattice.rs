//! Wick constants of the discrete scheme: for each layer, the stationary
//! mean of `(D h_i)²` for the linearised triangular system, computed per
//! Fourier mode from a discrete Lyapunov equation.

use std::f64::consts::PI;

use super::noise::MollifierKernel;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
struct Mat {
    n: usize,
    a: Vec<f64>,
}

impl Mat {
    fn zeros(n: usize) -> Self {
        Self { n, a: vec![0.0; n * n] }
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.at(i, k);
                if x != 0.0 {
                    for j in 0..n {
                        out.a[i * n + j] += x * o.at(k, j);
                    }
                }
            }
        }
        out
    }

    fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// One-step map of a Fourier mode: `u' = A u + B ξ̂`.
///
/// From `u_i' = a (u_i + δ Σ_{j<i} u_j' + Δt ξ̂)` with `a = 1/(1 - δ)`,
/// `δ = Δt λ`: `A = a (I - aδL)^{-1}`, `B = aΔt (I - aδL)^{-1} 1`, `L`
/// strictly lower triangular ones.
fn mode_map(layers: usize, lambda: f64, dt: f64) -> (Mat, Vec<f64>) {
    let delta = dt * lambda;
    let a = 1.0 / (1.0 - delta);
    // (I - aδL)^{-1} by forward substitution, column by column
    let mut inv = Mat::zeros(layers);
    for col in 0..layers {
        let mut x = vec![0.0; layers];
        for i in 0..layers {
            let e = f64::from(u8::from(i == col));
            let below: f64 = x[..i].iter().sum();
            x[i] = e + a * delta * below;
        }
        for (i, v) in x.into_iter().enumerate() {
            inv.set(i, col, v);
        }
    }
    let mut amat = inv.clone();
    for v in &mut amat.a {
        *v *= a;
    }
    let b = (0..layers).map(|i| a * dt * (0..layers).map(|j| inv.at(i, j)).sum::<f64>()).collect();
    (amat, b)
}

/// Stationary covariance `Σ = A Σ Aᵀ + s B Bᵀ` by doubling.
fn lyapunov(a: &Mat, b: &[f64], s: f64) -> Mat {
    let n = a.n;
    let mut x = Mat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            x.set(i, j, s * b[i] * b[j]);
        }
    }
    let mut ak = a.clone();
    for _ in 0..200 {
        let update = ak.mul(&x).mul(&ak.transpose());
        let done = update.max_abs() <= 1e-17 * x.max_abs();
        for (xv, uv) in x.a.iter_mut().zip(&update.a) {
            *xv += uv;
        }
        if done {
            break;
        }
        ak = ak.mul(&ak);
    }
    x
}

/// `E[(D h_i)²]` in the stationary state of the linear scheme, for
/// `i = 1..=layers`, where `D` is the centred difference.
pub fn lattice_wick_constants(layers: usize, grid: usize, dt: f64, kernel: &MollifierKernel) -> Vec<f64> {
    let m = grid as f64;
    let dx = 1.0 / m;
    let mut out = vec![0.0; layers];
    // mode q = 0 carries no gradient
    for q in 1..grid {
        let theta = 2.0 * PI * q as f64 / m;
        let lambda = -4.0 * (theta / 2.0).sin().powi(2) / (dx * dx);
        let grad2 = theta.sin().powi(2) / (dx * dx);
        if grad2 < 1e-300 {
            continue;
        }
        let s = m * kernel.symbol(theta).powi(2) / (dt * dx);
        let (a, b) = mode_map(layers, lambda, dt);
        let cov = lyapunov(&a, &b, s);
        for (i, o) in out.iter_mut().enumerate() {
            *o += grad2 * cov.at(i, i) / (m * m);
        }
    }
    out
}
