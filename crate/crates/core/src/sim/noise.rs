use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::renorm::{Profile, SUPPORT_HALF_WIDTH};

/// Seeded source of space-time white noise on the grid: each call yields
/// one time step of i.i.d. `N(0, 1/(Δt Δx))` cell values. Cloning replays
/// the same realisation.
#[derive(Debug, Clone)]
pub struct WhiteNoise {
    rng: ChaCha8Rng,
    scale: f64,
}

impl WhiteNoise {
    pub fn new(seed: u64, dt: f64, dx: f64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), scale: 1.0 / (dt * dx).sqrt() }
    }

    pub fn fill(&mut self, out: &mut [f64]) {
        for v in out {
            let z: f64 = StandardNormal.sample(&mut self.rng);
            *v = z * self.scale;
        }
    }
}

/// Spatial mollifier sampled on the grid: `κ_j = φ(j/ε) / ε` with `ε` in
/// grid spacings, renormalised so that `Σ κ_j = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MollifierKernel {
    /// `(offset, weight)`, symmetric in the offset.
    taps: Vec<(isize, f64)>,
}

impl MollifierKernel {
    pub fn new(profile: &Profile, eps_cells: f64) -> Self {
        let reach = (SUPPORT_HALF_WIDTH * eps_cells).ceil() as isize;
        let mut taps: Vec<(isize, f64)> = (-reach..=reach)
            .map(|j| (j, profile.value(j as f64 / eps_cells) / eps_cells))
            .filter(|(_, w)| *w > 0.0)
            .collect();
        let total: f64 = taps.iter().map(|(_, w)| w).sum();
        for (_, w) in &mut taps {
            *w /= total;
        }
        Self { taps }
    }

    #[cfg(test)]
    pub(crate) fn zero_for_tests() -> Self {
        Self { taps: Vec::new() }
    }

    pub fn taps(&self) -> &[(isize, f64)] {
        &self.taps
    }

    /// Circular convolution `out = κ ⊛ input`.
    pub fn apply(&self, input: &[f64], out: &mut [f64]) {
        let m = input.len() as isize;
        out.fill(0.0);
        for &(j, w) in &self.taps {
            // out[k] += w · input[k - j], split where the index wraps
            let shift = j.rem_euclid(m) as usize;
            let m = m as usize;
            for (o, x) in out[shift..].iter_mut().zip(&input[..m - shift]) {
                *o += w * x;
            }
            for (o, x) in out[..shift].iter_mut().zip(&input[m - shift..]) {
                *o += w * x;
            }
        }
    }

    /// Real discrete Fourier symbol `κ̂(θ) = Σ_j κ_j cos(jθ)`.
    pub fn symbol(&self, theta: f64) -> f64 {
        self.taps.iter().map(|&(j, w)| w * (j as f64 * theta).cos()).sum()
    }

    /// `Σ_j κ_j²`.
    pub fn square_sum(&self) -> f64 {
        self.taps.iter().map(|(_, w)| w * w).sum()
    }
}

/// Mollified noise `ξ_ε = κ ⊛ ξ` together with its white-noise source.
#[derive(Debug, Clone)]
pub struct NoiseField {
    pub white: WhiteNoise,
    pub kernel: MollifierKernel,
    white_buf: Vec<f64>,
}

impl NoiseField {
    pub fn new(white: WhiteNoise, kernel: MollifierKernel, grid: usize) -> Self {
        Self { white, kernel, white_buf: vec![0.0; grid] }
    }

    /// Next time step of `ξ_ε`.
    pub fn next_step(&mut self, out: &mut [f64]) {
        self.white.fill(&mut self.white_buf);
        self.kernel.apply(&self.white_buf, out);
    }

    /// Per-point variance rate `Q` of `∫ξ_ε dt`: `Var(ξ_ε Δt) = Q Δt`.
    pub fn variance_rate(&self, dx: f64) -> f64 {
        self.kernel.square_sum() / dx
    }
}
