use crate::scalar::Real;

/// Solver for the periodic system `(I - r Δ_h) x = b`, `Δ_h` the
/// three-point Laplacian in grid units, i.e. a cyclic tridiagonal matrix
/// with diagonal `1 + 2r` and off-diagonals `-r`. The Thomas factors of the
/// Sherman–Morrison reduced system are computed once.
#[derive(Debug, Clone)]
pub struct CyclicTridiagonal<F> {
    off: F,
    /// Modified forward-sweep multipliers and pivots.
    c_prime: Vec<F>,
    pivots: Vec<F>,
    /// Solution of the reduced system for the rank-one correction vector.
    z: Vec<F>,
    gamma: F,
    correction_scale: F,
}

impl<F: Real> CyclicTridiagonal<F> {
    pub fn new(n: usize, r: F) -> Self {
        assert!(n >= 3, "cyclic solve needs at least 3 points");
        let diag = F::one() + F::lit(2.0) * r;
        let off = -r;
        let gamma = -diag;
        let mut d = vec![diag; n];
        d[0] = diag - gamma;
        d[n - 1] = diag - off * off / gamma;
        let mut c_prime = vec![F::zero(); n];
        let mut pivots = vec![F::zero(); n];
        pivots[0] = d[0];
        c_prime[0] = off / pivots[0];
        for i in 1..n {
            pivots[i] = d[i] - off * c_prime[i - 1];
            c_prime[i] = off / pivots[i];
        }
        let mut s = Self { off, c_prime, pivots, z: Vec::new(), gamma, correction_scale: F::zero() };
        let mut u = vec![F::zero(); n];
        u[0] = gamma;
        u[n - 1] = off;
        s.z = s.reduced_solve(&u);
        // v = (1, 0, .., 0, off/γ)
        let vz = s.z[0] + off / gamma * s.z[n - 1];
        s.correction_scale = F::one() / (F::one() + vz);
        s
    }

    fn reduced_solve_in_place(&self, y: &mut [F]) {
        let n = y.len();
        y[0] = y[0] / self.pivots[0];
        for i in 1..n {
            y[i] = (y[i] - self.off * y[i - 1]) / self.pivots[i];
        }
        for i in (0..n - 1).rev() {
            y[i] = y[i] - self.c_prime[i] * y[i + 1];
        }
    }

    fn reduced_solve(&self, b: &[F]) -> Vec<F> {
        let mut y = b.to_vec();
        self.reduced_solve_in_place(&mut y);
        y
    }

    /// Solves in place.
    pub fn solve(&self, b: &mut [F]) {
        let n = b.len();
        assert_eq!(n, self.z.len(), "size mismatch");
        self.reduced_solve_in_place(b);
        let vy = b[0] + self.off / self.gamma * b[n - 1];
        let factor = vy * self.correction_scale;
        for (bi, zi) in b.iter_mut().zip(&self.z) {
            *bi = *bi - factor * *zi;
        }
    }
}
