//! Gauss rules used by the numerical oracles.

use crate::scalar::Real;

/// Nodes and weights of the `n`-point Gauss–Hermite rule for
/// `∫ f(u) e^{-u²} du`, exact for polynomials of degree `< 2n`.
pub fn gauss_hermite<F: Real>(n: usize) -> (Vec<F>, Vec<F>) {
    assert!(n > 0);
    let mut nodes = vec![F::zero(); n];
    let mut weights = vec![F::zero(); n];
    let nf = F::of_usize(n);
    let pim4 = F::PI().powf(F::lit(-0.25));
    let m = n.div_ceil(2);
    let mut z = F::zero();
    for i in 0..m {
        // initial guesses for the largest roots first
        z = match i {
            0 => (F::lit(2.0) * nf + F::one()).sqrt()
                - F::lit(1.85575) * (F::lit(2.0) * nf + F::one()).powf(F::lit(-1.0 / 6.0)),
            1 => z - F::lit(1.14) * nf.powf(F::lit(0.426)) / z,
            2 => F::lit(1.86) * z - F::lit(0.86) * nodes[0],
            3 => F::lit(1.91) * z - F::lit(0.91) * nodes[1],
            _ => F::lit(2.0) * z - nodes[i - 2],
        };
        let mut pp = F::one();
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = F::zero();
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = F::of_usize(j);
                p1 = z * (F::lit(2.0) / jf).sqrt() * p2 - ((jf - F::one()) / jf).sqrt() * p3;
            }
            pp = (F::lit(2.0) * nf).sqrt() * p2;
            let step = p1 / pp;
            z = z - step;
            if step.abs() <= F::epsilon() * F::lit(4.0) * z.abs().max(F::one()) {
                break;
            }
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = F::lit(2.0) / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<F: Real>(n: usize) -> (Vec<F>, Vec<F>) {
    assert!(n > 0);
    let mut nodes = vec![F::zero(); n];
    let mut weights = vec![F::zero(); n];
    let nf = F::of_usize(n);
    for i in 0..n.div_ceil(2) {
        let mut z = (F::PI() * (F::of_usize(i) + F::lit(0.75)) / (nf + F::lit(0.5))).cos();
        let mut pp = F::one();
        for _ in 0..100 {
            let mut p1 = F::one();
            let mut p2 = F::zero();
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = F::of_usize(j);
                p1 = ((F::lit(2.0) * jf - F::one()) * z * p2 - (jf - F::one()) * p3) / jf;
            }
            pp = nf * (z * p1 - p2) / (z * z - F::one());
            let step = p1 / pp;
            z = z - step;
            if step.abs() <= F::epsilon() * F::lit(4.0) {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = F::lit(2.0) / ((F::one() - z * z) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre on `[a, b]` with `panels` equal pieces.
pub fn integrate<F: Real>(a: F, b: F, panels: usize, rule: &(Vec<F>, Vec<F>), mut f: impl FnMut(F) -> F) -> F {
    let (nodes, weights) = rule;
    let h = (b - a) / F::of_usize(panels);
    let half = h / F::lit(2.0);
    let mut acc = F::zero();
    for p in 0..panels {
        let mid = a + h * (F::of_usize(p) + F::lit(0.5));
        for (x, w) in nodes.iter().zip(weights) {
            acc = acc + *w * f(mid + half * *x);
        }
    }
    acc * half
}
