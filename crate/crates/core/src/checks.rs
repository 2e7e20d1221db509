//! Oracle suites: each property is computed by two independent routes and
//! compared. Used by the command-line `check` and by the acceptance run.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::hermite::{quadrature_oracle, triple_integral, unit_prefactor};
use crate::kernel::{
    dij_closed, dij_lattice_paths, dij_recursion, mild_telescoping_check, BasisKernel, KernelCombo,
};
use crate::renorm::{c2_log, c3_log, c_eps_k, wick_structure, wick_structure_unresummed, MollifierSpec};
use crate::trees::{coeff_10, coeff_20, coeff_210, coeff_211, expand_layer_ordered};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// The first counterexample, or a short summary on success.
    pub detail: String,
}

impl Check {
    fn new(name: &str, outcome: Result<String, String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self { name: name.to_string(), passed, detail }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kernels,
    Hermite,
    Trees,
    Constants,
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "kernels" => Ok(Self::Kernels),
            "hermite" => Ok(Self::Hermite),
            "trees" => Ok(Self::Trees),
            "constants" => Ok(Self::Constants),
            "all" => Ok(Self::All),
            _ => Err(format!("unknown suite {s:?} (kernels, hermite, trees, constants, all)")),
        }
    }
}

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Kernels => kernel_checks(),
        Suite::Hermite => hermite_checks(),
        Suite::Trees => tree_checks(),
        Suite::Constants => constant_checks(),
        Suite::All => [kernel_checks(), hermite_checks(), tree_checks(), constant_checks()].concat(),
    }
}

type Q = Rational;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn kernel_checks() -> Vec<Check> {
    vec![dij_three_routes(8), worked_identities(), telescoping(12)]
}

/// Closed form, recursion and lattice paths agree for `0 <= i, j <= max`.
pub fn dij_three_routes(max: usize) -> Check {
    let outcome = (|| {
        for i in 0..=max {
            for j in 0..=max {
                let closed = dij_closed::<Q>(i, j);
                let rec = dij_recursion::<Q>(i, j);
                let paths = dij_lattice_paths::<Q>(i, j).map_err(|e| e.to_string())?;
                if closed != rec || closed != paths {
                    return Err(format!("D({i},{j}): closed {closed} | recursion {rec} | paths {paths}"));
                }
            }
        }
        Ok(format!("{n} pairs agree exactly", n = (max + 1) * (max + 1)))
    })();
    Check::new("D_ij closed = recursion = lattice paths", outcome)
}

/// `4 G_1' * G̃_1' = -G_1 - G̃_1 + G_0 + G̃_0` and
/// `4 G_0' * G̃_1' = 2 G̃_1 - G_0 - G̃_0` (up to the reflection convention
/// of the second one).
pub fn worked_identities() -> Check {
    let d11 = dij_closed::<Q>(1, 1).scale(&q(4, 1));
    let want11 = KernelCombo::from_terms([
        (BasisKernel::direct(1), q(-1, 1)),
        (BasisKernel::reflected(1), q(-1, 1)),
        (BasisKernel::direct(0), q(1, 1)),
        (BasisKernel::reflected(0), q(1, 1)),
    ]);
    let d01 = dij_closed::<Q>(0, 1).reflect().scale(&q(4, 1));
    let want01 = KernelCombo::from_terms([
        (BasisKernel::reflected(1), q(2, 1)),
        (BasisKernel::direct(0), q(-1, 1)),
        (BasisKernel::reflected(0), q(-1, 1)),
    ]);
    let outcome = if d11 != want11 {
        Err(format!("4 D(1,1) = {d11}, expected {want11}"))
    } else if d01 != want01 {
        Err(format!("4 D(0,1) reflected = {d01}, expected {want01}"))
    } else {
        Ok(format!("4 D(1,1) = {d11}; 4 D(0,1) reflected = {d01}"))
    };
    Check::new("worked D_ij identities", outcome)
}

pub fn telescoping(max: usize) -> Check {
    let outcome = (1..=max)
        .flat_map(|k| (1..=k).map(move |i| (i, k)))
        .find(|&(i, k)| !mild_telescoping_check::<Q>(i, k))
        .map_or_else(|| Ok(format!("all 1 <= i <= k <= {max}")), |(i, k)| Err(format!("fails at i = {i}, k = {k}")));
    Check::new("mild telescoping identity", outcome)
}

pub fn hermite_checks() -> Vec<Check> {
    vec![hermite_quadrature(16, &[0.25, 1.0, 4.0], 1e-8), hermite_odd_vanish(16)]
}

/// Closed form against Gauss–Hermite for every even `n1+n2+n3 <= max`.
pub fn hermite_quadrature(max: usize, times: &[f64], tol: f64) -> Check {
    let outcome = (|| {
        let mut count = 0;
        let mut worst = 0.0f64;
        for n1 in 0..=max {
            for n2 in 0..=max - n1 {
                for n3 in (0..=max - n1 - n2).filter(|n3| (n1 + n2 + n3) % 2 == 0) {
                    let exact = triple_integral::<Q>(n1, n2, n3).coefficient.to_f64().unwrap_or(f64::NAN);
                    for &t in times {
                        let numeric = quadrature_oracle(n1, n2, n3, t).map_err(|e| e.to_string())?;
                        let want = exact * unit_prefactor(t);
                        // relative, with a floor at the unit for exact zeros
                        let err = (numeric - want).abs() / want.abs().max(unit_prefactor(t));
                        worst = worst.max(err);
                        if !(err <= tol) {
                            return Err(format!("A({n1},{n2},{n3}) at t = {t}: exact {want:e}, quadrature {numeric:e}"));
                        }
                        count += 1;
                    }
                }
            }
        }
        Ok(format!("{count} cases, worst relative error {worst:.1e}"))
    })();
    Check::new("Hermite triple integral vs quadrature", outcome)
}

pub fn hermite_odd_vanish(max: usize) -> Check {
    let bad = (0..=max)
        .flat_map(|a| (0..=max - a).flat_map(move |b| (0..=max - a - b).map(move |c| (a, b, c))))
        .filter(|(a, b, c)| (a + b + c) % 2 == 1)
        .find(|&(a, b, c)| !triple_integral::<Q>(a, b, c).coefficient.is_zero());
    let outcome = bad.map_or(Ok("all odd sums are zero".into()), |(a, b, c)| Err(format!("A({a},{b},{c}) != 0")));
    Check::new("odd Hermite triples vanish", outcome)
}

pub fn tree_checks() -> Vec<Check> {
    vec![tree_oracle(5), unit_coefficient()]
}

/// Brute-force expansion of `h^(n)` against the closed-form coefficients.
pub fn tree_oracle(max_layer: usize) -> Check {
    let outcome = (|| {
        let mut count = 0;
        for n in 1..=max_layer {
            for order in 0..=2 {
                let trees = expand_layer_ordered::<Q>(n, order).map_err(|e| e.to_string())?;
                for t in trees {
                    let l = &t.labels;
                    let closed = match order {
                        0 => coeff_10::<Q>(n, l[0]),
                        1 => coeff_20::<Q>(n, l[0], l[1], l[2]),
                        _ => q(2, 1) * coeff_210::<Q>(n, [l[0], l[1], l[2], l[3]], l[4]),
                    };
                    if closed != t.multiplicity {
                        return Err(format!("layer {n}, order {order}, {t}: closed form {closed}"));
                    }
                    count += 1;
                }
            }
        }
        Ok(format!("{count} labelled trees for layers 1..={max_layer}"))
    })();
    Check::new("tree coefficients: brute force = closed form", outcome)
}

pub fn unit_coefficient() -> Check {
    let v = coeff_211::<Q>(1, [0; 6]);
    let outcome = if v == q(1, 1) { Ok("c<211>(1; 0,...,0) = 1".into()) } else { Err(format!("got {v}")) };
    Check::new("first-layer <211> coefficient", outcome)
}

pub fn constant_checks() -> Vec<Check> {
    vec![golden_constants(), layer_one_cancellation(), wick_routes(8), c_eps_scaling(4, 1e-6)]
}

/// `(layer, c2 as (p, q), c3 as (p, q))`.
type GoldenRow = (usize, (i64, i64), (i64, i64));

/// The `log ε` coefficients of the first four layers.
pub const GOLDEN: [GoldenRow; 4] = [
    (1, (-1, 2), (1, 2)),
    (2, (-85, 288), (47, 144)),
    (3, (-995, 6912), (445, 3456)),
    (4, (-5129851, 53747712), (1018585, 13436928)),
];

pub fn golden_constants() -> Check {
    let outcome = (|| {
        for &(n, (a, b), (c, d)) in &GOLDEN {
            let c2 = c2_log(n);
            let c3 = c3_log(n);
            if *c2.value() != q(a, b) {
                return Err(format!("c2 layer {n}: {c2}, expected {a}/{b}"));
            }
            if *c3.value() != q(c, d) {
                return Err(format!("c3 layer {n}: {c3}, expected {c}/{d}"));
            }
        }
        Ok("eight fractions match exactly".into())
    })();
    Check::new("golden log constants, layers 1-4", outcome)
}

pub fn layer_one_cancellation() -> Check {
    let outcome = (|| {
        let s1 = &c2_log(1) + &c3_log(1);
        if !s1.value().is_zero() {
            return Err(format!("layer 1 sum is {s1}"));
        }
        let mut sums = Vec::new();
        for n in 2..=4 {
            let s = &c2_log(n) + &c3_log(n);
            if s.value().is_zero() {
                return Err(format!("layer {n} sum vanishes"));
            }
            sums.push(format!("{}: {}", n, s.value()));
        }
        Ok(format!("layer 1 sum 0; {}", sums.join(", ")))
    })();
    Check::new("layer-1 cancellation, layers 2-4 do not cancel", outcome)
}

pub fn wick_routes(max_layer: usize) -> Check {
    let outcome = (1..=max_layer)
        .find(|&n| wick_structure::<Q>(n) != wick_structure_unresummed::<Q>(n))
        .map_or_else(|| Ok(format!("layers 1..={max_layer} agree exactly")), |n| Err(format!("layer {n} differs")));
    Check::new("Wick weights: resummed = unresummed", outcome)
}

/// `ε C(ε, k)` is independent of `ε`.
pub fn c_eps_scaling(max_k: usize, tol: f64) -> Check {
    let rho = MollifierSpec::default();
    let outcome = (|| {
        let mut worst = 0.0f64;
        for k in 0..=max_k {
            let base = c_eps_k(1.0f64, k, &rho).map_err(|e| e.to_string())?;
            for eps in [0.5, 0.25, 0.125] {
                let v = c_eps_k(eps, k, &rho).map_err(|e| e.to_string())?;
                let err = (v * eps - base).abs() / base.abs();
                worst = worst.max(err);
                if !(err <= tol) {
                    return Err(format!("k = {k}, eps = {eps}: eps C = {:e}, C(1) = {base:e}", v * eps));
                }
            }
        }
        Ok(format!("k <= {max_k}, worst relative deviation {worst:.1e}"))
    })();
    Check::new("C(eps, k) scales like 1/eps", outcome)
}
