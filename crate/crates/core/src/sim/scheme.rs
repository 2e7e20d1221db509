use serde::Serialize;

use super::config::{Mode, SimConfig};
use super::lattice::lattice_wick_constants;
use super::noise::{MollifierKernel, NoiseField, WhiteNoise};
use super::solver::CyclicTridiagonal;
use crate::error::{Error, Result};
use crate::renorm::{c2_log, c3_log};
use crate::scalar::Real;

/// Fields `h_1..h_N` on the periodic grid at time `time`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimState<F> {
    pub time: f64,
    pub fields: Vec<Vec<F>>,
}

impl<F: Real> SimState<F> {
    pub fn zeros(layers: usize, grid: usize) -> Self {
        Self { time: 0.0, fields: vec![vec![F::zero(); grid]; layers] }
    }

    pub fn from_fields(fields: Vec<Vec<F>>) -> Self {
        Self { time: 0.0, fields }
    }

    pub fn layers(&self) -> usize {
        self.fields.len()
    }

    pub fn mean(&self, layer: usize) -> F {
        let f = &self.fields[layer];
        f.iter().copied().sum::<F>() / F::of_usize(f.len())
    }
}

/// Constants subtracted per layer, split into the Wick and the `log ε`
/// parts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerShifts {
    pub wick: Vec<f64>,
    pub log: Vec<f64>,
}

impl LayerShifts {
    pub fn for_mode(cfg: &SimConfig, kernel: &MollifierKernel) -> Self {
        let n = cfg.layers;
        let wick = match cfg.mode {
            Mode::None => vec![0.0; n],
            _ => lattice_wick_constants(n, cfg.grid, cfg.dt, kernel),
        };
        let log = match cfg.mode {
            Mode::Full => {
                let unit = cfg.eps_physical().ln() / (4.0 * 3f64.sqrt() * std::f64::consts::PI);
                (1..=n).map(|i| (&c2_log(i) + &c3_log(i)).to_f64() * unit).collect()
            }
            _ => vec![0.0; n],
        };
        Self { wick, log }
    }

    pub fn total(&self, layer: usize) -> f64 {
        self.wick[layer] + self.log[layer]
    }
}

/// Semi-implicit scheme for
/// `∂_t h_i = Σ_{j<=i} Δh_j + (∂h_i)² + ξ_ε - C_i`:
///
/// `(I - Δt Δ) h_i' = h_i + Δt Σ_{j<i} Δ h_j' + Δt (D h_i)² + Δt ξ_ε - Δt C_i`,
///
/// layers in increasing order, so each layer sees the updated lower ones.
#[derive(Debug, Clone)]
pub struct Simulator<F> {
    cfg: SimConfig,
    solver: CyclicTridiagonal<F>,
    last_solver: Option<CyclicTridiagonal<F>>,
    shifts: LayerShifts,
}

impl<F: Real> Simulator<F> {
    pub fn new(cfg: SimConfig) -> Result<Self> {
        cfg.validate()?;
        let kernel = MollifierKernel::new(&cfg.mollifier.space, cfg.eps);
        let shifts = LayerShifts::for_mode(&cfg, &kernel);
        Ok(Self::with_shifts(cfg, shifts))
    }

    /// A simulator with explicitly given constants.
    pub fn with_shifts(cfg: SimConfig, shifts: LayerShifts) -> Self {
        let r = |dt: f64| F::lit(dt * (cfg.grid * cfg.grid) as f64);
        let solver = CyclicTridiagonal::new(cfg.grid, r(cfg.dt));
        let tail = cfg.horizon - (cfg.steps().saturating_sub(1)) as f64 * cfg.dt;
        let last_solver = (cfg.steps() > 0 && (tail - cfg.dt).abs() > 1e-15 * cfg.dt)
            .then(|| CyclicTridiagonal::new(cfg.grid, r(tail)));
        Self { cfg, solver, last_solver, shifts }
    }

    pub fn config(&self) -> &SimConfig {
        &self.cfg
    }

    pub fn shifts(&self) -> &LayerShifts {
        &self.shifts
    }

    pub fn noise(&self) -> NoiseField {
        NoiseField::new(
            WhiteNoise::new(self.cfg.seed, self.cfg.dt, self.cfg.dx()),
            MollifierKernel::new(&self.cfg.mollifier.space, self.cfg.eps),
            self.cfg.grid,
        )
    }

    /// Advances by `dt` (the configured step or the shortened last one)
    /// with the noise values `xi` of this step.
    pub fn step(&self, state: &mut SimState<F>, xi: &[f64], last: bool) -> Result<()> {
        let (dt, solver) = match (&self.last_solver, last) {
            (Some(s), true) => (self.cfg.horizon - state.time, s),
            _ => (self.cfg.dt, &self.solver),
        };
        let m = self.cfg.grid;
        let inv_dx = F::of_usize(m);
        let half_inv_dx = inv_dx / F::lit(2.0);
        let dtf = F::lit(dt);
        // Σ_{j<i} Δ h_j' accumulated as layers are updated
        let mut lower_lap = vec![F::zero(); m];
        let mut rhs = vec![F::zero(); m];
        let two = F::lit(2.0);
        for (layer, field) in state.fields.iter_mut().enumerate() {
            let c = F::lit(self.shifts.total(layer));
            for k in 0..m {
                let l = if k == 0 { field[m - 1] } else { field[k - 1] };
                let r = if k + 1 == m { field[0] } else { field[k + 1] };
                let grad2 = if self.cfg.nonlinear {
                    let g = (r - l) * half_inv_dx;
                    g * g
                } else {
                    F::zero()
                };
                rhs[k] = field[k] + dtf * (lower_lap[k] + grad2 + F::lit(xi[k]) - c);
            }
            solver.solve(&mut rhs);
            field.copy_from_slice(&rhs);
            let inv_dx2 = inv_dx * inv_dx;
            for k in 0..m {
                let l = if k == 0 { field[m - 1] } else { field[k - 1] };
                let r = if k + 1 == m { field[0] } else { field[k + 1] };
                lower_lap[k] = lower_lap[k] + (l - two * field[k] + r) * inv_dx2;
            }
            if let Some(k) = field.iter().position(|v| !(v.abs() <= F::lit(self.cfg.blowup_threshold))) {
                return Err(Error::BlowUp {
                    layer: layer + 1,
                    time: state.time + dt,
                    value: field[k].to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        state.time += dt;
        Ok(())
    }

    /// Runs from `initial` to the horizon with the given noise, recording
    /// snapshots every `record_every` steps and at the end.
    pub fn run(&self, initial: SimState<F>, noise: &mut NoiseField) -> Result<Trajectory<F>> {
        let steps = self.cfg.steps();
        let mut state = initial;
        let mut xi = vec![0.0; self.cfg.grid];
        let mut traj = Trajectory { snapshots: vec![state.clone()] };
        for s in 0..steps {
            noise.next_step(&mut xi);
            self.step(&mut state, &xi, s + 1 == steps)?;
            if (s + 1) % self.cfg.record_every == 0 && s + 1 != steps {
                traj.snapshots.push(state.clone());
            }
        }
        if steps > 0 {
            traj.snapshots.push(state);
        }
        Ok(traj)
    }
}

/// Recorded states, first the initial one, last the final one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory<F> {
    pub snapshots: Vec<SimState<F>>,
}

impl<F: Real> Trajectory<F> {
    pub fn final_state(&self) -> &SimState<F> {
        self.snapshots.last().expect("initial state is always recorded")
    }
}

/// Runs `cfg` from zero initial data with its own seeded noise.
pub fn simulate(cfg: &SimConfig) -> Result<Trajectory<f64>> {
    let sim = Simulator::<f64>::new(cfg.clone())?;
    let mut noise = sim.noise();
    sim.run(SimState::zeros(cfg.layers, cfg.grid), &mut noise)
}

/// `max_k |a_k - b_k|`.
pub fn sup_distance<F: Real>(a: &[F], b: &[F]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).abs().to_f64().unwrap_or(f64::NAN))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(layers: usize, grid: usize, mode: Mode) -> Simulator<f64> {
        let cfg = SimConfig::new(layers, grid, 0.01, 2.0, 0, mode);
        Simulator::with_shifts(cfg, LayerShifts { wick: vec![0.0; layers], log: vec![0.0; layers] })
    }

    fn run_without_noise(sim: &Simulator<f64>, init: SimState<f64>) -> SimState<f64> {
        let mut state = init;
        let zero = vec![0.0; sim.config().grid];
        let steps = sim.config().steps();
        for s in 0..steps {
            sim.step(&mut state, &zero, s + 1 == steps).unwrap();
        }
        state
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let sim = quiet(3, 32, Mode::None);
        let end = run_without_noise(&sim, SimState::zeros(3, 32));
        assert!(end.fields.iter().flatten().all(|v| *v == 0.0));
        assert!((end.time - 0.01).abs() < 1e-15);
    }

    #[test]
    fn constants_are_fixed_points() {
        let sim = quiet(2, 32, Mode::None);
        let init = SimState::from_fields(vec![vec![1.25; 32], vec![-3.0; 32]]);
        let end = run_without_noise(&sim, init);
        assert!(end.fields[0].iter().all(|v| (v - 1.25).abs() < 1e-13));
        assert!(end.fields[1].iter().all(|v| (v + 3.0).abs() < 1e-13));
    }

    #[test]
    fn mean_of_first_layer_does_not_decrease() {
        let sim = quiet(1, 64, Mode::None);
        let mut state = SimState::from_fields(vec![(0..64)
            .map(|k| (2.0 * std::f64::consts::PI * k as f64 / 64.0).sin())
            .collect()]);
        let zero = vec![0.0; 64];
        let mut prev = state.mean(0);
        for _ in 0..200 {
            sim.step(&mut state, &zero, false).unwrap();
            let now = state.mean(0);
            assert!(now >= prev - 1e-14);
            prev = now;
        }
        assert!(prev > 1e-3);
    }

    #[test]
    fn blow_up_is_reported() {
        let mut cfg = SimConfig::new(1, 16, 0.01, 2.0, 0, Mode::None);
        cfg.blowup_threshold = 0.5;
        let sim = Simulator::<f64>::with_shifts(cfg, LayerShifts { wick: vec![0.0], log: vec![0.0] });
        let mut state = SimState::from_fields(vec![vec![0.0; 16]]);
        let err = sim.step(&mut state, &[1e6; 16], false).unwrap_err();
        assert!(matches!(err, Error::BlowUp { layer: 1, .. }));
    }

    #[test]
    fn single_precision_tracks_double() {
        let cfg = SimConfig::new(2, 32, 0.002, 4.0, 5, Mode::WickOnly);
        let d = Simulator::<f64>::new(cfg.clone()).unwrap();
        let s = Simulator::<f32>::new(cfg.clone()).unwrap();
        let a = d.run(SimState::zeros(2, 32), &mut d.noise()).unwrap();
        let b = s.run(SimState::zeros(2, 32), &mut s.noise()).unwrap();
        let fa = &a.final_state().fields[1];
        let fb: Vec<f64> = b.final_state().fields[1].iter().map(|v| *v as f64).collect();
        assert!(sup_distance(fa, &fb) < 1e-3);
    }
}
