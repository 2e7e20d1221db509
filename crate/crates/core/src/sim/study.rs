//! ε-ladder stability study: runs of the same white noise at decreasing
//! mollification scales, compared pairwise in sup norm.

use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::config::{Mode, SimConfig, MIN_EPS_CELLS};
use super::noise::{MollifierKernel, WhiteNoise};
use super::scheme::{sup_distance, SimState, Simulator};
use crate::error::{Error, Result};

/// Below this many samples the report is flagged.
pub const MIN_SAMPLES: usize = 50;

/// Mean with a two-sided 95% Student-t interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub half_width: f64,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let t = StudentsT::new(0.0, 1.0, n - 1.0)
            .expect("at least two samples")
            .inverse_cdf(0.975);
        Self { mean, half_width: t * (var / n).sqrt() }
    }

    pub fn low(&self) -> f64 {
        self.mean - self.half_width
    }

    pub fn high(&self) -> f64 {
        self.mean + self.half_width
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairStat {
    pub eps_coarse: f64,
    pub eps_fine: f64,
    /// `E sup_x |h^{coarse} - h^{fine}|` at the horizon.
    pub difference: Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayerStat {
    pub layer: usize,
    pub pairs: Vec<PairStat>,
    /// Paired change of the difference from the first to the last pair.
    pub trend: Estimate,
    /// The trend interval lies above zero.
    pub grows: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeStat {
    pub mode: Mode,
    pub layers: Vec<LayerStat>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub layer: usize,
    pub eps_coarse: f64,
    pub eps_fine: f64,
    pub full: f64,
    pub wick_only: f64,
    pub full_smaller: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyReport {
    pub grid: usize,
    pub layers: usize,
    pub horizon: f64,
    pub dt: f64,
    pub seed: u64,
    pub ladder: Vec<f64>,
    pub samples: usize,
    pub insufficient_samples: bool,
    pub modes: Vec<ModeStat>,
    /// Full against Wick-only, for layers >= 2 (present when both ran).
    pub full_vs_wick: Vec<Comparison>,
}

impl StudyReport {
    pub fn layer(&self, mode: Mode, layer: usize) -> Option<&LayerStat> {
        self.modes
            .iter()
            .find(|m| m.mode == mode)
            .and_then(|m| m.layers.iter().find(|l| l.layer == layer))
    }
}

fn validate_ladder(ladder: &[f64]) -> Result<()> {
    if ladder.len() < 2 {
        return Err(Error::Config("the ladder needs at least two rungs".into()));
    }
    if ladder.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::Config("the ladder must be strictly decreasing".into()));
    }
    if ladder.iter().any(|e| !(*e >= MIN_EPS_CELLS)) {
        return Err(Error::Config(format!("every rung must be at least {MIN_EPS_CELLS} grid spacings")));
    }
    Ok(())
}

/// Final states of all `(mode, rung)` runs of one sample, driven by one
/// white-noise stream. Indexed `[mode][rung]`.
fn run_sample(sims: &[Vec<(Simulator<f64>, MollifierKernel)>], base: &SimConfig, seed: u64) -> Result<Vec<Vec<SimState<f64>>>> {
    let m = base.grid;
    let mut white = WhiteNoise::new(seed, base.dt, base.dx());
    let mut states: Vec<Vec<SimState<f64>>> = sims
        .iter()
        .map(|row| row.iter().map(|_| SimState::zeros(base.layers, m)).collect())
        .collect();
    let mut w = vec![0.0; m];
    let n_rungs = sims.first().map_or(0, Vec::len);
    let mut xi = vec![vec![0.0; m]; n_rungs];
    let steps = base.steps();
    for s in 0..steps {
        white.fill(&mut w);
        for (r, (_, kernel)) in sims[0].iter().enumerate() {
            kernel.apply(&w, &mut xi[r]);
        }
        for (row, st_row) in sims.iter().zip(states.iter_mut()) {
            for (r, ((sim, _), st)) in row.iter().zip(st_row.iter_mut()).enumerate() {
                sim.step(st, &xi[r], s + 1 == steps)?;
            }
        }
    }
    Ok(states)
}

/// Runs `samples` independent noise realisations through every mode and
/// rung of `ladder` (ε in grid spacings, decreasing) on the grid of `base`.
pub fn eps_stability_study(base: &SimConfig, ladder: &[f64], samples: usize, modes: &[Mode]) -> Result<StudyReport> {
    validate_ladder(ladder)?;
    if samples < 2 {
        return Err(Error::InsufficientSamples(format!(
            "{samples} samples give no confidence interval; need at least 2 (recommended {MIN_SAMPLES})"
        )));
    }
    if modes.is_empty() {
        return Err(Error::Config("no modes requested".into()));
    }
    let sims: Vec<Vec<(Simulator<f64>, MollifierKernel)>> = modes
        .iter()
        .map(|&mode| {
            ladder
                .iter()
                .map(|&eps| {
                    let mut cfg = base.clone();
                    cfg.eps = eps;
                    cfg.mode = mode;
                    let kernel = MollifierKernel::new(&cfg.mollifier.space, eps);
                    Simulator::new(cfg).map(|s| (s, kernel))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    // diffs[sample][mode][layer][pair]
    let diffs: Vec<Vec<Vec<Vec<f64>>>> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let seed = base.seed.wrapping_add(s as u64);
            let states = run_sample(&sims, base, seed)?;
            Ok(states
                .iter()
                .map(|rungs| {
                    (0..base.layers)
                        .map(|l| {
                            rungs
                                .windows(2)
                                .map(|p| sup_distance(&p[0].fields[l], &p[1].fields[l]))
                                .collect()
                        })
                        .collect()
                })
                .collect())
        })
        .collect::<Result<_>>()?;

    let n_pairs = ladder.len() - 1;
    let column = |mi: usize, l: usize, p: usize| -> Vec<f64> { diffs.iter().map(|d| d[mi][l][p]).collect() };
    let mode_stats: Vec<ModeStat> = modes
        .iter()
        .enumerate()
        .map(|(mi, &mode)| ModeStat {
            mode,
            layers: (0..base.layers)
                .map(|l| {
                    let pairs = (0..n_pairs)
                        .map(|p| PairStat {
                            eps_coarse: ladder[p],
                            eps_fine: ladder[p + 1],
                            difference: Estimate::from_samples(&column(mi, l, p)),
                        })
                        .collect();
                    let increments: Vec<f64> = diffs.iter().map(|d| d[mi][l][n_pairs - 1] - d[mi][l][0]).collect();
                    let trend = Estimate::from_samples(&increments);
                    LayerStat { layer: l + 1, pairs, trend, grows: trend.low() > 0.0 }
                })
                .collect(),
        })
        .collect();

    let mut full_vs_wick = Vec::new();
    let full = modes.iter().position(|m| *m == Mode::Full);
    let wick = modes.iter().position(|m| *m == Mode::WickOnly);
    if let (Some(f), Some(w)) = (full, wick) {
        for l in 1..base.layers {
            for p in 0..n_pairs {
                let a = mode_stats[f].layers[l].pairs[p].difference.mean;
                let b = mode_stats[w].layers[l].pairs[p].difference.mean;
                full_vs_wick.push(Comparison {
                    layer: l + 1,
                    eps_coarse: ladder[p],
                    eps_fine: ladder[p + 1],
                    full: a,
                    wick_only: b,
                    full_smaller: a < b,
                });
            }
        }
    }

    Ok(StudyReport {
        grid: base.grid,
        layers: base.layers,
        horizon: base.horizon,
        dt: base.dt,
        seed: base.seed,
        ladder: ladder.to_vec(),
        samples,
        insufficient_samples: samples < MIN_SAMPLES,
        modes: mode_stats,
        full_vs_wick,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_interval() {
        let e = Estimate::from_samples(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(e.mean, 2.5);
        // t_{0.975, 3} = 3.182446...
        let expect = 3.182446305284263 * (5.0f64 / 3.0 / 4.0).sqrt();
        assert!((e.half_width - expect).abs() < 1e-9);
    }

    #[test]
    fn ladder_validation() {
        assert!(validate_ladder(&[8.0]).is_err());
        assert!(validate_ladder(&[4.0, 8.0]).is_err());
        assert!(validate_ladder(&[4.0, 1.0]).is_err());
        assert!(validate_ladder(&[8.0, 4.0, 2.0]).is_ok());
    }

    #[test]
    fn small_study_runs() {
        let base = SimConfig::new(2, 32, 0.002, 4.0, 1, Mode::Full);
        let report = eps_stability_study(&base, &[8.0, 4.0, 2.0], 4, &[Mode::None, Mode::WickOnly, Mode::Full]).unwrap();
        assert!(report.insufficient_samples);
        assert_eq!(report.modes.len(), 3);
        assert_eq!(report.full_vs_wick.len(), 2);
        assert!(eps_stability_study(&base, &[8.0, 4.0], 1, &[Mode::Full]).is_err());
    }
}
