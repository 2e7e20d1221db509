use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::renorm::MollifierSpec;

/// Largest admissible `Δt / Δx²`. The linear part is implicit; this bound
/// keeps the explicit gradient-squared term accurate and stable for the
/// amplitudes reached at desk-scale horizons.
pub const STABILITY_CONSTANT: f64 = 0.25;

/// Smallest admissible mollification scale, in grid spacings.
pub const MIN_EPS_CELLS: f64 = 2.0;

/// Which constants are subtracted in each layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Nothing is subtracted.
    None,
    /// The lattice Wick constant of each layer.
    WickOnly,
    /// The Wick constant plus the exact `log ε` constants.
    Full,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "wick_only" => Ok(Self::WickOnly),
            "full" => Ok(Self::Full),
            other => Err(Error::Config(format!("unknown mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::WickOnly => "wick_only",
            Self::Full => "full",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub layers: usize,
    /// Number of grid points on `[0, 1)`.
    pub grid: usize,
    pub dt: f64,
    pub horizon: f64,
    /// Mollification scale in grid spacings.
    pub eps: f64,
    pub seed: u64,
    pub mode: Mode,
    pub mollifier: MollifierSpec,
    /// Switch off `(∂h)²` to run the linear system.
    pub nonlinear: bool,
    /// Any `|h|` above this aborts the run.
    pub blowup_threshold: f64,
    /// Record a snapshot every this many steps (the final state is always
    /// recorded).
    pub record_every: usize,
}

impl SimConfig {
    /// A configuration with the largest stable time step.
    pub fn new(layers: usize, grid: usize, horizon: f64, eps: f64, seed: u64, mode: Mode) -> Self {
        Self {
            layers,
            grid,
            dt: Self::max_dt(grid),
            horizon,
            eps,
            seed,
            mode,
            mollifier: MollifierSpec::default(),
            nonlinear: true,
            blowup_threshold: 1e6,
            record_every: usize::MAX,
        }
    }

    pub fn max_dt(grid: usize) -> f64 {
        STABILITY_CONSTANT / (grid * grid) as f64
    }

    pub fn dx(&self) -> f64 {
        1.0 / self.grid as f64
    }

    pub fn eps_physical(&self) -> f64 {
        self.eps * self.dx()
    }

    /// Number of steps; the last one is shortened to land on the horizon.
    pub fn steps(&self) -> usize {
        (self.horizon / self.dt - 1e-9).ceil().max(0.0) as usize
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.layers == 0 {
            return fail("layers must be at least 1".into());
        }
        if self.grid < 8 {
            return fail(format!("grid must have at least 8 points, got {}", self.grid));
        }
        if !(self.dt > 0.0) || self.dt > Self::max_dt(self.grid) * (1.0 + 1e-12) {
            return fail(format!(
                "dt = {} violates dt <= {STABILITY_CONSTANT}·dx² = {}",
                self.dt,
                Self::max_dt(self.grid)
            ));
        }
        if !(self.horizon >= 0.0) || !self.horizon.is_finite() {
            return fail(format!("horizon must be finite and non-negative, got {}", self.horizon));
        }
        if !(self.eps >= MIN_EPS_CELLS) || self.eps_physical() > 1.0 {
            return fail(format!("eps = {} grid spacings is outside [{MIN_EPS_CELLS}, grid]", self.eps));
        }
        if !(self.blowup_threshold > 0.0) || self.record_every == 0 {
            return fail("blowup_threshold and record_every must be positive".into());
        }
        Ok(())
    }
}

/// What a config file asks `simulate` to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    /// One trajectory.
    Trajectory,
    /// Layer 1 against the Hopf–Cole reference, at `grid` and `refine_grid`.
    HopfCole,
    /// The ε-ladder stability study.
    Ladder,
}

/// On-disk form of a run, TOML with flat keys.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub task: Task,
    pub layers: usize,
    pub grid: usize,
    pub horizon: f64,
    pub seed: u64,
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default = "default_power")]
    pub mollifier_power: u32,
    #[serde(default)]
    pub record_every: Option<usize>,
    #[serde(default)]
    pub blowup_threshold: Option<f64>,
    /// Hopf–Cole task: the second, finer grid.
    #[serde(default)]
    pub refine_grid: Option<usize>,
    /// Ladder task: ε values in grid spacings, decreasing.
    #[serde(default)]
    pub ladder: Option<Vec<f64>>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(default)]
    pub modes: Option<Vec<Mode>>,
}

fn default_power() -> u32 {
    8
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// The base simulation configuration (ladder runs override `eps` and
    /// `mode` per rung).
    pub fn sim_config(&self) -> Result<SimConfig> {
        let mut cfg = SimConfig::new(
            self.layers,
            self.grid,
            self.horizon,
            self.eps.unwrap_or(MIN_EPS_CELLS.max(self.grid as f64 / 32.0)),
            self.seed,
            self.mode.unwrap_or(Mode::Full),
        );
        if let Some(dt) = self.dt {
            cfg.dt = dt;
        }
        cfg.mollifier = MollifierSpec::polynomial_bump(self.mollifier_power)?;
        if let Some(r) = self.record_every {
            cfg.record_every = r;
        }
        if let Some(b) = self.blowup_threshold {
            cfg.blowup_threshold = b;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
