//! Finite-difference simulation of the renormalised multi-layer system on
//! the circle, with a Hopf–Cole reference for the first layer and an
//! ε-ladder stability study.

mod config;
mod hopf_cole;
mod io;
mod lattice;
mod noise;
mod scheme;
mod solver;
mod study;

pub use config::{ConfigFile, Mode, SimConfig, Task, MIN_EPS_CELLS, STABILITY_CONSTANT};
pub use hopf_cole::{hopf_cole_comparison, hopf_cole_reference, hopf_cole_tolerance, refined, HopfColeReport};
pub use io::write_trajectory_csv;
pub use lattice::lattice_wick_constants;
pub use noise::{MollifierKernel, NoiseField, WhiteNoise};
pub use scheme::{simulate, sup_distance, LayerShifts, SimState, Simulator, Trajectory};
pub use solver::CyclicTridiagonal;
pub use study::{eps_stability_study, Comparison, Estimate, LayerStat, ModeStat, PairStat, StudyReport, MIN_SAMPLES};
