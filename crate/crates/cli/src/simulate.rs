use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use mkpz_core::sim::{
    eps_stability_study, hopf_cole_comparison, refined, simulate, write_trajectory_csv, ConfigFile, Mode,
    SimConfig, Task, MIN_SAMPLES,
};
use serde::Serialize;

use crate::Failure;

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::Failed(format!("{}: {e}", path.display()))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| io_failure(path, e))?;
    std::fs::write(path, text + "\n").map_err(|e| io_failure(path, e))?;
    println!("wrote {}", path.display());
    Ok(())
}

/// Runs the base configuration once and writes its trajectory.
fn trajectory(cfg: &SimConfig, out: &Path) -> Result<(), Failure> {
    let traj = simulate(cfg)?;
    let path = out.join("trajectory.csv");
    let file = File::create(&path).map_err(|e| io_failure(&path, e))?;
    write_trajectory_csv(&traj, BufWriter::new(file))?;
    println!("wrote {}", path.display());
    let end = traj.final_state();
    for l in 0..end.layers() {
        println!("layer {}: mean at t = {} is {:.6}", l + 1, end.time, end.mean(l));
    }
    Ok(())
}

#[derive(Serialize)]
struct RunSummary<'a> {
    task: Task,
    layers: usize,
    grid: usize,
    dt: f64,
    horizon: f64,
    eps_cells: f64,
    seed: u64,
    mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    hopf_cole: Option<&'a [mkpz_core::sim::HopfColeReport]>,
}

impl<'a> RunSummary<'a> {
    fn new(task: Task, cfg: &SimConfig) -> Self {
        Self {
            task,
            layers: cfg.layers,
            grid: cfg.grid,
            dt: cfg.dt,
            horizon: cfg.horizon,
            eps_cells: cfg.eps,
            seed: cfg.seed,
            mode: cfg.mode,
            hopf_cole: None,
        }
    }
}

fn hopf_cole(file: &ConfigFile, cfg: &SimConfig, out: &Path) -> Result<(), Failure> {
    let mut grids = vec![cfg.clone()];
    if let Some(fine) = file.refine_grid {
        if fine <= cfg.grid || fine % cfg.grid != 0 {
            return Err(Failure::Usage(format!("refine_grid {fine} must be a multiple of grid {}", cfg.grid)));
        }
        grids.push(refined(cfg, fine / cfg.grid));
    }
    let reports = grids.iter().map(hopf_cole_comparison).collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        println!(
            "M = {:4}, eps = {} cells: sup |h_1 - log Z| = {:.4e} at T = {} (tolerance {:.4e}, {})",
            r.grid,
            r.eps_cells,
            r.final_distance,
            r.horizon,
            r.tolerance,
            if r.within_tolerance { "within" } else { "exceeded" }
        );
    }
    if let [coarse, fine] = &reports[..] {
        println!("refinement factor on the distance: {:.2}", coarse.final_distance / fine.final_distance);
    }
    let mut summary = RunSummary::new(Task::HopfCole, cfg);
    summary.hopf_cole = Some(&reports);
    write_json(&out.join("report.json"), &summary)
}

fn ladder(file: &ConfigFile, cfg: &SimConfig, out: &Path) -> Result<(), Failure> {
    let rungs = file
        .ladder
        .clone()
        .ok_or_else(|| Failure::Usage("task \"ladder\" needs a `ladder` list".into()))?;
    let samples = file.samples.unwrap_or(MIN_SAMPLES);
    let modes = file.modes.clone().unwrap_or_else(|| vec![Mode::None, Mode::WickOnly, Mode::Full]);
    let report = eps_stability_study(cfg, &rungs, samples, &modes)?;
    if report.insufficient_samples {
        println!("warning: {samples} samples is below the recommended {MIN_SAMPLES}");
    }
    for m in &report.modes {
        for l in &m.layers {
            let pairs: Vec<String> = l
                .pairs
                .iter()
                .map(|p| format!("{:.4}±{:.4}", p.difference.mean, p.difference.half_width))
                .collect();
            println!(
                "{:>9} layer {}: {}  trend {:+.4}±{:.4}{}",
                m.mode.to_string(),
                l.layer,
                pairs.join("  "),
                l.trend.mean,
                l.trend.half_width,
                if l.grows { "  grows" } else { "" }
            );
        }
    }
    write_json(&out.join("study.json"), &report)
}

pub fn run(config: &Path, out: &Path) -> Result<(), Failure> {
    let file = ConfigFile::load(config)?;
    let cfg = file.sim_config()?;
    std::fs::create_dir_all(out).map_err(|e| io_failure(out, e))?;
    trajectory(&cfg, out)?;
    match file.task {
        Task::Trajectory => write_json(&out.join("report.json"), &RunSummary::new(Task::Trajectory, &cfg)),
        Task::HopfCole => hopf_cole(&file, &cfg, out),
        Task::Ladder => ladder(&file, &cfg, out),
    }
}
