use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mkpz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mkpz")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn constants_for_four_layers() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let run = mkpz(&["constants", "--layers", "1..4", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let doc = read_json(&out);
    let c2: Vec<&str> = doc["layers"].as_array().unwrap().iter().map(|l| l["c2_log"].as_str().unwrap()).collect();
    assert_eq!(c2, ["-1/2", "-85/288", "-995/6912", "-5129851/53747712"]);
    assert_eq!(doc["layers"][0]["sum"], "0");
    assert_eq!(doc["version"], 1);
    assert!(stdout(&run).contains("-85/288 (-0.295138888889)"));
}

#[test]
fn single_layer_cancels() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let run = mkpz(&["constants", "--layers", "1..1", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0);
    assert_eq!(read_json(&out)["layers"][0]["sum"], "0");
}

#[test]
fn constants_json_is_stable_apart_from_the_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(code(&mkpz(&["constants", "--layers", "2..3", "--out", a.to_str().unwrap()])), 0);
    std::thread::sleep(std::time::Duration::from_millis(1100));
    assert_eq!(code(&mkpz(&["constants", "--layers", "2..3", "--out", b.to_str().unwrap()])), 0);
    let strip = |p: &Path| {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.trim_start().starts_with("\"generated_at\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let out = out.to_str().unwrap();
    assert_eq!(code(&mkpz(&["constants", "--layers", "0..2", "--out", out])), 2);
    assert_eq!(code(&mkpz(&["constants", "--layers", "7", "--out", out])), 2);
    assert_eq!(code(&mkpz(&["constants", "--layers", "1..3", "--out", out, "--frobnicate"])), 2);
    assert_eq!(code(&mkpz(&["check", "--suite", "graphs"])), 2);
    assert_eq!(code(&mkpz(&["trees", "--layer", "2", "--order", "3"])), 2);
    assert_eq!(code(&mkpz(&["trees", "--layer", "0", "--order", "1"])), 2);
    assert_eq!(code(&mkpz(&["simulate", "--config", "/nonexistent/run.toml", "--out", out])), 2);
    assert!(!Path::new(out).exists());
}

#[test]
fn budget_flag_admits_larger_layers() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let run = mkpz(&["constants", "--layers", "7", "--out", out.to_str().unwrap(), "--max-layer", "7"]);
    assert_eq!(code(&run), 0);
    assert_eq!(read_json(&out)["layers"][0]["layer"], 7);
}

#[test]
fn worker_variable_is_validated() {
    let run = Command::new(env!("CARGO_BIN_EXE_mkpz"))
        .args(["check", "--suite", "kernels"])
        .env("MKPZ_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&run), 2);
    let run = Command::new(env!("CARGO_BIN_EXE_mkpz"))
        .args(["check", "--suite", "kernels"])
        .env("MKPZ_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&run), 0);
}

#[test]
fn check_suites_pass() {
    for suite in ["kernels", "hermite", "trees", "constants"] {
        let run = mkpz(&["check", "--suite", suite]);
        assert_eq!(code(&run), 0, "{suite}: {}", stdout(&run));
        let text = stdout(&run);
        assert!(text.lines().all(|l| l.starts_with("PASS")), "{text}");
    }
}

#[test]
fn tree_listing() {
    let run = mkpz(&["trees", "--layer", "2", "--order", "1"]);
    assert_eq!(code(&run), 0);
    let text = stdout(&run);
    assert!(text.contains("<20>[0,1,0] x 2"), "{text}");
    assert!(text.contains("4 trees"));
}

#[test]
fn trajectory_run_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "t.toml",
        "task = \"trajectory\"\nlayers = 2\ngrid = 32\nhorizon = 0.002\neps = 4\nseed = 3\nrecord_every = 4\n",
    );
    let out = dir.path().join("out");
    let run = mkpz(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let csv = std::fs::read_to_string(out.join("trajectory.csv")).unwrap();
    assert!(csv.starts_with("time,layer,index,value\n"));
    assert_eq!(read_json(&out.join("report.json"))["mode"], "full");
}

#[test]
fn hopf_cole_run_prints_a_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "hc.toml",
        "task = \"hopf_cole\"\nlayers = 1\ngrid = 64\nrefine_grid = 128\nhorizon = 0.01\neps = 4\nseed = 1\n",
    );
    let out = dir.path().join("out");
    let run = mkpz(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    assert!(stdout(&run).contains("sup |h_1 - log Z|"));
    let report = read_json(&out.join("report.json"));
    assert_eq!(report["hopf_cole"].as_array().unwrap().len(), 2);
}

#[test]
fn ladder_run_writes_a_study() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "l.toml",
        "task = \"ladder\"\nlayers = 2\ngrid = 32\nhorizon = 0.002\nseed = 1\nladder = [8, 4, 2]\nsamples = 4\n",
    );
    let out = dir.path().join("out");
    let run = mkpz(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let study = read_json(&out.join("study.json"));
    assert_eq!(study["insufficient_samples"], true);
    assert_eq!(study["modes"].as_array().unwrap().len(), 3);
    assert!(stdout(&run).contains("warning"));
}

#[test]
fn bad_configs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();
    let unknown = write_config(dir.path(), "u.toml", "task = \"trajectory\"\nlayers = 1\ngrid = 32\nhorizon = 0.01\nseed = 1\ncolour = 3\n");
    assert_eq!(code(&mkpz(&["simulate", "--config", &unknown, "--out", out])), 2);
    let unstable = write_config(dir.path(), "s.toml", "task = \"trajectory\"\nlayers = 1\ngrid = 32\nhorizon = 0.01\nseed = 1\ndt = 0.01\n");
    assert_eq!(code(&mkpz(&["simulate", "--config", &unstable, "--out", out])), 2);
    let garbled = write_config(dir.path(), "g.toml", "task = trajectory\n");
    assert_eq!(code(&mkpz(&["simulate", "--config", &garbled, "--out", out])), 2);
}

#[test]
fn blow_up_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "b.toml",
        "task = \"trajectory\"\nlayers = 1\ngrid = 32\nhorizon = 0.01\nseed = 1\nmode = \"none\"\nblowup_threshold = 1e-6\n",
    );
    let out = dir.path().join("out");
    let run = mkpz(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&run), 1);
    assert!(String::from_utf8_lossy(&run.stderr).contains("blow-up"));
}
