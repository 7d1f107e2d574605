//! End-to-end tests of the `gqlim` binary: every test launches the real
//! executable in its own temporary directory, then checks the stdout
//! `key = value` report, the CSV/JSON artifacts, and the exit code.
//!
//! Reference values are frozen verbatim from an independent
//! arbitrary-precision computation, beyond f64 precision where available.
#![allow(clippy::excessive_precision)]

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use approx::{assert_abs_diff_eq, assert_relative_eq};
use tempfile::TempDir;

/// Absolute path to a file shipped at the repository root.
fn repo(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn gqlim(dir: &TempDir, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqlim"))
        .args(args)
        .current_dir(dir.path())
        .output()
        .expect("launch gqlim")
}

/// Run expecting success; returns stdout.
fn run(dir: &TempDir, args: &[&str]) -> String {
    let out = gqlim(dir, args);
    assert!(
        out.status.success(),
        "gqlim {args:?} exited with {:?}\nstdout:\n{}\nstderr:\n{}",
        out.status.code(),
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    );
    String::from_utf8(out.stdout).expect("utf-8 stdout")
}

/// Run expecting the given failure exit code; returns stderr.
fn fail(dir: &TempDir, args: &[&str], code: i32) -> String {
    let out = gqlim(dir, args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "gqlim {args:?}: expected exit {code}\nstdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr),
    );
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// The `value` in a `key = value` report line.
fn value<'a>(report: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key} = ");
    report
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key} = ` line in report:\n{report}"))
}

fn num(report: &str, key: &str) -> f64 {
    value(report, key)
        .parse()
        .unwrap_or_else(|e| panic!("`{key}` is not a float ({e}):\n{report}"))
}

fn read(dir: &TempDir, name: &str) -> String {
    fs::read_to_string(dir.path().join(name)).unwrap_or_else(|e| panic!("reading {name}: {e}"))
}

// ---------------------------------------------------------------- limit --

#[test]
fn limit_point_pec_cylinder_reference() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "limit",
            "--kind",
            "point",
            "--material",
            &repo("materials/pec.json"),
            "--enclosure",
            "cylinder",
            "--psi",
            "6.2832",
            "--beta",
            "0.1",
            "--photon-eV",
            "0.0041357",
            "--d-nm",
            "1000",
            "--L-um",
            "100",
        ],
    );
    // 1 THz photon, β = 0.1, d = 1 μm, full 2π enclosure: |g_Q|² ≈ 3.92,
    // i.e. the strong-coupling regime is reachable here.
    assert_eq!(value(&report, "tau"), "1");
    let gq2 = num(&report, "gq2");
    assert_relative_eq!(gq2, 3.9181719429881311, max_relative = 1e-12);
    assert_relative_eq!(num(&report, "gq"), gq2.sqrt(), max_relative = 1e-15);
    assert_eq!(value(&report, "kind"), "point");
    assert_eq!(value(&report, "beta"), "0.1");
}

#[test]
fn limit_exact_full_circle_psi() {
    // ψ = 2π to machine precision; the rounded 6.2832 (a hair above 2π) in
    // the sibling test is also accepted, and the two agree to ~1e-5.
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "limit",
            "--kind",
            "point",
            "--tau",
            "1",
            "--psi",
            "6.283185307179586",
            "--beta",
            "0.1",
            "--photon-eV",
            "0.0041357",
            "--d-nm",
            "1000",
            "--L-um",
            "100",
        ],
    );
    assert_relative_eq!(
        num(&report, "gq2"),
        3.9181627806191618,
        max_relative = 1e-12
    );
}

#[test]
fn limit_tau_zero_gives_zero() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "limit",
            "--kind",
            "point",
            "--tau",
            "0",
            "--psi",
            "3.14159",
            "--beta",
            "0.5",
            "--photon-eV",
            "1",
            "--d-nm",
            "100",
            "--L-um",
            "100",
        ],
    );
    assert_eq!(value(&report, "gq2"), "0");
}

#[test]
fn limit_missing_separation_exits_2() {
    let dir = TempDir::new().unwrap();
    fail(
        &dir,
        &[
            "limit",
            "--kind",
            "point",
            "--tau",
            "1",
            "--psi",
            "3.14",
            "--beta",
            "0.5",
            "--photon-eV",
            "1",
            "--L-um",
            "100",
        ],
        2,
    );
}

#[test]
fn limit_conflicting_material_sources_exit_2() {
    let dir = TempDir::new().unwrap();
    let stderr = fail(
        &dir,
        &[
            "limit",
            "--kind",
            "point",
            "--tau",
            "1",
            "--material",
            &repo("materials/gold.json"),
            "--enclosure",
            "half-space",
            "--psi",
            "3.14",
            "--beta",
            "0.5",
            "--photon-eV",
            "1",
            "--d-nm",
            "100",
            "--L-um",
            "100",
        ],
        2,
    );
    assert!(stderr.contains("not both"), "stderr:\n{stderr}");
}

#[test]
fn limit_point_requires_psi_line_requires_charge() {
    let dir = TempDir::new().unwrap();
    let common = [
        "--tau",
        "1",
        "--beta",
        "0.5",
        "--photon-eV",
        "1",
        "--d-nm",
        "100",
        "--L-um",
        "100",
    ];
    let mut point = vec!["limit", "--kind", "point"];
    point.extend_from_slice(&common);
    let stderr = fail(&dir, &point, 2);
    assert!(stderr.contains("--psi"), "stderr:\n{stderr}");

    let mut line = vec!["limit", "--kind", "line"];
    line.extend_from_slice(&common);
    let stderr = fail(&dir, &line, 2);
    assert!(stderr.contains("--q-C-per-nm"), "stderr:\n{stderr}");
}

// ---------------------------------------------------------------- sweep --

/// A 1×1 sweep config pinned to the reference point-limit query.
fn single_cell_config() -> &'static str {
    r#"{
        "kind": "point",
        "axis1": {"variable": "beta", "min": 0.1, "max": 0.1, "count": 1, "scale": "lin"},
        "axis2": {"variable": "photon_eV", "min": 0.0041357, "max": 0.0041357, "count": 1, "scale": "lin"},
        "tau": 1.0,
        "psi": 6.283185307179586,
        "d_nm": 1000.0,
        "L_um": 100.0
    }"#
}

#[test]
fn sweep_single_cell_equals_limit_byte_for_byte() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("cell.json"), single_cell_config()).unwrap();
    let report = run(&dir, &["sweep", "--config", "cell.json", "--out", "map"]);
    assert_eq!(value(&report, "rows"), "1");
    assert_eq!(value(&report, "cols"), "1");
    let csv = read(&dir, "map.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("axis1,axis2,gq2"));
    let cell = lines.next().expect("one data row");
    let sweep_gq2 = cell.rsplit(',').next().unwrap();

    let limit_report = run(
        &dir,
        &[
            "limit",
            "--kind",
            "point",
            "--tau",
            "1",
            "--psi",
            "6.283185307179586",
            "--beta",
            "0.1",
            "--photon-eV",
            "0.0041357",
            "--d-nm",
            "1000",
            "--L-um",
            "100",
        ],
    );
    // Same code path, same formatting: the CSV cell quotes the scalar
    // report exactly.
    assert_eq!(sweep_gq2, value(&limit_report, "gq2"));
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let run_with = |threads: &str| {
        let dir = TempDir::new().unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_gqlim"))
            .args(["sweep", "--config", &repo("presets/fig3c.json")])
            .env("RAYON_NUM_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .expect("launch gqlim");
        assert!(
            out.status.success(),
            "threads={threads}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        fs::read(dir.path().join("fig3c.csv")).unwrap()
    };
    let single = run_with("1");
    let pooled = run_with("4");
    assert_eq!(single, pooled, "CSV bytes differ across thread counts");
}

#[test]
fn sweep_rejects_unknown_config_keys() {
    let dir = TempDir::new().unwrap();
    let mut cfg: serde_json::Value = serde_json::from_str(single_cell_config()).unwrap();
    cfg["surprise"] = serde_json::json!(1);
    fs::write(dir.path().join("bad.json"), cfg.to_string()).unwrap();
    let stderr = fail(&dir, &["sweep", "--config", "bad.json"], 2);
    assert!(stderr.contains("unknown field"), "stderr:\n{stderr}");
}

#[test]
fn sweep_flags_override_config() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("cell.json"), single_cell_config()).unwrap();
    let base = run(&dir, &["sweep", "--config", "cell.json", "--out", "base"]);
    let doubled = run(
        &dir,
        &[
            "sweep",
            "--config",
            "cell.json",
            "--out",
            "doubled",
            "--tau",
            "2",
        ],
    );
    assert_eq!(value(&base, "normalization"), "raw");
    let v1: f64 = read(&dir, "base.csv")
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    let v2: f64 = read(&dir, "doubled.csv")
        .lines()
        .nth(1)
        .unwrap()
        .rsplit(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(v2, 2.0 * v1, "τ enters the limit linearly");
    let _ = doubled;

    // The sidecar echoes the overridden spec, so a run is reproducible
    // from its sidecar alone.
    let sidecar: serde_json::Value = serde_json::from_str(&read(&dir, "doubled.json")).unwrap();
    assert_eq!(sidecar["config"]["tau"], serde_json::json!(2.0));
    assert_eq!(sidecar["command"], serde_json::json!("sweep"));
    assert_eq!(sidecar["schema_version"], serde_json::json!(1));
}

#[test]
fn sweep_normalized_map_peaks_at_one() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "sweep",
            "--config",
            &repo("presets/fig2c.json"),
            "--out",
            "map",
        ],
    );
    assert_eq!(value(&report, "normalization"), "peak");
    let peak = num(&report, "peak");
    assert!(peak > 0.0);
    let csv = read(&dir, "map.csv");
    let mut max = f64::NEG_INFINITY;
    for line in csv.lines().skip(1) {
        let v: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(
            (0.0..=1.0).contains(&v),
            "normalized cell {v} outside [0, 1]"
        );
        max = max.max(v);
    }
    assert_eq!(max, 1.0, "peak cell must normalize to exactly 1");
}

#[test]
fn fig2c_ridge_sits_at_the_optimal_condition() {
    // Per-β argmax over photon energy in the normalized point map follows
    // κd = x* to within one log-grid step.
    let dir = TempDir::new().unwrap();
    run(
        &dir,
        &[
            "sweep",
            "--config",
            &repo("presets/fig2c.json"),
            "--out",
            "map",
        ],
    );
    let csv = read(&dir, "map.csv");

    // rows: beta, cols: photon_eV (row-major, axis2 fastest).
    let mut rows: Vec<(f64, Vec<(f64, f64)>)> = Vec::new();
    for line in csv.lines().skip(1) {
        let mut it = line.split(',');
        let beta: f64 = it.next().unwrap().parse().unwrap();
        let ev: f64 = it.next().unwrap().parse().unwrap();
        let v: f64 = it.next().unwrap().parse().unwrap();
        match rows.last_mut() {
            Some((b, row)) if *b == beta => row.push((ev, v)),
            _ => rows.push((beta, vec![(ev, v)])),
        }
    }
    assert_eq!(rows.len(), 200);

    let x_star = 0.40641972458683679;
    let d = 100e-9;
    let c = 299_792_458.0;
    let ev_to_rad = 1.602176634e-19 / 1.054571817e-34;
    // Photon axis: 200 log-spaced points over [0.01, 10] eV.
    let log_step = (10.0f64 / 0.01).ln() / 199.0;
    for (beta, row) in rows {
        let (ev_peak, _) = row
            .iter()
            .copied()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let beta_gamma = beta / (1.0 - beta * beta).sqrt();
        let kappa_d = ev_peak * ev_to_rad * d / (c * beta_gamma);
        assert!(
            (kappa_d / x_star).ln().abs() <= log_step + 1e-12,
            "ridge at κd = {kappa_d} for β = {beta}"
        );
    }
}

#[test]
fn sweep_refuses_to_overwrite_its_config() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("cell.json"), single_cell_config()).unwrap();
    let stderr = fail(
        &dir,
        &["sweep", "--config", "cell.json", "--out", "cell"],
        2,
    );
    assert!(stderr.contains("overwrite"), "stderr:\n{stderr}");
}

// -------------------------------------------------------------- optimal --

#[test]
fn optimal_point_pairing_10_ev_photon() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "optimal",
            "--kind",
            "point",
            "--d-nm",
            "100",
            "--photon-eV",
            "10",
        ],
    );
    assert_abs_diff_eq!(
        num(&report, "kappa_d"),
        0.40641972458683679,
        epsilon = 1e-13
    );
    let ke = num(&report, "ke_eV");
    assert!((5.3e6..=6.5e6).contains(&ke), "partner KE = {ke} eV");
    assert_relative_eq!(ke, 5881209.126588108, max_relative = 1e-10);
    assert_relative_eq!(
        num(&report, "beta"),
        0.9967996039435078,
        max_relative = 1e-10
    );
}

#[test]
fn optimal_point_pairing_tenth_ev_photon() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "optimal",
            "--kind",
            "point",
            "--d-nm",
            "100",
            "--photon-eV",
            "0.1",
        ],
    );
    let ke = num(&report, "ke_eV");
    assert!((3.6e3..=4.4e3).contains(&ke), "partner KE = {ke} eV");
    assert_relative_eq!(ke, 3957.210578599366, max_relative = 1e-10);
}

#[test]
fn optimal_line_cutoff_and_roundtrip() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "optimal", "--kind", "line", "--d-nm", "100", "--beta", "0.5",
        ],
    );
    assert_eq!(value(&report, "kappa_d"), "0.5");
    let cutoff = num(&report, "cutoff_photon_eV");
    assert_relative_eq!(cutoff, 0.5696339264327716, max_relative = 1e-12);

    // Feeding the cutoff photon back returns the electron we started with.
    let back = run(
        &dir,
        &[
            "optimal",
            "--kind",
            "line",
            "--d-nm",
            "100",
            "--photon-eV",
            "0.5696339264327716",
        ],
    );
    assert_relative_eq!(num(&back, "beta"), 0.5, max_relative = 1e-10);
}

#[test]
fn optimal_separation_sweep_writes_curve() {
    let dir = TempDir::new().unwrap();
    let report = run(&dir, &["optimal", "--config", &repo("presets/fig2b.json")]);
    assert_eq!(value(&report, "points"), "200");
    let csv = read(&dir, "fig2b.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("d_nm,photon_eV"));
    let first = lines.next().unwrap();
    assert_eq!(first, "10,5.696339264327716");
    // Cutoff energy scales as 1/d: two decades down across the sweep.
    let last = csv.lines().last().unwrap();
    let (d_last, ev_last) = last.split_once(',').unwrap();
    assert_relative_eq!(
        d_last.parse::<f64>().unwrap(),
        10000.0,
        max_relative = 1e-12
    );
    assert_relative_eq!(
        ev_last.parse::<f64>().unwrap(),
        5.696339264327716e-3,
        max_relative = 1e-9
    );

    let sidecar: serde_json::Value = serde_json::from_str(&read(&dir, "fig2b.json")).unwrap();
    assert_eq!(sidecar["command"], serde_json::json!("optimal"));
    assert_eq!(sidecar["kind"], serde_json::json!("line"));
    assert_eq!(sidecar["d_count"], serde_json::json!(200));
}

#[test]
fn optimal_rejects_conflicting_separation_modes() {
    let dir = TempDir::new().unwrap();
    let stderr = fail(
        &dir,
        &[
            "optimal",
            "--config",
            &repo("presets/fig2d.json"),
            "--d-nm",
            "100",
        ],
        2,
    );
    assert!(stderr.contains("not both"), "stderr:\n{stderr}");
}

#[test]
fn optimal_rejects_config_for_another_command() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("other.json"), r#"{"command": "eels"}"#).unwrap();
    let stderr = fail(
        &dir,
        &["optimal", "--config", "other.json", "--kind", "point"],
        2,
    );
    assert!(
        stderr.contains("config file is for `eels`"),
        "stderr:\n{stderr}"
    );
}

// ----------------------------------------------------------------- eels --

#[test]
fn eels_gold_line_default_window() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "eels",
            "--geometry",
            "line-halfspace",
            "--material",
            &repo("materials/gold.json"),
            "--beta",
            "0.05",
            "--d-nm",
            "20",
            "--L-um",
            "100",
            "--q-C-per-nm",
            "1.602176634e-19",
        ],
    );
    // Vacuum/gold half-space: τ → 2 in the conductor limit.
    assert_eq!(value(&report, "tau"), "2");
    assert_eq!(value(&report, "window_source"), "default-spp");
    // Default window centered on the phase-matched SPP frequency
    // ω_p/√(1+γ²), half-width γ_m.
    assert_relative_eq!(
        num(&report, "window_center_eV"),
        6.402377178980274,
        max_relative = 1e-12
    );
    assert_abs_diff_eq!(num(&report, "window_half_width_eV"), 0.071, epsilon = 1e-12);
    let ratio = num(&report, "ratio");
    assert_relative_eq!(ratio, 0.433629260537129, max_relative = 1e-9);
    assert!(ratio <= 1.0 + 1e-9, "loss integral exceeds the limit");
    assert_relative_eq!(
        num(&report, "gq2_integrated"),
        num(&report, "gq2_limit") * ratio,
        max_relative = 1e-12
    );

    // CSV artifact: header plus one row per grid point.
    let csv = read(&dir, "eels.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("omega_rad_s,photon_eV,gamma_per_rad_s"));
    assert_eq!(lines.count(), 16001);
}

#[test]
fn eels_window_override_is_echoed() {
    let dir = TempDir::new().unwrap();
    let report = run(
        &dir,
        &[
            "eels",
            "--geometry",
            "point-halfspace",
            "--material",
            &repo("materials/gold.json"),
            "--beta",
            "0.2",
            "--d-nm",
            "50",
            "--L-um",
            "100",
            "--window-center-eV",
            "6.5",
            "--window-half-width-eV",
            "0.2",
            "--out",
            "win",
        ],
    );
    assert_eq!(value(&report, "window_source"), "explicit");
    // Echoed after an eV → rad/s → eV roundtrip, so compare numerically.
    assert_relative_eq!(num(&report, "window_center_eV"), 6.5, max_relative = 1e-14);
    assert_relative_eq!(
        num(&report, "window_half_width_eV"),
        0.2,
        max_relative = 1e-14
    );
    let sidecar: serde_json::Value = serde_json::from_str(&read(&dir, "win.json")).unwrap();
    assert_relative_eq!(
        sidecar["window"]["center_eV"].as_f64().unwrap(),
        6.5,
        max_relative = 1e-14
    );
    assert_eq!(sidecar["window"]["source"], serde_json::json!("explicit"));
    assert_eq!(sidecar["geometry"], serde_json::json!("point-halfspace"));
}

#[test]
fn eels_window_needs_both_bounds() {
    let dir = TempDir::new().unwrap();
    let stderr = fail(
        &dir,
        &[
            "eels",
            "--geometry",
            "line-halfspace",
            "--material",
            &repo("materials/gold.json"),
            "--beta",
            "0.05",
            "--d-nm",
            "20",
            "--L-um",
            "100",
            "--q-C-per-nm",
            "1.6e-19",
            "--window-center-eV",
            "6.5",
        ],
        2,
    );
    assert!(stderr.contains("both"), "stderr:\n{stderr}");
}

#[test]
fn eels_rejects_perfect_conductor() {
    let dir = TempDir::new().unwrap();
    let base = [
        "eels",
        "--geometry",
        "line-halfspace",
        "--beta",
        "0.05",
        "--d-nm",
        "20",
        "--L-um",
        "100",
        "--q-C-per-nm",
        "1.6e-19",
    ];
    // Without a window: the default SPP window needs a Drude material.
    let mut args = base.to_vec();
    let pec = repo("materials/pec.json");
    args.extend_from_slice(&["--material", &pec]);
    let stderr = fail(&dir, &args, 2);
    assert!(!stderr.is_empty());
    // With an explicit window: the quasistatic spectrum itself is the
    // blocker — a perfect conductor has no finite loss function.
    args.extend_from_slice(&["--window-center-eV", "6.5", "--window-half-width-eV", "0.2"]);
    let stderr = fail(&dir, &args, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn eels_requires_a_material() {
    let dir = TempDir::new().unwrap();
    let stderr = fail(
        &dir,
        &[
            "eels",
            "--geometry",
            "point-halfspace",
            "--beta",
            "0.1",
            "--d-nm",
            "50",
            "--L-um",
            "100",
        ],
        2,
    );
    assert!(stderr.contains("material"), "stderr:\n{stderr}");
}

// -------------------------------------------------------------- scatter --

#[test]
fn scatter_weak_coupling_is_poissonian() {
    let dir = TempDir::new().unwrap();
    let report = run(&dir, &["scatter", "--gq", "0.5"]);
    assert_abs_diff_eq!(num(&report, "mean"), 0.25, epsilon = 1e-10);
    assert_abs_diff_eq!(num(&report, "variance"), 0.25, epsilon = 1e-8);
    assert!(num(&report, "tv_poisson") < 1e-6);
    assert!(num(&report, "norm_drift") < 1e-12);

    let csv = read(&dir, "scatter.csv");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,probability"));
    assert_eq!(lines.count(), 61);
}

#[test]
fn scatter_zero_coupling_leaves_vacuum() {
    let dir = TempDir::new().unwrap();
    let report = run(&dir, &["scatter", "--gq", "0", "--out", "vac"]);
    assert_eq!(value(&report, "mean"), "0");
    let csv = read(&dir, "vac.csv");
    assert_eq!(csv.lines().nth(1), Some("0,1"));
}

#[test]
fn scatter_strong_coupling_multiphoton_tail() {
    // |g_Q| = 1.2: mean 1.44 photons and a multi-photon cascade — more than
    // 40% of shots emit two photons or more.
    let dir = TempDir::new().unwrap();
    let report = run(&dir, &["scatter", "--gq", "1.2", "--out", "cascade"]);
    assert_relative_eq!(num(&report, "mean"), 1.44, max_relative = 1e-10);
    let csv = read(&dir, "cascade.csv");
    let tail: f64 = csv
        .lines()
        .skip(1)
        .filter_map(|l| {
            let (n, p) = l.split_once(',').unwrap();
            (n.parse::<usize>().unwrap() >= 2).then(|| p.parse::<f64>().unwrap())
        })
        .sum();
    assert_abs_diff_eq!(tail, 0.421896268816, epsilon = 1e-9);

    let sidecar: serde_json::Value = serde_json::from_str(&read(&dir, "cascade.json")).unwrap();
    assert_eq!(sidecar["k_max"], serde_json::json!(60));
    assert!(sidecar["leak"].as_f64().unwrap() < 1e-6);
}

#[test]
fn scatter_undersized_truncation_exits_3() {
    let dir = TempDir::new().unwrap();
    let stderr = fail(
        &dir,
        &["scatter", "--gq", "1.5", "--k-max", "10", "--n-max", "10"],
        3,
    );
    assert!(stderr.contains("retry with a larger"), "stderr:\n{stderr}");
}

#[test]
fn scatter_invalid_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    fail(&dir, &["scatter", "--gq=-0.5"], 2);
    let stderr = fail(&dir, &["scatter", "--gq", "2.5"], 2);
    assert!(stderr.contains("2"), "stderr:\n{stderr}");
    let stderr = fail(&dir, &["scatter", "--gq", "0.5", "--k-max", "200"], 2);
    assert!(
        stderr.contains("exceeds the supported maximum"),
        "stderr:\n{stderr}"
    );
}

// -------------------------------------------------------------- presets --

#[test]
fn shipped_presets_run_end_to_end() {
    let presets: &[(&str, &str)] = &[
        ("sweep", "fig2a"),
        ("sweep", "fig2c"),
        ("sweep", "fig3c"),
        ("sweep", "fig3d"),
        ("optimal", "fig2b"),
        ("optimal", "fig2d"),
        ("eels", "fig4a"),
        ("eels", "fig4b"),
        ("eels", "gap_point"),
    ];
    for &(command, name) in presets {
        let dir = TempDir::new().unwrap();
        let config = repo(&format!("presets/{name}.json"));
        run(&dir, &[command, "--config", &config]);
        let csv = dir.path().join(format!("{name}.csv"));
        let sidecar = dir.path().join(format!("{name}.json"));
        assert!(csv.exists(), "{name}: missing CSV");
        assert!(sidecar.exists(), "{name}: missing sidecar");
        if command == "eels" {
            // Every shipped loss-spectrum preset respects its limit.
            let doc: serde_json::Value =
                serde_json::from_str(&fs::read_to_string(&sidecar).unwrap()).unwrap();
            let ratio = doc["ratio"].as_f64().unwrap();
            assert!(
                ratio > 0.0 && ratio <= 1.0 + 1e-9,
                "{name}: ratio = {ratio}"
            );
        }
    }
}
