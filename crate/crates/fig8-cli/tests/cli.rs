//! End-to-end tests against the built binary: flag grammar, JSON and CSV
//! shapes, exit codes, and run-to-run byte stability.

use std::process::{Command, Output};

use num_complex::Complex64;
use serde_json::Value;

use fig8_core::asymptotics_verifier::inverse_alexander;
use fig8_core::figure_eight_core::{make_cusp, KAPPA};

fn fig8(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fig8"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fig8_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fig8"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classify_reports_the_decaying_regime() {
    let doc = json_of(&fig8(&["classify", "--xi", "1+0.5i"]));
    assert_eq!(doc["label"], "GammaMinus");
    assert_eq!(doc["conjectural"], false);
    let re_s = doc["diagnostics"]["re_s_over_xi"].as_f64().unwrap();
    assert!((re_s - (-0.166996)).abs() < 1e-5, "re_s_over_xi = {re_s}");
    assert_eq!(doc["diagnostics"]["in_xi"], true);
}

#[test]
fn classify_labels_the_reference_points() {
    let doc = json_of(&fig8(&["classify", "--xi", "1+2i"]));
    assert_eq!(doc["label"], "OutsideXi");
    let doc = json_of(&fig8(&["classify", "--xi", "0.3+0.3i"]));
    assert_eq!(doc["label"], "OmegaCapXi");
}

#[test]
fn classify_rejects_bad_literals() {
    for bad in ["1+2j", "1 + 2i", "", "nan"] {
        let out = fig8(&["classify", "--xi", bad]);
        assert_eq!(code_of(&out), 1, "literal `{bad}`");
    }
}

#[test]
fn classify_flags_non_finite_diagnostics() {
    let out = fig8(&["classify", "--xi", "1000+0.5i"]);
    assert_eq!(code_of(&out), 3);
}

#[test]
fn every_command_honors_help() {
    for cmd in ["classify", "jones", "study", "predict", "cs", "grid", "selftest"] {
        let out = fig8(&[cmd, "--help"]);
        assert_eq!(code_of(&out), 0, "{cmd} --help");
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains(cmd), "{cmd} help names itself");
    }
    assert_eq!(code_of(&fig8(&["--help"])), 0);
}

#[test]
fn bare_invocation_and_unknown_names_are_usage_errors() {
    assert_eq!(code_of(&fig8(&[])), 1);
    assert_eq!(code_of(&fig8(&["frobnicate"])), 1);
    assert_eq!(code_of(&fig8(&["classify", "--bogus", "1"])), 1);
    assert_eq!(code_of(&fig8(&["classify", "positional"])), 1);
}

#[test]
fn jones_is_one_at_the_trivial_point() {
    let doc = json_of(&fig8(&["jones", "--xi", "0+0i", "--n", "7"]));
    let v = &doc["value_if_representable"];
    assert!((v["re"].as_f64().unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(v["im"].as_f64().unwrap(), 0.0);
    assert_eq!(doc["log_mag"].as_f64().unwrap(), 0.0);
}

#[test]
fn jones_converges_to_the_alexander_limit() {
    let doc = json_of(&fig8(&["jones", "--xi", "1+0.5i", "--n", "400"]));
    let v = &doc["value_if_representable"];
    let got = Complex64::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap());
    let limit = inverse_alexander(Complex64::new(1.0, 0.5));
    assert!((got - limit).norm() < 1e-3, "J_400 = {got}, limit = {limit}");
}

#[test]
fn jones_routes_agree() {
    let direct = json_of(&fig8(&["jones", "--xi", "1+0.5i", "--n", "10"]));
    let pot = json_of(&fig8(&["jones", "--xi", "1+0.5i", "--n", "10", "--via", "potential"]));
    let dm = direct["log_mag"].as_f64().unwrap();
    let pm = pot["log_mag"].as_f64().unwrap();
    let da = direct["arg"].as_f64().unwrap();
    let pa = pot["arg"].as_f64().unwrap();
    let rel = (Complex64::from_polar((pm - dm).exp(), pa - da) - 1.0).norm();
    assert!(rel < 1e-6, "route relative difference {rel}");
}

#[test]
fn jones_rejects_bad_order_and_route() {
    assert_eq!(code_of(&fig8(&["jones", "--xi", "1+0.5i", "--n", "0"])), 1);
    assert_eq!(code_of(&fig8(&["jones", "--xi", "1+0.5i"])), 1);
    let out = fig8(&["jones", "--xi", "1+0.5i", "--n", "5", "--via", "magic"]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn jones_potential_route_rejects_the_real_axis() {
    let out = fig8(&["jones", "--xi", "2", "--n", "5", "--via", "potential"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn study_writes_csv_and_fits_the_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("study.csv");
    let path_str = path.to_str().unwrap();
    let doc = json_of(&fig8(&[
        "study", "--xi", "1+0.5i", "--n-list", "100,200,400", "--out", path_str,
    ]));
    let order = doc["fitted_order"].as_f64().unwrap();
    assert!((-2.6..=-1.4).contains(&order), "fitted order {order}");
    let errors: Vec<f64> = doc["errors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e.as_f64().unwrap())
        .collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]), "errors decrease");

    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "N,exact_logmag,exact_arg,pred_logmag,pred_arg,err");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("100,"));
    for line in &lines[1..] {
        assert_eq!(line.split(',').count(), 6);
    }
}

#[test]
fn study_needs_at_least_three_orders() {
    let out = fig8(&["study", "--xi", "1+0.5i", "--n-list", "100,200"]);
    assert_eq!(code_of(&out), 2);
}

#[test]
fn predict_reports_the_growing_regime() {
    let doc = json_of(&fig8(&["predict", "--xi", "1.5+0.5i", "--n", "200"]));
    assert_eq!(doc["regime"], "GammaPlus");
    assert_eq!(doc["conjectural"], false);
    // the printed pieces must reassemble into the printed leading term
    let coef = Complex64::new(
        doc["prefactor"]["re"].as_f64().unwrap(),
        doc["prefactor"]["im"].as_f64().unwrap(),
    ) * Complex64::new(
        doc["torsion_factor"]["re"].as_f64().unwrap(),
        doc["torsion_factor"]["im"].as_f64().unwrap(),
    );
    let rate_re = doc["growth_rate"]["re"].as_f64().unwrap();
    let log_mag = coef.norm().ln() + 200.0 * rate_re;
    let lead = doc["leading"]["log_mag"].as_f64().unwrap();
    assert!((log_mag - lead).abs() < 1e-9, "{log_mag} vs {lead}");
}

#[test]
fn predict_rejects_parameters_without_a_prediction() {
    assert_eq!(code_of(&fig8(&["predict", "--xi", "-1+0.5i", "--n", "100"])), 2);
}

#[test]
fn cs_matches_the_corner_value_and_rejects_outside() {
    let doc = json_of(&fig8(&["cs", "--xi", "0.9624236501192069"]));
    let re = doc["cs"]["re"].as_f64().unwrap();
    let im = doc["cs"]["im"].as_f64().unwrap();
    assert!(re.abs() < 1e-12);
    assert!((im + KAPPA * std::f64::consts::PI / 2.0).abs() < 1e-9);
    assert_eq!(code_of(&fig8(&["cs", "--xi", "-1+0.5i"])), 2);
}

#[test]
fn grid_minimal_resolution_hits_the_corners_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.csv");
    let doc = json_of(&fig8(&[
        "grid", "--xi", "1.5+0.5i", "--window", "-0.1,1.1,-0.6,0.4",
        "--resolution", "2x2", "--quantity", "ReF", "--out", path.to_str().unwrap(),
    ]));
    assert_eq!(doc["rows"], 4);
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "x,y,value");
    assert_eq!(lines.len(), 5);
    let corner: Vec<Vec<f64>> = lines[1..]
        .iter()
        .map(|l| l.split(',').take(2).map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(corner[0], vec![-0.1, -0.6]);
    assert_eq!(corner[1], vec![1.1, -0.6]);
    assert_eq!(corner[2], vec![-0.1, 0.4]);
    assert_eq!(corner[3], vec![1.1, 0.4]);
}

#[test]
fn grid_re_f_has_the_figure_sign_structure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ref.csv");
    json_of(&fig8(&[
        "grid", "--xi", "1.5+0.5i", "--window", "-0.1,1.1,-0.6,0.4",
        "--resolution", "25x21", "--quantity", "ReF", "--out", path.to_str().unwrap(),
    ]));
    let csv = std::fs::read_to_string(&path).unwrap();
    let cells: Vec<(f64, f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            let x: f64 = it.next().unwrap().parse().unwrap();
            let y: f64 = it.next().unwrap().parse().unwrap();
            let v: f64 = it.next().unwrap().parse().unwrap();
            (x, y, v)
        })
        .collect();
    let nearest = |px: f64, py: f64| {
        cells
            .iter()
            .min_by(|a, b| {
                let da = (a.0 - px).powi(2) + (a.1 - py).powi(2);
                let db = (b.0 - px).powi(2) + (b.1 - py).powi(2);
                da.partial_cmp(&db).unwrap()
            })
            .unwrap()
            .2
    };
    // F is odd with Re F increasing through the origin along the real axis,
    // so the negative (pink) set near 0 sits on the west side; the saddle
    // value itself is positive in this regime
    assert!(nearest(-0.05, 0.0) < 0.0);
    assert!(nearest(0.05, 0.0) > 0.0);
    let sigma = make_cusp(Complex64::new(1.5, 0.5)).sigma;
    assert!(nearest(sigma.re, sigma.im) > 0.0);
}

#[test]
fn grid_region_mask_labels_the_plane() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mask.csv");
    json_of(&fig8(&[
        "grid", "--xi", "0+0i", "--window", "-2,2,-1,1",
        "--resolution", "9x9", "--quantity", "RegionMask", "--out", path.to_str().unwrap(),
    ]));
    let csv = std::fs::read_to_string(&path).unwrap();
    let valid = [
        "GammaPlus", "GammaZero", "GammaMinus", "GammaTildePlus", "GammaTildeZero",
        "GammaTildeMinus", "OmegaCapXi", "OmegaBoundary", "OutsideXi",
    ];
    let mut at_1_half = None;
    for line in csv.lines().skip(1) {
        let mut it = line.split(',');
        let x: f64 = it.next().unwrap().parse().unwrap();
        let y: f64 = it.next().unwrap().parse().unwrap();
        let label = it.next().unwrap();
        assert!(valid.contains(&label), "label `{label}`");
        if (x - 1.0).abs() < 1e-12 && (y - 0.5).abs() < 1e-12 {
            at_1_half = Some(label.to_string());
        }
    }
    assert_eq!(at_1_half.as_deref(), Some("GammaMinus"));
}

#[test]
fn grid_hv_mask_marks_the_reference_cells() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hv.csv");
    json_of(&fig8(&[
        "grid", "--xi", "1+0.5i", "--window", "0,1,-0.2,0.2",
        "--resolution", "5x5", "--quantity", "HVMask", "--out", path.to_str().unwrap(),
    ]));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut seen = std::collections::BTreeMap::new();
    for line in csv.lines().skip(1) {
        let mut it = line.split(',');
        let x: f64 = it.next().unwrap().parse().unwrap();
        let y: f64 = it.next().unwrap().parse().unwrap();
        let label = it.next().unwrap().to_string();
        let ok = label == "na"
            || (label.len() == 2 && label.chars().all(|c| "+-0".contains(c)));
        assert!(ok, "hv label `{label}`");
        seen.insert((format!("{x}"), format!("{y}")), label);
    }
    assert_eq!(seen[&("0".to_string(), "0".to_string())], "+-");
    assert_eq!(seen[&("1".to_string(), "0".to_string())], "-0");
}

#[test]
fn grid_rejects_bad_geometry_and_unwritable_output() {
    let out = fig8(&[
        "grid", "--xi", "0+0i", "--window", "1,0,0,1",
        "--resolution", "4x4", "--quantity", "ReF", "--out", "/tmp/x.csv",
    ]);
    assert_eq!(code_of(&out), 1);
    let out = fig8(&[
        "grid", "--xi", "0+0i", "--window", "0,1,0,1",
        "--resolution", "1x4", "--quantity", "ReF", "--out", "/tmp/x.csv",
    ]);
    assert_eq!(code_of(&out), 1);
    let out = fig8(&[
        "grid", "--xi", "0+0i", "--window", "0,1,0,1",
        "--resolution", "4x4", "--quantity", "Bogus", "--out", "/tmp/x.csv",
    ]);
    assert_eq!(code_of(&out), 1);
    let out = fig8(&[
        "grid", "--xi", "0+0i", "--window", "0,1,0,1",
        "--resolution", "4x4", "--quantity", "ReF",
        "--out", "/no_such_directory_anywhere/x.csv",
    ]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.csv");
    let p2 = dir.path().join("b.csv");
    let args = |p: &str| {
        vec![
            "study".to_string(), "--xi".into(), "1.5+0.5i".into(),
            "--n-list".into(), "20,40,80".into(), "--out".into(), p.to_string(),
        ]
    };
    let a1 = args(p1.to_str().unwrap());
    let run1 = fig8(&a1.iter().map(String::as_str).collect::<Vec<_>>());
    let a2 = args(p2.to_str().unwrap());
    let run2 = fig8_env(
        &a2.iter().map(String::as_str).collect::<Vec<_>>(),
        "FIG8_THREADS",
        "2",
    );
    assert!(run1.status.success() && run2.status.success());
    // stdout echoes the differing --out path, so compare the tables
    assert_eq!(
        std::fs::read(&p1).unwrap(),
        std::fs::read(&p2).unwrap(),
        "CSV bytes differ across runs/threads"
    );

    let c1 = fig8(&["classify", "--xi", "1+0.5i"]);
    let c2 = fig8_env(&["classify", "--xi", "1+0.5i"], "FIG8_THREADS", "3");
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn fig8_threads_must_be_a_positive_integer() {
    let out = fig8_env(&["classify", "--xi", "1+0.5i"], "FIG8_THREADS", "abc");
    assert_eq!(code_of(&out), 1);
    let out = fig8_env(&["classify", "--xi", "1+0.5i"], "FIG8_THREADS", "0");
    assert_eq!(code_of(&out), 1);
}

#[test]
fn config_file_sets_tolerances_and_flags_override() {
    // a point 4e-3 above the Omega boundary flips label with a fat zero band
    let b = 0.3f64;
    let a = (b.cos() + 0.504).acosh();
    let xi = format!("{a}+{b}i");

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tol.cfg");
    std::fs::write(&cfg, "# tolerances\nzero_tol = 1e-2\n").unwrap();
    let cfg = cfg.to_str().unwrap();

    let plain = json_of(&fig8(&["classify", "--xi", &xi]));
    assert_eq!(plain["label"], "GammaMinus");
    let banded = json_of(&fig8(&["classify", "--xi", &xi, "--config", cfg]));
    assert_eq!(banded["label"], "OmegaBoundary");
    let overridden = json_of(&fig8(&["classify", "--xi", &xi, "--config", cfg, "--tol", "1e-9"]));
    assert_eq!(overridden["label"], "GammaMinus");
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "quad_tol = 1e-9\nmystery = 4\n").unwrap();
    let out = fig8(&["classify", "--xi", "1+0.5i", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn selftest_passes_on_a_healthy_build() {
    let out = fig8(&["selftest"]);
    assert_eq!(code_of(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("0 failed"), "summary line present");
}
