use coriolis_kp::cli::run;
use std::path::Path;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("coriolis-kp").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn regime_parameters() {
    let (code, out, _) = call(&["regime", "--mu", "0.04", "--regime", "rkp"]);
    assert_eq!(code, 0);
    assert!(out.contains("ε=0.04 γ=0.2 rot=0.2"), "{out}");
    let (code, out, _) = call(&["regime", "--mu", "0.04", "--regime", "kp"]);
    assert_eq!(code, 0);
    assert!(out.contains("ε=0.04 γ=0.2 rot=0.04"), "{out}");
    let (code, out, _) = call(&["regime", "--gamma-class", "mu", "--rot-class", "mu"]);
    assert_eq!(code, 0);
    assert!(out.contains("kdv"), "{out}");
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = call(&["compare", "--config", "missing.cfg"]);
    assert_eq!(code, 1);
    assert!(err.contains("missing.cfg"), "{err}");
    assert_eq!(call(&["frobnicate"]).0, 1);
    assert_eq!(call(&["sweep", "--bogus"]).0, 1);
    assert_eq!(call(&["compare", "--profile", "square_wave"]).0, 1);
    assert_eq!(call(&["regime", "--regime", "rkp", "--mu", "0.9"]).0, 1);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn cavitating_data_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _, err) = call(&[
        "compare",
        "--regime",
        "kp",
        "--mu",
        "0.04",
        "--nx",
        "32",
        "--ny",
        "32",
        "--t0",
        "0.1",
        "--amplitude",
        "60",
        "--out",
        out,
    ]);
    assert_eq!(code, 2, "{err}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("compare.json")).unwrap())
            .unwrap();
    assert_eq!(report["partial"], true);
}

#[test]
fn sweep_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("runs");
    let (code, _, err) = call(&[
        "sweep",
        "--regime",
        "kdv",
        "--mu",
        "0.04,0.02,0.01",
        "--nx",
        "64",
        "--ny",
        "16",
        "--t0",
        "0.2",
        "--samples",
        "4",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(out.join("sweep.csv")).unwrap();
    assert!(csv.starts_with("regime,mu,t,error_linf,bound,ratio"));
    assert_eq!(csv.lines().count(), 1 + 3 * 5);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["mu_list"].as_array().unwrap().len(), 3);
    assert!(report["slope_p"].is_number());
    assert!(Path::new(&out.join("run.log")).exists());
}

#[test]
fn residual_and_probe_write_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _, err) = call(&[
        "residual",
        "--regime",
        "rkp",
        "--mu",
        "0.04",
        "--nx",
        "32",
        "--ny",
        "32",
        "--t0",
        "0.2",
        "--k-model",
        "kp",
        "--out",
        out,
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(dir.path().join("residual.json").exists());
    let (code, _, err) = call(&[
        "probe", "--nx", "32", "--ny", "32", "--k1", "gaussian", "--out", out,
    ]);
    assert_eq!(code, 0, "{err}");
    let csv = std::fs::read_to_string(dir.path().join("probe.csv")).unwrap();
    assert!(csv.starts_with("t,h2_norm,ratio"));
}

#[test]
fn solve_writes_scalar_and_boussinesq_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _, err) = call(&[
        "solve",
        "--regime",
        "ostrovsky",
        "--nx",
        "32",
        "--ny",
        "32",
        "--t0",
        "0.1",
        "--out",
        out,
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(dir.path().join("scalar.csv").exists());
    let (code, _, err) = call(&[
        "solve",
        "--regime",
        "boussinesq",
        "--mu",
        "0.04",
        "--nx",
        "32",
        "--ny",
        "32",
        "--t0",
        "0.1",
        "--out",
        out,
    ]);
    assert_eq!(code, 0, "{err}");
}
