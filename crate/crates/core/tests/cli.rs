use std::path::Path;
use std::process::{Command, Output};

fn tomo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tomo"))
        .args(args)
        .env_remove("TOMO_THREADS")
        .output()
        .expect("spawn tomo")
}

fn data_rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    lines.next().expect("header row");
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn out_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

#[test]
fn sweep_writes_four_tables_of_27_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = tomo(&["talbot", "sweep", "--out", &out_arg(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["tei_position", "svne", "tei_discrete", "i_d"] {
        let path = dir.path().join(format!("{name}.csv"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# tomo "));
        assert!(text.contains(&format!("# indicator = {name}")));
        assert!(text.lines().any(|l| l == "D,R,value"));
        let rows = data_rows(&path);
        assert_eq!(rows.len(), 27, "{name}");
        let last = rows.last().unwrap();
        assert_eq!(last[0], "10");
        assert_eq!(last[1], "1.000000000000e+00");
        let v: f64 = last[2].parse().unwrap();
        match name {
            "tei_position" | "svne" | "tei_discrete" => assert!((v - 10f64.log2()).abs() < 0.02),
            _ => assert!(v > 2.0),
        }
    }
    assert!(dir.path().join("report.json").exists());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let st = tomo(&["talbot", "sweep", "--D", "2,5,10", "--R", "0.9998,1", "--threads", "3", "--out", &out_arg(dir.path())]);
        assert!(st.status.success());
        let st = tomo(&["biphoton", "slice", "--n-grid", "256", "--threads", "3", "--out", &out_arg(dir.path())]);
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
    }
    for name in ["tei_position.csv", "svne.csv", "tei_discrete.csv", "i_d.csv", "w_alpha.csv", "w_beta.csv", "w_diff.csv", "report.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(x == y, "{name} differs between runs");
    }
}

#[test]
fn thread_count_does_not_change_values() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, threads) in [(&a, "1"), (&b, "4")] {
        let st = tomo(&["biphoton", "slice", "--n-grid", "256", "--threads", threads, "--out", &out_arg(dir.path())]);
        assert!(st.status.success());
    }
    let strip = |p: &Path| -> Vec<String> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("# threads"))
            .map(str::to_string)
            .collect()
    };
    assert_eq!(strip(&a.path().join("w_beta.csv")), strip(&b.path().join("w_beta.csv")));
    assert_eq!(strip(&a.path().join("report.csv")), strip(&b.path().join("report.csv")));
}

#[test]
fn density_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = tomo(&["talbot", "density", "--out", &out_arg(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rho = data_rows(&dir.path().join("rho_a.csv"));
    assert_eq!(rho.len(), 100);
    let trace: f64 = rho.iter().filter(|r| r[0] == r[1]).map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((trace - 1.0).abs() < 1e-11);
    let p = data_rows(&dir.path().join("p_a1_b1.csv"));
    let total: f64 = p.iter().map(|r| r[2].parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() < 1e-11);

    let dir = tempfile::tempdir().unwrap();
    let out = tomo(&["talbot", "density", "--D", "6", "--R", "1", "--out", &out_arg(dir.path())]);
    assert!(out.status.success());
    for r in data_rows(&dir.path().join("rho_a.csv")) {
        let v: f64 = r[2].parse().unwrap();
        let want = if r[0] == r[1] { 1.0 / 6.0 } else { 0.0 };
        assert!((v - want).abs() < 1e-12);
    }
}

#[test]
fn biphoton_slice_grids_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out = tomo(&["biphoton", "slice", "--n-grid", "256", "--oracle", "--out", &out_arg(dir.path())]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["w_alpha", "w_beta", "w_diff", "w_alpha_oracle", "w_beta_oracle"] {
        let path = dir.path().join(format!("{name}.csv"));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("# axis t_s = t_i = ["), "{name}");
        assert_eq!(data_rows(&path).len(), 256 * 256, "{name}");
    }
    let report = data_rows(&dir.path().join("report.csv"));
    let get = |q: &str, s: &str| -> f64 {
        report.iter().find(|r| r[0] == q && r[1] == s).unwrap()[2].parse().unwrap()
    };
    assert!(get("tei_time", "alpha") > get("tei_time", "beta"));
    assert!(get("oracle_linf", "alpha") <= 1e-3);
    assert!(get("oracle_linf", "beta") <= 1e-3);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["reports"].as_array().unwrap().len(), 2);
    assert!(json["reports"][0]["timing_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    std::fs::write(&conf, "# small sweep\nD = 3, 4\nR = 1\nfloat_format = %.6e\n").unwrap();
    let out_dir = dir.path().join("o");
    let out = tomo(&["talbot", "sweep", "--config", conf.to_str().unwrap(), "--D", "5", "--out", out_dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = data_rows(&out_dir.join("svne.csv"));
    assert_eq!(rows, vec![vec!["5".to_string(), "1.000000e+00".into(), "2.321928e+00".into()]]);
}

#[test]
fn shipped_calibrated_config_parses() {
    let conf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/biphoton_calibrated.conf");
    let map = tomo_core::cli::read_config_file(&conf).unwrap();
    let mut cfg = tomo_core::cli::RunConfig::default();
    cfg.apply(&map).unwrap();
    assert_eq!(cfg.biphoton.n_teeth, 9);
    assert_eq!(cfg.window.n_grid, 4096);
    assert!((cfg.window.half_width * cfg.biphoton.delta_omega - 10.0).abs() < 1e-9);
}

#[test]
fn exit_codes() {
    assert_eq!(tomo(&[]).status.code(), Some(1));
    assert_eq!(tomo(&["talbot", "sweep", "--bogus"]).status.code(), Some(1));
    assert_eq!(tomo(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let o = out_arg(dir.path());
    assert_eq!(tomo(&["talbot", "sweep", "--D", "13", "--out", &o]).status.code(), Some(1));
    assert_eq!(tomo(&["talbot", "density", "--D", "3,4", "--out", &o]).status.code(), Some(1));
    assert_eq!(tomo(&["biphoton", "slice", "--window-T", "1e-12", "--out", &o]).status.code(), Some(1));
    // step above a sixteenth of the comb period
    assert_eq!(tomo(&["biphoton", "slice", "--n-grid", "32", "--out", &o]).status.code(), Some(2));

    let missing = dir.path().join("nope.conf");
    assert_eq!(tomo(&["selftest", "--config", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn selftest_passes_and_injected_coarse_grid_fails() {
    let out = tomo(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["passed"], true);
    let checks = summary["checks"].as_array().unwrap();
    assert!(checks.len() >= 10);
    assert!(checks.iter().all(|c| c["name"].is_string() && c["passed"].is_boolean()));

    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("coarse.conf");
    std::fs::write(&conf, "selftest_grid_scale = 200\n").unwrap();
    let out = tomo(&["selftest", "--config", conf.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["passed"], false);
    let failed: Vec<&str> = summary["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"gaussian_mi_analytic"), "{failed:?}");
}

#[test]
fn threads_env_is_honoured_and_validated() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_tomo"))
        .args(["talbot", "sweep", "--D", "2", "--R", "1", "--out", &out_arg(dir.path())])
        .env("TOMO_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_tomo"))
        .args(["talbot", "sweep", "--D", "2", "--R", "1", "--out", &out_arg(dir.path())])
        .env("TOMO_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("svne.csv")).unwrap();
    assert!(text.contains("# threads = 2"));
}
