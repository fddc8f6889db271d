use std::path::Path;
use std::process::{Command, Output};

fn plap(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plap"))
        .args(args)
        .current_dir(dir)
        .env_remove("PLAP_SEED")
        .output()
        .expect("run plap")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn value(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .parse()
        .unwrap()
}

#[test]
fn eigen_prints_lambda1_and_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = plap(&["eigen", "--p", "2", "--cells", "1024", "--out-dir", "out"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let l1 = value(&stdout(&o), "lambda1");
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((l1 - pi2).abs() < 1e-3 * pi2);
    let csv = std::fs::read_to_string(dir.path().join("out/eigenfunction.csv")).unwrap();
    assert!(csv.starts_with("x,value\n"));
    assert_eq!(csv.lines().count(), 1026);
    let cfg: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/effective_config.json")).unwrap()).unwrap();
    assert_eq!(cfg["cells"], 1024);
    assert_eq!(cfg["p"], 2.0);
    assert_eq!(cfg["seed"], 0);
}

#[test]
fn invalid_inputs_exit_1_with_the_precondition_name() {
    let dir = tempfile::tempdir().unwrap();
    let o = plap(&["eigen", "--p", "0.5"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid-exponent"), "{}", stderr(&o));
    let o = plap(&["eigen", "--p", "2", "--cells", "3"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid-domain"));
    let o = plap(&["solve", "linear-concave", "--lambda-frac", "1.2", "--cells", "128"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("lambda-too-large"));
    let o = plap(&["solve", "concave-convex", "--cells", "64"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid-params"));
    let o = plap(&["sweep", "--q-list", ""], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid-params"));
    let o = plap(&["frobnicate"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn concave_convex_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["solve", "concave-convex", "--p", "2", "--q", "1.5", "--r", "3", "--cells", "256"];
    let mut ok = args.to_vec();
    ok.extend(["--Lambda", "0.5", "--out-dir", "ok", "--verbose"]);
    let o = plap(&ok, dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for f in ["solution.csv", "report.json", "trace.csv", "effective_config.json"] {
        assert!(dir.path().join("ok").join(f).exists(), "{f}");
    }
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ok/report.json")).unwrap()).unwrap();
    assert_eq!(report["status"], "converged");
    assert_eq!(report["with_supersolution"], true);

    let mut big = args.to_vec();
    big.extend(["--Lambda", "1e9", "--out-dir", "big"]);
    let o = plap(&big, dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("status=diverged"));

    let mut tight = args.to_vec();
    tight.extend(["--Lambda", "11.6", "--max-outer-iters", "30", "--out-dir", "tight"]);
    let o = plap(&tight, dir.path());
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn iterate_writes_trace() {
    let dir = tempfile::tempdir().unwrap();
    let o = plap(&["iterate", "--Lambda", "1", "--cells", "128"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert!(trace.starts_with("k,sup_norm,residual\n"));
    let k = value(&stdout(&o), "k_final") as usize;
    assert_eq!(trace.lines().count(), k + 2);
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.cfg"), "# eigen run\np = 3\ncells = 64\nout-dir = from_file\n").unwrap();
    let o = plap(&["--config", "run.cfg", "eigen", "--cells", "128"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let cfg: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("from_file/effective_config.json")).unwrap())
            .unwrap();
    assert_eq!(cfg["p"], 3.0);
    assert_eq!(cfg["cells"], 128);

    std::fs::write(dir.path().join("bad.cfg"), "cellz = 3\n").unwrap();
    let o = plap(&["--config", "bad.cfg", "eigen"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid-config"));
}

#[test]
fn seed_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_plap"))
        .args(["eigen", "--cells", "64", "--random-start", "--seed", "3"])
        .current_dir(dir.path())
        .env("PLAP_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let cfg: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("effective_config.json")).unwrap()).unwrap();
    assert_eq!(cfg["seed"], 11);
}

#[test]
fn sweep_outputs_and_row_errors() {
    let dir = tempfile::tempdir().unwrap();
    let o = plap(&["sweep", "--q-list", "1.6,1.8,2.5", "--cells", "128", "--jobs", "2", "--out-dir", "s"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = std::fs::read_to_string(dir.path().join("s/sweep.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    let errors = std::fs::read_to_string(dir.path().join("s/sweep_errors.csv")).unwrap();
    assert!(errors.contains("2.5") && errors.contains("invalid-params"));
    let script = std::fs::read_to_string(dir.path().join("s/sweep.gp")).unwrap();
    assert!(script.contains("'sweep.csv'"));

    let o = plap(&["sweep", "--q-list", "2.5", "--cells", "64", "--out-dir", "none"], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = plap(&["verify", "--q", "1.8", "--lambda-fracs", "0,0.5", "--cells", "256"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains("sandwich=pass") && l.contains("c_check=pass")).count(), 2);
    let csv = std::fs::read_to_string(dir.path().join("sandwich.csv")).unwrap();
    assert!(csv.starts_with("p,q,lambda,sup_norm,c_value,lower,upper,holds\n"));
}

#[test]
fn threshold_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = plap(&["threshold", "--q", "1.5", "--cells", "128"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let j: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("threshold.json")).unwrap()).unwrap();
    assert!(j["probes"].as_array().unwrap().len() >= 2);
    let emp = value(&stdout(&o), "lambda_emp");
    assert!(j["lambda_tilde"].as_f64().unwrap() <= emp && emp <= j["lambda_hat"].as_f64().unwrap());
}
