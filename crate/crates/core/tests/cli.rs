use std::fs;
use std::process::{Command, Output};

fn tavis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tavis")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn zones_table() {
    let out = tavis(&["zones", "--atoms", "4", "--k-min", "6", "--k-max", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "K,M,r,kind,d,G\n6,6,2,remote,5,1\n6,5,1,remote,3,3\n6,4,0,remote,1,2\n");
}

#[test]
fn spectrum_rows_ascend() {
    let out = tavis(&["spectrum", "--M", "2525", "--r2", "50"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,exact,perturbative,abs_dev"));
    let exact: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(exact.len(), 51);
    assert!(exact.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn compare_leaves_undefined_branches_empty() {
    let out = tavis(&["compare", "--r2", "6", "--m-min", "0", "--m-max", "14"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[1].split(',').nth(2), Some(""));
    assert_eq!(rows.last().unwrap().split(',').nth(1), Some(""));
}

#[test]
fn json_output_carries_metadata() {
    let out = tavis(&["intensity", "--atoms", "2", "--grid", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["metadata"]["command"], "intensity");
    assert_eq!(v["metadata"]["parameters"]["atoms"], "2");
    assert_eq!(v["metadata"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# spectrum\nM = 5\nr2 = 3\n").unwrap();
    let from_file = tavis(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(stdout(&from_file).lines().count(), 5);
    let overridden = tavis(&["spectrum", "--config", cfg.to_str().unwrap(), "--r2", "1"]);
    assert_eq!(stdout(&overridden).lines().count(), 3);
}

#[test]
fn invalid_parameters_exit_with_two() {
    for args in [
        vec!["spectrum", "--r2", "-2"],
        vec!["intensity", "--kt-min", "5", "--kt-max", "1"],
        vec!["intensity", "--omega", "0"],
        vec!["zones", "--atoms", "0"],
        vec!["verify", "--suite", "nothing"],
        vec!["spectrum", "--format", "xml"],
    ] {
        let out = tavis(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unknown_config_key_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "atoms = 3\n").unwrap();
    assert_eq!(tavis(&["spectrum", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_reports_discrepancy() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verify.csv");
    let out = tavis(&["verify", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(path).unwrap();
    assert!(text.lines().skip(1).all(|l| !l.contains(",fail,")));
    assert_eq!(text.matches(",discrepancy,").count(), 1);
}

#[test]
fn verification_failure_code() {
    use tavis::cli::CliError;
    assert_eq!(CliError::VerificationFailed(1).exit_code(), 3);
    assert_eq!(CliError::Invalid(String::new()).exit_code(), 2);
}
