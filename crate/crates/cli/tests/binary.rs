use std::path::Path;
use std::process::{Command, Output};

fn tpr(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tpr"))
        .args(args)
        .env("TPR_OUTPUT_DIR", out)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn presets_are_listed() {
    let dir = tempfile::tempdir().unwrap();
    let o = tpr(&["presets"], dir.path());
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["RP1", "RP2", "RP3", "RP4", "RP5", "RP6"]);
}

#[test]
fn exact_writes_samples_waves_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let o = tpr(&["exact", "rp2", "--samples", "101"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["RP2_exact.csv", "RP2_waves.json", "RP2_validation.json", "RP2_exact.gp"] {
        assert!(dir.path().join(f).is_file(), "{f} missing");
    }
    let csv = std::fs::read_to_string(dir.path().join("RP2_exact.csv")).unwrap();
    assert_eq!(csv.lines().count(), 102);
    let waves: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("RP2_waves.json")).unwrap()).unwrap();
    assert!(waves.as_array().is_some_and(|w| w.len() >= 3));
}

#[test]
fn assumed_eos_is_announced() {
    let dir = tempfile::tempdir().unwrap();
    let o = tpr(&["validate", "rp6"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("equation of state:"), "{text}");
    assert!(text.starts_with("problem RP6"));
    assert!(!stdout(&tpr(&["validate", "rp3"], dir.path())).contains("equation of state:"));
}

#[test]
fn out_flag_beats_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = tpr(&["eigen", "rp1", "--samples", "11", "--out", flag_dir.path().to_str().unwrap()], env_dir.path());
    assert!(o.status.success());
    assert!(flag_dir.path().join("RP1_eigen.csv").is_file());
    assert!(std::fs::read_dir(env_dir.path()).unwrap().next().is_none());
}

#[test]
fn simulate_and_compare_write_their_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = tpr(&["simulate", "rp5", "--cells", "100", "--model", "bn"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["RP5_muscl-pathcons-bn.csv", "RP5_muscl-pathcons-bn_ledger.json", "RP5_muscl-pathcons-bn.gp"] {
        assert!(dir.path().join(f).is_file(), "{f} missing");
    }
    let o = tpr(&["compare", "rp5", "--cells", "100", "--theta1", "1e-3", "--theta2", "1e-8"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("RP5_compare.json")).unwrap()).unwrap();
    assert!(report["differences"].as_array().is_some_and(|d| !d.is_empty()));
    assert!(stdout(&o).lines().last().is_some_and(|l| l.starts_with("agree")), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Usage errors and missing inputs.
    assert_eq!(tpr(&["simulate"], dir.path()).status.code(), Some(1));
    assert_eq!(tpr(&["simulate", "rp1", "--scheme", "weno"], dir.path()).status.code(), Some(1));
    assert_eq!(tpr(&["validate", "/nonexistent.tpr"], dir.path()).status.code(), Some(1));
    assert_eq!(tpr(&["--help"], dir.path()).status.code(), Some(0));

    // A wave pattern that cannot connect the data fails validation.
    let file = dir.path().join("bad.tpr");
    let text = rp6_with_patterns("pattern.0.left = shock 1-; shock 2-\npattern.0.right = shock 2+; shock 1+\n");
    std::fs::write(&file, text).unwrap();
    assert_eq!(tpr(&["validate", file.to_str().unwrap()], dir.path()).status.code(), Some(2));

    // Solver settings outside the stable range are refused up front.
    assert_eq!(tpr(&["simulate", "rp1", "--cells", "50", "--cfl", "3"], dir.path()).status.code(), Some(1));
}

fn rp6_with_patterns(patterns: &str) -> String {
    let base = tpr_cli::presets::text("rp6").unwrap();
    let kept: Vec<&str> = base.lines().filter(|l| !l.starts_with("pattern.")).collect();
    format!("{}\n{patterns}", kept.join("\n"))
}
