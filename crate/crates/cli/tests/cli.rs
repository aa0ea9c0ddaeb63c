use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn cmacr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmacr"))
        .args(args)
        .output()
        .expect("spawn cmacr")
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().filter(|l| !l.starts_with('#')).skip(1).collect()
}

#[test]
fn region_df_writes_full_frontier() {
    let o = cmacr(&["region", "df", "--scenario", &scenario("fig5_gamma2_1.json")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().next().unwrap().starts_with("# generated by cmacr"));
    assert!(text.contains("# region df: decode-and-forward region"));
    assert_eq!(data_rows(&text).len(), 201);
}

#[test]
fn region_binary_noiseless_constraints() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "b.json", r#"{"scenario": {"type": "binary", "eps1": 0, "eps2": 0, "eps3": 0}}"#);
    let out = dir.path().join("b.csv");
    let o = cmacr(&["region", "binary", "--scenario", &f, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(data_rows(&text), vec!["r1,1", "r2,1", "r1+r2,1"]);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let unknown = write(
        dir.path(),
        "u.json",
        r#"{"scenario": {"type": "binary", "eps1": 0, "eps2": 0, "eps3": 0, "noise": 1}}"#,
    );
    let bad_eps = write(dir.path(), "e.json", r#"{"scenario": {"type": "binary", "eps1": 0.7, "eps2": 0, "eps3": 0}}"#);
    let missing = dir.path().join("missing.json");
    for args in [
        vec!["region", "outer", "--scenario", &scenario("binary_noiseless.json")],
        vec!["region", "binary", "--scenario", &unknown],
        vec!["region", "binary", "--scenario", &bad_eps],
        vec!["region", "binary", "--scenario", missing.to_str().unwrap()],
        vec!["rate", "df", "--p-db", "5:0:1", "--gamma2", "0.1", "--eta2", "10"],
        vec!["figure", "7"],
        vec!["no-such-command"],
    ] {
        let o = cmacr(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn empty_region_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "c.json",
        r#"{"scenario": {"type": "cognitive", "p1_db": 0, "p2_db": 0, "p3_db": 0, "r3": 40}}"#,
    );
    assert_eq!(cmacr(&["region", "cognitive-partial", "--scenario", &f]).status.code(), Some(3));
}

#[test]
fn sim_cap_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"scenario": {"type": "binary", "eps1": 0.1, "eps2": 0.1, "eps3": 0.1},
            "sim": {"n": 48, "k1": 20, "k2": 4, "num_blocks": 2, "trials": 1, "seed": 1, "relay_decoder": "xor", "cap": 16}}"#,
    );
    let o = cmacr(&["sim", "--config", &f]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn rate_sweep_has_51_rows() {
    let o = cmacr(&["rate", "lattice", "--p-db", "-10:40:1", "--gamma2", "0.1", "--eta2", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 51);
    assert_eq!(rows[0], format!("-10,{},0", 10f64.powf(-1.0)));
}

#[test]
fn figure_writes_one_file_per_curve() {
    let dir = tempfile::tempdir().unwrap();
    let o = cmacr(&["figure", "6", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    names.sort();
    assert_eq!(names, ["fig6_cf.csv", "fig6_df.csv", "fig6_lattice.csv", "fig6_upper.csv"]);
    let text = std::fs::read_to_string(dir.path().join("fig6_upper.csv")).unwrap();
    assert!(text.contains("# figure 6: "));
    assert_eq!(data_rows(&text).len(), 51);
    assert!(!text.contains('\r'));
}

fn figure_bytes(id: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = tempfile::tempdir().unwrap();
    let o = cmacr(&["figure", id, "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut files: Vec<(PathBuf, Vec<u8>)> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = std::fs::read(&p).unwrap();
            (PathBuf::from(p.file_name().unwrap()), bytes)
        })
        .collect();
    files.sort();
    files
}

#[test]
fn repeated_runs_are_byte_identical() {
    assert_eq!(figure_bytes("3"), figure_bytes("3"));
    let run = || {
        let o = cmacr(&["sim", "--config", &scenario("binary_noiseless.json")]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn noiseless_sim_report() {
    let dir = tempfile::tempdir().unwrap();
    let (json, csv) = (dir.path().join("r.json"), dir.path().join("r.csv"));
    let o = cmacr(&[
        "sim",
        "--config",
        &scenario("binary_noiseless.json"),
        "--out",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("xor: relay 0.000000"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    for key in ["relay_error_rate", "rx1_error_rate", "rx2_error_rate", "end_to_end_error_rate"] {
        assert_eq!(report[key], 0.0, "{key}");
    }
    assert_eq!(data_rows(&std::fs::read_to_string(csv).unwrap()).len(), 1);
}

#[test]
fn selftest_exit_codes() {
    let o = cmacr(&["selftest", "--verbose"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
    assert_eq!(text.lines().filter(|l| l.starts_with("  time")).count(), 5);
    let o = cmacr(&["selftest", "--hb-perturbation", "0.001"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL binary closed form"));
}
