use std::process::{Command, Output};

use serde_json::Value;

fn pnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pnc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn assert_usage_error(o: &Output) {
    assert_eq!(o.status.code(), Some(2), "{}", stderr(o));
    assert_eq!(stderr(o).lines().count(), 1, "{}", stderr(o));
}

#[test]
fn field_json() {
    let o = pnc(&["field", "--q", "2+i"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 5);
    assert_eq!(v["norm"], 5);
    assert!((v["mu"].as_f64().unwrap() - 0.8f64.sqrt()).abs() < 1e-12);
}

#[test]
fn validation_errors_exit_two() {
    let o = pnc(&["field", "--q", "2"]);
    assert_usage_error(&o);
    assert!(stderr(&o).contains("q is not a Gaussian prime"));
    for args in [
        &["field", "--q", "2+x"][..],
        &["field"],
        &["verify", "--q", "3", "--suite", "bogus"],
        &["lmin", "--q", "3", "--eta", "nan"],
        &["cosets", "--q", "3", "--alpha", "3", "--beta", "1"],
        &["voronoi", "--q", "3", "--resolution", "1"],
        &[
            "simulate",
            "--q",
            "2+i",
            "--hA",
            "1",
            "--hB",
            "0",
            "--snr-db",
            "10",
            "--mapping",
            "1,1",
        ],
        &[
            "simulate",
            "--q",
            "2+i",
            "--hA",
            "1",
            "--snr-db",
            "10",
            "--mapping",
            "1",
        ],
        &["compare", "--q", "2+i", "--hA", "1", "--snr-sweep", "1:0:3"],
        &["nope"],
    ] {
        assert_usage_error(&pnc(args));
    }
}

#[test]
fn dual_map() {
    let o = pnc(&["dual-map", "--q", "2", "--dA", "1+i"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "NO_DUAL_MAPPING");
    let v: Value = serde_json::from_str(&stdout(&pnc(&["dual-map", "--q", "3", "--dA", "1", "--dB", "-1-i"]))).unwrap();
    assert_eq!(v["alpha"], serde_json::json!([1, 1]));
    assert!(v["matrix"].is_array());
}

#[test]
fn verify_suites() {
    for (q, suite, needle) in [
        ("3", "theorem2", ""),
        ("1+i", "cosets", "2 classes of 2"),
        ("3", "qcriteria", ""),
    ] {
        let o = pnc(&["verify", "--q", q, "--suite", suite]);
        let out = stdout(&o);
        assert!(o.status.success(), "{out}");
        assert!(out.starts_with("PASS"), "{out}");
        assert_eq!(out.lines().last().unwrap(), "PASS");
        assert!(out.contains(needle));
    }
    let o = pnc(&["verify", "--q", "1+i", "--suite", "symmetry"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().last().unwrap(), "FAIL");
}

#[test]
fn voronoi_csv_is_deterministic() {
    let args = ["voronoi", "--q", "2+i", "--resolution", "30", "--radius", "1.5"];
    let a = stdout(&pnc(&args));
    assert_eq!(a, stdout(&pnc(&args)));
    assert_eq!(a.lines().next().unwrap(), "eta_re,eta_im,value,gen_dA,gen_dB,on_edge");
    assert_eq!(a.lines().count(), 1 + 30 * 30);

    let dir = std::env::temp_dir().join(format!("pnc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("surface.csv");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(pnc(&with_out).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn every_subcommand_has_help() {
    for sub in [
        "field",
        "cosets",
        "dual-map",
        "chardiffs",
        "gains",
        "lmin",
        "voronoi",
        "adjacency",
        "simulate",
        "compare",
        "verify",
    ] {
        let o = pnc(&[sub, "--help"]);
        assert!(o.status.success(), "{sub}");
        assert!(stdout(&o).contains("Usage: pnc"), "{sub}");
    }
}

#[test]
fn json_line_outputs() {
    let out = stdout(&pnc(&["chardiffs", "--q", "2+i"]));
    assert_eq!(out.lines().count(), 22);
    for line in out.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v.get("char").is_some() && v.get("eta").is_some());
    }
    let out = stdout(&pnc(&["gains", "--q", "3", "--radius", "1"]));
    let first: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(first["eta"], serde_json::json!([0.0, 0.0]));
    let last: Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert!(last["eta"].is_null());

    let v: Value = serde_json::from_str(&stdout(&pnc(&["lmin", "--q", "3", "--eta", "1+i"]))).unwrap();
    assert_eq!(v["lmin"], 0.0);
    let v: Value = serde_json::from_str(&stdout(&pnc(&["adjacency", "--q", "2+i"]))).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 22);
}

#[test]
fn simulate_and_compare() {
    let args = [
        "simulate",
        "--q",
        "2+i",
        "--hA",
        "1.1+i",
        "--snr-db",
        "12",
        "--mapping",
        "i,-i",
        "--trials",
        "20000",
    ];
    let o = pnc(&args);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for k in ["trials", "errors", "ser", "ci95"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["trials"], 20000);

    let out = stdout(&pnc(&[
        "compare",
        "--q",
        "2+i",
        "--hA",
        "1.1+i",
        "--snr-sweep",
        "10:5:15",
        "--trials",
        "2000",
    ]));
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "snr_db,mapping,ser,ci95,dmin,dmin_argmax,voronoi_optimal"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2 * 4);
    assert!(rows[0].starts_with("10,\"-1,1\""));
    assert!(rows[0].ends_with("true,true"));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = [
        "simulate",
        "--q",
        "3",
        "--hA",
        "0.4+0.9i",
        "--snr-db",
        "8",
        "--mapping",
        "1+i,1",
        "--trials",
        "20000",
    ];
    let run = |threads: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_pnc"))
            .args(args)
            .env("PNC_THREADS", threads)
            .output()
            .unwrap();
        assert!(o.status.success());
        stdout(&o)
    };
    assert_eq!(run("1"), run("3"));
    let o = Command::new(env!("CARGO_BIN_EXE_pnc"))
        .args(args)
        .env("PNC_THREADS", "zero")
        .output()
        .unwrap();
    assert_usage_error(&o);
}
