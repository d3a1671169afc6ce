use std::path::PathBuf;
use std::process::{Command, Output};

use fracwave::analysis::{classify_region, RegionClass};
use fracwave::solutions::{u_delta, Branch, FracParams};
use serde::Deserialize;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_fracwave"));
    c.env_remove("FRACWAVE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against tests/golden/<name>; FRACWAVE_BLESS=1 rewrites it.
fn golden(name: &str, args: &[&str]) {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let got = stdout(&o);
    let path = golden_path(name);
    if std::env::var_os("FRACWAVE_BLESS").is_some() {
        std::fs::write(&path, &got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(got, want, "{name} drifted from its golden copy");
}

#[test]
fn lorentzian_vertex_value() {
    golden("eval_vertex_d.csv", &["eval", "--alpha", "1", "--beta", "1", "--v", "1", "--mu", "1", "--x", "0", "--t", "1"]);
    let o = run(&["eval", "--alpha", "1", "--beta", "1", "--x", "0", "--t", "1"]);
    let line = stdout(&o).lines().nth(1).unwrap().to_string();
    let fields: Vec<&str> = line.split(',').collect();
    let u: f64 = fields[2].parse().unwrap();
    assert!((u - 0.3183099).abs() < 1e-7);
    assert_eq!(fields[3], "VertexD");
}

#[test]
fn golden_outputs() {
    golden("eval_vertex_b.csv", &["eval", "--alpha", "2", "--beta", "2", "--x", "0.3", "--t", "1.5"]);
    golden("region_e.csv", &["region", "--alpha", "1.5", "--beta", "1.5"]);
    golden("region_e.json", &["region", "--alpha", "1.5", "--beta", "1.5", "--format", "json"]);
    golden(
        "profile_heat.csv",
        &["profile", "--alpha", "1", "--beta", "2", "--t", "0.5,1", "--x-lo", "-1", "--x-hi", "1", "--n", "5"],
    );
    golden(
        "profile_serie1.csv",
        &["profile", "--alpha", "1.8", "--beta", "1.2", "--t", "1", "--x-lo", "0.5", "--x-hi", "4", "--n", "8"],
    );
    golden(
        "profile_gaussian.json",
        &[
            "profile", "--alpha", "1.5", "--beta", "1.8", "--x0", "0.3", "--t", "1", "--x-lo", "-2", "--x-hi", "2",
            "--n", "5", "--format", "json",
        ],
    );
    golden(
        "nodes_complementary.csv",
        &["nodes", "--alpha", "2", "--beta", "1", "--t", "0.5,1,2", "--x-lo", "0.1", "--x-hi", "10", "--n", "400"],
    );
}

#[test]
fn peak_laws_are_archived() {
    golden("peaks_1.5_2.csv", &["peaks", "--alpha", "1.5", "--beta", "2"]);
    golden("peaks_1.99_2.csv", &["peaks", "--alpha", "1.99", "--beta", "2"]);
}

#[test]
fn csv_schemas() {
    let header = |args: &[&str]| stdout(&run(args)).lines().next().unwrap().to_string();
    assert_eq!(header(&["eval", "--alpha", "1.5", "--beta", "1.5", "--x", "1", "--t", "1"]), "t,x,u,branch");
    assert_eq!(
        header(&["profile", "--alpha", "1.5", "--beta", "1.5", "--t", "1", "--x-lo", "0", "--x-hi", "1", "--n", "3"]),
        "t,x,u,branch"
    );
    assert_eq!(header(&["region", "--alpha", "1.2", "--beta", "1.9"]), "alpha,beta,region");
    let peaks = stdout(&run(&["peaks", "--alpha", "1.5", "--beta", "2", "--x-hi", "6", "--n", "121"]));
    let lines: Vec<&str> = peaks.lines().collect();
    assert_eq!(lines[0], "t,x_max");
    assert_eq!(lines.len(), 1 + 8 + 1);
    let fit: serde_json::Value = serde_json::from_str(lines[9]).unwrap();
    assert!(fit["exponent"].is_f64() && fit["c"].is_f64());
    assert!(!peaks.contains('\r'));
}

#[derive(Deserialize)]
struct EvalJson {
    x: f64,
    t: f64,
    u: f64,
    branch: Branch,
}

#[test]
fn json_round_trips_bit_for_bit() {
    for (a, b, x, t) in [(1.8, 1.2, 1.7, 0.9), (1.3, 1.7, 0.4, 2.0), (1.0, 2.0, -0.3, 0.2), (1.5, 1.5, 2.5, 1.0)] {
        let args: Vec<String> = ["eval", "--alpha", &a.to_string(), "--beta", &b.to_string()]
            .into_iter()
            .map(String::from)
            .chain(["--x".into(), x.to_string(), "--t".into(), t.to_string(), "--format".into(), "json".into()])
            .collect();
        let o = bin().args(&args).output().unwrap();
        assert!(o.status.success());
        let rec: EvalJson = serde_json::from_slice(&o.stdout).unwrap();
        let expect = u_delta(&FracParams::new(a, b, 1.0, 1.0).unwrap(), x, t).unwrap();
        assert_eq!(rec.u.to_bits(), expect.value.to_bits(), "({a}, {b}) at ({x}, {t})");
        assert_eq!((rec.x, rec.t, rec.branch), (x, t, expect.branch));
    }
    for (a, b) in [(1.5f64, 1.5f64), (1.25, 1.9), (2.0, 1.0), (1.7, 1.3)] {
        let o = run(&["region", "--alpha", &a.to_string(), "--beta", &b.to_string(), "--format", "json"]);
        #[derive(Deserialize)]
        struct R {
            alpha: f64,
            beta: f64,
            region: RegionClass,
        }
        let r: R = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!((r.alpha.to_bits(), r.beta.to_bits()), (a.to_bits(), b.to_bits()));
        assert_eq!(r.region, classify_region(a, b).unwrap());
    }
}

#[test]
fn exit_codes() {
    let o = run(&["eval", "--alpha", "nope", "--beta", "1", "--x", "0", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["eval", "--alpha", "2.5", "--beta", "1", "--x", "0", "--t", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["profile", "--alpha", "1.5", "--beta", "1.5", "--t", "1", "--x-lo", "1", "--x-hi", "0"]);
    assert_eq!(o.status.code(), Some(2));

    // x = 0 is a singular point of the complementary solution
    let o = run(&["eval", "--alpha", "2", "--beta", "1", "--x", "0", "--t", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let diag: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(diag["kind"], "numerical");
    assert_eq!(diag["command"], "eval");
    assert!(o.stdout.is_empty());
}

#[test]
fn validate_identities_passes() {
    let o = run(&["validate", "--suite", "identities", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: fracwave::validation::ValidationReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.entries.len(), fracwave::validation::IDENTITIES.len());
    for e in &r.entries {
        assert!(e.passed && e.max_error <= e.tolerance, "{e:?}");
    }
    let o = run(&["validate", "--suite", "identities", "--only", "no such identity"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no such identity,inf,0.0,false"));
}

#[test]
fn output_file_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let args = ["profile", "--alpha", "1.6", "--beta", "1.4", "--t", "1", "--x-lo", "-3", "--x-hi", "3", "--n", "61"];
    let o = bin().args(args).args(["--output", path.to_str().unwrap()]).output().unwrap();
    assert!(o.status.success() && o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let single = bin().args(args).env("FRACWAVE_THREADS", "1").output().unwrap();
    assert_eq!(String::from_utf8(single.stdout).unwrap(), written);
    let o = bin().args(args).env("FRACWAVE_THREADS", "zero").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
