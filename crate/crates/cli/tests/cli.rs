use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arrangements"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

struct Work {
    dir: TempDir,
}

impl Work {
    fn new() -> Self {
        Work {
            dir: TempDir::new().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn gen(&self, spec: &str, name: &str) -> String {
        let p = self.path(name);
        let out = run(&["gen", spec, p.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        p.to_str().unwrap().to_string()
    }
}

fn hyperplane_count(path: &Path) -> usize {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["hyperplanes"].as_array().unwrap().len()
}

/// Index of ker x_1 in a stored arrangement.
fn coordinate_hyperplane(path: &Path) -> usize {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let is_zero = |c: &Value| c["coeffs"].as_array().unwrap().iter().all(|q| q == "0");
    v["hyperplanes"]
        .as_array()
        .unwrap()
        .iter()
        .position(|row| row.as_array().unwrap()[1..].iter().all(is_zero))
        .expect("arrangement contains ker x_1")
}

#[test]
fn gen_writes_family_members() {
    let w = Work::new();
    let a = w.gen("intermediate:r=3,l=3,k=0", "a.json");
    assert_eq!(hyperplane_count(Path::new(&a)), 9);
    let b = w.gen("boolean:l=4", "b.json");
    assert_eq!(hyperplane_count(Path::new(&b)), 4);
    let out = run(&["gen", "intermediate:r=3,l=3,k=5"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("k = 5"));
    let out = run(&["gen", "nonsense:l=2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn gen_without_destination_prints_the_file() {
    let out = run(&["gen", "braid:l=3"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["hyperplanes"].as_array().unwrap().len(), 3);
}

#[test]
fn charpoly_reports() {
    let w = Work::new();
    let b = w.gen("boolean:l=3", "b.json");
    let r = json(&["charpoly", &b]);
    assert_eq!(r["result"]["chi"]["factored"], "(t-1)^3");
    assert_eq!(r["result"]["roots"], serde_json::json!([1, 1, 1]));
    assert_eq!(r["result"]["flat_counts"], serde_json::json!([1, 3, 3, 1]));

    let g = w.gen("intermediate:r=3,l=3,k=0", "g.json");
    assert_eq!(
        json(&["charpoly", &g])["result"]["roots"],
        serde_json::json!([1, 4, 4])
    );
    let a = w.gen("intermediate:r=3,l=3,k=1", "a.json");
    let r = json(&["charpoly", &a]);
    assert_eq!(r["result"]["roots"], serde_json::json!([1, 4, 5]));
    assert_eq!(
        r["result"]["chi"]["coefficients"],
        serde_json::json!([-20, 29, -10, 1])
    );
    assert_eq!(r["arrangement"]["hyperplanes"], 10);

    let text = run(&["charpoly", &b, "--text"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("roots: {1,1,1}"));
}

#[test]
fn report_field_order_is_fixed() {
    let w = Work::new();
    let a = w.gen("braid:l=3", "a.json");
    let out = run(&["charpoly", &a, "--json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(pos("command") < pos("arrangement"));
    assert!(pos("arrangement") < pos("result"));
    assert!(pos("result") < pos("elapsed_ms"));
    assert!(pos("chi") < pos("roots"));
    assert!(pos("roots") < pos("flat_counts"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let w = Work::new();
    let a = w.gen("intermediate:r=3,l=3,k=2", "a.json");
    for mode in ["divisional", "inductive", "hereditary-divisional"] {
        let mut r1 = json(&["check", &a, "--mode", mode]);
        let mut r2 = json(&["check", &a, "--mode", mode]);
        r1["elapsed_ms"] = Value::Null;
        r2["elapsed_ms"] = Value::Null;
        assert_eq!(r1, r2, "{mode}");
    }
}

#[test]
fn check_expectations_and_exit_codes() {
    let w = Work::new();
    let g = w.gen("intermediate:r=3,l=3,k=0", "g.json");
    let a41 = w.gen("intermediate:r=3,l=4,k=1", "a41.json");
    let braid4 = w.gen("braid:l=4", "braid4.json");

    assert_eq!(
        code(&run(&[
            "check",
            &g,
            "--mode",
            "divisional",
            "--expect",
            "false"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "check",
            &a41,
            "--mode",
            "inductive",
            "--expect",
            "false"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "check",
            &braid4,
            "--mode",
            "hereditary-inductive",
            "--expect",
            "true"
        ])),
        0
    );
    assert_eq!(
        code(&run(&[
            "check",
            &g,
            "--mode",
            "divisional",
            "--expect",
            "true"
        ])),
        2
    );
    assert_eq!(code(&run(&["check", &g, "--mode", "divisional"])), 0);
    assert_eq!(
        code(&run(&[
            "check",
            "/nonexistent.json",
            "--mode",
            "divisional"
        ])),
        1
    );
    assert_eq!(code(&run(&["check", &g, "--mode", "sideways"])), 1);
}

#[test]
fn check_payloads() {
    let w = Work::new();
    let a = w.gen("intermediate:r=3,l=3,k=1", "a.json");
    let r = json(&["check", &a, "--mode", "divisional"]);
    assert_eq!(r["result"]["verdict"], true);
    assert_eq!(r["result"]["certificate"]["kind"], "division");
    assert_eq!(r["result"]["exponents"], serde_json::json!([1, 4, 5]));
    assert!(r["result"]["failing_flats"].is_null());

    let g = w.gen("intermediate:r=3,l=3,k=0", "g.json");
    let r = json(&["check", &g, "--mode", "hereditary-divisional"]);
    assert_eq!(r["result"]["verdict"], false);
    let failing = r["result"]["failing_flats"].as_array().unwrap();
    assert_eq!(failing[0]["hyperplanes"], serde_json::json!([]));
    assert_eq!(failing[0]["dim"], 3);
    assert!(r["result"]["certificate"].is_null());
}

#[test]
fn certificate_round_trip() {
    let w = Work::new();
    let a = w.gen("intermediate:r=3,l=3,k=1", "a.json");
    let cert = w.path("cert.json");
    let c = cert.to_str().unwrap();
    assert_eq!(
        code(&run(&[
            "check",
            &a,
            "--mode",
            "divisional",
            "--cert-out",
            c
        ])),
        0
    );
    assert_eq!(code(&run(&["verify-cert", &a, c])), 0);

    let other = w.gen("intermediate:r=3,l=3,k=2", "other.json");
    let out = run(&["verify-cert", &other, c, "--json"]);
    assert_eq!(code(&out), 1);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["result"]["valid"], false);
    assert_eq!(r["result"]["failed_step"], 0);

    let text = std::fs::read_to_string(&cert).unwrap();
    let truncated = w.path("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let out = run(&["verify-cert", &a, truncated.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed certificate"));

    let ind = w.path("ind.json");
    let i = ind.to_str().unwrap();
    assert_eq!(
        code(&run(&["check", &a, "--mode", "inductive", "--cert-out", i])),
        0
    );
    assert_eq!(code(&run(&["verify-cert", &a, i])), 0);
}

#[test]
fn cert_out_requires_a_certificate() {
    let w = Work::new();
    let g = w.gen("intermediate:r=3,l=3,k=0", "g.json");
    let c = w.path("c.json");
    let out = run(&[
        "check",
        &g,
        "--mode",
        "divisional",
        "--cert-out",
        c.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    assert!(!c.exists());
}

#[test]
fn constructions() {
    let w = Work::new();
    let a = w.gen("intermediate:r=3,l=3,k=1", "a.json");
    let h = coordinate_hyperplane(Path::new(&a)).to_string();
    let res = w.path("res.json");
    let r = json(&[
        "restrict",
        &a,
        "--selector",
        &h,
        "--out",
        res.to_str().unwrap(),
    ]);
    assert_eq!(r["result"]["output"]["hyperplanes"], 5);
    assert_eq!(hyperplane_count(&res), 5);
    assert_eq!(
        json(&["charpoly", res.to_str().unwrap()])["result"]["roots"],
        serde_json::json!([1, 4])
    );

    let a41 = w.gen("intermediate:r=3,l=4,k=1", "a41.json");
    let loc = w.path("loc.json");
    let r = json(&[
        "localize",
        &a41,
        "--selector",
        "example-2.9",
        loc.to_str().unwrap(),
    ]);
    assert_eq!(r["result"]["output"]["hyperplanes"], 9);
    assert_eq!(r["result"]["flat"]["dim"], 1);

    let b3 = w.gen("braid:l=3", "b3.json");
    for i in 0..3 {
        let del = w.path(&format!("del{i}.json"));
        let r = json(&[
            "delete",
            &b3,
            "--selector",
            &i.to_string(),
            del.to_str().unwrap(),
        ]);
        assert_eq!(r["result"]["output"]["hyperplanes"], 2);
    }

    let closure = json(&[
        "localize",
        &b3,
        "--selector",
        "0,1",
        w.path("c.json").to_str().unwrap(),
    ]);
    assert_eq!(
        closure["result"]["flat"]["hyperplanes"],
        serde_json::json!([0, 1, 2])
    );
    assert_eq!(closure["result"]["output"]["hyperplanes"], 3);
}

#[test]
fn construction_errors() {
    let w = Work::new();
    let b3 = w.gen("braid:l=3", "b3.json");
    let out = w.path("o.json");
    let o = out.to_str().unwrap();
    assert_eq!(code(&run(&["restrict", &b3, "--selector", "7", o])), 1);
    assert_eq!(code(&run(&["restrict", &b3, "--selector", "0,x", o])), 1);
    assert_eq!(code(&run(&["delete", &b3, "--selector", "0,1", o])), 1);
    assert_eq!(
        code(&run(&["localize", &b3, "--selector", "example-2.9", o])),
        1
    );
    assert!(!out.exists());
}

#[test]
fn products() {
    let w = Work::new();
    let b2 = w.gen("boolean:l=2", "b2.json");
    let br3 = w.gen("braid:l=3", "br3.json");
    let p = w.path("p.json");
    let r = json(&["product", &b2, &br3, p.to_str().unwrap()]);
    assert_eq!(r["result"]["output"]["dim"], 5);
    assert_eq!(r["result"]["output"]["hyperplanes"], 5);
    let chi = json(&["charpoly", p.to_str().unwrap()]);
    // (t-1)^2 · t(t-1)(t-2)
    assert_eq!(chi["result"]["chi"]["factored"], "t(t-1)^3(t-2)");

    let empty = w.path("empty.json");
    std::fs::write(&empty, r#"{"order": 1, "dim": 0, "hyperplanes": []}"#).unwrap();
    let q = w.path("q.json");
    json(&[
        "product",
        &br3,
        empty.to_str().unwrap(),
        q.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(&q).unwrap(),
        std::fs::read_to_string(&br3).unwrap()
    );

    let mixed = w.path("mixed.json");
    let a3 = w.gen("intermediate:r=3,l=2,k=0", "a3.json");
    let a4 = w.gen("intermediate:r=4,l=2,k=0", "a4.json");
    let r = json(&["product", &a3, &a4, mixed.to_str().unwrap()]);
    assert_eq!(r["result"]["output"]["order"], 12);
}

#[test]
fn bad_input_files() {
    let w = Work::new();
    let bad = w.path("bad.json");
    std::fs::write(&bad, r#"{"order": 1, "dim": 2, "hyperplanes": [["1"]]}"#).unwrap();
    let out = run(&["charpoly", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 0"));
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&run(&["charpoly", bad.to_str().unwrap()])), 1);
}

#[test]
fn timeout_aborts_with_exit_one() {
    let w = Work::new();
    let a = w.gen("intermediate:r=3,l=4,k=1", "a.json");
    let out = run(&["check", &a, "--mode", "inductive", "--timeout-seconds", "0"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("time limit"));
    assert_eq!(
        code(&run(&[
            "check",
            &a,
            "--mode",
            "divisional",
            "--timeout-seconds",
            "-1"
        ])),
        1
    );
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["check", "--help"])), 0);
    assert_eq!(code(&run(&[])), 1);
}
