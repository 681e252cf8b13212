use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn dqsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqsim"))
        .args(args)
        .env_remove("DQSIM_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn run_bv_optimized() {
    let r = json(&dqsim(&[
        "run",
        "bv",
        "--hidden",
        "001011",
        "--optimize",
        "--shots",
        "10000",
    ]));
    assert_eq!(r["schema"], 1);
    assert_eq!(r["circuit"]["gate_count"], 130);
    assert_eq!(r["circuit"]["depth"], 66);
    assert_eq!(r["recovered"], "001011");
    assert_eq!(r["histogram"]["counts"]["001011"], 10000);
}

#[test]
fn run_dega_five_qubits() {
    let r = json(&dqsim(&[
        "run", "dega", "--target", "01001", "--shots", "10000",
    ]));
    assert_eq!(r["circuit"]["gate_count"], 53);
    assert_eq!(r["circuit"]["depth"], 17);
    assert!((r["probabilities"]["01001"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(r["parts"].as_array().unwrap().len(), 2);
}

#[test]
fn run_dbva_zero_string() {
    let r = json(&dqsim(&[
        "run", "dbva", "--hidden", "000000", "--nodes", "2,2,2",
    ]));
    assert_eq!(r["recovered"], "000000");
    assert_eq!(r["parts"].as_array().unwrap().len(), 3);
}

#[test]
fn table_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(&path, "arity 2\n0100\n").unwrap();
    let r = json(&dqsim(&[
        "run",
        "grover",
        "--table",
        path.to_str().unwrap(),
    ]));
    assert_eq!(r["recovered"], "01");
    assert_eq!(r["circuit"]["gate_count"], 14);
    assert_eq!(r["circuit"]["depth"], 9);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let multi = dir.path().join("multi.txt");
    fs::write(&multi, "arity 2\n0110\n").unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "arity 2\n01\n").unwrap();

    assert_eq!(
        dqsim(&["run", "grover", "--table", multi.to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        dqsim(&["run", "bv", "--target", "011"]).status.code(),
        Some(3)
    );
    assert_eq!(
        dqsim(&["run", "grover", "--table", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dqsim(&["run", "bv", "--hidden", "01a"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dqsim(&["run", "dbva", "--hidden", "0101"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dqsim(&["run", "dbva", "--hidden", "0101", "--nodes", "3,3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        dqsim(&["run", "bv", "--hidden", "01", "--noise", "1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(dqsim(&["reproduce", "table-9"]).status.code(), Some(2));
    assert_eq!(
        dqsim(&["depth-table", "--max", "11"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dqsim(&["run", "bv", "--hidden", "0000000000000000000000000"])
            .status
            .code(),
        Some(4)
    );
    assert_eq!(
        dqsim(&["run", "bv", "--hidden", "000000000", "--noise", "0.01"])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn depth_table_rows() {
    let out = dqsim(&["depth-table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 27);
    let depth = |n: &str, alg: &str| -> String {
        rows.iter().find(|r| &r[0] == n && &r[1] == alg).unwrap()[3].to_string()
    };
    assert_eq!(
        (depth("5", "grover"), depth("5", "long"), depth("5", "dega")),
        ("33".into(), "33".into(), "17".into())
    );
    assert_eq!(
        (depth("4", "grover"), depth("4", "long"), depth("4", "dega")),
        ("25".into(), "25".into(), "9".into())
    );
    assert_eq!(
        (depth("2", "grover"), depth("2", "long"), depth("2", "dega")),
        ("9".into(), "17".into(), "9".into())
    );
    assert!(rows.iter().all(|r| r[5].is_empty()));
}

#[test]
fn noise_sweep_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("sweep.csv");
    let svg_path = dir.path().join("sweep.svg");
    let out = dqsim(&[
        "noise-sweep",
        "--p",
        "0,0.01",
        "-o",
        csv_path.to_str().unwrap(),
        "--chart",
        svg_path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&csv_path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        [
            "p",
            "circuit-id",
            "parameterization",
            "P(target)",
            "shots",
            "seed",
            "sampled_frequency"
        ]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    let freq = |id: &str, p: &str| -> f64 {
        rows.iter().find(|r| &r[1] == id && &r[0] == p).unwrap()[6]
            .parse()
            .unwrap()
    };
    assert!(freq("dega5", "0.01") > freq("grover5", "0.01"));
    let p0: f64 = rows
        .iter()
        .find(|r| &r[1] == "dega5" && &r[0] == "0")
        .unwrap()[3]
        .parse()
        .unwrap();
    assert!((p0 - 1.0).abs() < 1e-9);
    let svg = fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("dega5") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn noise_sweep_hidden_string_ordering() {
    let out = dqsim(&[
        "noise-sweep",
        "--fixtures",
        "bv-opt,dbva2-opt,dbva3",
        "--p",
        "0.03",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let probs: Vec<f64> = csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap()[3].parse().unwrap())
        .collect();
    assert!(probs[0] < probs[1] && probs[1] < probs[2], "{probs:?}");
}

#[test]
fn reproduce_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    for id in ["comparison", "truth-table-6q", "subfunctions-3node"] {
        let out = dqsim(&["reproduce", id, "--out-dir", d]);
        assert!(
            out.status.success(),
            "{id}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let side: Value = serde_json::from_str(
            &fs::read_to_string(dir.path().join(format!("{id}.json"))).unwrap(),
        )
        .unwrap();
        assert_eq!(side["schema"], 1);
        assert_eq!(side["passed"], true);
    }
    let cmp = fs::read_to_string(dir.path().join("comparison.csv")).unwrap();
    let lines: Vec<&str> = cmp.lines().collect();
    assert_eq!(lines[0], "circuit,nodes,result,gates,depth");
    assert_eq!(
        lines[1..],
        [
            "bv,1,001011,236,96",
            "bv-opt,1,001011,130,66",
            "dbva2,2,001011,40,14",
            "dbva2-opt,2,001011,36,11",
            "dbva3,3,001011,22,7"
        ]
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("truth-table-6q.csv"))
            .unwrap()
            .lines()
            .count(),
        65
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("subfunctions-3node.csv"))
            .unwrap()
            .lines()
            .count(),
        5
    );
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "run",
        "dega",
        "--target",
        "01001",
        "--noise",
        "0.03",
        "--trajectories",
        "--shots",
        "2000",
        "--seed",
        "7",
    ];
    let a = dqsim(&args);
    let b = dqsim(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut seq = vec!["--sequential"];
    seq.extend_from_slice(&args);
    assert_eq!(dqsim(&seq).stdout, a.stdout);

    let sweep = [
        "noise-sweep",
        "--p",
        "0.02,0.05",
        "--fixtures",
        "grover2,dbva3",
    ];
    assert_eq!(dqsim(&sweep).stdout, dqsim(&sweep).stdout);
}

#[test]
fn seed_from_environment() {
    let run = |seed: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_dqsim"));
        c.args(["run", "grover", "--target", "0110", "--shots", "500"]);
        match seed {
            Some(s) => c.env("DQSIM_SEED", s),
            None => c.env_remove("DQSIM_SEED"),
        };
        let v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["histogram"]["seed"].clone()
    };
    assert_eq!(run(None), 42);
    assert_eq!(run(Some("9")), 9);
}

#[test]
fn export_and_simulate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dbva.qc");
    let out = dqsim(&[
        "export",
        "dbva",
        "--hidden",
        "001011",
        "--nodes",
        "3,3",
        "--optimize",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(fs::read_to_string(&path).unwrap().starts_with("qubits 6\n"));
    let r = json(&dqsim(&["simulate", path.to_str().unwrap()]));
    assert_eq!(r["recovered"], "001011");
    assert_eq!(r["circuit"]["gate_count"], 36);
    assert_eq!(r["circuit"]["depth"], 11);

    let split = dir.path().join("parts");
    assert!(dqsim(&[
        "export",
        "dega",
        "--target",
        "01001",
        "--split",
        split.to_str().unwrap()
    ])
    .status
    .success());
    let r = json(&dqsim(&[
        "simulate",
        split.join("part-1.qc").to_str().unwrap(),
    ]));
    assert_eq!(r["recovered"], "001");
    assert_eq!(r["circuit"]["depth"], 17);
}
