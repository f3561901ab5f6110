use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hypercol(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hypercol"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn complete_hypergraph_piped_into_chi() {
    let gen = hypercol(&["gen", "complete", "6", "4"], "");
    assert!(gen.status.success());
    let chi = hypercol(&["chi", "--c", "3"], &stdout(&gen));
    assert_eq!(chi.status.code(), Some(0));
    let v = json(&chi);
    assert_eq!(v["chi"], 5);
    assert_eq!(v["method"], "search");
    assert_eq!(v["witness"]["colours"].as_array().unwrap().len(), 6);
}

#[test]
fn construction_chi_matches_formula() {
    let gen = hypercol(&["gen", "c42", "2", "2", "2"], "");
    for method in ["search", "auto"] {
        let v = json(&hypercol(&["chi", "--c", "4", "--method", method], &stdout(&gen)));
        assert_eq!(v["chi"], 4);
    }
    let tsv = stdout(&hypercol(&["chi", "--c", "4", "--format", "tsv"], &stdout(&gen)));
    assert_eq!(tsv.lines().nth(1).unwrap().split('\t').next(), Some("4"));
}

#[test]
fn failing_colouring_exits_one_and_names_the_edge() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"k":2,"colours":[0,0,1]}"#).unwrap();
    let tri = r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#;
    let o = hypercol(&["check", "--c", "2", "--colouring", bad.to_str().unwrap()], tri);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["strong"], false);
    assert_eq!(v["failing_edge"]["edge"], serde_json::json!([0, 1]));
    assert!(String::from_utf8_lossy(&o.stderr).contains("edge 0"));

    std::fs::write(&bad, r#"{"k":3,"colours":[0,1,2]}"#).unwrap();
    let o = hypercol(&["check", "--c", "2", "--colouring", bad.to_str().unwrap()], tri);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_two_with_one_line() {
    for input in ["{\"n\":2,\"edges\":[[0,5]]}", "not json", "{\"n\":2,\"edges\":[[]]}"] {
        let o = hypercol(&["chi", "--c", "2"], input);
        assert_eq!(o.status.code(), Some(2), "{input}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    }
    let o = hypercol(&["chi", "--c", "2"], r#"{"n":2,"edges":[[0,5]]}"#);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vertex 5"));
    assert_eq!(hypercol(&["chi"], "").status.code(), Some(2));
}

#[test]
fn input_and_output_files() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.json");
    let out = dir.path().join("out.json");
    let gen = hypercol(&["gen", "sunflower", "3", "1", "2", "--output", h.to_str().unwrap()], "");
    assert!(gen.status.success());
    assert!(stdout(&gen).is_empty());
    let o = hypercol(&["--input", h.to_str().unwrap(), "--output", out.to_str().unwrap(), "find", "sunflower", "--p", "3", "--max-kernel", "1"], "");
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["kernel"], serde_json::json!([0]));
}

#[test]
fn every_generator_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    std::fs::write(&graph, r#"{"n":3,"edges":[[1,0],[1,2]]}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["gen", "complete", "5", "3"],
        vec!["gen", "c42", "1", "2", "3"],
        vec!["gen", "kernel-aug", graph.to_str().unwrap(), "3"],
        vec!["gen", "sunflower", "4", "2", "1"],
        vec!["gen", "random", "7", "5", "2"],
        vec!["gen", "random", "7", "5", "2", "9"],
    ];
    for args in cases {
        let o = hypercol(&args, "");
        assert!(o.status.success(), "{args:?}");
        let h: hypercol::Hypergraph = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(serde_json::to_string(&h).unwrap(), stdout(&o).trim_end());
    }
    let a = stdout(&hypercol(&["gen", "random", "7", "5", "2"], ""));
    let b = stdout(&hypercol(&["gen", "random", "7", "5", "2", "0"], ""));
    assert_eq!(a, b);
}

#[test]
fn find_regions_and_split_check() {
    let h = r#"{"n":5,"edges":[[0,1,2],[0,1,3],[0,4],[2,3]]}"#;
    let o = hypercol(&["find", "bromeliad", "--b", "3"], h);
    assert!(o.status.success());
    assert_eq!(json(&o)["pool_indices"], serde_json::json!([0, 1, 2]));
    assert_eq!(hypercol(&["find", "bromeliad", "--b", "3", "--edges", "0,3"], h).status.code(), Some(1));
    assert_eq!(hypercol(&["find", "matching", "--p", "2"], h).status.code(), Some(0));
    assert_eq!(hypercol(&["find", "matching", "--p", "3"], h).status.code(), Some(1));

    let v = json(&hypercol(&["regions", "--edges", "0,1"], h));
    assert_eq!(v["blocks"].as_array().unwrap().len(), 4);
    assert_eq!(hypercol(&["split-check", "--k", "2", "--edges", "0,1"], h).status.code(), Some(0));
    assert_eq!(hypercol(&["split-check", "--k", "1", "--edges", "0,1"], h).status.code(), Some(1));
    assert_eq!(hypercol(&["regions", "--edges", "9"], h).status.code(), Some(2));
}

#[test]
fn colour_procedures() {
    let sunflower = stdout(&hypercol(&["gen", "sunflower", "4", "2", "1"], ""));
    let o = hypercol(&["colour", "--method", "thm44", "--t", "2", "--l", "2"], &sunflower);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["certificate"]["status"], "applied");
    assert!(v["colouring"]["k"].as_u64().unwrap() <= v["certificate"]["bound"].as_u64().unwrap());

    let tri = r#"{"n":3,"edges":[[0,1,2]]}"#;
    let o = hypercol(&["colour", "--method", "thm41", "--c", "3"], tri);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["certificate"]["status"], "not_applicable");
    let o = hypercol(&["colour", "--method", "thm44", "--t", "1", "--l", "1"], r#"{"n":2,"edges":[[0],[1]]}"#);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn chi_link_reports_the_worst_link() {
    let star = r#"{"n":4,"edges":[[0,1,2],[0,2,3],[0,1,3]]}"#;
    let v = json(&hypercol(&["chi-link", "--t", "1", "--l", "2", "--jobs", "3"], star));
    assert_eq!(v["value"], 3);
    assert_eq!(v["argmax"], serde_json::json!([0]));
}

#[test]
fn trace_emits_one_line_per_step() {
    let mut edges: Vec<Vec<usize>> = (0..=8).map(|i| (i..=8).collect()).collect();
    for u in 9..14 {
        for v in u + 1..14 {
            edges.push(vec![u, v]);
        }
    }
    let h = serde_json::json!({ "n": 14, "edges": edges }).to_string();
    let args = ["trace", "--t", "1", "--l", "1", "--p", "2", "--thresholds", "4,3,2,1,0", "--choice", "first"];
    let o = hypercol(&args, &h);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0]["step"], 1);
    let last = &lines[4];
    assert_eq!(last["valid"], true);
    assert_eq!(last["diagonal_reached"], true);
    assert_eq!(last["termination"]["kind"], "completed");
    assert_eq!(last["termination"]["diagonal"]["precedes"], true);

    let o = hypercol(&["trace", "--t", "1", "--l", "1", "--p", "2", "--thresholds", "3,3"], &h);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_across_job_counts() {
    let one = hypercol(&["verify"], "");
    let four = hypercol(&["verify", "--jobs", "4"], "");
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.status.code(), four.status.code());
    let text = stdout(&one);
    // Every line but the total is one criterion.
    assert_eq!(text.lines().count(), 10);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert!(failing.iter().all(|l| l.contains("  7 ")), "{failing:?}");
    let reports: Value = json(&hypercol(&["verify", "--format", "json"], ""));
    assert_eq!(reports.as_array().unwrap().len(), 9);
}
