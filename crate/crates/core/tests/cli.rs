use std::process::{Command, Output};

use serde_json::Value;

fn tokengraph(args: &[&str], caps: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tokengraph"));
    cmd.args(args).env_remove("TOKENGRAPH_CAPS");
    if let Some(c) = caps {
        cmd.env("TOKENGRAPH_CAPS", c);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn dot_edges(dot: &str) -> Vec<(usize, usize)> {
    dot.lines()
        .filter_map(|l| l.trim().strip_suffix(';')?.split_once(" -- "))
        .map(|(a, b)| (a.parse().unwrap(), b.parse().unwrap()))
        .collect()
}

#[test]
fn stats_on_four_cycle() {
    let o = tokengraph(&["--gen", "cycle:4", "-k", "2", "stats"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vertices"], 6);
    assert_eq!(v["edges"], 8);
    assert_eq!(v["degree_set"], serde_json::json!([2, 4]));
}

#[test]
fn star_verify_passes_with_diameter_and_connectivity() {
    let o = tokengraph(&["--gen", "star:5", "-k", "2", "verify"], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let findings: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(findings.iter().all(|f| f["status"] != "fail"));
    let seqs: Vec<u64> = findings.iter().map(|f| f["seq"].as_u64().unwrap()).collect();
    assert_eq!(seqs, (0..findings.len() as u64).collect::<Vec<_>>());
    let find = |check: &str| findings.iter().find(|f| f["check"] == check && f["inputs"]["k"] == 2).unwrap();
    assert_eq!(find("star_diameter")["actual"], 4);
    assert_eq!(find("star_connectivity")["actual"], 2);
}

#[test]
fn complete_four_exports_octahedron() {
    let o = tokengraph(&["--gen", "complete:4", "-k", "2", "export", "--format", "dot"], None);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 6);
    let edges = dot_edges(&dot);
    assert_eq!(edges.len(), 12);
    let mut sorted = edges.clone();
    sorted.sort_unstable();
    assert_eq!(edges, sorted);
    // octahedron: every vertex misses exactly its complementary pair
    let mut degree = [0; 6];
    for (a, b) in &edges {
        degree[*a] += 1;
        degree[*b] += 1;
    }
    assert_eq!(degree, [4; 6]);
}

#[test]
fn star_three_exports_six_cycle() {
    let o = tokengraph(&["--gen", "star:3", "-k", "2", "export"], None);
    let dot = stdout(&o);
    assert!(dot.contains("label=\"{0,1}\""));
    let edges = dot_edges(&dot);
    assert_eq!(edges.len(), 6);
    let mut degree = [0; 6];
    for (a, b) in &edges {
        degree[*a] += 1;
        degree[*b] += 1;
    }
    assert_eq!(degree, [2; 6]);
    let mut seen = vec![0usize];
    while let Some(&v) = seen.last() {
        let next = edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .find(|w| !seen.contains(w));
        match next {
            Some(w) => seen.push(w),
            None => break,
        }
    }
    assert_eq!(seen.len(), 6);
}

#[test]
fn build_json_matches_symmetric_difference_rule() {
    let o = tokengraph(&["--gen", "cycle:4", "-k", "2", "build"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let configs: Vec<u64> = v["configs"].as_array().unwrap().iter().map(|c| c.as_u64().unwrap()).collect();
    assert_eq!(configs, [3, 5, 6, 9, 10, 12]);
    let cycle_edge = |d: u64| [0b0011, 0b0110, 0b1100, 0b1001].contains(&d);
    let mut expected = Vec::new();
    for i in 0..configs.len() {
        for j in i + 1..configs.len() {
            let diff = configs[i] ^ configs[j];
            if diff.count_ones() == 2 && cycle_edge(diff) {
                expected.push(serde_json::json!([i, j]));
            }
        }
    }
    assert_eq!(v["edges"].as_array().unwrap(), &expected);
    assert_eq!(v["degrees"], serde_json::json!([2, 4, 2, 2, 4, 2]));
    assert_eq!(v["n"], 4);
    assert_eq!(v["k"], 2);
}

#[test]
fn edge_list_files_are_read() {
    let dir = std::env::temp_dir().join(format!("tokengraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("c4.txt");
    std::fs::write(&good, "4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let o = tokengraph(&["--graph", good.to_str().unwrap(), "-k", "2", "stats"], None);
    assert_eq!(o.status.code(), Some(0));
    let bad = dir.join("loop.txt");
    std::fs::write(&bad, "2 1\n0 0\n").unwrap();
    let o = tokengraph(&["--graph", bad.to_str().unwrap(), "-k", "1", "stats"], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("self-loop"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes_and_caps() {
    assert_eq!(tokengraph(&["--gen", "cycle:10", "-k", "5", "--max-configs", "100", "build"], None).status.code(), Some(2));
    assert_eq!(tokengraph(&["--gen", "cycle:10", "-k", "5", "build"], Some("max_configs=100")).status.code(), Some(2));
    assert_eq!(
        tokengraph(&["--gen", "cycle:10", "-k", "5", "--max-configs", "300", "build"], Some("max_configs=100")).status.code(),
        Some(0)
    );
    assert_eq!(tokengraph(&["--gen", "cycle:4", "-k", "2", "build"], Some("nonsense")).status.code(), Some(3));
    assert_eq!(tokengraph(&["--graph", "/nonexistent/g.txt", "-k", "2", "build"], None).status.code(), Some(4));
    assert_eq!(tokengraph(&["--gen", "cycle:4", "-k", "2", "--tol", "1e-3", "verify"], None).status.code(), Some(3));
    let split = tokengraph(&["--gen", "cycle:4", "-k", "0", "build"], None);
    assert_eq!(split.status.code(), Some(3));
}

#[test]
fn disconnected_graphs_need_the_flag() {
    let dir = std::env::temp_dir().join(format!("tokengraph-split-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("split.txt");
    std::fs::write(&f, "4 2\n0 1\n2 3\n").unwrap();
    let path = f.to_str().unwrap();
    assert_eq!(tokengraph(&["--graph", path, "-k", "2", "build"], None).status.code(), Some(3));
    let o = tokengraph(&["--graph", path, "-k", "2", "--allow-disconnected", "build"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["configs"].as_array().unwrap().len(), 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn chain_report_for_four_cycle() {
    let o = tokengraph(&["--gen", "cycle:4", "-k", "2", "chain"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["period"], 2);
    assert_eq!(v["lumpable"], true);
    let mut pis: Vec<(u64, f64)> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["size"].as_u64().unwrap(), c["pi"].as_f64().unwrap()))
        .collect();
    pis.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(pis.len(), 2);
    assert_eq!(pis[0].0, 2);
    assert!((pis[0].1 - 0.25).abs() < 1e-12);
    assert_eq!(pis[1].0, 4);
    assert!((pis[1].1 - 0.125).abs() < 1e-12);
}

#[test]
fn marked_build_and_csv_outputs() {
    let o = tokengraph(&["--gen", "cycle:4", "-k", "2", "--marked", "build"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["configs"].as_array().unwrap().len(), 12);
    let o = tokengraph(&["--gen", "cycle:4", "-k", "2", "verify", "--format", "csv"], None);
    let text = stdout(&o);
    assert!(text.starts_with("seq,check,status,inputs,expected,actual"));
    let o = tokengraph(&["--gen", "cycle:4", "-k", "2", "export", "--format", "csv"], None);
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["--gen", "petersen", "-k", "2", "verify"][..],
        &["--gen", "cycle:6", "-k", "3", "export"][..],
        &["--gen", "cube", "-k", "2", "chain"][..],
    ] {
        assert_eq!(tokengraph(args, None).stdout, tokengraph(args, None).stdout);
    }
}
