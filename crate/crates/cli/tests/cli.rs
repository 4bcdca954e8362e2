use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_borelcoder"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

const DIGRAPH: &str = r#"{
  "universe": 4,
  "relations": { "E": { "arity": 2, "tuples": [[0,1],[1,2],[2,0],[3,3],[0,3]] } }
}"#;

/// Same digraph with elements renamed by 0->3, 1->0, 2->1, 3->2.
const DIGRAPH_RENAMED: &str = r#"{
  "universe": 4,
  "relations": { "E": { "arity": 2, "tuples": [[3,0],[0,1],[1,3],[2,2],[3,2]] } }
}"#;

fn edge_set(v: &Value) -> Vec<(u64, u64)> {
    let mut e: Vec<(u64, u64)> = v["relations"]["E"]["tuples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t[0].as_u64().unwrap(), t[1].as_u64().unwrap()))
        .collect();
    e.sort();
    e
}

/// Digraph isomorphism by trying all permutations of at most 4 elements.
fn digraphs_iso(a: &Value, b: &Value) -> bool {
    let n = a["universe"].as_u64().unwrap();
    if n != b["universe"].as_u64().unwrap() {
        return false;
    }
    let (ea, eb) = (edge_set(a), edge_set(b));
    let mut perm: Vec<u64> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut m: Vec<_> = ea.iter().map(|&(x, y)| (p[x as usize], p[y as usize])).collect();
        m.sort();
        m == eb
    })
}

fn permutations(p: &mut Vec<u64>, k: usize, f: &mut impl FnMut(&[u64]) -> bool) -> bool {
    if k == p.len() {
        return f(p);
    }
    for i in k..p.len() {
        p.swap(k, i);
        if permutations(p, k + 1, f) {
            return true;
        }
        p.swap(k, i);
    }
    false
}

#[test]
fn tree_encodes_to_a_graph_code() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.json");
    fs::write(&input, r#"{"nodes": [[], [0], [1], [1, 0]]}"#).unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "encode",
        input.to_str().unwrap(),
        "--kind",
        "tree",
        "--m",
        "1",
        "--variant",
        "paired",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let g = json(&out.join("graph.json"));
    // one block of 14m vertices per tree node
    let blocks = g["blocks"].as_object().unwrap();
    assert_eq!(blocks.len(), 4);
    assert!(blocks.values().all(|b| b.as_array().unwrap().len() == 14));
    assert_eq!(json(&out.join("manifest.json"))["m"], 1);

    let back = run(&[
        "decode",
        out.join("graph.json").to_str().unwrap(),
        "--manifest",
        out.join("manifest.json").to_str().unwrap(),
    ]);
    assert!(back.status.success());
    let t: Value = serde_json::from_slice(&back.stdout).unwrap();
    assert_eq!(t["nodes"].as_array().unwrap().len(), 4);
}

#[test]
fn digraph_round_trips_and_codes_agree_on_isomorphic_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut graphs = Vec::new();
    for (name, text) in [("a", DIGRAPH), ("b", DIGRAPH_RENAMED)] {
        let input = dir.path().join(format!("{name}.json"));
        fs::write(&input, text).unwrap();
        let out = dir.path().join(name);
        let o = run(&[
            "encode",
            input.to_str().unwrap(),
            "--kind",
            "structure",
            "--depth",
            "2",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let back = run(&[
            "decode",
            out.join("graph.json").to_str().unwrap(),
            "--manifest",
            out.join("manifest.json").to_str().unwrap(),
        ]);
        assert!(back.status.success(), "{}", String::from_utf8_lossy(&back.stderr));
        let decoded: Value = serde_json::from_slice(&back.stdout).unwrap();
        assert!(digraphs_iso(&decoded, &serde_json::from_str(text).unwrap()));
        graphs.push(json(&out.join("graph.json")));
    }
    let size = |g: &Value| {
        (
            g["left"].as_array().unwrap().len(),
            g["right"].as_array().unwrap().len(),
            g["edges"].as_array().unwrap().len(),
        )
    };
    assert_eq!(size(&graphs[0]), size(&graphs[1]));
}

#[test]
fn multiscale_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.json");
    fs::write(&input, r#"{"nodes": [[], [0], [0, 0]]}"#).unwrap();
    let out = dir.path().join("out");
    let o = run(&[
        "encode",
        input.to_str().unwrap(),
        "--kind",
        "tree",
        "--scales",
        "1,8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let back = run(&[
        "decode",
        out.join("graph.json").to_str().unwrap(),
        "--manifest",
        out.join("manifest.json").to_str().unwrap(),
    ]);
    assert!(back.status.success(), "{}", String::from_utf8_lossy(&back.stderr));
}

#[test]
fn invalid_json_exits_two_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.json");
    fs::write(&input, "{\n  \"nodes\": [[],\n").unwrap();
    let o = run(&[
        "encode",
        input.to_str().unwrap(),
        "--kind",
        "tree",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn unknown_suite_exits_three() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(3));
}

#[test]
fn bad_thread_count_exits_three() {
    let o = bin()
        .args(["table", "e-star"])
        .env("BORELCODER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn roundtrip_suite_with_no_samples_passes() {
    let o = run(&["verify", "roundtrip", "--samples", "0"]);
    assert!(o.status.success());
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn packing_suite_passes() {
    let o = run(&["verify", "packing"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn blocks_suite_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&[
        "verify",
        "blocks",
        "--max-nodes",
        "4",
        "--m",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let r = json(&out);
    assert!(r["cases"].as_u64().unwrap() > 0);
}

#[test]
fn tables_are_csv() {
    let o = run(&["table", "e-star", "--max", "4"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("c,e_star"));
    assert_eq!(text.lines().last(), Some("4,4"));
}

#[test]
fn gen_is_seeded() {
    let a = run(&["gen", "--kind", "colored-tree", "--seed", "7"]).stdout;
    let b = run(&["gen", "--kind", "colored-tree", "--seed", "7"]).stdout;
    assert_eq!(a, b);
    assert!(serde_json::from_slice::<Value>(&a).is_ok());
}

#[test]
fn diffs_emits_an_assignment() {
    let o = run(&["diffs", "--depth", "2", "--width", "2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["quads"].as_object().is_some_and(|q| !q.is_empty()));
}
