use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_outerdom"));
    c.env_remove("OUTERDOM_WORKERS");
    c
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("outerdom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn named(name: &str) -> String {
    String::from_utf8(run(&["named", name], None).stdout).unwrap()
}

#[test]
fn bounds_on_hexagon() {
    let p = temp("hexagon.json", &named("hexagon_fan3"));
    let out = run(&["bounds", "--in", p.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["violates_li"], true);
    assert_eq!(v["bound_li"]["num"], 3);
    assert_eq!(v["bound_li"]["den"], 2);
}

#[test]
fn named_is_one_line_with_type_first() {
    let text = named("figure2");
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with(r#"{"type":"mop","n":14"#));
    let out = run(&["named", "petersen"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dominate_figure2_and_replay() {
    let out = run(&["dominate"], Some(&named("figure2")));
    assert_eq!(out.status.code(), Some(0));
    let trace = json(&out);
    assert_eq!(trace["set"]["size"], 4);
    let text = String::from_utf8(out.stdout).unwrap();
    let ok = run(&["verify-trace"], Some(&text));
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["valid"], true);

    let mut bad = trace.clone();
    bad["set"]["vertices"] = serde_json::json!([1]);
    let out = run(&["verify-trace"], Some(&bad.to_string()));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn gamma_of_graph_and_mop() {
    let out = run(&["gamma"], Some(&named("octahedron")));
    assert_eq!(json(&out)["size"], 2);
    let out = run(&["gamma"], Some(r#"{"type":"graph","n":4,"edges":[[1,2],[2,3],[3,4]]}"#));
    assert_eq!(json(&out)["size"], 2);
    assert_eq!(json(&run(&["gamma"], Some(&named("figure2"))))["size"], 4);
}

#[test]
fn bad_input_is_usage_error() {
    let out = run(&["gamma"], Some("not json"));
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"].is_string());
    let out = run(&["bounds"], Some(r#"{"type":"mop","n":6,"chords":[[1,4],[2,5],[3,6]]}"#));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gamma", "--no-such-flag"], Some(""));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["bounds"], Some(&named("octahedron")));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_counterexamples_finds_hexagon() {
    let out = run(&["search-counterexamples", "--n", "6"], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["checked"], 14);
    assert!(v["found"].as_u64().unwrap() >= 1);
}

#[test]
fn enumerate_and_verify_corpus() {
    let out = run(&["enumerate", "--kind", "mop", "--n", "8"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 132);
    let p = temp("corpus.jsonl", &text);
    for suite in ["thm11", "thm12", "reductions"] {
        let out = run(&["verify", "--suite", suite, "--in", p.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert_eq!(json(&out)["violations"].as_array().unwrap().len(), 0);
    }
    let out = run(&["enumerate", "--kind", "ham-triangulation", "--n", "5"], None);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 10);
    let out = run(&["verify", "--suite", "nope"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_thm12_default_corpus() {
    let out = run(&["verify", "--suite", "thm12", "--n-max", "10"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checked"], 2054);
}

#[test]
fn workers_do_not_change_results() {
    let a = run(&["verify", "--suite", "lemma31", "--n-max", "7", "--workers", "1"], None);
    let b = run(&["verify", "--suite", "lemma31", "--n-max", "7", "--workers", "3"], None);
    assert_eq!(a.stdout, b.stdout);
    let mut c = bin();
    let c = c
        .args(["verify", "--suite", "lemma31", "--n-max", "7"])
        .env("OUTERDOM_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn pipeline_from_raw_graph() {
    let t = named("seven_vertex_fig1");
    let out = run(&["pipeline"], Some(&t));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["set"]["size"], 2);
    // a bare edge list is searched for a good Hamilton cycle first
    let raw = r#"{"type":"graph","n":7,"edges":[[1,2],[2,3],[3,4],[4,5],[5,6],[6,7],[1,7],[1,3],[1,4],[1,5],[5,7],[2,4],[2,6],[2,7],[4,6]]}"#;
    let out = run(&["pipeline"], Some(raw));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["set"]["size"], 2);
    let random = run(&["enumerate", "--kind", "ham-triangulation", "--n", "30", "--count", "1", "--seed", "5"], None);
    let out = run(&["pipeline"], Some(&String::from_utf8(random.stdout).unwrap()));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["report"]["size"].as_u64().unwrap() <= 9);
}

#[test]
fn export_dot_styles() {
    let out = run(&["export-dot"], Some(&named("figure2")));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph mop {"));
    assert!(text.contains("color=red"));
    assert!(text.contains("style=dashed"));
    assert_eq!(text.matches("fillcolor=gold").count(), 4);
}

#[test]
fn out_flag_writes_file() {
    let p = temp("out.json", "");
    let out = run(&["named", "octahedron", "--out", p.to_str().unwrap()], None);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.starts_with(r#"{"type":"ham-triangulation""#));
}
