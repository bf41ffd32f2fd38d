// SPDX-License-Identifier: MIT
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_causal-persuade");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("CP_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn emit(dir: &TempDir, fixture: &str, n: Option<usize>) -> PathBuf {
    let n = n.map(|n| n.to_string());
    let mut args = vec!["fixtures", "--emit", fixture];
    if let Some(n) = &n {
        args.extend(["--n", n]);
    }
    let out = run(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    write(dir, &format!("{fixture}{}.json", n.as_deref().unwrap_or("")), &stdout(&out))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dsep_on_a_chain() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "chain.json", r#"{"variables":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#);
    let out = run(&["dsep", "--graph", s(&g), "--a", "a", "--b", "c", "--given", "b"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "true\n");
    let out = run(&["dsep", "--graph", s(&g), "--a", "a", "--b", "c"]);
    assert_eq!(stdout(&out), "false\n");
}

#[test]
fn cpdag_of_fig6a() {
    let dir = TempDir::new().unwrap();
    let g = emit(&dir, "fig6a", None);
    let out = run(&["cpdag", "--graph", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"directed\":[[\"a\",\"d\"],[\"b\",\"d\"],[\"c\",\"d\"],[\"d\",\"e\"]],\
         \"undirected\":[[\"a\",\"b\"],[\"a\",\"c\"]],\"conflict\":false}\n"
    );
    let human = stdout(&run(&["cpdag", "--graph", s(&g), "--output", "human"]));
    assert!(human.contains("d -> e") && human.contains("a - b"));
    let dot = stdout(&run(&["cpdag", "--graph", s(&g), "--output", "dot"]));
    assert!(dot.contains("  d -> e;\n") && dot.contains("  a -- b;\n"));
}

#[test]
fn cpdag_with_scope() {
    let dir = TempDir::new().unwrap();
    let g = emit(&dir, "fig2a", None);
    let out = run(&["cpdag", "--graph", s(&g), "--scope", "e,w,t"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[\"e\",\"w\"]"));
}

#[test]
fn persuading_fig2a_is_infeasible() {
    let dir = TempDir::new().unwrap();
    let g = emit(&dir, "fig2a", None);
    let out = run(&["persuade", "--graph", s(&g), "--x", "w", "--y", "e", "--receiver", "sophisticated"]);
    assert_eq!(out.status.code(), Some(3));
    let plan: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(plan["verdict"], "infeasible");
}

#[test]
fn accepted_plans_exit_zero() {
    let dir = TempDir::new().unwrap();
    let g = emit(&dir, "fig9", None);
    let out = run(&["persuade", "--graph", s(&g), "--x", "x", "--y", "y", "--receiver", "sophisticated"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let plan: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(plan["disclosure"], serde_json::json!(["x", "y", "z"]));

    let t = emit(&dir, "fig17a", None);
    let p = write(&dir, "p17.json", r#"{"variables":["x","y"],"edges":[["y","x"]]}"#);
    let args = ["dissuade", "--graph", s(&t), "--prior", s(&p), "--x", "x", "--y", "y", "--receiver", "naive"];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0));
    let mut human = args.to_vec();
    human.extend(["--output", "human"]);
    let text = stdout(&run(&human));
    assert!(text.starts_with("verdict: accepted\n"));
    assert!(text.contains("proposal: a -> y, b -> x, b -> y"));
    assert!(text.contains("  1. "));
    let mut dot = args.to_vec();
    dot.extend(["--output", "dot"]);
    assert!(stdout(&run(&dot)).contains("b -> x"));
}

#[test]
fn debunk_reports_a_consistent_replacement() {
    let dir = TempDir::new().unwrap();
    let t = emit(&dir, "fig11a", None);
    let p = write(&dir, "p11.json", r#"{"variables":["w","x","y"],"edges":[["w","x"],["y","x"]]}"#);
    let out = run(&["debunk", "--graph", s(&t), "--prior", s(&p), "--link", "y,x"]);
    assert_eq!(out.status.code(), Some(0));
    let plan: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(plan["proposal_consistent"], false);
    assert_eq!(plan["replacement"]["disclosure"], serde_json::json!(["c", "w", "x", "y", "z"]));

    let out = run(&["debunk", "--graph", s(&t), "--prior", s(&p), "--link", "w,x"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn enumerate_lists_one_graph_per_line() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "chain.json", r#"{"variables":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#);
    let out = run(&["enumerate", "--graph", s(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for l in lines {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["edges"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn analyze_reports_profile_and_causes() {
    let dir = TempDir::new().unwrap();
    let g = emit(&dir, "fig9", None);
    let out = run(&["analyze", "--graph", s(&g), "--pair", "x,y"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["causes"]["obvious"], serde_json::json!(["z"]));
    assert_eq!(v["causes"]["nonobvious"], serde_json::json!(["v", "w"]));
    assert!(v["profile"]["simple"].is_boolean());
    let bare: serde_json::Value = serde_json::from_str(&stdout(&run(&["analyze", "--graph", s(&g)]))).unwrap();
    assert!(bare["causes"].is_null());
}

#[test]
fn fixtures_list_and_emit() {
    let list = stdout(&run(&["fixtures", "--list"]));
    assert!(list.lines().any(|l| l == "fig2a"));
    assert!(list.lines().any(|l| l == "fig12(n)"));
    let out = run(&["fixtures", "--emit", "fig12", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["variables"].as_array().unwrap().len(), 7);
    assert_eq!(run(&["fixtures", "--emit", "fig12"]).status.code(), Some(2));
    assert_eq!(run(&["fixtures", "--emit", "fig99"]).status.code(), Some(2));
}

#[test]
fn bad_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "not json");
    let out = run(&["dsep", "--graph", s(&bad), "--a", "a", "--b", "b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error: "));
    let cyclic = write(&dir, "cyc.json", r#"{"variables":["a","b"],"edges":[["a","b"],["b","a"]]}"#);
    assert_eq!(run(&["cpdag", "--graph", s(&cyclic)]).status.code(), Some(2));
    let extra = write(&dir, "extra.json", r#"{"variables":["a"],"edges":[],"colour":1}"#);
    assert_eq!(run(&["cpdag", "--graph", s(&extra)]).status.code(), Some(2));
    let g = emit(&dir, "fig2a", None);
    assert_eq!(run(&["dsep", "--graph", s(&g), "--a", "a", "--b", "q"]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["cpdag", "--graph", s(&missing)]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["persuade", "--graph", s(&g), "--x", "w", "--y", "e", "--receiver", "shrewd"]).status.code(), Some(2));
}

#[test]
fn budget_flag_and_environment() {
    let dir = TempDir::new().unwrap();
    let g = emit(&dir, "fig12", Some(3));
    let args = ["persuade", "--graph", s(&g), "--x", "x", "--y", "y", "--receiver", "sophisticated"];
    let mut tight = args.to_vec();
    tight.extend(["--budget", "4"]);
    let out = run(&tight);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("budget of 4"));

    let env = Command::new(BIN).args(args).env("CP_BUDGET", "4").output().unwrap();
    assert_eq!(env.status.code(), Some(4));
    let flag_wins = Command::new(BIN).args(&tight[..]).env("CP_BUDGET", "100").output().unwrap();
    assert_eq!(flag_wins.status.code(), Some(4));
    let mut loose = args.to_vec();
    loose.extend(["--budget", "12"]);
    let out = Command::new(BIN).args(&loose).env("CP_BUDGET", "4").output().unwrap();
    assert_ne!(out.status.code(), Some(4));

    let mut tiny = args.to_vec();
    tiny.extend(["--budget", "1"]);
    assert_eq!(run(&tiny).status.code(), Some(2));

    let chain = write(&dir, "chain.json", r#"{"variables":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#);
    assert_eq!(run(&["enumerate", "--graph", s(&chain), "--budget", "2"]).status.code(), Some(4));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let g = emit(&dir, "fig12", Some(2));
    let args = ["persuade", "--graph", s(&g), "--x", "x", "--y", "y", "--receiver", "sophisticated"];
    let first = run(&args);
    for _ in 0..3 {
        let again = run(&args);
        assert_eq!(again.stdout, first.stdout);
        assert_eq!(again.status.code(), first.status.code());
    }
    let e1 = run(&["enumerate", "--graph", s(&g), "--scope", "a,c1,x,y"]);
    let e2 = run(&["enumerate", "--graph", s(&g), "--scope", "a,c1,x,y"]);
    assert_eq!(e1.stdout, e2.stdout);
}

#[test]
fn version_and_help() {
    let v = run(&["--version"]);
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("causal-persuade "));
    let h = run(&["--help"]);
    assert!(stdout(&h).contains("persuade") && stdout(&h).contains("--budget"));
}
