use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Child, Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pinball"));
    c.env_remove("PINBALL_NODE_BUDGET");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn pinball")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn ok_json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

struct Scratch(PathBuf);

impl Scratch {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("pinball-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Self(dir)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.0.join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.0);
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn billey_on_a_simple_reflection() {
    let o = run(&["billey", "--v", "s1", "--w", "s1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a1\n");
    let o = run(&["billey", "--v", "s2", "--w", "s2", "--specialize"]);
    assert_eq!(stdout(&o), "t\n");
    let v = ok_json(&["--json", "billey", "--type", "B", "--rank", "2", "--v", "s2", "--w", "s2"]);
    assert_eq!(v["value"], "a2");
}

#[test]
fn billey_without_w_lists_the_upper_interval() {
    let v = ok_json(&["--json", "billey", "--v", "s1.s2.s1"]);
    let listed: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["w"].as_str().unwrap()).collect();
    assert!(v.as_array().unwrap().iter().all(|r| r["value"] != "0"));
    let all = ok_json(&["--json", "weyl", "elements"]);
    let above: Vec<String> = all
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["word"].as_str().unwrap().to_string())
        .filter(|w| ok_json(&["--json", "weyl", "bruhat", "s1.s2.s1", w])["leq"] == true)
        .collect();
    assert_eq!(listed, above);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["billey", "--w", "s1"]).status.code(), Some(2));
    assert_eq!(run(&["weyl", "--type", "E", "info"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one_with_a_message() {
    let o = run(&["weyl", "parse", "s7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = run(&["--json", "reproduce", "fig9"]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&o.stderr).expect("structured error");
    assert!(err["error"]["message"].as_str().unwrap().contains("fig9"));
}

#[test]
fn reproduce_fig3_succeeds() {
    let o = run(&["reproduce", "fig3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("fig3: PASS"));
}

#[test]
fn reproduce_exit_code_follows_the_report() {
    for t in ["fig1", "fig2", "fig3", "fig4"] {
        let o = run(&["--json", "reproduce", t]);
        let v: Value = serde_json::from_slice(&o.stdout).expect("report");
        let pass = v["ok"].as_bool().unwrap();
        assert_eq!(o.status.code(), Some(if pass { 0 } else { 1 }), "{t}");
        let checks = v["report"]["checks"].as_array().unwrap();
        assert_eq!(pass, checks.iter().all(|c| c["pass"] == true), "{t}");
    }
}

#[test]
fn reproduce_is_deterministic() {
    let a = run(&["--json", "reproduce", "fig1"]);
    let b = run(&["--json", "reproduce", "fig1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn weyl_words_and_one_line_notation() {
    let v = ok_json(&["--json", "weyl", "parse", "[2,1,4,3]"]);
    assert_eq!(v["length"], 2);
    assert_eq!(v["one_line"], "[2,1,4,3]");
    let words = ok_json(&["--json", "weyl", "words", v["word"].as_str().unwrap()]);
    let mut words: Vec<String> = serde_json::from_value(words).unwrap();
    words.sort();
    assert_eq!(words, vec!["s1.s3", "s3.s1"]);
    let v = ok_json(&["--json", "weyl", "--type", "B", "--rank", "3", "parse", "[-3,1,2]"]);
    assert_eq!(v["one_line"], "[-3,1,2]");
    let info = ok_json(&["--json", "weyl", "--type", "D", "--rank", "4", "info"]);
    assert_eq!(info["order"], 192);
    assert_eq!(info["positive_roots"], 12);
    assert_eq!(info["longest"]["length"], 12);
    let leq = ok_json(&["--json", "weyl", "bruhat", "s2", "s1.s2.s1"]);
    assert_eq!(leq["leq"], true);
}

#[test]
fn poset_files_round_trip() {
    let dir = Scratch::new("poset");
    let board = run(&["weyl", "poset"]);
    let path = dir.write("s4.json", &stdout(&board));
    let again = ok_json(&["--json", "poset", "check", s(&path)]);
    let original: Value = serde_json::from_slice(&board.stdout).unwrap();
    assert_eq!(again, original);
    assert_eq!(original["elements"].as_array().unwrap().len(), 24);

    let ideal = ok_json(&["--json", "poset", "ideal", s(&path), "s2.s1"]);
    assert_eq!(ideal, serde_json::json!(["e", "s1", "s2", "s2.s1"]));
    let filter = ok_json(&["--json", "poset", "filter", s(&path), "s1.s2.s3.s2.s1"]);
    assert_eq!(filter.as_array().unwrap().len(), 2);
    let closed = ok_json(&["--json", "poset", "is-ideal", s(&path), "e", "s1", "s2"]);
    assert_eq!(closed["ideal"], true);
    assert_eq!(closed["minimal"], serde_json::json!(["e"]));
    let open = ok_json(&["--json", "poset", "is-ideal", s(&path), "s1", "s2"]);
    assert_eq!(open["ideal"], false);

    let bad = dir.write("bad.json", r#"{"elements":[{"id":"a","rank":0},{"id":"b","rank":2}],"covers":[["b","a"]]}"#);
    assert_eq!(run(&["poset", "check", s(&bad)]).status.code(), Some(1));
}

#[test]
fn played_transcripts_replay_exactly() {
    let dir = Scratch::new("replay");
    for fig in ["fig1", "fig2", "fig3", "fig4"] {
        let o = run(&["--json", "pinball", "play", "--builtin", fig]);
        let t = dir.write(&format!("{fig}.json"), &stdout(&o));
        let again = run(&["--json", "pinball", "replay", s(&t)]);
        assert!(again.status.success(), "{fig}");
        assert_eq!(again.stdout, o.stdout, "{fig}");
    }
}

#[test]
fn text_scripts_reproduce_a_game() {
    let dir = Scratch::new("script");
    let game = ok_json(&["--json", "pinball", "play", "--builtin", "fig2", "--to", "e,s3,s2,s1"]);
    let lines: Vec<String> = game["moves"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| format!("{} -> {}", m["edge"][0].as_str().unwrap(), m["edge"][1].as_str().unwrap()))
        .collect();
    let script = dir.write("moves.txt", &format!("# fig2\n{}\n", lines.join("\n")));
    let replayed = ok_json(&["--json", "pinball", "play", "--builtin", "fig2", "--script", s(&script)]);
    assert_eq!(replayed, game);
    let t = dir.write("t.json", &game.to_string());
    let from_transcript = ok_json(&["--json", "pinball", "play", "--builtin", "fig2", "--script", s(&t)]);
    assert_eq!(from_transcript["rolldown"], game["rolldown"]);
}

#[test]
fn interactive_play_prompts_and_rejects_bad_slides() {
    let dir = Scratch::new("interactive");
    let board = dir.write("s4.json", &stdout(&run(&["weyl", "poset"])));
    let mut child = bin()
        .args(["pinball", "play", "--board", s(&board), "--initial", "s1,s2", "--interactive"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"s1 -> s2\ne\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("legal: s1 -> e"));
    assert!(text.contains("not a legal slide: s1 -> s2"));
    assert!(text.contains("1  s1       e"));
}

#[test]
fn interactive_play_fails_when_input_ends() {
    let dir = Scratch::new("eof");
    let board = dir.write("s4.json", &stdout(&run(&["weyl", "poset"])));
    let out = bin()
        .args(["pinball", "play", "--board", s(&board), "--initial", "s1", "--interactive"])
        .stdin(Stdio::null())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn parallel_enumeration_agrees_with_serial() {
    for fig in ["fig1", "fig3", "fig4"] {
        let serial = ok_json(&["--json", "pinball", "enumerate", "--builtin", fig]);
        let parallel = ok_json(&["--json", "pinball", "enumerate", "--builtin", fig, "--parallel", "4"]);
        assert_eq!(serial["outcomes"], parallel["outcomes"], "{fig}");
        assert!(!serial["outcomes"].as_array().unwrap().is_empty());
    }
}

#[test]
fn node_budget_comes_from_the_environment() {
    let o = bin()
        .args(["pinball", "enumerate", "--builtin", "fig4"])
        .env("PINBALL_NODE_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn fixed_point_configs_feed_the_game() {
    let dir = Scratch::new("fixed");
    let pts = ok_json(&["--json", "fixed-points", "--family", "springer", "--lambda", "2,2"]);
    let lines: Vec<&str> = pts["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| p["one_line"].as_str().unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    assert!(lines.contains(&"[3,4,1,2]"));

    let h = ok_json(&["--json", "fixed-points", "--hessenberg-h", "3,3,4,4"]);
    assert_eq!(h["betti"], serde_json::json!([1, 3, 4, 3, 1]));
    let mh = ok_json(&["--json", "fixed-points", "--mh", "-a1,-a2,-a3"]);
    let peterson = ok_json(&["--json", "fixed-points", "--family", "peterson"]);
    let words = |v: &Value| {
        let mut w: Vec<String> = v["points"].as_array().unwrap().iter().map(|p| p["word"].to_string()).collect();
        w.sort();
        w
    };
    assert_eq!(words(&mh), words(&peterson));
    assert_eq!(mh["betti"], peterson["betti"]);

    let config = run(&["fixed-points", "--family", "peterson", "--config", "--variant", "betti"]);
    let path = dir.write("peterson.json", &stdout(&config));
    let game = ok_json(&["--json", "pinball", "play", "--config", s(&path)]);
    assert_eq!(game["rolldown"].as_object().unwrap().len(), 8);
    assert!(game["success"].is_boolean());
}

#[test]
fn basis_files_round_trip_through_verification() {
    let dir = Scratch::new("basis");
    let classes = run(&["--json", "basis", "classes", "--at", "e,s1,s2,s1.s2,s2.s1,s1.s2.s1", "--classes", "e,s1,s2"]);
    let path = dir.write("classes.json", &stdout(&classes));
    let text: Value = serde_json::from_slice(&classes.stdout).unwrap();
    assert_eq!(text["classes"][1]["values"]["s1"], "t");

    let report = ok_json(&["--json", "basis", "verify", s(&path), "--targets", "1,2"]);
    assert_eq!(report["ok"], true);
    let o = run(&["basis", "verify", s(&path), "--targets", "1,1"]);
    assert_eq!(o.status.code(), Some(1));

    let tri = ok_json(&["--json", "basis", "triangular", s(&path)]);
    assert_eq!(tri["poset_upper_triangular"], true);

    let reduced = run(&["--json", "basis", "construct", s(&path)]);
    assert!(reduced.status.success());
    let reduced_path = dir.write("reduced.json", &stdout(&reduced));
    let again = run(&["--json", "basis", "construct", s(&reduced_path)]);
    assert_eq!(again.stdout, reduced.stdout);
}

#[test]
fn springer_characters_match() {
    let o = run(&["springer-rep", "--n", "5", "--characters"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().skip(1).all(|l| l.ends_with("yes")));
    let m = ok_json(&["--json", "springer-rep", "--n", "3", "--element", "s1"]);
    assert_eq!(m[0]["matrix"][0][1], "t");
}

struct Server(Child, String);

impl Drop for Server {
    fn drop(&mut self) {
        let _ = self.0.kill();
        let _ = self.0.wait();
    }
}

fn start_server() -> Server {
    let mut child = bin()
        .args(["serve", "--addr", "127.0.0.1:0"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    BufReader::new(child.stdout.take().unwrap()).read_line(&mut line).unwrap();
    let addr = line.trim().strip_prefix("listening on http://").expect("address line").to_string();
    Server(child, addr)
}

fn http(addr: &str, method: &str, path: &str, body: &str) -> (u16, Value) {
    let mut s = TcpStream::connect(addr).unwrap();
    write!(
        s,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut raw = String::new();
    s.read_to_string(&mut raw).unwrap();
    let status = raw[9..12].parse().unwrap();
    let payload = raw.split_once("\r\n\r\n").map(|(_, b)| b).unwrap_or("");
    (status, serde_json::from_str(payload).unwrap_or(Value::Null))
}

#[test]
fn server_plays_a_game_over_http() {
    let server = start_server();
    let addr = server.1.as_str();
    let (status, created) = http(addr, "POST", "/games", r#"{"builtin":"fig2","auto_finalize":true}"#);
    assert_eq!(status, 201);
    let id = created["id"].as_str().unwrap().to_string();

    let script = ok_json(&["--json", "pinball", "play", "--builtin", "fig2", "--to", "e,s3,s2,s1"]);
    for m in script["moves"].as_array().unwrap() {
        let body = serde_json::json!({ "edge": m["edge"] }).to_string();
        let (status, _) = http(addr, "POST", &format!("/games/{id}/moves"), &body);
        assert_eq!(status, 200);
    }
    let (status, t) = http(addr, "GET", &format!("/games/{id}/transcript"), "");
    assert_eq!(status, 200);
    assert_eq!(t["rolldown"], script["rolldown"]);

    let (status, err) = http(addr, "POST", &format!("/games/{id}/moves"), r#"{"edge":["e","s1"]}"#);
    assert!(status == 409 || status == 410, "{status}");
    assert!(err["error"]["code"].is_string());
    let (status, _) = http(addr, "GET", "/games/missing", "");
    assert_eq!(status, 404);
}
