use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn tense(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tense")).args(args).output().expect("binary runs")
}

fn write(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn ch2() -> String {
    write("ch2.json", r#"{"worlds":["bot","top"],"edges":[["bot","bot"],["bot","top"],["top","top"]]}"#)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

#[test]
fn model_checking_at_a_world() {
    let o = tense(&["mc", "--frame", &ch2(), "--formula", "[]p0 -> p0", "--at", "top", "--val", "p0=top"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");
    let o = tense(&["mc", "--frame", &ch2(), "--formula", "<>p0", "--val", "p0=top"]);
    assert_eq!(json(&o)["truth_set"], serde_json::json!(["bot", "top"]));
}

#[test]
fn usage_errors_exit_2_and_name_the_flag() {
    let o = tense(&["mc", "--formula", "p0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--frame"));
    let o = tense(&["mc", "--frame", &ch2(), "--formula", "p0", "--val", "p0=nowhere"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--val"));
    let o = tense(&["parse", "p0 &"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--formula"));
    assert_eq!(tense(&["nonsense"]).status.code(), Some(2));
    assert_eq!(tense(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn validity_verdicts_set_the_exit_status() {
    let o = tense(&["valid", "--frame", &ch2(), "--formula", "[]p0 -> p0"]);
    assert_eq!((o.status.code(), stdout(&o).trim().to_string()), (Some(0), "valid".to_string()));
    let o = tense(&["valid", "--frame", &ch2(), "--formula", "p0 -> []p0", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verdict"], "counter");
}

#[test]
fn frame_commands() {
    let f = write("fig.json", r#"{"worlds":["w","v","u"],"edges":[["w","v"],["w","u"]]}"#);
    let o = tense(&["unfold", "--frame", &f, "w", "u", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["frame"]["worlds"].as_array().unwrap().len(), 5);

    let o = tense(&["closure", "transitive", "--frame", &ch2()]);
    assert_eq!(json(&o)["edges"].as_array().unwrap().len(), 3);
    assert_eq!(tense(&["closure", "sideways", "--frame", &ch2()]).status.code(), Some(2));

    let o = tense(&["metrics", "--frame", &f]);
    assert_eq!(json(&o)["rdg_max"], 2);

    let dot = write("dot.json", r#"{"worlds":["d"],"edges":[["d","d"]]}"#);
    let o = tense(&["morphism", "--frame", &ch2(), "--target", &dot, "--map", "bot=d,top=d"]);
    assert_eq!((o.status.code(), json(&o)["t_morphism"].clone()), (Some(0), Value::Bool(true)));
    let o = tense(&["morphism", "--frame", &f, "--target", &dot]);
    assert_eq!(o.status.code(), Some(1));

    let o = tense(&["combine", "--frame", &f, "--at", "u", &ch2(), "bot"]);
    assert_eq!(json(&o)["worlds"].as_array().unwrap().len(), 4);
}

#[test]
fn families_and_truncation() {
    let o = tense(&["family", "axiom:T"]);
    assert_eq!(json(&o)["formula"], "[]p0 -> p0");
    let o = tense(&["family", "gamma:0", "--k", "1"]);
    assert_eq!(json(&o)["vars"], serde_json::json!([]));
    let o = tense(&["jankov", "--frame", &ch2(), "--k", "1"]);
    assert_eq!(json(&o)["vars"], serde_json::json!([0, 1]));
    let o = tense(&["truncate", "--family", "s4t", "--I", "2,3", "--truncate", "6"]);
    assert_eq!(json(&o)["worlds"].as_array().unwrap().len(), 29);
    assert_eq!(tense(&["truncate", "--family", "s4t", "--I", "2,3", "--truncate", "3"]).status.code(), Some(2));
}

#[test]
fn verify_reports_are_deterministic() {
    let run = || {
        let o = tense(&["verify", "sufficiency", "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let mut v = json(&o);
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["passed"], true);
    assert!(a["replay"].as_str().unwrap().starts_with("tense verify sufficiency"));
}

#[test]
fn failing_suite_exits_1_with_a_replay_line() {
    let o = tense(&["verify", "kt-section4", "--I", "2,3", "--J", "3,5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("replay: tense verify kt-section4"));
}
