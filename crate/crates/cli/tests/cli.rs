use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redwords")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut with_flag = args.to_vec();
    with_flag.push("--json");
    serde_json::from_str(&stdout(&with_flag)).unwrap()
}

#[test]
fn rw_list_3241() {
    assert_eq!(json(&["rw", "list", "3241"]), serde_json::json!(["1213", "1231", "2123"]));
    assert_eq!(stdout(&["rw", "list", "3241"]), "1213\n1231\n2123\n");
}

#[test]
fn rw_classes_and_graph() {
    let classes = json(&["rw", "classes", "3241"]);
    assert_eq!(classes.as_array().unwrap().len(), 2);
    assert_eq!(classes[0]["size"], 2);
    let graph = json(&["rw", "graph", "3241"]);
    assert_eq!(graph["edges"], serde_json::json!([[0, 1]]));
}

#[test]
fn partitions_of_four() {
    assert_eq!(json(&["enum", "partitions", "4"]).as_array().unwrap().len(), 5);
    assert_eq!(stdout(&["enum", "partitions", "4", "--parts", "2"]), "(3,1)\n(2,2)\n");
}

#[test]
fn pattern_commands() {
    assert_eq!(stdout(&["pattern", "count", "321", "3214"]), "1\n");
    assert_eq!(json(&["pattern", "spreads-contained", "2143", "2143"]), serde_json::json!(true));
    assert_eq!(json(&["pattern", "spreads-contained", "2143", "21354"]), serde_json::json!(false));
    let occ = json(&["pattern", "occ", "21", "231"]);
    assert_eq!(occ.as_array().unwrap().len(), 2);
    assert_eq!(json(&["pattern", "spreads", "251364"]).as_array().unwrap().len(), 4);
}

#[test]
fn embed_and_stable() {
    let e = json(&["embed", "132", "243165"]);
    assert_eq!(e["verified"], true);
    assert_eq!(e["factor"], "2");
    let none = json(&["embed", "321", "123"]);
    assert!(none["word"].is_null());
    let gap = run(&["embed", "123", "1324"]);
    assert_eq!(gap.status.code(), Some(1));
    assert_eq!(json(&["stable", "3421", "352641"])["stable"], true);
    assert_eq!(stdout(&["stable", "12", "21"]), "not value-stable\n");
}

#[test]
fn tiles() {
    let list = json(&["tile", "list", "3241"]);
    assert_eq!(list.as_array().unwrap().len(), 2);
    let dir = std::env::temp_dir().join(format!("redwords-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.svg");
    stdout(&["tile", "svg", "3241", "--class", "1", "--out", path.to_str().unwrap()]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.trim_end().ends_with("</svg>"));
    assert_eq!(stdout(&["tile", "svg", "3241", "--class", "1"]).trim_end(), svg.trim_end());
    let image = json(&["tile", "mono", "52143", "6213574", "--occ", "1,2,3,5,7"]);
    assert_eq!(image["tiles"].as_array().unwrap().len(), 8);
    assert_eq!(run(&["tile", "svg", "3241", "--class", "7"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn enumeration_commands() {
    let avoiders = json(&["enum", "avoiders", "--pattern", "132", "--length", "4"]);
    assert_eq!(avoiders.as_array().unwrap().len(), 5);
    assert_eq!(run(&["enum", "avoiders", "--pattern", "321", "--length", "3"]).status.code(), Some(2));
    let capped = json(&["enum", "avoiders", "--pattern", "321", "--length", "3", "--max-rank", "5"]);
    assert_eq!(capped.as_array().unwrap().len(), 8);
    let cells = json(&["enum", "table", "--lmax", "11", "--dmax", "11"]);
    let cells = cells.as_array().unwrap();
    assert_eq!(cells.len(), 144);
    assert!(cells.contains(&serde_json::json!({"d": 5, "l": 11, "count": 17})));
    let t = json(&["enum", "231", "--n", "6", "--length", "5"]);
    assert_eq!((t["brute"].as_u64(), t["agree"].as_bool()), (Some(16), Some(true)));
    assert_eq!(run(&["enum", "231", "--n", "6", "--length", "6"]).status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let r = json(&["verify", "--suite", "table1,catalan,s6-231"]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["suites"].as_array().unwrap().len(), 3);
    let out = run(&["verify", "--suite", "theorem-main", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL theorem-main"));
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
}

#[test]
fn errors_and_caps() {
    assert_eq!(run(&["rw", "list", "3x41"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["rw", "list", "4321", "--max-words", "3"]).status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_redwords"))
        .args(["rw", "list", "4321"])
        .env("REDWORDS_MAX_WORDS", "3")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [&["rw", "classes", "52143"][..], &["enum", "table"], &["tile", "list", "4231"]] {
        assert_eq!(stdout(args), stdout(args));
        let text = stdout(args);
        assert!(!text.is_empty());
    }
}
