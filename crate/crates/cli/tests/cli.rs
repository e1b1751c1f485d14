use std::process::{Command, Output};

use serde_json::Value;

fn birsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_birsym")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_line(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = birsym(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(stdout(&o).lines().last().expect("one line")).expect("json")
}

#[test]
fn dim_reports() {
    assert_eq!(stdout(&birsym(&["dim", "C15", "2"])).trim(), "13");
    assert_eq!(stdout(&birsym(&["dim", "C2", "2"])).trim(), "0");
    let r = json_line(&["dim", "C36", "4", "--coeff", "F2"]);
    assert_eq!(r["dim"], 19);
    assert_eq!(r["symbols"], 75027);
    for key in ["group", "n", "coeff", "symbols", "relations", "rank", "dim", "elapsed_ms"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn class_verdicts() {
    let r = json_line(&["class", "cubic4-C36", "--coeff", "F2"]);
    assert_eq!(r["summands"][0]["zero"], false);
    let r = json_line(&["class", "p2-C3-diag", "--coeff", "Q"]);
    assert_eq!(r["summands"][0]["zero"], true);
    let r = json_line(&["class", "cubic4-C8", "--refined"]);
    let curve = r["summands"].as_array().unwrap().iter().find(|s| s["label"] == "plane-cubic-curve").unwrap();
    assert_eq!(curve["zero"], false);
    assert_eq!(curve["detail"], "order 2");
}

#[test]
fn snf_order_comult_burn() {
    let r = json_line(&["snf", "C2xC2", "2"]);
    assert_eq!(r["invariant_factors"], serde_json::json!(["1", "2", "2"]));
    assert_eq!(r["free_rank"], 0);
    let r = json_line(&["order", "C7", "2", "[1,0] + [6,0]"]);
    assert_eq!(r["zero"], false);
    let r = json_line(&["comult", "cubic4-C48", "--sub", "C3"]);
    assert_eq!(r["zero"], false);
    assert_eq!(r["kernel"], "C16");
    let r = json_line(&["burn", "burn2-D6", "--project", "H=center", "--noncyclic"]);
    let values: Vec<i64> = r["classes"].as_array().unwrap().iter().map(|c| c["projection"].as_i64().unwrap()).collect();
    assert_eq!(values, vec![2, 1]);
}

#[test]
fn exit_codes() {
    assert_eq!(birsym(&["dim", "C5", "2", "--coeff", "F4"]).status.code(), Some(2));
    assert_eq!(birsym(&["dim", "Cx", "2"]).status.code(), Some(2));
    assert_eq!(birsym(&["class", "no-such-preset"]).status.code(), Some(2));
    assert_eq!(birsym(&["dim", "C30", "2", "--memory-budget", "1K"]).status.code(), Some(3));
    assert_eq!(birsym(&["snf", "C36", "4"]).status.code(), Some(3));
    assert_eq!(birsym(&["burn", "C13"]).status.code(), Some(3));
}

#[test]
fn reports_append_and_cache_is_reused() {
    let dir = std::env::temp_dir().join(format!("birsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.jsonl");
    let cache = dir.join("cache");
    for _ in 0..2 {
        let o = Command::new(env!("CARGO_BIN_EXE_birsym"))
            .args(["dim", "C12", "3", "--report", report.to_str().unwrap()])
            .env("BIRSYM_CACHE_DIR", &cache)
            .output()
            .unwrap();
        assert!(o.status.success());
    }
    let lines: Vec<Value> =
        std::fs::read_to_string(&report).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["dim"], lines[1]["dim"]);
    assert_eq!(lines[0]["relations"], lines[1]["relations"]);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verdicts_do_not_depend_on_the_seed() {
    let a = json_line(&["dim", "C4xC8", "2", "--seed", "1"]);
    let b = json_line(&["dim", "C4xC8", "2", "--seed", "99"]);
    assert_eq!(a["dim"], b["dim"]);
}

#[test]
fn reproduce_quick_matches() {
    let o = birsym(&["reproduce-paper", "--quick"]);
    let out = stdout(&o);
    assert!(o.status.success(), "{out}");
    assert!(out.lines().last().unwrap().contains("0 differ"));
}
