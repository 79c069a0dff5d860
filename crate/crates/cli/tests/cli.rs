use std::process::{Command, Output};

use serde_json::Value;

fn affnc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affnc")).args(args).env_remove("AFFNC_WINDING_BOUND").output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn coxeter_from_word() {
    let out = affnc(&["coxeter", "--n", "7", "--word", "6,5,2,1,3,4,7"]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["outer"], serde_json::json!([3, 4, 7]));
    assert_eq!(v["projection"][0], serde_json::json!([1, "-9/7", "6/7"]));
    assert_eq!(v["projection"][2], serde_json::json!([3, "-8/7", "-8/7"]));
}

#[test]
fn coxeter_small_and_type_c() {
    let out = affnc(&["coxeter", "--n", "4", "--word", "4,3,1,2"]);
    assert_eq!(json_lines(&out)[0]["outer"], serde_json::json!([1, 2]));
    assert!(affnc(&["coxeter", "--n", "2", "--outer", "1"]).status.success());
    let out = affnc(&["coxeter", "--n", "7", "--type", "c", "--word", "6,4,3,0,1,2,5"]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["signing"], serde_json::json!([-6, -4, -3, 1, 2, 5]));
    assert_eq!(v["cycles"], "((... 1 2 5 8 10 11 15 ...))");
}

#[test]
fn projection_tsv() {
    let out = affnc(&["coxeter", "--n", "7", "--outer", "3,4,7", "--tsv", "--from", "8", "--to", "8"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout), "8\t15/7\t6/7\n");
}

#[test]
fn interval_queries() {
    let member = affnc(&["interval", "member", "--n", "7", "--outer", "3,4,7", "(... 4 7 11 ...) (1 -1 -2)_7 (2)_7 (3)_7"]);
    let v = &json_lines(&member)[0];
    assert_eq!((v["full"].as_bool(), v["restricted"].as_bool()), (Some(true), Some(false)));
    let krew = affnc(&["interval", "krew", "--n", "7", "--outer", "3,4,7", "(... 3 4 7 10 ...)(... 6 5 2 1 -1 ...)"]);
    assert_eq!(json_lines(&krew)[0]["kreweras"], "()");
    let p1 = "(1 -7 -4)_7 (2 -3)_7";
    let p2 = "(... 1 -5 -6 ...)(... 3 4 7 10 ...)(5 6)_7";
    let meet = affnc(&["interval", "meet", "--n", "7", "--outer", "3,4,7", p1, p2]);
    assert_eq!(json_lines(&meet)[0]["meet"], "(1 -7 -4)_7 (2 -3)_7");
    let leq = affnc(&["interval", "leq", "--n", "7", "--outer", "3,4,7", p1, p2]);
    assert_eq!(json_lines(&leq)[0]["leq"], true);
    let rank = affnc(&["interval", "rank", "--n", "7", "--outer", "3,4,7", "{\"n\": 7, \"window\": [2, 1, 3, 4, 5, 6, 7]}"]);
    assert_eq!(json_lines(&rank)[0]["rank"], 1);
}

#[test]
fn type_c_rank() {
    let out = affnc(&["interval", "rank", "--n", "7", "--signing=-6,-4,-3,1,2,5", "((1 2))_14 ((3))_14 ((4 33))_14 ((6 36))_14"]);
    assert_eq!(json_lines(&out)[0]["rank"], 3);
}

#[test]
fn exit_codes() {
    assert_eq!(affnc(&["coxeter", "--n", "7", "--word", "1,1"]).status.code(), Some(2));
    assert_eq!(affnc(&["interval", "rank", "--n", "7", "--outer", "3,4,7", "(1 9)_7"]).status.code(), Some(2));
    assert_eq!(affnc(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(affnc(&["verify", "--suite", "folding", "--n", "2", "--samples", "3"]).status.code(), Some(0));
    assert_eq!(affnc(&["verify", "--suite", "projection", "--n", "1"]).status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "all", "--n", "3", "--samples", "20", "--oracle-samples", "5"];
    let (a, b) = (affnc(&args), affnc(&args));
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let reports = json_lines(&a);
    assert_eq!(reports.len(), 7);
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn circfail_suite() {
    let out = affnc(&["verify", "--suite", "circfail"]);
    assert!(out.status.success());
    let v = &json_lines(&out)[0];
    assert_eq!(v["notes"]["minimal_upper_bounds"].as_str().unwrap().split(" | ").count(), 2);
}

#[test]
fn render_writes_svg() {
    let dir = std::env::temp_dir().join(format!("affnc-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.svg");
    let b = dir.join("b.svg");
    let p2 = "(... 1 -5 -6 ...)(... 3 4 7 10 ...)(5 6)_7";
    for path in [&a, &b] {
        let out = affnc(&["render", "--n", "7", "--outer", "3,4,7", p2, "--out", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("annular"));
    let c = dir.join("c.svg");
    let out = affnc(&["render", "--n", "7", "--signing=-6,-4,-3,1,2,5", "--out", c.to_str().unwrap()]);
    assert!(out.status.success());
    std::fs::remove_dir_all(&dir).unwrap();
}
