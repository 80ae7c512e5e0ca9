use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_spherocheck"));
    cmd.args(args).env_remove("SPHEROCHECK_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("millis");
    v
}

#[test]
fn check_spherical_reports() {
    let out = run(&["check-spherical", "sl(2): 4w1"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "spherocheck.report/1");
    assert_eq!(v["result"]["status"], "NotSpherical");
    assert_eq!(v["result"]["certificate"]["kind"], "DimensionCount");

    let out = run(&["check-spherical", "sl(4): w1", "--gr", "2"], &[]);
    let v = json(&out);
    assert_eq!(v["result"]["status"], "Spherical");
    assert_eq!(v["result"]["witness"]["rank"], 4);
}

#[test]
fn check_bounded_reports() {
    let v = json(&run(&["check-bounded", "sp(4): w1 [h1]"], &[]));
    assert_eq!(v["result"]["bounded"], true);
    assert_eq!(v["result"]["verdict"]["status"], "Spherical");
}

#[test]
fn seed_precedence() {
    let seed_of = |args: &[&str], env: &[(&str, &str)]| {
        json(&run(args, env))["input"]["seed"].as_u64().unwrap()
    };
    let base = ["check-spherical", "sl(3): w1"];
    assert_eq!(seed_of(&base, &[]), 0x5eed);
    assert_eq!(seed_of(&base, &[("SPHEROCHECK_SEED", "42")]), 42);
    assert_eq!(seed_of(&base, &[("SPHEROCHECK_SEED", "0x10")]), 16);
    let flagged = ["check-spherical", "sl(3): w1", "--seed", "7"];
    assert_eq!(seed_of(&flagged, &[("SPHEROCHECK_SEED", "42")]), 7);
}

#[test]
fn reports_repeat_exactly() {
    let args = ["check-spherical", "so(7): w3", "--seed", "99", "--trials", "5"];
    let a = without_timing(json(&run(&args, &[])));
    let b = without_timing(json(&run(&args, &[])));
    assert_eq!(a, b);
    assert_eq!(a["result"]["witness"]["seed"], 99);
}

#[test]
fn decompose_and_normalizer() {
    let v = json(&run(&["decompose-sym", "sl(2): w1 ++ w1 ++ w1 [h(1,0,0), h(0,1,0), h(0,0,1)]", "--degree", "3"], &[]));
    assert_eq!(v["result"]["max_multiplicity"], 2);
    assert_eq!(v["result"]["total_dim"], "56");

    let v = json(&run(&["normalizer", "sl(3): w1", "--generic"], &[]));
    assert_eq!(v["result"]["generic_dim"], 9);
    assert_eq!(v["result"]["report"]["holds"], false);
    let v = json(&run(&["normalizer", "sl(2): w1 [h1]", "--basis"], &[]));
    assert_eq!(v["result"]["report"]["holds"], true);
    assert_eq!(v["result"]["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn moment_image_points() {
    let out = run(&["moment-image", "--n", "4", "--samples", "5"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["all_ok"], true);
    assert_eq!(v["result"]["points"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_table_subset() {
    let out = run(&["verify-table", "--max-dim", "8", "--entry", "i.12", "--entry", "iii.17"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "entry_id\tparams\tdimW\tverdict\tnormalizer_ok\tmax_mult_d≤4\tmillis");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("i.12\t-\t7\tSpherical\ttrue\t1\t"));

    let out = run(&["verify-table", "--max-dim", "4", "--format", "json"], &[]);
    let v = json(&out);
    assert_eq!(v["result"]["failed"], 0);
}

#[test]
fn negative_controls_pass() {
    let out = run(&["negative-controls"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["failed"], 0);
}

#[test]
fn exit_codes() {
    // Usage and parse errors.
    assert_eq!(run(&["check-spherical"], &[]).status.code(), Some(2));
    assert_eq!(run(&["check-spherical", "sl(2: w1"], &[]).status.code(), Some(2));
    assert_eq!(run(&["verify-table", "--entry", "ix.1"], &[]).status.code(), Some(2));
    // Representation too large.
    assert_eq!(run(&["check-spherical", "e6: w1+w6"], &[]).status.code(), Some(3));

    // A catalogue with a non-spherical row fails its assertion.
    let dir = std::env::temp_dir().join(format!("spherocheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "x | assert | sl(2): 4w1 | | h1\n").unwrap();
    let out = run(&["verify-table", "--table", bad.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("x\t-\t5\tNotSpherical"));
    let garbled = dir.join("garbled.txt");
    std::fs::write(&garbled, "x | assert | sl(2): w1\n").unwrap();
    assert_eq!(run(&["verify-table", "--table", garbled.to_str().unwrap()], &[]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
