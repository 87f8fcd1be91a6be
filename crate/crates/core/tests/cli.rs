use std::process::{Command, Output};

fn multiseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiseg"))
        .args(args)
        .env_remove("MULTISEG_JSON")
        .env_remove("MULTISEG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = multiseg(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["star", "--n", "8", "[1,1]+[3,4]+[4,7]", "[2,4]+[5,6]+[8,8]"]), "[4,8]+[3,6]+[1,4]\n");
    assert_eq!(stdout(&["rigid", "--n", "5", "[4,5]+[2,4]+[3,3]+[1,2]"]), "false\n");
    assert_eq!(stdout(&["dual", "--n", "5", "[4,5]"]), "[1,2]\n");
}

#[test]
fn every_subcommand_answers() {
    let nonrigid = "[4,5]+[2,4]+[3,3]+[1,2]";
    let cases: &[(&[&str], &str)] = &[
        (&["hom", nonrigid, nonrigid], "3\n"),
        (&["ext1", nonrigid, nonrigid], "2\n"),
        (&["commute", "[1,2]", "[2,3]"], "false\n"),
        (&["strong-commute", nonrigid, nonrigid], "true\n"),
        (&["mw", "[1,3]"], "[3,3]+[2,2]+[1,1]\n"),
        (&["grdim", nonrigid], "(1,2,2,2,1)\n"),
        (&["regular", "[1,2]+[1,3]"], "false\n"),
        (&["balanced", nonrigid], "false (type 4231 witness [2,4], [4,5], [3,3], [1,2])\n"),
        (&["split", "[1,2]+[2,3]+[3,3]"], "false\n"),
        (&["ladder", "[1,4]+[3,6]+[4,8]"], "true\n"),
        (&["factor", "[1,4]+[3,6]+[4,8]", "[1,1]+[3,4]+[4,7]"], "[8,8]+[5,6]+[2,4]\n"),
        (&["peel", "[1,4]+[3,6]+[4,8]"], "sigma Z([4,8])\nrest [3,6]+[1,4]\n"),
        (&["cw", "12"], "[2,3]+[1,2]\n"),
    ];
    for (args, want) in cases {
        assert_eq!(stdout(args), *want, "{args:?}");
    }
    assert!(stdout(&["matching", "[1,2]", "[2,3]"]).starts_with("true"));
    assert!(stdout(&["sigma-decompose", "--n", "4", "[1,3]+[2,3]+[1,2]", "Z[1,3]"]).contains("reduced [1,2]"));
}

#[test]
fn json_is_reproducible_without_timing() {
    let args = ["--json", "--no-timing", "--seed", "7", "star", "[4,7]+[5,6]+[2,5]+[3,4]+[1,3]", "[4,7]+[5,6]+[2,5]+[3,4]+[1,3]"];
    let a = multiseg(&args);
    let b = multiseg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["command", "inputs", "value", "trials", "error_bound", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "star");
    assert_eq!(v["trials"], 5);
    assert!(v["elapsed_ms"].is_null());
    assert!(v["error_bound"].as_f64().unwrap() < 2f64.powi(-40));
}

#[test]
fn environment_mirrors_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_multiseg"))
        .args(["dual", "[1,1]"])
        .env("MULTISEG_N", "4")
        .env("MULTISEG_JSON", "1")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], "[4,4]");
}

#[test]
fn exit_codes() {
    assert_eq!(multiseg(&["dual", "[2,"]).status.code(), Some(2));
    assert_eq!(multiseg(&["dual", "--n", "2", "[1,3]"]).status.code(), Some(2));
    assert_eq!(multiseg(&["sigma-decompose", "[1,2]", "X[1,2]"]).status.code(), Some(2));
    let not_rigid = "[4,5]+[2,4]+[3,3]+[1,2]";
    let out = multiseg(&["factor", not_rigid, not_rigid]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not rigid"));
    assert_eq!(multiseg(&["peel", "[1,2]+[1,3]"]).status.code(), Some(4));
}

#[test]
fn verify_suites() {
    let out = stdout(&["verify", "lm-sweep", "--k", "4"]);
    assert!(out.ends_with("lm-sweep: 24/24 passed\n"), "{out}");
    let out = stdout(&["verify", "mw-involution", "--samples", "100", "--n", "6"]);
    assert!(out.ends_with("mw-involution: 100/100 passed\n"));
    assert!(stdout(&["verify", "paper-examples"]).contains("paper-examples: 24/24 passed"));
    assert_eq!(multiseg(&["verify", "no-such-suite"]).status.code(), Some(2));
}
