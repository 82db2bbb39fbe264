use std::fs;
use std::path::PathBuf;
use std::process::Command;

use slanted_rain::cli::{run, EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_VERIFY};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("slanted-rain").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("slanted-rain-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slanted-rain"))
}

#[test]
fn rain_commands() {
    let (code, out, _) = call(&["rain", "subrain", "--len", "19", "--target", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "rain(origin (0,1/6), step 6, length 3)\n");

    let (_, out, _) = call(&["rain", "gen", "--len", "3"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("(0,1/2)\n"));

    assert_eq!(call(&["rain", "contains", "--len", "3", "--point", "1,1"]).1, "true\n");
    assert_eq!(call(&["rain", "contains", "--len", "3", "--point", "2,1"]).1, "false\n");
    let (code, out, _) = call(&["rain", "contains", "--len", "3", "--dim", "3", "--point", "1,0,0"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "true\n"));
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["rain", "subrain", "--len", "5", "--target", "3"][..],
        &["rain", "gen", "--len", "3", "--step", "1/0"],
        &["rain", "gen", "--len", "3", "--step", "-1"],
        &["rain", "gen", "--len", "3", "--origin", "0,0,0"],
        &["find", "triangle", "--coloring", "nonsense:2"],
        &["find", "triangle", "--coloring", "hash:2:1", "--target", "0"],
        &["find", "simplex", "--dim", "1", "--coloring", "const:1:0"],
        &["vdw", "compute", "--colors", "2"],
        &["no-such-command"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_INVALID, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    assert_eq!(call(&["--version"]).0, EXIT_OK);
}

#[test]
fn find_then_verify_in_process() {
    let path = scratch("in-process.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["find", "triangle", "--coloring", "hash:3:0xbeef", "--out", p]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("color "));
    let (code, out, _) = call(&["verify", p]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("ok "));
}

#[test]
fn find_then_verify_in_fresh_process() {
    let path = scratch("fresh.json");
    let status = binary()
        .args(["find", "simplex", "--dim", "3", "--seed", "42", "--colors", "2", "--volume", "5/7", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"target\": [\n    15,\n    7\n  ]"));
    let out = binary().arg("verify").arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("product 15/7"));
}

#[test]
fn env_vars_mirror_flags() {
    let out = binary()
        .args(["find", "triangle"])
        .env("SLANTED_RAIN_COLORING", "const:1:0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"spec\": \"const:1:0\""));
    let out = binary()
        .args(["find", "triangle", "--seed", "9", "--colors", "4"])
        .env("SLANTED_RAIN_BUDGET_QUERIES", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BUDGET));
}

#[test]
fn many_certificates() {
    let (code, out, _) = call(&["find", "triangle", "--seed", "7", "--count", "3"]);
    assert_eq!(code, EXIT_OK);
    let path = scratch("many.json");
    fs::write(&path, &out).unwrap();
    let (code, out, _) = call(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().filter(|l| l.starts_with("ok ")).count(), 3);
}

#[test]
fn budget_exhaustion_exits_3() {
    let (code, _, err) = call(&["find", "triangle", "--seed", "3", "--colors", "4", "--budget-queries", "3"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(err.contains("max oracle queries"), "{err}");
    let (code, _, _) = call(&["vdw", "compute", "--colors", "2", "--ap", "5", "--budget-nodes", "10"]);
    assert_eq!(code, EXIT_BUDGET);
    let (code, _, err) = call(&["find", "triangle", "--seed", "1", "--colors", "3", "--faithful"]);
    assert_eq!(code, EXIT_BUDGET, "{err}");
}

#[test]
fn tampered_certificates_exit_4() {
    let (code, text, _) = call(&["find", "triangle", "--coloring", "const:2:1"]);
    assert_eq!(code, EXIT_OK);

    // Declared colour no longer matches.
    let recolored = text.replace("\"color\": 1", "\"color\": 0");
    let path = scratch("recolored.json");
    fs::write(&path, recolored).unwrap();
    let (code, out, _) = call(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.starts_with("FAIL "), "{out}");

    // Declared product no longer matches.
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["target"] = serde_json::json!([2, 1]);
    let path = scratch("product.json");
    fs::write(&path, v.to_string()).unwrap();
    assert_eq!(call(&["verify", path.to_str().unwrap()]).0, EXIT_VERIFY);

    // Not a standard simplex.
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["vertices"][1][1] = serde_json::json!([1, 3]);
    let path = scratch("shape.json");
    fs::write(&path, v.to_string()).unwrap();
    let (code, out, _) = call(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_VERIFY);
    assert!(out.contains("not the origin moved along axis 0"), "{out}");
}

#[test]
fn malformed_files_exit_2() {
    let path = scratch("garbage.json");
    fs::write(&path, "{ not json").unwrap();
    assert_eq!(call(&["verify", path.to_str().unwrap()]).0, EXIT_INVALID);
    fs::write(&path, r#"{"schema": "other", "version": 1, "spec": "const:1:0", "color": 0, "target": [1, 1], "vertices": []}"#)
        .unwrap();
    assert_eq!(call(&["verify", path.to_str().unwrap()]).0, EXIT_INVALID);
    assert_eq!(call(&["verify", "/nonexistent/cert.json"]).0, EXIT_INVALID);
}

#[test]
fn vdw_and_sr() {
    assert_eq!(call(&["vdw", "compute", "--colors", "2", "--ap", "3"]).1, "9\n");
    let (_, out, _) = call(&["vdw", "compute", "--colors", "2", "--ap", "3", "--witness"]);
    let witness = out.lines().nth(1).unwrap();
    assert_eq!(witness.len(), 8);
    assert_eq!(call(&["sr", "expr", "--colors", "2"]).1, "vdW_2(5)\n");
    assert_eq!(call(&["sr", "eval", "--colors", "2"]).1, "178\n");
    assert_eq!(call(&["sr", "eval", "--colors", "1", "--dim", "3"]).1, "2\n");
    let (code, _, err) = call(&["sr", "eval", "--colors", "3"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(err.contains("not in the known-values table"));

    let table = scratch("table.txt");
    fs::write(&table, "2 5 999 external\n").unwrap();
    assert_eq!(call(&["sr", "eval", "--colors", "2", "--vdw-table", table.to_str().unwrap()]).1, "999\n");
    fs::write(&table, "2 5\n").unwrap();
    assert_eq!(call(&["sr", "eval", "--colors", "2", "--vdw-table", table.to_str().unwrap()]).0, EXIT_INVALID);
}

#[test]
fn render_rejects_spatial_rains() {
    let (code, _, err) = call(&["rain", "render", "--len", "3", "--dim", "3"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("planar"));
}

#[test]
fn files_in_specs_are_read() {
    let rules = scratch("rules.txt");
    fs::write(&rules, "0 -> 0\n").unwrap();
    let spec = format!("banded:2:1:{}:1", rules.display());
    let (code, out, err) = call(&["find", "triangle", "--coloring", &spec]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(out.contains("\"color\": 1"));
}
