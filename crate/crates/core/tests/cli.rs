use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use khacoha::cli::{run, EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_USAGE};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("quivers").join(name).display().to_string()
}

fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut argv = vec!["khacoha"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn mul_on_jordan() {
    let q = fixture("jordan.q");
    let (code, out, _) = call(&["mul", "--quiver", &q, "--algebra", "coha-g", "1", "1"], "");
    assert_eq!((code, out.trim()), (EXIT_OK, "2"));
    let (code, out, _) = call(&["mul", "--quiver", &q, "--algebra", "kha-g", "1", "1"], "");
    assert_eq!((code, out.trim()), (EXIT_OK, "2"));
    let (code, out, _) = call(&["mul", "--quiver", &q, "--algebra", "coha-t", "1", "1"], "");
    assert_eq!((code, out.trim()), (EXIT_OK, "x[1,2] - x[1,1]"));
}

#[test]
fn mul_reads_stdin() {
    let q = fixture("jordan.q");
    let (code, out, _) = call(&["mul", "--quiver", &q, "--algebra", "coha-g", "-", "-"], "1\n\n1\n");
    assert_eq!((code, out.trim()), (EXIT_OK, "2"));
    let (code, out, _) = call(&["mul", "--quiver", &q, "--algebra", "kha-t", "-", "z[1,1]"], "2");
    assert_eq!(code, EXIT_OK);
    assert!(!out.trim().is_empty());
    let (code, _, _) = call(&["mul", "--quiver", &q, "--algebra", "kha-t", "-", "-"], "2\n");
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn parse_errors_exit_2() {
    let q = fixture("jordan.q");
    for bad in ["x[1,", "x[1,1]^-1", "x[1,1]*z[1,1]", "x[2,1]", "1/0"] {
        let (code, _, err) = call(&["mul", "--quiver", &q, "--algebra", "coha-g", bad, "1"], "");
        assert_eq!(code, EXIT_PARSE, "{bad}: {err}");
        assert!(err.starts_with("error:"));
    }
    let (code, _, err) = call(&["todd", "--quiver", &fixture("nonsymmetric.q"), "--kind", "mt"], "");
    assert_eq!(code, EXIT_PARSE);
    assert!(err.contains("(1,2)"), "{err}");
    let (code, _, _) = call(&["todd", "--quiver", &q, "--kind", "mt", "--gamma1", "1,1"], "");
    assert_eq!(code, EXIT_PARSE);
}

#[test]
fn usage_and_io_errors() {
    let (code, _, _) = call(&["frobnicate"], "");
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = call(&["verify", "--quiver", &fixture("jordan.q"), "--trials", "0"], "");
    assert_eq!(code, EXIT_USAGE);
    let (code, _, err) = call(&["todd", "--quiver", "/nonexistent/q.q", "--kind", "g"], "");
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("/nonexistent/q.q"));
}

#[test]
fn todd_outputs() {
    let q = fixture("jordan.q");
    let (code, out, _) = call(&["todd", "--quiver", &q, "--kind", "mg", "--degree", "0"], "");
    assert_eq!((code, out.trim()), (EXIT_OK, "1"));
    let (code, out, _) = call(&["todd", "--quiver", &q, "--kind", "twist-c"], "");
    assert_eq!((code, out.trim()), (EXIT_OK, "1"));
    let two = fixture("two-loop.q");
    let (code, out, _) = call(&["todd", "--quiver", &two, "--kind", "twist-c", "--degree", "2"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("1/2*x[1,1]") && out.contains("1/8*x[1,1]^2"), "{out}");
}

#[test]
fn verify_text_and_json_lines() {
    let q = fixture("jordan.q");
    let args = ["verify", "--quiver", &q, "--degree", "4", "--trials", "2", "--seed", "7"];
    let (code, text, _) = call(&args, "");
    assert_eq!(code, EXIT_OK);
    assert!(text.lines().count() > 0 && text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json-lines"]);
    let (code, json, _) = call(&json_args, "");
    assert_eq!(code, EXIT_OK);
    assert_eq!(json.lines().count(), text.lines().count());
    for line in json.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["quiver"], "jordan");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["degree"], 4);
    }
    let (_, again, _) = call(&json_args, "");
    assert_eq!(json, again);
}

#[test]
fn verify_single_suite() {
    let q = fixture("two-vertex.q");
    let (code, out, _) =
        call(&["verify", "--quiver", &q, "--suite", "todd", "--gamma1", "1,0", "--gamma2", "0,1", "--degree", "4"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().all(|l| l.starts_with("PASS todd")), "{out}");
}

#[test]
fn binary_round_trip() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_khacoha"))
        .args(["mul", "--quiver", &fixture("two-loop.q"), "--algebra", "coha-g", "-", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"x[1,1]\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert!(!String::from_utf8(out.stdout).unwrap().trim().is_empty());
}
