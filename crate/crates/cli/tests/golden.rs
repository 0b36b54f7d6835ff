//! Compare reports against checked-in outputs. Set `UPDATE_GOLDEN=1` to
//! rewrite them.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

const CASES: &[(&str, &[&str])] = &[
    ("cohomology_sierpinski", &["cohomology", "--sheaf", "@sierpinski_const.sheaf"]),
    ("cohomology_circle", &["cohomology", "--sheaf", "@circle.sheaf"]),
    ("cohomology_jshriek", &["cohomology", "--sheaf", "@sierpinski_jshriek.sheaf"]),
    ("chi_zero", &["chi", "--sheaf", "@zero.sheaf"]),
    ("chi_circle", &["chi", "--sheaf", "@circle.sheaf"]),
    ("pushforward_open", &["pushforward", "--sheaf", "@eta_const.sheaf", "--map", "@open_immersion.map"]),
    ("base_change_open", &["base-change", "--sheaf", "@eta_const.sheaf", "--map", "@open_immersion.map"]),
    ("decompose_circle", &["decompose", "--sheaf", "@circle.sheaf"]),
    ("realize_sierpinski", &["realize", "--space", "@sierpinski.space", "--phi", "phi: s=2 eta=-1"]),
    ("sper_roots_cubic", &["sper", "roots", "--poly", "t^3 - 2*t"]),
    ("sper_set_sqrt2", &["sper", "set", "--formula", "t^2 - 2 < 0"]),
    ("sper_cells_sqrt2", &["sper", "cells", "--formula", "t^2 - 2 < 0"]),
    ("sper_push_square", &["sper", "push", "--poly", "t^2"]),
    ("sper_push_cubic", &["sper", "push", "--poly", "t^3 - 3*t"]),
    ("sper_push_json", &["--json", "sper", "push", "--poly", "t^2", "--formula", "t > 0"]),
    ("selftest", &["selftest", "--seed", "0"]),
];

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn conspec(args: &[&str]) -> (String, String, i32) {
    let args: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => data(f).display().to_string(),
            None => a.to_string(),
        })
        .collect();
    let out = Command::new(env!("CARGO_BIN_EXE_conspec")).args(&args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn reports_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut mismatched = Vec::new();
    for (name, args) in CASES {
        let (stdout, stderr, code) = conspec(args);
        assert_eq!(code, 0, "{name} failed: {stderr}");
        let path = dir.join(format!("{name}.out"));
        if update {
            fs::write(&path, &stdout).unwrap();
        } else if fs::read_to_string(&path).ok().as_deref() != Some(stdout.as_str()) {
            mismatched.push(format!("{name}:\n{stdout}"));
        }
    }
    assert!(mismatched.is_empty(), "outputs differ from golden files:\n{}", mismatched.join("\n"));
}

#[test]
fn sierpinski_cohomology_is_exactly_h0() {
    let (stdout, _, code) = conspec(&["cohomology", "--sheaf", "@sierpinski_const.sheaf"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "H^0: Z\n");
}

#[test]
fn sqrt2_interval_is_one_cell_between_roots() {
    let (stdout, _, _) = conspec(&["sper", "set", "--formula", "t^2 - 2 < 0"]);
    let lines: Vec<&str> = stdout.lines().collect();
    assert!(lines[2].starts_with("a1: root(t^2 - 2, "));
    assert!(lines[3].starts_with("a2: root(t^2 - 2, "));
    assert_eq!(lines[4], "set: (a1,a2)");
}

#[test]
fn json_mirrors_text_line_by_line() {
    for (_, args) in CASES.iter().filter(|(n, _)| !n.ends_with("json")) {
        let (text, _, _) = conspec(args);
        let mut with_json = vec!["--json"];
        with_json.extend_from_slice(args);
        let (json, _, _) = conspec(&with_json);
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let rebuilt: String = value
            .as_array()
            .unwrap()
            .iter()
            .map(|line| match (line.get("key"), line.get("value"), line.get("text")) {
                (Some(k), Some(v), None) => format!("{}: {}\n", k.as_str().unwrap(), v.as_str().unwrap()),
                (None, None, Some(t)) => format!("{}\n", t.as_str().unwrap()),
                _ => panic!("malformed line {line}"),
            })
            .collect();
        assert_eq!(rebuilt, text);
    }
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["cohomology", "--sheaf", "@bad_square.sheaf"], 1),
        (&["cohomology", "--sheaf", "@missing.sheaf"], 1),
        (&["sper", "roots", "--poly", "t^(1+1)"], 1),
        (&["sper", "roots", "--poly", "0"], 1),
        (&["sper", "push", "--poly", "3"], 1),
        (&["realize", "--space", "@sierpinski.space", "--phi", "q=1"], 1),
        (&["cohomology"], 1),
        (&["--help"], 0),
    ];
    for (args, expected) in cases {
        let (_, stderr, code) = conspec(args);
        assert_eq!(code, *expected, "{args:?}: {stderr}");
    }
    let (_, stderr, _) = conspec(&["cohomology", "--sheaf", "@bad_square.sheaf"]);
    assert!(stderr.contains("b<t"), "{stderr}");
}

#[test]
fn reports_are_deterministic() {
    for (_, args) in CASES {
        assert_eq!(conspec(args).0, conspec(args).0);
    }
}
