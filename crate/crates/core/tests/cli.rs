use std::io::Write;

use widefin::cli::run;

fn args(line: &str) -> Vec<String> {
    std::iter::once("widefin".to_string()).chain(line.split_whitespace().map(str::to_string)).collect()
}

#[test]
fn zigzag_cells_have_two_j_cells() {
    let out = run(args("cells zigzag.quiver"));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rep = out.report.unwrap();
    let counts = rep.table_named("cell-counts").unwrap();
    let j = counts.columns.iter().position(|c| c == "J").unwrap();
    assert_eq!(counts.rows[0][j], "2");
}

#[test]
fn a2_has_four_soergel_objects() {
    let out = run(args("coxeter a2.mat --objects"));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.report.unwrap().table_named("objects").unwrap().rows.len(), 4);
}

#[test]
fn empty_window_gives_empty_table() {
    let out = run(args("homdim zigzag.quiver --window 2 1"));
    assert_eq!(out.code, 0);
    assert!(out.report.unwrap().table_named("homdim").unwrap().rows.is_empty());
}

#[test]
fn output_is_reproducible() {
    for line in ["homdim zigzag.quiver --window -4 4", "cells rect_band.msg", "coxeter b2.mat --gradedrank 0 0,1", "fixture a2"] {
        let (a, b) = (run(args(line)), run(args(line)));
        assert_eq!(a.stdout, b.stdout, "{line}");
        let (a, b) = (run(args(&format!("--json {line}"))), run(args(&format!("--json {line}"))));
        assert_eq!(a.stdout, b.stdout, "{line}");
    }
}

#[test]
fn json_output_parses() {
    let out = run(args("--json coxeter a2.mat --poincare 0,1"));
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(v["tables"][1]["rows"][0][1], "1 + 2q + 2q^2 + q^3");
}

#[test]
fn bad_inputs_exit_two() {
    let dir = std::env::temp_dir().join(format!("widefin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("bad.mat", "1 3\n2 1\n"),
        ("asym.mat", "1 3\n4 1\n"),
        ("bad.quiver", "[window]\nnonsense\n"),
        ("bad.msg", "[labels]\na\n[products]\na * b = a\n"),
    ];
    for (name, body) in cases {
        let path = dir.join(name);
        std::fs::File::create(&path).unwrap().write_all(body.as_bytes()).unwrap();
        let cmd = if name.ends_with(".mat") { "coxeter" } else { "cells" };
        let extra = if name.ends_with(".mat") { " --objects" } else { "" };
        let out = run(args(&format!("{cmd} {}{extra}", path.display())));
        assert_eq!(out.code, 2, "{name}: {}", out.stderr);
    }
    assert_eq!(run(args("cells no-such-file")).code, 2);
    assert_eq!(run(args("coxeter a2.mat --poincare 7")).code, 2);
    assert_eq!(run(args("frobnicate")).code, 2);
}
