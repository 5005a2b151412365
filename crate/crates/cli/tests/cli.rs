use std::path::PathBuf;
use std::process::{Command, Output};

use leafalg::{parse_multivector, Multivector, VarContext};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leafalg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_spec(name: &str, extra: &[&str]) -> Output {
    let spec = data(name);
    let mut args = vec!["--spec", spec.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn temp_spec(tag: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("leafalg-{}-{tag}.spec", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key} = ");
    report
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key}` in report"))
}

#[test]
fn golden_reports() {
    for name in ["check_poisson", "flat_sections", "h3_char_class", "showcase"] {
        let out = run_spec(&format!("{name}.spec"), &[]);
        let golden = std::fs::read_to_string(data(&format!("{name}.report"))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden, "{name}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for name in ["check_poisson.spec", "flat_sections.spec", "h3_char_class.spec", "showcase.spec"] {
        let a = run_spec(name, &[]).stdout;
        let b = run_spec(name, &[]).stdout;
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run_spec("check_poisson.spec", &[]).status.code(), Some(0));
    assert_eq!(run_spec("showcase.spec", &[]).status.code(), Some(2));

    let bad = temp_spec("parse", "[variables]\nx, y\n[ideal I]\nx + * y\n");
    let out = run(&["--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4, column 5"), "{err}");

    let unknown = temp_spec("name", "[variables]\nx\n[query]\ncommand = der-basis\nideal = J\n");
    let out = run(&["--spec", unknown.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("unknown ideal `J`"));

    let nobiv = temp_spec("nobiv", "[variables]\nx\n[query]\ncommand = check-poisson\n");
    let out = run(&["--spec", nobiv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("`bivector`"));

    let out = run(&["--spec", "/nonexistent/leafalg.spec"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn non_poisson_bivector_fails_with_defect() {
    let spec = temp_spec(
        "jacobi",
        "[variables]\nx1, x2, x3\n[bivector]\nx1 x2 = x3\nx2 x3 = 3*x2\n[query]\ncommand = check-poisson\n",
    );
    let out = run(&["--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let report = String::from_utf8(out.stdout).unwrap();
    assert_eq!(value(&report, "status"), "failed");
    assert_eq!(value(&report, "defect"), "-6*x3 * d/dx1 ^ d/dx2 ^ d/dx3");
}

#[test]
fn out_flag_writes_the_report() {
    let target = std::env::temp_dir().join(format!("leafalg-{}-out.report", std::process::id()));
    let out = run_spec("h3_char_class.spec", &["--out", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(written, std::fs::read_to_string(data("h3_char_class.report")).unwrap());
}

#[test]
fn degree_bound_and_order_flags() {
    let spec = temp_spec(
        "der",
        "[variables]\nx, y\n[ideal I]\nx\n[query]\ncommand = der-basis\nideal = I\n",
    );
    let p = spec.to_str().unwrap();
    let low = String::from_utf8(run(&["--spec", p, "--degree-bound", "1"]).stdout).unwrap();
    assert_eq!(value(&low, "truncated_at"), "1");
    // x·∂x and (1, x, y)·∂y
    assert_eq!(value(&low, "dim"), "4");
    let lex = run(&["--spec", p, "--order", "lex"]);
    assert!(lex.status.success());
    assert_eq!(run(&["--spec", p, "--order", "bogus"]).status.code(), Some(3));
}

#[test]
fn report_values_reparse() {
    let report = String::from_utf8(run_spec("showcase.spec", &[]).stdout).unwrap();
    let ctx = VarContext::new(["x", "y", "z"]).unwrap();
    for key in ["bivector", "anchor", "bracket", "basis[13]"] {
        let text = value(&report, key);
        let parsed: Multivector = parse_multivector(text, &ctx).unwrap();
        assert_eq!(parsed.to_string(), text, "{key}");
    }
}
