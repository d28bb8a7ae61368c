//! Exit codes and reports of the `mpsolve` command line.

mod common;

use std::fs;
use std::path::PathBuf;
use std::process::Command;

use mpsolve::cli::main_with_args;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["mpsolve"];
    full.extend_from_slice(args);
    let code = main_with_args(full, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn data(name: &str) -> String {
    common::data(name).to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mpsolve-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn value<'a>(report: &'a str, key: &str) -> &'a str {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(" = ")))
        .unwrap_or_else(|| panic!("no `{key}` in report"))
}

#[test]
fn solve_quartic_writes_report_and_solution() {
    let dir = scratch("solve");
    let out = dir.to_string_lossy().into_owned();
    let r = run(&["solve", &data("quartic.cfg"), "--out", &out, "--samples", "500"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(value(&r.stdout, "solve.converged"), "true");
    assert_eq!(value(&r.stdout, "solve.status"), "converged");
    assert_eq!(fs::read_to_string(dir.join("report.txt")).unwrap(), r.stdout);
    let csv = fs::read_to_string(dir.join("solution.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some("t,u1"));
    assert_eq!(csv.lines().count(), 66);
}

#[test]
fn reports_are_byte_identical() {
    let args = [
        "solve",
        &data("quartic_forced.cfg"),
        "--grid-n",
        "32",
        "--samples",
        "300",
        "--seed",
        "7",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(value(&a.stdout, "seed"), "7");
    assert_eq!(value(&a.stdout, "problem.grid.n"), "32");
}

#[test]
fn failing_gate_a_exits_one() {
    let r = run(&["gates", &data("quartic_rho2.cfg")]);
    assert_eq!(r.code, 1);
    assert_eq!(value(&r.stdout, "gate.A.holds"), "false");
    assert_eq!(value(&r.stdout, "gate.A.lhs"), "1.6000000000000000e1");
    let rhs: f64 = value(&r.stdout, "gate.A.rhs").parse().unwrap();
    assert!((rhs - 2f64.sqrt()).abs() < 1e-9);

    let ok = run(&["gates", &data("quartic.cfg")]);
    assert_eq!(ok.code, 0);
    assert_eq!(value(&ok.stdout, "gate.B.lhs"), "6.2500000000000000e-2");
}

#[test]
fn violated_hypotheses_exit_one() {
    assert_eq!(run(&["check", &data("quartic.cfg"), "--samples", "500"]).code, 0);
    let dir = scratch("check");
    let cfg = dir.join("theta.cfg");
    let text = fs::read_to_string(common::data("quartic.cfg")).unwrap();
    fs::write(&cfg, text.replace("witness.theta_F = 2", "witness.theta_F = 1.5")).unwrap();
    let r = run(&["check", &cfg.to_string_lossy(), "--samples", "500"]);
    assert_eq!(r.code, 1);
    assert_eq!(value(&r.stdout, "hypothesis.F3.verdict"), "violated");
    assert_eq!(value(&r.stdout, "hypothesis.all_passed"), "false");
}

#[test]
fn verify_exact_solution_and_perturbation() {
    let r = run(&["verify", &data("linear.cfg"), "--input", &data("linear_exact.csv")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let weak: f64 = value(&r.stdout, "residual.weak").parse().unwrap();
    assert!(weak < 1e-10);

    let dir = scratch("verify");
    let bumped = dir.join("bumped.csv");
    let csv: String = fs::read_to_string(common::data("linear_exact.csv"))
        .unwrap()
        .lines()
        .enumerate()
        .map(|(i, l)| {
            if i == 51 {
                "0.5,-0.13\n".to_string()
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    fs::write(&bumped, csv).unwrap();
    let r = run(&["verify", &data("linear.cfg"), "--input", &bumped.to_string_lossy()]);
    assert_eq!(r.code, 1);
    assert_eq!(value(&r.stdout, "passed"), "false");
}

#[test]
fn indices_and_norms_succeed() {
    let r = run(&["indices", &data("quartic.cfg")]);
    assert_eq!(r.code, 0);
    let p: f64 = value(&r.stdout, "indices.p_G").parse().unwrap();
    assert!((p - 2.0).abs() < 1e-6);
    let r = run(&["norms", &data("linear.cfg"), "--input", &data("linear_exact.csv")]);
    assert_eq!(r.code, 0);
    assert_eq!(value(&r.stdout, "norms.sup_norm"), "1.2500000000000000e-1");
}

#[test]
fn errors_carry_codes() {
    let dir = scratch("errors");
    let bad_theta = dir.join("theta.cfg");
    let text = fs::read_to_string(common::data("quartic.cfg")).unwrap();
    fs::write(&bad_theta, text.replace("witness.theta_V = 4", "witness.theta_V = 1.5")).unwrap();
    let r = run(&["check", &bad_theta.to_string_lossy()]);
    assert_eq!(r.code, 2);
    assert!(
        r.stderr
            .starts_with("error[invalid_problem]: theta_V: θ_V > θ_F required"),
        "{}",
        r.stderr
    );

    let garbled = dir.join("garbled.cfg");
    fs::write(&garbled, text.replace("V.theta = 4", "V.theta 4")).unwrap();
    let r = run(&["check", &garbled.to_string_lossy()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("error[parse_error]: line 11:"), "{}", r.stderr);

    let r = run(&["verify", &data("linear.cfg")]);
    assert_eq!((r.code, r.stderr.starts_with("error[usage]")), (2, true));
    let r = run(&["check", "/nonexistent/problem.cfg"]);
    assert_eq!((r.code, r.stderr.starts_with("error[io_error]")), (2, true));
    assert_eq!(run(&["frobnicate", &data("quartic.cfg")]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn binary_matches_library_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_mpsolve"))
        .args(["gates", &data("quartic_rho2.cfg")])
        .env("MPSOLVE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        run(&["gates", &data("quartic_rho2.cfg")]).stdout
    );
}
