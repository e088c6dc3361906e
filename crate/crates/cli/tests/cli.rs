use std::fs;
use std::process::{Command, Output};

fn qtheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtheta"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn eval_theta3_at_origin() {
    let o = qtheta(&["eval", "--fn", "theta3", "--z", "0,0", "--tau", "0,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1.086434811213308");
}

#[test]
fn eval_tan_q_at_quarter_pi() {
    for z in ["0.7853981633974483,0", "pi*0.25"] {
        let o = qtheta(&["eval", "--fn", "tan_q", "--z", z, "--tau", "0,1.3"]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).trim(), "1.000000000000000");
    }
    let o = qtheta(&[
        "eval", "--fn", "tan_q", "--z", "pi*0.25", "--tau", "0,1.3", "--method", "product",
    ]);
    assert_eq!(stdout(&o).trim(), "1.000000000000000");
}

#[test]
fn eval_theta1_vanishes_at_origin() {
    let o = qtheta(&["eval", "--fn", "theta1", "--z", "0,0", "--tau", "0,1"]);
    assert_eq!(stdout(&o).trim(), "0.000000000000000");
}

#[test]
fn eval_routes_agree() {
    let args = |m| {
        [
            "eval", "--fn", "theta2", "--z", "0.4,-0.2", "--tau", "0.2,1.3", "--method", m,
        ]
    };
    let s = stdout(&qtheta(&args("series")));
    let p = stdout(&qtheta(&args("product")));
    let parse = |t: &str| {
        t.trim()
            .split(',')
            .map(|v| v.parse::<f64>().unwrap())
            .collect::<Vec<_>>()
    };
    for (a, b) in parse(&s).iter().zip(parse(&p)) {
        assert!((a - b).abs() < 1e-13);
    }
}

#[test]
fn eval_error_codes() {
    assert_eq!(
        code(&qtheta(&[
            "eval", "--fn", "theta3", "--z", "0,0", "--tau", "0,-1"
        ])),
        2
    );
    assert_eq!(
        code(&qtheta(&[
            "eval", "--fn", "theta9", "--z", "0,0", "--tau", "0,1"
        ])),
        2
    );
    assert_eq!(
        code(&qtheta(&[
            "eval", "--fn", "theta3", "--z", "x", "--tau", "0,1"
        ])),
        2
    );
    assert_eq!(
        code(&qtheta(&[
            "eval", "--fn", "cot_q", "--z", "0,0", "--tau", "0,1"
        ])),
        3
    );
    assert_eq!(
        code(&qtheta(&[
            "eval", "--fn", "theta3", "--z", "0,400", "--tau", "0,1"
        ])),
        3
    );
    assert_eq!(code(&qtheta(&["eval"])), 2);
}

#[test]
fn verify_examples() {
    let o = qtheta(&[
        "verify", "--id", "thm1_tan", "--count", "500", "--seed", "42", "--tol", "1e-10",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("\"status\": \"pass\""));

    let o = qtheta(&[
        "verify", "--id", "thm2", "--count", "1", "--x", "pi*0.25", "--y", "pi*0.25",
    ]);
    assert_eq!(code(&o), 0);

    let o = qtheta(&[
        "verify", "--id", "thm1_tan", "--count", "20", "--tol", "1e-18",
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("\"max_abs_residual\""));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL thm1_tan"));

    assert_eq!(code(&qtheta(&["verify", "--id", "no_such_identity"])), 2);
    assert_eq!(
        code(&qtheta(&["verify", "--id", "thm2", "--count", "0"])),
        2
    );
}

#[test]
fn verify_writes_csv_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let o = qtheta(&[
        "verify",
        "--id",
        "cosq_shift",
        "--count",
        "5",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "id,mode,samples,certified_order,max_abs_residual,status,failures"
    );
    assert!(lines[1].starts_with("cosq_shift,numeric,15,,"));
}

#[test]
fn certify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("thm2.txt");
    let o = qtheta(&[
        "certify",
        "--id",
        "thm2",
        "--order",
        "12",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let cert = fs::read_to_string(&path).unwrap();
    assert!(cert.contains("lhs quarter_prefactor=4"));
    assert!(cert.contains("rhs quarter_prefactor=4"));
    assert!(cert.trim_end().ends_with("result equal through q^12"));

    assert_eq!(
        code(&qtheta(&[
            "certify",
            "--id",
            "duplication_12",
            "--order",
            "20"
        ])),
        0
    );
    assert_eq!(code(&qtheta(&["certify", "--id", "thm1_tan"])), 4);
}

#[test]
fn suite_fails_only_on_classical_limits() {
    let o = qtheta(&["suite", "--seed", "7", "--count", "40", "--format", "csv"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    let failing: Vec<&str> = out
        .lines()
        .skip(1)
        .filter(|l| l.contains(",fail,"))
        .map(|l| l.split(',').next().unwrap())
        .collect();
    assert_eq!(failing, ["classical_limit_tan", "classical_limit_cot"]);
}

#[test]
fn suite_passes_without_classical_limits() {
    let o = qtheta(&[
        "suite",
        "--seed",
        "7",
        "--count",
        "40",
        "--exclude",
        "classical_limit_tan",
        "--exclude",
        "classical_limit_cot",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn suite_at_a_single_tau() {
    let o = qtheta(&[
        "suite",
        "--tau",
        "0.3,1.1",
        "--count",
        "40",
        "--format",
        "text",
        "--exclude",
        "classical_limit_tan",
        "--exclude",
        "classical_limit_cot",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.contains(" pass ")));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["suite", "--seed", "3", "--count", "10", "--order", "6"];
    let a = qtheta(&args);
    let b = qtheta(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = qtheta(&["suite", "--seed", "4", "--count", "10", "--order", "6"]);
    assert_ne!(a.stdout, c.stdout);
}
