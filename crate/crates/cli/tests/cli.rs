use std::process::{Command, Output};

fn hlvkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlvkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn macdonald_text() {
    let o = hlvkit(&["macdonald", "--lambda", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m[2] + (q+1)*m[1,1]\n");
}

#[test]
fn hall_littlewood_text() {
    let o = hlvkit(&["hall-littlewood", "--lambda", "1,1"]);
    assert_eq!(stdout(&o), "m[2] + m[1,1]\n");
}

#[test]
fn poincare_instances() {
    let o = hlvkit(&["poincare", "--genus", "0", "--rank", "2", "--mults", "1,1;1,1;1,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "1\n");
    let o = hlvkit(&["poincare", "--genus", "1", "--rank", "1", "--mults", "1"]);
    assert_eq!(stdout(&o), "s^2 - 2*s + 1\n");
    let o = hlvkit(&["poincare", "--genus", "0", "--rank", "2", "--mults", "1,1;1,1;1,1;1,1"]);
    assert_eq!(stdout(&o), "5*s^2 + 1\n");
}

#[test]
fn poincare_json() {
    let o = hlvkit(&[
        "--json",
        "poincare",
        "--genus",
        "0",
        "--rank",
        "2",
        "--mults",
        "1,1;1,1;1,1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 0);
    assert_eq!(v["text"], "1");
}

#[test]
fn kernel_and_hlog() {
    let o = hlvkit(&["kernel", "--genus", "0", "--punctures", "1", "--tmax", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("T^1:"));
    let o = hlvkit(&["hlog", "--genus", "0", "--punctures", "2", "--Tmax", "2"]);
    assert_eq!(stdout(&o), "T^1: m[1][X1]*m[1][X2]\n");
}

#[test]
fn springer_series() {
    let o = hlvkit(&["springer", "--lambda", "2", "--mu", "1,1", "--tmax", "0"]);
    assert_eq!(stdout(&o), "t^0: q + 1\n");
}

#[test]
fn classify_reports_precision() {
    let o = hlvkit(&["--json", "classify", "--matrix", "0,x;0,0 @p=2,m=4"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["type"], serde_json::json!([1, 1]));
    assert_eq!(v["degree"], 1);
    assert_eq!(v["special_fibre_type"], serde_json::json!([2]));
    assert!(v["working_precision"].as_i64().unwrap() >= 4);
}

#[test]
fn verify_flags_passes() {
    let o = hlvkit(&["verify", "--suite", "flags", "--p", "2", "--max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status=PASS"));
}

#[test]
fn exit_codes() {
    assert_eq!(hlvkit(&["bogus"]).status.code(), Some(64));
    assert_eq!(hlvkit(&["macdonald"]).status.code(), Some(64));
    assert_eq!(hlvkit(&["macdonald", "--lambda", "2,3"]).status.code(), Some(1));
    assert_eq!(hlvkit(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(
        hlvkit(&["poincare", "--genus", "0", "--rank", "2", "--mults", "2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(hlvkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["kernel", "--genus", "1", "--punctures", "2", "--tmax", "2"];
    let a = stdout(&hlvkit(&args));
    let b = stdout(&hlvkit(&args));
    assert_eq!(a, b);
}
