use std::process::Command;

fn dimlab(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dimlab")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn functor_prints_invariants() {
    assert_eq!(dimlab(&["functor", "l1sp2", "--group", "2,4"]), (0, "2\n".to_string()));
}

#[test]
fn check_emits_a_json_report() {
    let (code, out) = dimlab(&["check", "fg1", "--rank", "2", "--exponents", "4,2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["status"], "VERIFIED");
    assert_eq!(v[0]["lhs_invariants"], serde_json::json!([2, 4]));
}

#[test]
fn limit_reads_a_presentation_file() {
    let pres = concat!(env!("CARGO_MANIFEST_DIR"), "/data/presentations/z2_z4.pres");
    assert_eq!(dimlab(&["limit", "--rep", "gamma2_mod3", "--pres", pres]), (0, "2\n".to_string()));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(dimlab(&["check", "fg1", "--exponents", "2,4"]).0, 2);
    assert_eq!(dimlab(&["check", "nosuch", "--exponents", "2"]).0, 2);
    assert_eq!(dimlab(&["suite", "--preset", "huge"]).0, 2);
}

#[test]
fn report_file_is_written() {
    let path = std::env::temp_dir().join(format!("dimlab-report-{}.json", std::process::id()));
    let (code, _) = dimlab(&["suite", "--preset", "smoke", "--jobs", "2", "--report", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v.as_array().is_some_and(|a| !a.is_empty()));
    std::fs::remove_file(path).unwrap();
}
