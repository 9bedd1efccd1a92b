use assert_cmd::Command;
use predicates::prelude::*;

fn width3() -> Command {
    Command::cargo_bin("width3").unwrap()
}

#[test]
fn table_height_6_matches_the_fixture() {
    width3()
        .args(["table", "--max-height", "6"])
        .assert()
        .success()
        .stdout(width3::CLASSIFICATION_FIXTURE);
}

#[test]
fn table_output_is_deterministic() {
    let a = width3().args(["table", "--max-height", "4"]).output().unwrap();
    let b = width3().args(["table", "--max-height", "4"]).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_the_height_2_crown_stack() {
    width3()
        .args(["classify", "11"])
        .assert()
        .success()
        .stdout("height\t2\nwidth\t3\nsection\ty\nnice\ty\nhorizon\t2\nautomorphic\ty\n");
}

#[test]
fn build_emits_poset_json() {
    width3()
        .args(["build", "1"])
        .assert()
        .success()
        .stdout(predicate::str::starts_with("{\"n\":6,\"lt\":["));
}

#[test]
fn check_retract_methods_agree_on_1001() {
    let split = width3()
        .args(["check-retract", "1001", "--method", "split"])
        .output()
        .unwrap();
    let both = width3()
        .args(["check-retract", "1001", "--method", "both"])
        .output()
        .unwrap();
    assert!(split.status.success() && both.status.success());
    assert!(String::from_utf8_lossy(&split.stdout).starts_with("{\"map\":["));
    assert_eq!(split.stdout, both.stdout);
}

#[test]
fn check_retract_reports_none_for_the_crown_pair() {
    width3()
        .args(["check-retract", "11", "--method", "both"])
        .assert()
        .success()
        .stdout("none\n");
}

#[test]
fn tiny_budget_exits_with_code_2() {
    width3()
        .args(["check-retract", "1001", "--method", "oracle", "--budget", "3"])
        .assert()
        .code(2);
}

#[test]
fn usage_errors_exit_with_code_1() {
    width3().args(["build", "12"]).assert().code(1);
    width3().args(["check-retract", "10", "--method", "split"]).assert().code(1);
    width3().args(["verify", "--suite", "nope"]).assert().code(1);
}

#[test]
fn theo32_positive_and_negative() {
    width3()
        .args(["theo32", "110101"])
        .assert()
        .success()
        .stdout(predicate::str::starts_with("cut\th_u=1 h_v=2 h_w=3"));
    width3().args(["theo32", "11"]).assert().success().stdout("none\n");
}

#[test]
fn dot_draws_levels_and_retraction_arrows() {
    width3()
        .args(["dot", "1"])
        .assert()
        .success()
        .stdout(predicate::str::contains("rank=same; n0; n1; n2;"));

    let dir = std::env::temp_dir().join("width3-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let cert = dir.join("cert-1001.json");
    let out = width3()
        .args(["check-retract", "1001", "--method", "split"])
        .output()
        .unwrap();
    std::fs::write(&cert, &out.stdout).unwrap();
    width3()
        .args(["dot", "1001", "--retraction", cert.to_str().unwrap()])
        .assert()
        .success()
        .stdout(predicate::str::contains("style=dashed"));
}

#[test]
fn emitted_certificates_re_validate() {
    let dir = std::env::temp_dir().join("width3-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    for (code, verb) in [("1001", "check-retract"), ("110101", "theo32")] {
        let out = width3().args([verb, code]).output().unwrap();
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        let json = text.lines().find(|l| l.starts_with('{')).unwrap();
        let path = dir.join(format!("cert-{code}-{verb}.json"));
        std::fs::write(&path, json).unwrap();
        width3()
            .args(["verify", "--suite", "certificates", code, "--retraction"])
            .arg(&path)
            .assert()
            .success()
            .stdout(predicate::str::starts_with("pass"));
    }
}

#[test]
fn tampered_certificates_fail_validation() {
    let dir = std::env::temp_dir().join("width3-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let out = width3()
        .args(["check-retract", "1001", "--method", "split"])
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    // Swap the first two entries of the map, breaking idempotence or
    // order preservation.
    let tampered = text.replacen("{\"map\":[0,1", "{\"map\":[1,0", 1);
    assert_ne!(text, tampered);
    let path = dir.join("cert-tampered.json");
    std::fs::write(&path, tampered).unwrap();
    width3()
        .args(["verify", "--suite", "certificates", "1001", "--retraction"])
        .arg(&path)
        .assert()
        .code(1)
        .stdout(predicate::str::starts_with("fail"));
}

#[test]
fn verify_counting_suite_passes() {
    width3()
        .args(["verify", "--suite", "counting"])
        .assert()
        .success()
        .stdout(predicate::str::contains("pass:"));
}
