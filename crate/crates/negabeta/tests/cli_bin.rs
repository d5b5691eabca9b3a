//! End-to-end checks against the compiled binary: process isolation makes
//! the step-budget environment variable safe to exercise.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_negabeta"))
}

#[test]
fn spec_invocations() {
    let out = bin()
        .args(["finiteness", "--poly", "1,-1,-1,-1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: MinusF"), "{text}");

    let out = bin()
        .args(["frmax", "--m", "2", "--op", "sub"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("certified max fr = 9"));

    let out = bin()
        .args(["expand", "--poly", "1,-1,-1,-1", "--num", "0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("0 • 0^ω"));
}

#[test]
fn step_budget_env_is_honored() {
    // an absurdly small budget makes the orbit command overflow
    let out = bin()
        .env("NEGABETA_STEP_BUDGET", "1")
        .args(["expand", "--poly", "1,-1,-1,-1", "--num", "1/3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("step budget"));
    // while the default budget succeeds
    let out = bin()
        .args(["expand", "--poly", "1,-1,-1,-1", "--num", "1/3"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn json_outputs_roundtrip_byte_identically() {
    for args in [
        vec!["finiteness", "--poly", "1,-1,-1,-1", "--json"],
        vec!["expand", "--poly", "1,-1,-1", "--num", "1", "--json"],
        vec!["orbit", "--poly", "1,-1,-1,-1", "--num", "0", "--json"],
        vec!["witness", "--poly", "1,-2, -1,-1", "--json"],
        vec!["frmax", "--m", "1", "--op", "sub", "--json"],
        vec!["regions", "--m", "2", "--box", "4", "--json"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert!(out.status.success(), "failed: {args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(
            v.to_string(),
            text.trim(),
            "non-canonical JSON for {args:?}"
        );
        // determinism across invocations
        let again = bin().args(&args).output().unwrap();
        assert_eq!(text, String::from_utf8(again.stdout).unwrap());
    }
}

#[test]
fn usage_error_exit_code() {
    let out = bin().args(["frmax", "--m", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
