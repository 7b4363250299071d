use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn wlimits(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlimits"))
        .args(args)
        .env_remove("WLIMITS_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classes_csv_has_two_rows() {
    let out = wlimits(&["classes", "--g", "4..5", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "g,lambda,delta_0,delta_1,delta_2\n4,1194,-130,-366,-488\n5,2632,-290,-848,-1272\n"
    );
}

#[test]
fn classes_json_uses_exact_strings() {
    let out = wlimits(&["classes", "--g", "5"]);
    let v = json(&out);
    assert_eq!(v["classes"][0]["lambda"], "2632");
    assert_eq!(v["classes"][0]["delta"][0], "-290");
}

#[test]
fn output_is_byte_identical_across_runs_and_widths() {
    let a = wlimits(&["classes", "--g", "4..14", "--jobs", "1"]);
    let b = wlimits(&["classes", "--g", "4..14", "--jobs", "3"]);
    let c = Command::new(env!("CARGO_BIN_EXE_wlimits"))
        .args(["classes", "--g", "4..14"])
        .env("WLIMITS_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let d = wlimits(&["verify", "chain", "--g", "2..6"]);
    let e = wlimits(&["verify", "chain", "--g", "2..6"]);
    assert_eq!(d.stdout, e.stdout);
}

#[test]
fn chain_profile_json() {
    let out = wlimits(&["chain", "--g", "5", "--i", "2", "--j", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["D"], serde_json::json!([2, 4, 2, 1]));
    assert_eq!(v["F"], serde_json::json!([1, 2]));
    assert_eq!(v["k"], 1);
    assert_eq!(v["ell"], 1);
}

#[test]
fn chain_without_j_lists_every_twist() {
    let v = json(&wlimits(&["chain", "--g", "5", "--i", "2"]));
    assert_eq!(v["profiles"].as_array().unwrap().len(), 6);
    assert!(v["wronskian_multiplicity"].is_object());
}

#[test]
fn testcurves_warns_without_failing() {
    let out = wlimits(&["testcurves", "--g", "6", "--i", "2"]);
    assert_eq!(code(&out), 0);
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(stderr.starts_with("WARNING\n"));
    assert!(stderr.contains("ratio 2"));
    let v = json(&out);
    let c = &v["test_curves"][0]["counts"]["1"];
    assert_eq!(c["e"], c["pairing"]);
    assert_eq!(v["pencil"]["pairing"]["-1"], "0");
    assert_eq!(v["pencil"]["pairing"]["1"], "0");
}

#[test]
fn verify_sw_intersection_passes() {
    let out = wlimits(&["verify", "sw-intersection", "--g", "4..12"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"][0]["cases"], 9);
}

#[test]
fn verify_all_passes() {
    let out = wlimits(&["verify", "all"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let ids: Vec<u64> = v["criteria"].as_array().unwrap().iter().map(|c| c["criterion"].as_u64().unwrap()).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<_>>());
}

#[test]
fn weierstrass_divisor_of_a_genus_two_curve() {
    let v = json(&wlimits(&["hyperelliptic", "--f", "x^5-1", "--op", "weierstrass"]));
    assert_eq!(v["total_weight"], 6);
    assert_eq!(v["expected_total"], 6);
}

#[test]
fn twisted_system_with_samples() {
    let out = wlimits(&["hyperelliptic", "--f", "x^5+1", "--op", "twisted", "--n", "3", "--pole", "0,1,1", "--point", "inf"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["total_weight"], v["pluecker_total"]);
    assert_eq!(v["samples"][0]["point"], "infinity");
}

#[test]
fn vprime_identity() {
    let v = json(&wlimits(&["hyperelliptic", "--f", "x^5-x", "--op", "vprime"]));
    assert_eq!(v["vanishing_identity_holds"], true);
    assert_eq!(v["q"]["y"], "0");
}

#[test]
fn limits_classify_default_curve() {
    let out = wlimits(&["limits", "classify", "--gx", "2", "--gy", "1", "--j", "-1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["curve"]["genus"], 2);
    assert!(v["result"]["by_j"]["-1"]["condition_i"].is_object());
}

#[test]
fn family_subcommands() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(br#"{"sections": [[[1, 1]], [[1, 1], [0, "1/2"]]]}"#).unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let sat = json(&wlimits(&["family", "--input", &path, "--op", "saturate"]));
    assert_eq!(sat["t_order_before"], 1);
    assert_eq!(sat["t_order_after"], 0);
    let w = json(&wlimits(&["family", "--input", &path, "--op", "wronskian"]));
    assert_eq!(w["t_order"], 1);
    let lim = json(&wlimits(&["family", "--input", &path, "--op", "limit"]));
    assert_eq!(lim["orders"], serde_json::json!([0, 1]));
    let short = wlimits(&["family", "--input", &path, "--op", "limit", "--trunc", "1"]);
    assert_eq!(code(&short), 1);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["hyperelliptic", "--f", "x^^5", "--op", "weierstrass"][..],
        &["hyperelliptic", "--f", "x^4-1", "--op", "weierstrass"],
        &["hyperelliptic", "--f", "x^5+1", "--op", "twisted", "--n", "3", "--trunc", "2"],
        &["classes", "--g", "2..5"],
        &["testcurves", "--g", "6", "--i", "4"],
        &["chain", "--g", "5", "--i", "7"],
        &["family", "--input", "/nonexistent/family.json", "--op", "limit"],
        &["classes", "--g", "4", "--jobs", "0"],
        &["no-such-command"],
    ] {
        let out = wlimits(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&wlimits(&["--help"])), 0);
}
