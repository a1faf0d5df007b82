use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use noins_core::costmodel::{compare, Scenario};
use noins_core::group::{Group, Secp256k1};
use noins_core::store::{from_json, TrustFile};
use noins_core::vehicle::V2xAuthMessage;
use noins_core::verification::{reconstruct_pkv, verify_v2x};
use noins_core::wire::{WireObject, Widths};

fn noins(store: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noins"))
        .env("NOINS_STORE_DIR", store)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(store: &Path, args: &[&str]) -> String {
    let out = noins(store, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn pipeline(store: &Path, profile: &str) {
    let seeded = |rest: &[&str]| {
        let mut args = vec!["--seed", "42", "--profile", profile];
        args.extend_from_slice(rest);
        ok(store, &args)
    };
    seeded(&["ca", "init"]);
    seeded(&["vehicle", "keygen", "--count", "4", "--n-cs", "5"]);
    seeded(&["ca", "issue", "--batch", "3"]);
    seeded(&["vehicle", "accept"]);
    seeded(&["vehicle", "gen", "--cred", "2", "--all"]);
    seeded(&["vehicle", "sign", "--cred", "2", "--j", "4", "--msg", "lane change"]);
}

#[test]
fn scripted_pipeline_verifies() {
    for profile in ["production", "toy"] {
        let dir = tempfile::tempdir().unwrap();
        pipeline(dir.path(), profile);
        let out = ok(dir.path(), &["verify", "--bundle", dir.path().join("msg-2-4.bin").to_str().unwrap(), "--now", "1000"]);
        assert!(out.contains("accepted=true"), "{out}");
        assert!(out.contains("message=lane change"));
    }
}

#[test]
fn tampered_bundle_exits_2_with_reason() {
    let dir = tempfile::tempdir().unwrap();
    pipeline(dir.path(), "production");
    let path = dir.path().join("msg-2-4.bin");
    let mut bytes = fs::read(&path).unwrap();
    let last = bytes.len() - 1;
    bytes[last] ^= 0x01;
    let bad = dir.path().join("bad.bin");
    fs::write(&bad, &bytes).unwrap();
    let out = noins(dir.path(), &["verify", "--bundle", bad.to_str().unwrap(), "--now", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("reason=signature"));

    let out = noins(dir.path(), &["verify", "--bundle", path.to_str().unwrap(), "--msg", "other", "--now", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("reason=signature"));

    fs::write(&bad, &bytes[..40]).unwrap();
    let out = noins(dir.path(), &["verify", "--bundle", bad.to_str().unwrap(), "--now", "1000", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["reason"], "format");
}

#[test]
fn exit_codes_for_usage_and_io() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(noins(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(noins(dir.path(), &["compare", "--n-c", "x"]).status.code(), Some(1));
    assert_eq!(noins(dir.path(), &["compare", "--n-c", "510"]).status.code(), Some(1));
    let missing = dir.path().join("nope.bin");
    assert_eq!(noins(dir.path(), &["verify", "--bundle", missing.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(noins(dir.path(), &["vehicle", "accept"]).status.code(), Some(3));
    assert!(noins(dir.path(), &["--help"]).status.success());
}

#[test]
fn attribute_finds_the_issuing_credential() {
    let dir = tempfile::tempdir().unwrap();
    pipeline(dir.path(), "production");
    let gen: Value = serde_json::from_str(&ok(dir.path(), &["--format", "json", "vehicle", "gen", "--cred", "1", "--j", "3"])).unwrap();
    let slv = gen["generated"][0]["slv"].as_str().unwrap().to_string();
    let at: Value = serde_json::from_str(&ok(dir.path(), &["--format", "json", "ca", "attribute", "--slv", &slv, "--n-cs", "5"])).unwrap();
    assert_eq!(at["serial"], 1);
    assert_eq!(at["j"], 3);
    let out = noins(dir.path(), &["ca", "attribute", "--slv", "000000000000000000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_puts_noins_below_simpl() {
    let dir = tempfile::tempdir().unwrap();
    let v: Value = serde_json::from_str(&ok(dir.path(), &["--format", "json", "compare", "--n-c", "500"])).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let get = |a: &str| rows.iter().find(|r| r["approach"] == a).unwrap();
    for key in ["obtain_bytes", "total_delay_s"] {
        assert!(get("noins")[key].as_f64() < get("simpl")[key].as_f64(), "{key}");
    }
    let csv = ok(dir.path(), &["--format", "csv", "compare", "--n-c", "500,1000"]);
    assert_eq!(csv.lines().count(), 7);
    assert!(csv.starts_with("approach,n_c,"));
    let table = ok(dir.path(), &["compare", "--scenario", "large", "--rsa-sizes"]);
    assert!(table.contains("scenario large"));
}

#[test]
fn cli_json_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let cli = ok(dir.path(), &["--format", "json", "compare", "--n-c", "500,3000", "--scenario", "large"]);
    let lib = compare(&[500, 3000], 50, &Scenario::large_city(), &Widths::of::<Secp256k1>()).unwrap();
    // textual comparison keeps floats exact
    assert_eq!(cli.trim_end(), serde_json::to_string_pretty(&serde_json::to_value(lib).unwrap()).unwrap());

    pipeline(dir.path(), "production");
    let path = dir.path().join("msg-2-4.bin");
    let cli: Value = serde_json::from_str(&ok(
        dir.path(),
        &["--format", "json", "verify", "--bundle", path.to_str().unwrap(), "--now", "1000"],
    ))
    .unwrap();
    let trust = from_json::<TrustFile>(&fs::read_to_string(dir.path().join("trust.json")).unwrap())
        .unwrap()
        .to_store::<Secp256k1>()
        .unwrap();
    let msg = V2xAuthMessage::<Secp256k1>::decode(&fs::read(&path).unwrap()).unwrap();
    let accepted = verify_v2x(&msg, &trust, 1000).unwrap();
    let pkv = reconstruct_pkv(&msg.cert, &msg.san_public, &trust.ca_public);
    assert_eq!(accepted.public, pkv);
    assert_eq!(cli["public"], hex::encode(Secp256k1::point_to_bytes(&pkv)));
    assert_eq!(cli["cohort_id"], accepted.cohort_id);
}

#[test]
fn selftest_runs_toy_checks() {
    let dir = tempfile::tempdir().unwrap();
    let v: Value = serde_json::from_str(&ok(dir.path(), &["--format", "json", "selftest", "--credentials", "3"])).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["toy"]["checks"].as_array().unwrap().len(), 5);
}
