//! End-to-end runs of the binary against the bundled instance corpus.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_brnral-kit")
}

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json output")
}

#[test]
fn ff_z2_members_and_witness() {
    let out = run(&[
        "brnral",
        "ff",
        "-i",
        instance("ff-z2.json").to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["ambient"], serde_json::json!(["2"]));
    assert_eq!(v["members"]["order"], "1");
    assert_eq!(v["members"]["invariantFactors"], serde_json::json!([]));
    assert_eq!(v["witnesses"][0]["sigma"], "1");
    assert_eq!(v["witnesses"][0]["b"], "1");
    assert_eq!(v["witnesses"][0]["value"], "1/2");
}

#[test]
fn char0_z2_members_and_certificate() {
    let out = run(&[
        "brnral",
        "char0",
        "-i",
        instance("char0-z2.json").to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["members"]["order"], "1");
    assert_eq!(v["vanishing"]["imageValuesVanish"], true);
    assert_eq!(v["vanishing"]["imageClassesTrivial"], true);
}

#[test]
fn cohomology_h1_trivial_gamma() {
    // a context with trivial Γ has ambient H^1 = 0
    let dir = tempdir();
    let path = dir.join("trivial.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "version": "brnral-kit/1",
            "mode": "char-zero",
            "galois": {"gamma": {"order": 1, "table": [[0]]}, "h": 2, "qchar": [1]},
            "stabilizer": {"group": {"order": 2, "table": [[0,1],[1,0]]}, "action": [[0,1]]},
            "characters": "dual-of-stabilizer-ab",
            "pairing": "canonical"
        })
        .to_string(),
    )
    .unwrap();
    let out = run(&["cohomology", "h1", "-i", path.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["ambient"], serde_json::json!([]));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for (cmd, file) in [
        (vec!["brnral", "ff"], "ff-z2.json"),
        (vec!["brnral", "char0"], "char0-z2.json"),
        (vec!["subgroup", "build"], "torf-nonsplit.json"),
        (vec!["norm-table"], "real-s3.json"),
        (vec!["check", "real-orthogonality"], "real-s3.json"),
    ] {
        let path = instance(file);
        let mut args = cmd.clone();
        args.push("-i");
        args.push(path.to_str().unwrap());
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success(), "{:?} failed", args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {:?}", args);
    }
}

#[test]
fn oracle_verify_passes_on_bundled_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    let mut count = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        count += 1;
        let out = run(&["oracle", "verify", "-i", path.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "oracle verify failed on {}: {}",
            path.display(),
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert!(
        count >= 5,
        "expected a bundled corpus, found {} files",
        count
    );
}

#[test]
fn parallel_jobs_agree_with_serial() {
    let path = instance("real-s3.json");
    let serial = run(&["norm-table", "-i", path.to_str().unwrap(), "--jobs", "1"]);
    let parallel = run(&["norm-table", "-i", path.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn exit_codes() {
    // 0: success
    assert_eq!(
        run(&[
            "brnral",
            "ff",
            "-i",
            instance("ff-z2.json").to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    // 2: mode mismatch is a usage error
    assert_eq!(
        run(&[
            "brnral",
            "ff",
            "-i",
            instance("char0-z2.json").to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
    // 2: parse error
    let dir = tempdir();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(
        run(&["brnral", "ff", "-i", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    // 1: mathematical rejection (level bound too small for the chase)
    assert_eq!(
        run(&[
            "subgroup",
            "build",
            "-i",
            instance("torf-nonsplit.json").to_str().unwrap(),
            "--max-level",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
}

#[test]
fn subgroup_build_certificate_passes() {
    for file in ["torf-split.json", "torf-nonsplit.json"] {
        let out = run(&["subgroup", "build", "-i", instance(file).to_str().unwrap()]);
        let v = stdout_json(&out);
        for key in [
            "exactRow",
            "containsNdTorsion",
            "orderProduct",
            "embeddingIsHom",
            "sectionVanishes",
            "actionRestrictsAmbient",
        ] {
            assert_eq!(v["certificate"][key], true, "{} in {}", key, file);
        }
    }
}

#[test]
fn enlarge_split_doubles_torus() {
    let out = run(&[
        "subgroup",
        "enlarge",
        "-i",
        instance("enlarge-split.json").to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["order"], "4");
    assert_eq!(v["surjectsOntoF"], true);
    assert_eq!(v["torusPartNormalized"], true);
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("brnral-kit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
