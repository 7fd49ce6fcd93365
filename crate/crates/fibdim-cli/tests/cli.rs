//! End-to-end tests of the fibdim binary: pinned outputs on the shipped
//! sample files, byte-level determinism of the JSON surface, cache
//! transparency, and the documented exit codes.

use serde_json::Value;
use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/../../testdata/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Run the binary with a throwaway cache directory; returns (exit code,
/// stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let cache = tempfile::tempdir().unwrap();
    run_with_cache(args, cache.path().to_str().unwrap())
}

fn run_with_cache(args: &[&str], cache_dir: &str) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fibdim"))
        .args(args)
        .env("FIBDIM_CACHE_DIR", cache_dir)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "expected success, stderr: {stderr}");
    serde_json::from_str(&stdout).expect("machine report is valid JSON")
}

#[test]
fn fd_free_module_is_ambient_rank() {
    let v = json(&["fd", &data("free.fmod"), "--json"]);
    assert_eq!(v["fd"], 2);
    assert_eq!(v["agree"], true);
    let methods = v["methods"].as_object().unwrap();
    assert_eq!(methods.len(), 3);
    assert!(methods.values().all(|m| m == &Value::from(2)));
}

#[test]
fn fd_maximal_ideal_pinned() {
    let v = json(&["fd", &data("ideal.fmod"), "--json"]);
    assert_eq!(v["fd"], 1);
    assert_eq!(v["agree"], true);
    assert_eq!(v["input"]["label"], "maximal ideal (z1, z2)");
    assert_eq!(v["input"]["homogeneous"], true);
    assert!(v["cap"].as_u64().is_some());
}

#[test]
fn fd_zero_generator_only() {
    let v = json(&["fd", &data("zero.fmod"), "--json"]);
    assert_eq!(v["fd"], 0);
    assert_eq!(v["agree"], true);
}

#[test]
fn fd_inhomogeneous_downgrades_with_warning() {
    let (code, stdout, stderr) = run(&["fd", &data("inhomogeneous.fmod"), "--json"]);
    assert_eq!(code, 0);
    assert!(stderr.contains("warning:"), "stderr: {stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["fd"], 1);
    let methods = v["methods"].as_object().unwrap();
    assert_eq!(methods.len(), 1, "generic rank only");
    assert!(methods.contains_key("generic_rank"));
    assert!(v.get("cap").is_none(), "no cap without graded methods");
    assert!(!v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn fd_translate_preserves_fd_and_downgrades() {
    let v = json(&["fd", &data("ideal.fmod"), "--translate", "1/2,-1", "--json"]);
    assert_eq!(v["fd"], 1, "fiber dimension is translation invariant");
    assert_eq!(v["translate"], Value::from(vec!["1/2", "-1"]));
    assert_eq!(v["methods"].as_object().unwrap().len(), 1);
    let warning = v["warnings"][0].as_str().unwrap();
    assert!(warning.contains("translation"), "warning: {warning}");
}

#[test]
fn hilbert_table_pinned() {
    let v = json(&["hilbert", &data("ideal.fmod"), "--max-degree", "6", "--json"]);
    assert_eq!(v["dims"], Value::from(vec![0, 2, 3, 4, 5, 6, 7]));
    assert_eq!(v["partial_sums"], Value::from(vec![0, 0, 2, 5, 9, 14, 20, 27]));
    assert_eq!(v["leading_value"], 1);
    assert_eq!(v["cap"], 6);
}

#[test]
fn samuel_pinned_values() {
    let v = json(&["samuel", &data("tangent.fmod"), "--json"]);
    assert_eq!((v["c_t"].as_u64(), v["c_s"].as_u64(), v["fd_limit"].as_u64()),
               (Some(2), Some(1), Some(1)));

    let v = json(&["samuel", &data("zero.fmod"), "--json"]);
    assert_eq!(v["c_s"], 2, "zero module: c(S) = N");
    assert_eq!(v["fd_limit"], 0);

    let v = json(&["samuel", &data("free.fmod"), "--json"]);
    assert_eq!(v["c_s"], 0, "full module: c(S) = 0");
    assert_eq!(v["fd_limit"], 2);
}

#[test]
fn lattice_worked_pair() {
    let v = json(&[
        "lattice",
        &data("pair_left.fmod"),
        &data("pair_right.fmod"),
        "--witness",
        "--json",
    ]);
    assert_eq!(v["fd1"], 2);
    assert_eq!(v["fd2"], 1);
    assert_eq!(v["fd_sum"], 2);
    assert_eq!(v["fd_intersection"], 1);
    assert_eq!(v["d_prime"], 1);
    assert_eq!(v["equality_holds"], true);
    assert_eq!(v["witness_count"], 1);
    let witness = v["witnesses"][0].as_array().unwrap();
    assert_eq!(witness.len(), 2, "one component per ambient coordinate");
    assert_eq!(witness[0], "0", "first component vanishes");
    assert!(witness[1].as_str().unwrap().ends_with(":1"), "second is c·z");
}

#[test]
fn lattice_transversal_ideals() {
    let v = json(&[
        "lattice",
        &data("transversal_a.fmod"),
        &data("transversal_b.fmod"),
        "--json",
    ]);
    assert_eq!(v["fd_sum"], 1);
    assert_eq!(v["fd_intersection"], 1);
    assert_eq!(v["equality_holds"], true);
    assert!(v.get("witnesses").is_none(), "witnesses only under --witness");
    assert_eq!(v["witness_count"], 1);
}

#[test]
fn lattice_identical_files() {
    let path = data("ideal.fmod");
    let v = json(&["lattice", &path, &path, "--witness", "--json"]);
    assert_eq!(v["d_prime"], 1, "d' equals fd for identical modules");
    assert_eq!(v["fd_intersection"], 1);
    assert_eq!(v["equality_holds"], true);
    assert_eq!(v["witness_count"], 1);
}

#[test]
fn witness_handles_inhomogeneous_pairs() {
    let path = data("inhomogeneous.fmod");
    let v = json(&["witness", &path, &path, "--json"]);
    assert_eq!(v["d_prime"], 1);
    assert_eq!(v["witness_rank"], 1);
    assert_eq!(v["fd1"], 1);
    assert_eq!(v["fd_sum"], 1);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn model_drury_arveson_projection_table() {
    let v = json(&["model", "drury-arveson", &data("ideal.fmod"), "--json"]);
    let dims: Vec<u64> =
        v["projection_dims"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(&dims[..6], &[0, 0, 2, 5, 9, 14]);
    assert_eq!(v["fd_projection"], 1);
    assert_eq!(v["axioms"]["degree_shift"], true);
    assert_eq!(v["axioms"]["spanning"], true);
    assert_eq!(v["axioms"]["closed_range_checked"], false);
}

#[test]
fn model_zero_module_all_zero_table() {
    for preset in ["drury-arveson", "hardy-ball", "bergman-ball"] {
        let v = json(&["model", preset, &data("zero.fmod"), "--json"]);
        assert!(
            v["projection_dims"].as_array().unwrap().iter().all(|x| x == &Value::from(0)),
            "{preset}: zero module projects to zero"
        );
        assert_eq!(v["fd_projection"], 0);
    }
}

#[test]
fn model_hardy_full_module_one_variable() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("full1.fmod");
    std::fs::write(&path, "n 1\nN 1\ngen\npoly 1:0\n").unwrap();
    let v = json(&["model", "hardy-ball", path.to_str().unwrap(), "--json"]);
    let dims = v["projection_dims"].as_array().unwrap();
    for (k, d) in dims.iter().enumerate() {
        assert_eq!(d, &Value::from(k), "full module: dim P_k Y = k");
    }
    assert_eq!(v["fd_projection"], 1);
}

#[test]
fn model_kernel_value_pinned() {
    let v = json(&[
        "model",
        "drury-arveson",
        &data("ideal.fmod"),
        "--max-degree",
        "6",
        "--kernel-at",
        "1/2,0;1,0",
        "--json",
    ]);
    // Σ_{k≤6} (1/2)^k = 127/64 for the Drury–Arveson weights.
    assert_eq!(v["kernel"]["value"], "127/64");
    assert_eq!(v["kernel"]["truncation"], 6);
}

#[test]
fn model_explicit_weights() {
    let v = json(&[
        "model",
        "explicit",
        &data("ideal.fmod"),
        "--weights",
        "1,1/2,1/4,1/8,1/16,1/32,1/64,1/128,1/256",
        "--json",
    ]);
    assert_eq!(v["fd_projection"], 1);
    assert_eq!(v["cap"], 8, "cap clamps to the weight prefix");
    assert_eq!(v["weight_prefix"][1], "1/2");
}

#[test]
fn determinism_byte_identical_reports() {
    let ideal = data("ideal.fmod");
    let twisted = data("twisted.fmod");
    let left = data("pair_left.fmod");
    let right = data("pair_right.fmod");
    let tangent = data("tangent.fmod");
    let cases: Vec<Vec<&str>> = vec![
        vec!["fd", &ideal, "--seed", "9", "--json"],
        vec!["samuel", &twisted, "--json"],
        vec!["lattice", &left, &right, "--witness", "--json"],
        vec!["model", "bergman-ball", &tangent, "--json"],
    ];
    for args in cases {
        let (c1, first, _) = run(&args);
        let (c2, second, _) = run(&args);
        assert_eq!(c1, 0);
        assert_eq!(c2, 0);
        assert_eq!(first, second, "reruns of {args:?} must be byte-identical");
    }
}

#[test]
fn cache_never_changes_output() {
    let cache = tempfile::tempdir().unwrap();
    let dir = cache.path().to_str().unwrap();
    let args = ["samuel", &data("twisted.fmod"), "--json"];

    let (c1, cold, _) = run_with_cache(&args, dir);
    assert_eq!(c1, 0);
    let entries = std::fs::read_dir(dir).unwrap().count();
    assert!(entries > 0, "cold run populates the cache");

    let (c2, warm, _) = run_with_cache(&args, dir);
    assert_eq!(c2, 0);

    let (c3, off, _) =
        run_with_cache(&["samuel", &data("twisted.fmod"), "--json", "--no-cache"], dir);
    assert_eq!(c3, 0);

    assert_eq!(cold, warm, "cache hit changes nothing");
    assert_eq!(cold, off, "disabling the cache changes nothing");
}

#[test]
fn equivalent_files_share_digests() {
    // Same module as ideal.fmod: shuffled directives, duplicate terms that
    // sum to the canonical coefficients, extra comments and blank lines.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scrambled.fmod");
    std::fs::write(
        &path,
        "# scrambled presentation\nN 1\nn 2\nlabel maximal ideal (z1, z2)\n\ngen\npoly 1/3:1,0 2/3:1,0\n# comment between generators\ngen\npoly 1:0,1 0:0,1\n",
    )
    .unwrap();
    let a = json(&["fd", &data("ideal.fmod"), "--json"]);
    let b = json(&["fd", path.to_str().unwrap(), "--json"]);
    assert_eq!(a["input"]["digest"], b["input"]["digest"]);
    assert_eq!(a["fd"], b["fd"]);
}

#[test]
fn seed_changes_point_not_value() {
    let a = json(&["fd", &data("twisted.fmod"), "--seed", "1", "--json"]);
    let b = json(&["fd", &data("twisted.fmod"), "--seed", "99", "--json"]);
    assert_eq!(a["fd"], b["fd"]);
    assert_eq!(a["fd"], 2);
}

#[test]
fn human_form_has_timing_json_does_not() {
    let (code, human, _) = run(&["fd", &data("ideal.fmod")]);
    assert_eq!(code, 0);
    assert!(human.contains("elapsed:"), "human report shows timing");

    let v = json(&["fd", &data("ideal.fmod"), "--json"]);
    assert!(v.get("elapsed").is_none());
    assert!(v.get("timing").is_none());
}

#[test]
fn exit_code_2_on_parse_errors() {
    let (code, _, stderr) = run(&["fd", "/nonexistent/missing.fmod"]);
    assert_eq!(code, 2);
    assert!(stderr.starts_with("error[parse]:"), "stderr: {stderr}");
    assert_eq!(stderr.trim_end().lines().count(), 1, "single-line error");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.fmod");
    std::fs::write(&path, "n 2\nN 1\ngen\npoly 1.5:1,0\n").unwrap();
    let (code, _, stderr) = run(&["fd", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 4"), "stderr: {stderr}");

    let (code, _, stderr) = run(&["model", "weighted-nonsense", &data("ideal.fmod")]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown preset"), "stderr: {stderr}");

    let (code, _, stderr) = run(&["fd", &data("ideal.fmod"), "--translate", "1,0.5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("floating-point"), "stderr: {stderr}");
}

#[test]
fn exit_code_3_on_shape_and_homogeneity_errors() {
    let (code, _, stderr) = run(&["lattice", &data("ideal.fmod"), &data("pair_right.fmod")]);
    assert_eq!(code, 3);
    assert!(stderr.starts_with("error[shape]:"), "stderr: {stderr}");

    let (code, _, stderr) = run(&["samuel", &data("inhomogeneous.fmod")]);
    assert_eq!(code, 3);
    assert!(stderr.contains("inhomogeneous"), "stderr: {stderr}");

    let (code, _, stderr) =
        run(&["lattice", &data("inhomogeneous.fmod"), &data("inhomogeneous.fmod")]);
    assert_eq!(code, 3, "lattice treats inhomogeneous input as a hard error");
    assert!(stderr.starts_with("error[shape]:"), "stderr: {stderr}");

    let (code, _, stderr) = run(&["fd", &data("ideal.fmod"), "--translate", "1"]);
    assert_eq!(code, 3, "translate vector must have n coordinates");
    assert!(stderr.starts_with("error[shape]:"), "stderr: {stderr}");
}

#[test]
fn exit_code_4_when_caps_are_too_small() {
    let (code, _, stderr) = run(&["fd", &data("ideal.fmod"), "--max-degree", "3"]);
    assert_eq!(code, 4);
    assert!(stderr.starts_with("error[not-stabilized]:"), "stderr: {stderr}");
    assert!(stderr.contains("--max-degree"), "guidance present: {stderr}");

    let (code, _, stderr) = run(&["samuel", &data("twisted.fmod"), "--max-degree", "2"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("--max-degree"), "stderr: {stderr}");
}

#[test]
fn help_and_version_work() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["fd", "hilbert", "samuel", "lattice", "witness", "model"] {
        assert!(stdout.contains(sub), "help lists {sub}");
    }
    let (code, stdout, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("fibdim"));
}
