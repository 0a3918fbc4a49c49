//! End-to-end tests of the rschur binary: documented examples, output
//! determinism, the exit-code contract, and JSON report round-trips.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn rschur(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rschur"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

/// Parses a `--json` run report and hands back (full report, payload).
fn report(out: &Output) -> (Value, Value) {
    assert!(out.status.success(), "command failed: {}", stderr_str(out));
    let value: Value = serde_json::from_str(&stdout_str(out)).expect("stdout is JSON");
    let payload = value["payload"].clone();
    (value, payload)
}

/// The report invariant: parse then re-serialize reproduces the bytes.
fn assert_roundtrip(out: &Output) {
    let text = stdout_str(out);
    let value: Value = serde_json::from_str(&text).unwrap();
    let reserialized = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(text, reserialized, "JSON report does not round-trip");
}

fn write_file(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn count_construction_example() {
    let out = rschur(&["count", "--construction", "c0", "--n", "10", "--json"]);
    let (full, payload) = report(&out);
    assert_eq!(payload["rainbow"], 22);
    assert_eq!(payload["total"], 45);
    assert_eq!(payload["fraction"], "22/45");
    assert_eq!(full["version"], env!("CARGO_PKG_VERSION"));
    assert!(full["command"].as_array().unwrap().iter().any(|v| v == "count"));
    assert_roundtrip(&out);

    // Profiles appear only behind --profiles.
    assert!(payload.get("r_profile").is_none());
    let with = rschur(&[
        "count", "--construction", "c0", "--n", "10", "--profiles", "--json",
    ]);
    let (_, payload) = report(&with);
    assert_eq!(payload["r_profile"].as_array().unwrap().len(), 10);
}

#[test]
fn count_two_element_file_has_no_rainbow() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.txt");
    write_file(&path, "2\n1 2\n");
    let out = rschur(&["count", "--coloring", path.to_str().unwrap(), "--json"]);
    let (_, payload) = report(&out);
    assert_eq!(payload["rainbow"], 0);
    assert_eq!(payload["total"], 1);
}

#[test]
fn count_large_construction_fraction_near_two_fifths() {
    let out = rschur(&["count", "--construction", "c0", "--n", "100000", "--json"]);
    let (_, payload) = report(&out);
    let fraction = payload["fraction_decimal"].as_f64().unwrap();
    assert!((0.395..=0.405).contains(&fraction), "fraction {fraction}");
}

#[test]
fn count_emitted_coloring_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c0.txt");
    let direct = rschur(&[
        "count", "--construction", "c0", "--n", "12",
        "--emit-coloring", path.to_str().unwrap(), "--json",
    ]);
    let (_, direct_payload) = report(&direct);
    let reread = rschur(&["count", "--coloring", path.to_str().unwrap(), "--json"]);
    let (_, reread_payload) = report(&reread);
    assert_eq!(direct_payload, reread_payload);
}

#[test]
fn count_input_errors_exit_2_with_diagnostics() {
    let dir = tempfile::tempdir().unwrap();

    let bad_token = dir.path().join("token.txt");
    write_file(&bad_token, "3\n1 x 2\n");
    let out = rschur(&["count", "--coloring", bad_token.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("line 2, column 3"), "{}", stderr_str(&out));

    let short = dir.path().join("short.txt");
    write_file(&short, "5\n1 2 3\n");
    let out = rschur(&["count", "--coloring", short.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("expected 5 colors, found 3"));

    let good = dir.path().join("good.txt");
    write_file(&good, "3\n1 2 3\n");
    let out = rschur(&["count", "--coloring", good.to_str().unwrap(), "--n", "7"]);
    assert_eq!(out.status.code(), Some(2), "n cross-check must fail");

    // Usage error: neither input.
    let out = rschur(&["count", "--n", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_exhaustive_small_example() {
    let out = rschur(&["search", "exhaustive", "--n", "4", "--json"]);
    let (_, payload) = report(&out);
    assert_eq!(payload["best_count"], 4);
    assert_eq!(payload["partial"], false);
    assert_eq!(payload["complete"], true);
    assert_roundtrip(&out);
}

#[test]
fn search_thread_count_never_changes_output() {
    let one = rschur(&[
        "search", "exhaustive", "--n", "12", "--threads", "1", "--all-optima",
    ]);
    let eight = rschur(&[
        "search", "exhaustive", "--n", "12", "--threads", "8", "--all-optima",
    ]);
    assert!(one.status.success() && eight.status.success());
    assert_eq!(one.stdout, eight.stdout, "human output differs across thread counts");

    let one = rschur(&[
        "search", "exhaustive", "--n", "12", "--threads", "1", "--all-optima", "--json",
    ]);
    let eight = rschur(&[
        "search", "exhaustive", "--n", "12", "--threads", "8", "--all-optima", "--json",
    ]);
    let (_, p1) = report(&one);
    let (_, p8) = report(&eight);
    assert_eq!(p1, p8, "payload differs across thread counts");
}

#[test]
fn search_budget_partial_then_resume_matches_uninterrupted() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");

    let partial = rschur(&[
        "search", "exhaustive", "--n", "14", "--node-budget", "20000",
        "--checkpoint", ck.to_str().unwrap(), "--all-optima", "--json",
    ]);
    let (_, partial_payload) = report(&partial); // exit 0 despite the budget
    assert_eq!(partial_payload["partial"], true);
    assert!(partial_payload["cursor"].is_string());

    let resumed = rschur(&[
        "search", "exhaustive", "--n", "14",
        "--checkpoint", ck.to_str().unwrap(), "--all-optima", "--json",
    ]);
    let (_, resumed_payload) = report(&resumed);

    let direct = rschur(&["search", "exhaustive", "--n", "14", "--all-optima", "--json"]);
    let (_, direct_payload) = report(&direct);
    assert_eq!(resumed_payload, direct_payload, "resume drifted from the direct run");
    assert_eq!(direct_payload["best_count"], 42);
}

#[test]
fn search_corrupt_checkpoint_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    write_file(&ck, "not json at all");
    let out = rschur(&[
        "search", "exhaustive", "--n", "10", "--checkpoint", ck.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_str(&out).contains("corrupt"));
}

#[test]
fn search_anneal_is_seed_reproducible() {
    let args = [
        "search", "anneal", "--n", "200", "--seed", "7",
        "--iters", "5000", "--restarts", "4",
    ];
    let first = rschur(&args);
    let second = rschur(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let mut json_args = args.to_vec();
    json_args.push("--json");
    let (_, p1) = report(&rschur(&json_args));
    let (_, p2) = report(&rschur(&json_args));
    assert_eq!(p1, p2);
    assert_eq!(p1["seed"], 7);
}

#[test]
fn bounds_simple_reports_the_quoted_constants() {
    let out = rschur(&["bounds", "--simple", "--json"]);
    let (_, payload) = report(&out);
    let alpha = payload["alpha"].as_f64().unwrap();
    let bound = payload["fraction_bound"].as_f64().unwrap();
    assert!((alpha - 0.567069).abs() < 1e-6, "alpha {alpha}");
    assert!((bound - 0.678434).abs() < 1e-5, "fraction_bound {bound}");
    assert_roundtrip(&out);
}

#[test]
fn bounds_reference_point_is_near_the_quoted_fraction() {
    let out = rschur(&["bounds", "--reference-point", "--json"]);
    let (_, payload) = report(&out);
    let fraction = payload["fraction"].as_f64().unwrap();
    assert!((fraction - 0.66656).abs() < 1e-4, "fraction {fraction}");
    assert_eq!(payload["within_band"], false);
}

#[test]
fn bounds_optimize_reports_its_gamma_and_stays_under_the_quote() {
    let out = rschur(&[
        "bounds", "--optimize", "--grid-steps", "25", "--tol", "1e-7", "--json",
    ]);
    let (_, payload) = report(&out);
    let best = &payload["best"];
    assert_eq!(best["feasible"], true);
    let gamma = best["gamma"].as_f64().unwrap();
    let fraction = best["fraction"].as_f64().unwrap();
    assert!((0.02..=0.15).contains(&gamma), "gamma {gamma}");
    assert!(fraction <= 0.66656 + 1e-3, "fraction {fraction}");
    assert_eq!(best["binding"]["cover_first"], true);
}

#[test]
fn bounds_region_export_writes_the_exact_schema() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("region.csv");
    let out = rschur(&[
        "bounds", "--gamma", "0.077102",
        "--export-region", csv.to_str().unwrap(), "--alpha-steps", "50",
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "gamma,alpha,beta1,beta2_lower,beta2_upper,feasible_flag,objective"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 51);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 7);
        assert!(fields[5] == "0" || fields[5] == "1");
        // Non-empty fields parse as '.'-separated floats.
        for field in fields {
            if !field.is_empty() {
                field.parse::<f64>().unwrap();
            }
        }
    }
}

#[test]
fn bounds_rejects_gamma_outside_the_open_interval() {
    let out = rschur(&["bounds", "--gamma", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_families_pass_on_correct_code() {
    for args in [
        vec!["verify", "--family", "trcard", "--trials", "200", "--max-n", "60"],
        vec!["verify", "--family", "reweigh", "--trials", "10000"],
        vec!["verify", "--family", "cube-sum", "--max-n", "12", "--exhaustive"],
        vec!["verify", "--family", "class-squares", "--max-n", "9", "--exhaustive"],
        vec!["verify", "--family", "mono-objective", "--max-n", "12", "--exhaustive"],
        vec!["verify", "--family", "cuts", "--trials", "200", "--max-n", "120"],
        vec!["verify", "--family", "ap-cs", "--trials", "200", "--max-n", "200"],
    ] {
        let mut json_args = args.clone();
        json_args.push("--json");
        let out = rschur(&json_args);
        let (_, payload) = report(&out);
        assert_eq!(payload["passed"], true, "suite {args:?} failed");
        assert_eq!(payload["failure"], Value::Null);
        assert!(payload["instances_checked"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_exhaustive_misuse_exits_2() {
    let out = rschur(&["verify", "--family", "class-squares", "--max-n", "20", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rschur(&["verify", "--family", "trcard", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ap_modular_example_is_all_rainbow() {
    let out = rschur(&["ap", "--k", "3", "--n", "6", "--construction", "mod", "--json"]);
    let (_, payload) = report(&out);
    assert_eq!(payload["rainbow_aps"], 6);
    assert_eq!(payload["total_aps"], 6);
    assert_eq!(payload["matches_prediction"], true);
    assert_roundtrip(&out);
}

#[test]
fn ap_totient_example() {
    let out = rschur(&["ap", "--k", "6", "--totient", "--json"]);
    let (_, payload) = report(&out);
    assert_eq!(payload["fraction"], "1/3");
}

#[test]
fn ap_equinumerous_examples_match_the_closed_form() {
    for (m, expected) in [("1", 1u64), ("2", 6), ("3", 13)] {
        let out = rschur(&["ap", "--equinumerous-max", m, "--json"]);
        let (_, payload) = report(&out);
        assert_eq!(payload["max_count"].as_u64().unwrap(), expected, "m = {m}");
        assert_eq!(payload["matches_formula"], true);
        assert_eq!(payload["formula"].as_u64().unwrap(), expected);
    }
}

#[test]
fn ap_coloring_file_census() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3.txt");
    write_file(&path, "# three colors\n6\n1 2 3 1 2 3\n");
    let out = rschur(&["ap", "--k", "3", "--coloring", path.to_str().unwrap(), "--json"]);
    let (_, payload) = report(&out);
    // The file is exactly the modular coloring on [6].
    assert_eq!(payload["rainbow_aps"], 6);

    // Color 4 is out of range for k = 3.
    let bad = dir.path().join("bad.txt");
    write_file(&bad, "2\n1 4\n");
    let out = rschur(&["ap", "--k", "3", "--coloring", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
