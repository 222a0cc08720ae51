//! End-to-end checks of the command-line binary: pipe composability of the
//! JSON bundles, the documented exit codes, both output formats, and
//! independence of results from the worker count.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run_with_env(args: &[&str], stdin: Option<&str>, envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qecc-forge"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .env_remove("QECC_FORGE_JOBS");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    let mut child = cmd.spawn().expect("the binary spawns");
    if let Some(text) = stdin {
        child
            .stdin
            .as_mut()
            .expect("stdin is piped")
            .write_all(text.as_bytes())
            .expect("stdin accepts the payload");
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("the binary exits")
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    run_with_env(args, stdin, &[])
}

fn stdout_text(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_text(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_text(output)).expect("stdout is one JSON document")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("the binary exits normally")
}

#[test]
fn family_list_prints_the_known_names() {
    let output = run(&["family", "--list"], None);
    assert_eq!(code(&output), 0);
    let listing = stdout_text(&output);
    let names: Vec<&str> = listing.lines().map(str::trim).collect();
    assert!(names.contains(&"rains_5_6_2"));
    assert!(names.contains(&"laflamme_5_2_3"));
    assert!(names.contains(&"additive_2m"));
}

#[test]
fn family_bundle_verifies_to_a_certificate() {
    let bundle = run(&["family", "rains_5_6_2"], None);
    assert_eq!(code(&bundle), 0);
    let verified = run(&["verify", "--d", "2"], Some(&stdout_text(&bundle)));
    assert_eq!(code(&verified), 0, "stderr: {}", stderr_text(&verified));
    let cert = stdout_json(&verified);
    assert_eq!(cert["verified"], true);
    assert_eq!(cert["k"], 5);
    assert_eq!(cert["d"], 2);
    assert_eq!(cert["M"], 6);
    assert_eq!(cert["additive"], false);
    assert_eq!(cert["A_f"].as_array().unwrap().len(), 5);
    assert_eq!(cert["transcript"]["checked"], 15);
    assert_eq!(cert["transcript"]["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn projector_oracle_pipeline_reports_all_105_checks() {
    let bundle = run(&["family", "laflamme_5_2_3"], None);
    let matrix = run(&["build-projector"], Some(&stdout_text(&bundle)));
    assert_eq!(code(&matrix), 0, "stderr: {}", stderr_text(&matrix));
    let report = run(&["distance-oracle", "--d", "3"], Some(&stdout_text(&matrix)));
    assert_eq!(code(&report), 0);
    let json = stdout_json(&report);
    assert_eq!(json["passed"], true);
    assert_eq!(json["checked"], 105);
}

#[test]
fn dependent_rows_are_rejected_with_exit_one() {
    let bundle = r#"{"k":2,"d":2,"f_support":[3],"A_f":["10|01","10|01"]}"#;
    let output = run(&["verify"], Some(bundle));
    assert_eq!(code(&output), 1);
    let report = stdout_json(&output);
    assert_eq!(report["verified"], false);
    assert_eq!(report["failures"][0]["kind"], "structural");
    assert_eq!(report["checked"], 0);
}

#[test]
fn usage_errors_exit_two_with_distinct_messages() {
    let unknown_family = run(&["family", "no_such_family"], None);
    assert_eq!(code(&unknown_family), 2);
    assert!(stderr_text(&unknown_family).contains("family"));

    let anf_without_m = run(&["cset", "--anf", "v1*v2"], None);
    assert_eq!(code(&anf_without_m), 2);
    assert!(stderr_text(&anf_without_m).contains("--m"));

    let garbage = run(&["verify"], Some("not json"));
    assert_eq!(code(&garbage), 2);
    assert!(stderr_text(&garbage).contains("bundle"));

    let distance_too_small = run(&["verify", "--d", "1"], Some(r#"{"k":2,"d":2,"f_support":[3],"A_f":["10|01","01|10"]}"#));
    assert_eq!(code(&distance_too_small), 2);

    let oracle_zero = run(&["distance-oracle", "--d", "0"], Some("{}"));
    assert_eq!(code(&oracle_zero), 2);

    let bad_env = run_with_env(&["family", "--list"], None, &[("QECC_FORGE_JOBS", "many")]);
    assert_eq!(code(&bad_env), 2);
    assert!(stderr_text(&bad_env).contains("QECC_FORGE_JOBS"));
}

#[test]
fn function_commands_support_both_formats() {
    let args = ["cset", "--anf", "v1*v2*~v3", "--m", "3", "--format", "text"];
    let cset_text = run(&args, None);
    assert_eq!(code(&cset_text), 0);
    assert_eq!(stdout_text(&cset_text), "1 2 3 4 5 6 7\n");

    let autocorr = run(
        &["autocorr", "--anf", "v1*v2*~v3", "--m", "3", "--format", "text"],
        None,
    );
    assert_eq!(stdout_text(&autocorr), "8 4 4 4 4 4 4 4\n");

    let anf = run(&["anf", "--hex", "08", "--m", "3"], None);
    let json = stdout_json(&anf);
    assert_eq!(json["m"], 3);
    assert_eq!(json["weight"], 1);
    assert_eq!(json["expression"], "v1*v2 ^ v1*v2*v3");
    assert_eq!(json["degree"], 3);
    assert_eq!(json["monomial_variables"], serde_json::Value::Null);

    let from_stdin = run(&["cset"], Some(r#"{"m":3,"support":[3]}"#));
    let json = stdout_json(&from_stdin);
    assert_eq!(json["size"], 7);
    assert_eq!(json["elements"].as_array().unwrap().len(), 7);
}

#[test]
fn file_input_and_output_round_trip() {
    let dir = tempfile::tempdir().expect("temp dir");
    let bundle_path = dir.path().join("bundle.json");
    let cert_path = dir.path().join("cert.json");
    let bundle_arg = bundle_path.to_str().unwrap();
    let cert_arg = cert_path.to_str().unwrap();

    let family = run(&["family", "laflamme_5_2_3", "--output", bundle_arg], None);
    assert_eq!(code(&family), 0);
    assert!(stdout_text(&family).is_empty());

    let verify = run(&["verify", "--input", bundle_arg, "--output", cert_arg], None);
    assert_eq!(code(&verify), 0);
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["verified"], true);
    assert_eq!(cert["M"], 2);
    assert_eq!(cert["d"], 3);
    assert_eq!(cert["transcript"]["checked"], 105);
    assert_eq!(
        cert["stabilizers"],
        serde_json::json!(["ZXXZI", "IZXXZ", "ZIZXX", "XZIZX"])
    );
}

#[test]
fn worker_count_never_changes_the_output() {
    let bundle = stdout_text(&run(&["family", "rains_5_6_2"], None));
    let single = run(&["verify", "--jobs", "1"], Some(&bundle));
    let quad = run(&["verify", "--jobs", "4"], Some(&bundle));
    let via_env = run_with_env(&["verify"], Some(&bundle), &[("QECC_FORGE_JOBS", "2")]);
    assert_eq!(code(&single), 0);
    assert_eq!(stdout_text(&single), stdout_text(&quad));
    assert_eq!(stdout_text(&single), stdout_text(&via_env));
}

#[test]
fn search_emits_certificate_lines_and_a_summary() {
    let found = run(&["search", "--k", "4", "--M", "4", "--d", "2"], None);
    assert_eq!(code(&found), 0, "stderr: {}", stderr_text(&found));
    let text = stdout_text(&found);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines.len() >= 2, "certificate line plus summary line");
    let cert: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(cert["verified"], true);
    assert_eq!(cert["k"], 4);
    assert_eq!(cert["M"], 4);
    let summary: serde_json::Value = serde_json::from_str(lines[lines.len() - 1]).unwrap();
    assert!(summary["solutions"].as_u64().unwrap() >= 1);

    let none = run(
        &["search", "--k", "2", "--M", "2", "--d", "2", "--mode", "exhaustive"],
        None,
    );
    assert_eq!(code(&none), 0);
    let text = stdout_text(&none);
    let summary: serde_json::Value =
        serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["solutions"], 0);
    assert_eq!(summary["complete"], true);

    let impossible = run(&["search", "--k", "4", "--M", "4", "--d", "9"], None);
    assert_eq!(code(&impossible), 2);
    assert!(stderr_text(&impossible).contains("ceiling"));
}

#[test]
fn extend_and_shrink_produce_verified_bundles() {
    let rains = stdout_text(&run(&["family", "rains_5_6_2"], None));

    let extended = run(&["extend"], Some(&rains));
    assert_eq!(code(&extended), 0, "stderr: {}", stderr_text(&extended));
    let bundle = stdout_json(&extended);
    assert_eq!(bundle["k"], 7);
    assert_eq!(bundle["f_support"].as_array().unwrap().len(), 24);
    let verified = run(&["verify"], Some(&stdout_text(&extended)));
    assert_eq!(code(&verified), 0);
    assert_eq!(stdout_json(&verified)["M"], 24);

    let shrunk = run(&["shrink", "--drop", "7"], Some(&rains));
    assert_eq!(code(&shrunk), 0);
    let verified = run(&["verify"], Some(&stdout_text(&shrunk)));
    assert_eq!(stdout_json(&verified)["M"], 5);

    let bad_drop = run(&["shrink", "--drop", "2"], Some(&rains));
    assert_eq!(code(&bad_drop), 2);
    assert!(stderr_text(&bad_drop).contains("support"));
}

#[test]
fn oqec_splits_a_monomial_code_into_sectors() {
    let laflamme = stdout_text(&run(&["family", "laflamme_5_2_3"], None));
    let output = run(&["oqec", "--t", "1"], Some(&laflamme));
    assert_eq!(code(&output), 0, "stderr: {}", stderr_text(&output));
    let json = stdout_json(&output);
    assert_eq!(json["code"]["s"], 1);
    assert_eq!(json["code"]["t"], 1);
    assert_eq!(
        json["code"]["stabilizer"],
        serde_json::json!(["ZXXZI", "IZXXZ", "ZIZXX", "XZIZX"])
    );
    assert_eq!(json["code"]["gauge_pairs"].as_array().unwrap().len(), 0);
    assert_eq!(json["code"]["logical_pairs"].as_array().unwrap().len(), 1);
    assert_eq!(json["report"]["gram_ok"], true);
    assert_eq!(json["report"]["sector_commutation_ok"], true);

    let rains = stdout_text(&run(&["family", "rains_5_6_2"], None));
    let not_monomial = run(&["oqec", "--t", "1"], Some(&rains));
    assert_eq!(code(&not_monomial), 2);
    assert!(stderr_text(&not_monomial).contains("monomial"));
}

#[test]
fn build_projector_separates_rejection_from_assembly_errors() {
    let dependent = r#"{"k":2,"d":2,"f_support":[3],"A_f":["10|01","10|01"]}"#;
    let rejected = run(&["build-projector"], Some(dependent));
    assert_eq!(code(&rejected), 1);
    assert_eq!(stdout_json(&rejected)["verified"], false);

    let forced = run(&["build-projector", "--unchecked"], Some(dependent));
    assert_eq!(code(&forced), 2);
    assert!(stderr_text(&forced).contains("projector"));
}

#[test]
fn distance_oracle_reports_violations_with_exit_one() {
    let bundle = stdout_text(&run(&["family", "additive_2m", "--m", "2"], None));
    let matrix = stdout_text(&run(&["build-projector"], Some(&bundle)));
    let output = run(&["distance-oracle", "--d", "3"], Some(&matrix));
    assert_eq!(code(&output), 1);
    let json = stdout_json(&output);
    assert_eq!(json["passed"], false);
    assert!(json["first_violation"].is_string());

    let text = run(&["distance-oracle", "--d", "3", "--format", "text"], Some(&matrix));
    assert_eq!(code(&text), 1);
    assert!(stdout_text(&text).starts_with("violation at "));
}

#[test]
fn help_screens_exit_zero() {
    let top = run(&["--help"], None);
    assert_eq!(code(&top), 0);
    assert!(stdout_text(&top).contains("verify"));
    let sub = run(&["search", "--help"], None);
    assert_eq!(code(&sub), 0);
    assert!(stdout_text(&sub).contains("--budget"));
}
