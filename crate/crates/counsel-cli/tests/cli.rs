//! End-to-end checks of the `counsel` binary: subcommands, output shapes,
//! and the exit-code contract (0 ok, 1 content errors, 2 I/O or usage).

use std::path::PathBuf;
use std::process::Command;

fn counsel(args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_counsel"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    )
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn analyze_reports_reference_students() {
    let (code, stdout, stderr) = counsel(&["analyze", "--profiles", &data("students.json")]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.contains("student 1"));
    assert!(stdout.contains("E1 0.93 E2 0.72 E3 0.72 E4 0.80  | final 0.79"));
    assert!(stdout.contains("1. Engineering (Excellent 0.79, Good 0.26)"));
    assert!(stdout.contains("1. Medical (Excellent 0.31"));
    assert!(stdout.contains("1. Hospitality (Excellent 0.31"));
}

#[test]
fn analyze_output_is_byte_identical_across_runs() {
    let first = counsel(&["analyze", "--profiles", &data("students.json")]);
    let second = counsel(&["analyze", "--profiles", &data("students.json")]);
    assert_eq!(first, second);
    let third = counsel(&["analyze", "--profiles", &data("students.json"), "--format", "json"]);
    let fourth = counsel(&["analyze", "--profiles", &data("students.json"), "--format", "json"]);
    assert_eq!(third, fourth);
}

#[test]
fn analyze_json_matches_text_after_rounding() {
    let (code, json_out, _) = counsel(&[
        "analyze",
        "--profiles",
        &data("students.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let (_, text_out, _) = counsel(&["analyze", "--profiles", &data("students.json")]);
    for student in value["students"].as_array().unwrap() {
        for field in student["fields"].as_array().unwrap() {
            for category in field["categories"].as_array().unwrap() {
                let rounded = format!("{:.2}", counsel_core::round2(category["final"].as_f64().unwrap()));
                assert!(
                    text_out.contains(&format!("| final {rounded}")),
                    "text output lost {rounded}"
                );
            }
        }
    }
}

#[test]
fn analyze_accepts_a_rulebook_file() {
    let (code, stdout, stderr) = counsel(&[
        "analyze",
        "--rules",
        &data("custom.frules"),
        "--profiles",
        &data("students.json"),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.contains("Science"));
    assert!(stdout.contains("Life"));
    // 82 and 85 under the wider Excellent ramp: (12/20)/2 + (15/20)/2.
    assert!(stdout.contains("S1 0.68"), "stdout: {stdout}");
}

#[test]
fn analyze_rejects_broken_rulebooks_with_exit_1() {
    let (code, _, stderr) = counsel(&[
        "analyze",
        "--rules",
        &data("broken.frules"),
        "--profiles",
        &data("students.json"),
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("sum to 1.1"), "stderr: {stderr}");
    assert!(stderr.contains("Stellar"));
}

#[test]
fn recommend_walks_the_knowledge_base() {
    let (code, stdout, _) = counsel(&[
        "recommend",
        "--kb",
        &data("careers.json"),
        "--field",
        "Engineering",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("courses: BArch, BTech"));
    assert!(stdout.contains("Summit Institute of Technology"));
    assert!(stdout.contains("jobs: Civil Engineer, Software Developer"));
}

#[test]
fn recommend_region_filter_drops_unmatched_and_unregioned() {
    let (code, stdout, _) = counsel(&[
        "recommend",
        "--kb",
        &data("careers.json"),
        "--field",
        "Hospitality",
        "--region",
        "north",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Grand Hotel Academy"));
    // Coastal Culinary Institute has no region attribute and must drop out.
    assert!(!stdout.contains("Coastal"));

    let (_, unfiltered, _) = counsel(&[
        "recommend",
        "--kb",
        &data("careers.json"),
        "--field",
        "Hospitality",
    ]);
    assert!(unfiltered.contains("Coastal Culinary Institute"));
}

#[test]
fn recommend_unknown_field_exits_1() {
    let (code, _, stderr) = counsel(&[
        "recommend",
        "--kb",
        &data("careers.json"),
        "--field",
        "Astronomy",
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown career field `Astronomy`"));
}

#[test]
fn recommend_json_parses() {
    let (code, stdout, _) = counsel(&[
        "recommend",
        "--kb",
        &data("careers.json"),
        "--field",
        "Medical",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(value["field"], "Medical");
    assert_eq!(value["courses"].as_array().unwrap().len(), 2);
}

#[test]
fn pipeline_attaches_recommendations_to_top_fields() {
    let (code, stdout, stderr) = counsel(&[
        "pipeline",
        "--profiles",
        &data("students.json"),
        "--kb",
        &data("careers.json"),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.contains("recommendation for Engineering"));
    assert!(stdout.contains("recommendation for Medical"));
    assert!(stdout.contains("recommendation for Hospitality"));
    assert!(stdout.contains("Grand Hotel Academy"));
}

#[test]
fn pipeline_json_carries_recommendations() {
    let (code, stdout, _) = counsel(&[
        "pipeline",
        "--profiles",
        &data("students.json"),
        "--kb",
        &data("careers.json"),
        "--region",
        "north",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let students = value["students"].as_array().unwrap();
    assert_eq!(students.len(), 3);
    assert_eq!(students[0]["recommendation"]["field"], "Engineering");
    let institutes = students[0]["recommendation"]["institutes"].as_array().unwrap();
    // The south-region college drops out under --region north.
    assert_eq!(institutes.len(), 1);
    assert_eq!(institutes[0], "Summit Institute of Technology");
}

#[test]
fn pipeline_notes_fields_missing_from_the_kb() {
    let partial = tmp("partial-kb.json");
    std::fs::write(
        &partial,
        r#"{"fields":["Engineering"],"courses":["BTech"],"jobs":[],
            "institutes":[],"R":[["Engineering","BTech"]],"S":[],"T":[]}"#,
    )
    .unwrap();
    let (code, stdout, _) = counsel(&[
        "pipeline",
        "--profiles",
        &data("students.json"),
        "--kb",
        partial.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("recommendation for Engineering"));
    assert!(stdout.contains("note: top field `Medical` is not in the knowledge base"));
    assert!(stdout.contains("note: top field `Hospitality` is not in the knowledge base"));
}

#[test]
fn validate_rules_lists_diagnostics_and_exits_1() {
    let (code, stdout, _) = counsel(&["validate", "--rules", &data("broken.frules")]);
    assert_eq!(code, 1);
    assert!(stdout.contains("sum to 1.1"));
    assert!(stdout.contains("Stellar"));

    let (code, stdout, _) = counsel(&["validate", "--rules", &data("custom.frules")]);
    assert_eq!(code, 0);
    assert!(stdout.contains("ok"));

    // Warnings are listed but do not flip the exit code.
    let split = tmp("split-field.frules");
    std::fs::write(
        &split,
        "categories table1-fitted\n\
         field F { rule R1: if A is Good weight 1 then Good }\n\
         field F { rule R2: if B is Good weight 1 then Good }\n",
    )
    .unwrap();
    let (code, stdout, _) = counsel(&["validate", "--rules", split.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("warning"));
    assert!(stdout.contains("merged"));
}

#[test]
fn validate_kb_reports_danglings_and_warnings() {
    let (code, stdout, _) = counsel(&["validate", "--kb", &data("dangling.json")]);
    assert_eq!(code, 1);
    assert!(stdout.contains("Ghost"));

    let (code, stdout, _) = counsel(&["validate", "--kb", &data("careers.json")]);
    assert_eq!(code, 0, "fixture should be clean: {stdout}");
    assert!(stdout.contains("ok"));

    // Incompleteness is listed but does not fail the exit code.
    let sparse = tmp("warn-kb.json");
    std::fs::write(
        &sparse,
        r#"{"fields":["Arts"],"courses":["Orphan"],"jobs":[],"institutes":[],
            "R":[],"S":[],"T":[]}"#,
    )
    .unwrap();
    let (code, stdout, _) = counsel(&["validate", "--kb", sparse.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("warning"));
    assert!(stdout.contains("Orphan"));
    assert!(stdout.contains("Arts"));
}

#[test]
fn validate_requires_exactly_one_target() {
    let (code, _, _) = counsel(&["validate"]);
    assert_eq!(code, 2);
    let (code, _, _) = counsel(&[
        "validate",
        "--rules",
        &data("custom.frules"),
        "--kb",
        &data("careers.json"),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn plot_writes_breakpoint_rows() {
    let out = tmp("avg.csv");
    let (code, _, stderr) = counsel(&[
        "plot",
        "--category",
        "Average",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "x,grade");
    assert_eq!(rows.len(), 202);
    for expected in ["40,0", "55,1", "60,1", "61,0"] {
        assert!(rows.contains(&expected), "missing row {expected}");
    }
}

#[test]
fn plot_samples_flag_controls_row_count() {
    let out = tmp("coarse.csv");
    let (code, _, _) = counsel(&[
        "plot",
        "--category",
        "Good",
        "--samples",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 6);
    let (code, _, _) = counsel(&[
        "plot",
        "--category",
        "Good",
        "--samples",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 1, "sample counts below 2 are invalid");
}

#[test]
fn plot_takes_categories_from_a_rulebook_file() {
    let out = tmp("from-rules.csv");
    let (code, _, stderr) = counsel(&[
        "plot",
        "--rules",
        &data("custom.frules"),
        "--category",
        "Excellent",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let csv = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    // custom.frules uses printed-eq3, whose Excellent ramp ends at 90.
    for expected in ["70,0", "80,0.5", "90,1"] {
        assert!(rows.contains(&expected), "missing row {expected}");
    }
}

#[test]
fn plot_unknown_category_exits_1() {
    let out = tmp("nope.csv");
    let (code, _, stderr) = counsel(&[
        "plot",
        "--category",
        "Sideways",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown category `Sideways`"));
    assert!(stderr.contains("Average"));
}

#[test]
fn io_failures_exit_2() {
    let (code, _, _) = counsel(&["analyze", "--profiles", "/nonexistent/students.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = counsel(&["recommend", "--kb", "/nonexistent/kb.json", "--field", "X"]);
    assert_eq!(code, 2);
    let (code, _, _) = counsel(&[
        "analyze",
        "--rules",
        "/nonexistent/rules.frules",
        "--profiles",
        &data("students.json"),
    ]);
    assert_eq!(code, 2);
}

#[test]
fn content_failures_exit_1() {
    let bad_scores = tmp("bad-scores.json");
    std::fs::write(
        &bad_scores,
        r#"{"students":[{"id":"9","scores":{"Maths.":105}}]}"#,
    )
    .unwrap();
    let (code, _, stderr) = counsel(&["analyze", "--profiles", bad_scores.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("105"));

    let malformed = tmp("malformed.json");
    std::fs::write(&malformed, "{").unwrap();
    let (code, _, _) = counsel(&["analyze", "--profiles", malformed.to_str().unwrap()]);
    assert_eq!(code, 1);

    let (code, _, _) = counsel(&["recommend", "--kb", &data("dangling.json"), "--field", "Engineering"]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, _) = counsel(&["conjure"]);
    assert_eq!(code, 2);
    let (code, _, _) = counsel(&["analyze"]);
    assert_eq!(code, 2);
    let (code, _, _) = counsel(&["analyze", "--profiles", &data("students.json"), "--format", "yaml"]);
    assert_eq!(code, 2);
    let (code, _, _) = counsel(&[
        "plot",
        "--rules",
        &data("custom.frules"),
        "--preset",
        "printed-eq3",
        "--category",
        "Good",
        "--out",
        tmp("conflict.csv").to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "--rules conflicts with --preset");
}

#[test]
fn help_and_version_exit_0() {
    let (code, _, _) = counsel(&["--help"]);
    assert_eq!(code, 0);
    let (code, _, _) = counsel(&["--version"]);
    assert_eq!(code, 0);
}

#[test]
fn missing_subject_is_reported_with_rule_context() {
    let sparse = tmp("sparse.json");
    std::fs::write(&sparse, r#"{"students":[{"id":"1","scores":{"Maths.":80}}]}"#).unwrap();
    let (code, _, stderr) = counsel(&["analyze", "--profiles", sparse.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("lacks subject"), "stderr: {stderr}");
    assert!(stderr.contains("Engineering") || stderr.contains("Medical"));
}
