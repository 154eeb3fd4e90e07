//! End-to-end tests that drive the compiled `pknet` binary and pin down its
//! output contract: table shapes, JSON payloads, and exit codes.

use std::io::Write as _;
use std::process::{Command, Output};

use serde_json::Value;

fn pknet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pknet"))
        .args(args)
        .output()
        .expect("the pknet binary should run")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout should be UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr should be UTF-8")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("the process should exit normally")
}

/// Fields of the first output line whose first token equals `head`.
fn row<'a>(text: &'a str, head: &str) -> Vec<&'a str> {
    text.lines()
        .map(|line| line.split_whitespace().collect::<Vec<_>>())
        .find(|fields| fields.first() == Some(&head))
        .unwrap_or_else(|| panic!("no row starting with {head:?} in:\n{text}"))
}

fn json(output: &Output) -> Value {
    serde_json::from_str(&stdout(output)).expect("stdout should be valid JSON")
}

#[test]
fn homset_counts_and_rows_match_the_class_equations() {
    let output = pknet(&["homset", "U", "V"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("Hom(U, V): 24 morphisms"), "got:\n{text}");
    assert_eq!(row(&text, "^{UV}T1"), ["^{UV}T1", "T1", "T0", "T-1"]);
    assert_eq!(row(&text, "^{UV}I0"), ["^{UV}I0", "I0", "I7", "I8"]);
}

#[test]
fn homset_json_labels_every_component() {
    let output = pknet(&["--json", "homset", "U", "V"]);
    assert_eq!(exit_code(&output), 0);
    let value = json(&output);
    assert_eq!(value["count"], 24);
    let morphisms = value["morphisms"].as_array().expect("morphisms array");
    assert_eq!(morphisms.len(), 24);
    assert_eq!(morphisms[0]["label"], "^{UV}T0");
    assert_eq!(morphisms[0]["components"]["Y"], "T1");
    let i5 = morphisms
        .iter()
        .find(|m| m["label"] == "^{UV}I5")
        .expect("an I5-anchored morphism");
    assert_eq!(i5["components"]["X"], "I5");
    assert_eq!(i5["components"]["Y"], "I2");
    assert_eq!(i5["components"]["Z"], "I3");
}

#[test]
fn incompatible_classes_are_an_input_error() {
    let output = pknet(&["homset", "U", "Wb"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("incompatible"));
}

#[test]
fn unknown_names_are_input_errors() {
    let output = pknet(&["homset", "U", "Nope"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("unknown class"));

    let output = pknet(&["analyze", "nope"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("unknown progression"));

    let output = pknet(&["act", "nope", "U", "T1"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("unknown net"));
}

#[test]
fn analyze_prints_the_five_chord_reading() {
    let output = pknet(&["analyze", "berg-part1"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("5 chords, 4 steps"), "got:\n{text}");
    assert!(text.contains("D♯"), "sharp spellings are the default");
    let labels = ["^{UV}T-2", "^{VV}T-1", "^{VU}T2", "^{UU}T1"];
    let mut last = 0;
    for label in labels {
        let at = text[last..]
            .find(label)
            .unwrap_or_else(|| panic!("{label} missing or out of order in:\n{text}"));
        last += at + label.len();
    }
    assert_eq!(row(&text, "1→2"), ["1→2", "^{UV}T-2", "T-2", "T3", "T2"]);
}

#[test]
fn analyze_json_round_trips() {
    let output = pknet(&["--json", "analyze", "berg-part2"]);
    assert_eq!(exit_code(&output), 0);
    let value = json(&output);
    assert_eq!(value["progression"], "berg-part2");
    let chords = value["chords"].as_array().expect("chords array");
    assert_eq!(chords.len(), 4);
    assert_eq!(chords[0]["index"], 1);
    assert_eq!(chords[0]["class"], "U'");
    assert_eq!(chords[0]["pitches"]["X"], "C");
    let steps = value["steps"].as_array().expect("steps array");
    let labels: Vec<&str> = steps.iter().map(|s| s["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["^{U'W}T-2", "^{WU'}T1", "^{U'U'}T1"]);
    assert_eq!(steps[0]["from"], 1);
    assert_eq!(steps[0]["to"], 2);
}

#[test]
fn act_applies_group_elements_by_anchor() {
    let output = pknet(&["act", "f-major", "T4T7", "I8"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("result: (D♯, G, A♯)"), "got:\n{text}");
    assert!(text.contains("I4"), "the middle component of the I8 morphism");

    let output = pknet(&["act", "c-major", "T4T7", "T5"]);
    assert!(stdout(&output).contains("result: (F, A, C)"));
}

#[test]
fn flats_flag_respells_the_output() {
    let output = pknet(&["act", "f-major", "T4T7", "I8", "--flats"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("result: (E♭, G, B♭)"));
}

#[test]
fn normalized_labels_avoid_negative_shifts() {
    let output = pknet(&["homset", "U", "U", "--normalize-labels"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("^{UU}T11"), "got:\n{text}");
    assert!(!text.contains("T-"), "all shifts should be spelled 0..11");
}

#[test]
fn nf_lists_every_network_of_a_class() {
    let output = pknet(&["nf", "U"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("networks of class U: 12"), "got:\n{text}");
    assert!(text.contains("(C, D♯, A♯)"));
    let rows = text
        .lines()
        .filter(|line| line.trim_start().starts_with(|c: char| c.is_ascii_digit()))
        .count();
    assert_eq!(rows, 12);
}

#[test]
fn nf_respects_the_search_bound() {
    let output = pknet(&["nf", "U", "--bound", "3"]);
    assert_eq!(exit_code(&output), 3);
    assert!(stderr(&output).contains("search bound"));
}

#[test]
fn subgroupoid_pullback_has_the_coset_structure() {
    let output = pknet(&["subgroupoid"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("48 (expected 48)"), "got:\n{text}");
    assert!(text.contains("result: PASS"));
}

#[test]
fn subgroupoid_scales_to_four_classes() {
    let output = pknet(&["subgroupoid", "--classes", "U,V,U',W"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("192 (expected 192)"), "got:\n{text}");
    assert!(text.contains("result: PASS"));
}

#[test]
fn inversion_section_pullback_is_closed_for_two_classes() {
    let output = pknet(&["subgroupoid", "--section", "inversion"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("section 'inversion'"), "got:\n{text}");
    assert!(text.contains("result: PASS"));
}

#[test]
fn bisections_equal_the_wreath_product_order() {
    let output = pknet(&["bisections"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert_eq!(row(&text, "bisections:"), ["bisections:", "288"]);
    assert_eq!(row(&text, "wreath"), ["wreath", "order:", "288"]);
    assert!(text.contains("isomorphism: yes"));
}

#[test]
fn wreath_iso_verifies_the_degree_two_case() {
    let output = pknet(&["wreath-iso", "--base-order", "12", "--copies", "2"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("288"), "got:\n{text}");
    assert!(text.contains("verified"));
}

#[test]
fn wreath_iso_over_the_cap_is_a_resource_error() {
    let output = pknet(&["wreath-iso", "--base-order", "12", "--copies", "3"]);
    assert_eq!(exit_code(&output), 3);
    let text = stderr(&output);
    assert!(text.contains("10368"), "got:\n{text}");
    assert!(text.contains("cap"));
}

#[test]
fn trivialize_produces_a_bijective_flattening() {
    let output = pknet(&["trivialize"]);
    assert_eq!(exit_code(&output), 0);
    assert!(stdout(&output).contains("bijective: yes"));
}

#[test]
fn verify_all_passes_without_failures() {
    let output = pknet(&["verify"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    assert!(text.contains("checks passed"), "got:\n{text}");
    assert!(
        !text.lines().any(|line| line.starts_with("FAIL")),
        "got:\n{text}"
    );
}

#[test]
fn verify_groups_suite_is_deterministic() {
    let first = pknet(&["verify", "--suite", "groups", "--seed", "7"]);
    let second = pknet(&["verify", "--suite", "groups", "--seed", "7"]);
    assert_eq!(exit_code(&first), 0);
    assert!(stdout(&first).contains("all 8 checks passed"));
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn verify_suite_names_are_validated() {
    let output = pknet(&["verify", "--suite", "nope"]);
    assert_eq!(exit_code(&output), 2);
    let text = stderr(&output);
    assert!(text.contains("unknown suite"), "got:\n{text}");
    assert!(text.contains("functor-groupoid"));
}

#[test]
fn dot_emits_clustered_graphviz() {
    let output = pknet(&["dot", "berg-part1"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout(&output);
    for needle in [
        "digraph",
        "compound=true",
        "cluster_1",
        "color=violet",
        "color=red",
        "^{UV}T-2",
    ] {
        assert!(text.contains(needle), "missing {needle:?} in:\n{text}");
    }
}

#[test]
fn dot_json_wraps_the_graph() {
    let output = pknet(&["--json", "dot", "webern"]);
    assert_eq!(exit_code(&output), 0);
    let value = json(&output);
    assert_eq!(value["progression"], "webern");
    assert!(value["dot"].as_str().expect("dot string").contains("digraph"));
}

#[test]
fn custom_config_resolves_groups_and_classes() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(
        file,
        r#"{{
            "groups": {{ "z12": {{ "kind": "cyclic", "order": 12 }} }},
            "categories": {{ "dot": {{ "objects": ["P"] }} }},
            "classes": [
                {{ "name": "D", "delta": "dot", "group": "z12", "assignments": {{}} }}
            ]
        }}"#
    )
    .expect("write config");
    let path = file.path().to_str().expect("utf-8 path");

    let output = pknet(&["--config", path, "homset", "D", "D"]);
    assert_eq!(exit_code(&output), 0, "stderr: {}", stderr(&output));
    let text = stdout(&output);
    assert!(text.contains("Hom(D, D): 12 morphisms"), "got:\n{text}");
    assert!(text.contains("^{DD}0"));

    let output = pknet(&["--config", path, "nf", "D"]);
    assert!(stdout(&output).contains("networks of class D: 12"));
}

#[test]
fn missing_config_file_is_an_input_error() {
    let output = pknet(&["--config", "/nonexistent/pknet.json", "homset", "U", "V"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("cannot read"));
}

#[test]
fn malformed_config_is_an_input_error() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(file, "{{ nope").expect("write config");
    let output = pknet(&["--config", file.path().to_str().unwrap(), "homset", "U", "V"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("invalid JSON config"));
}

#[test]
fn dangling_config_references_are_named_in_the_error() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(
        file,
        r#"{{
            "groups": {{ "ti": {{ "kind": "ti" }} }},
            "categories": {{ "dot": {{ "objects": ["P"] }} }},
            "classes": [
                {{ "name": "D", "delta": "dot", "group": "ti", "assignments": {{}} }}
            ],
            "nets": {{ "ghost": {{ "class": "Ghost", "phi": {{ "P": 0 }} }} }}
        }}"#
    )
    .expect("write config");
    let output = pknet(&["--config", file.path().to_str().unwrap(), "nf", "D"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr(&output).contains("Ghost"));
}
