//! End-to-end checks of the command-line surface: exit codes, report
//! determinism, and the serialization round trip.

use quiver_da::cli::run_captured;

#[test]
fn verify_algebra_reports_the_small_dimension() {
    let (code, text) = run_captured(&["verify-algebra", "--name", "ks", "--m", "2", "--maxlen", "8"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("dimension 5"), "{text}");
    assert!(text.contains("ALL PASS"));
}

#[test]
fn verify_algebra_rejects_degenerate_m() {
    let (code, _) = run_captured(&["verify-algebra", "--name", "ks", "--m", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_algebra_passes_for_every_builtin() {
    for name in ["ks", "b", "cl", "clbot"] {
        let (code, text) =
            run_captured(&["verify-algebra", "--name", name, "--m", "4", "--maxlen", "8"]);
        assert_eq!(code, 0, "{name}: {text}");
    }
}

#[test]
fn theorem2_pipeline_passes_including_the_boundary_index() {
    for (m, i, sign) in [("4", "2", "pos"), ("4", "2", "neg"), ("3", "2", "pos"), ("3", "2", "neg")]
    {
        let (code, text) = run_captured(&[
            "verify-theorem2", "--m", m, "--i", i, "--sign", sign,
        ]);
        assert_eq!(code, 0, "m={m} i={i} {sign}: {text}");
        assert!(text.contains("ALL PASS"));
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let args = ["verify-theorem2", "--m", "3", "--i", "1", "--sign", "pos", "--format", "json"];
    let (c1, t1) = run_captured(&args);
    let (c2, t2) = run_captured(&args);
    assert_eq!(c1, 0);
    assert_eq!(c1, c2);
    assert_eq!(t1, t2);
}

#[test]
fn braid_inverse_pair_reduces_to_the_identity() {
    let (code, text) = run_captured(&["braid", "--m", "3", "--word", "1 -1", "--flavor", "ks"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("3 generators"), "{text}");
}

#[test]
fn braid_relation_up_to_isomorphism() {
    let (code, text) = run_captured(&[
        "braid", "--m", "3", "--word", "1 2 1", "--isomorphic-to", "2 1 2", "--flavor", "osz",
    ]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("isomorphic"), "{text}");
}

#[test]
fn braid_rejects_bad_letters() {
    let (code, _) = run_captured(&["braid", "--m", "3", "--word", "3"]);
    assert_eq!(code, 2);
    let (code, _) = run_captured(&["braid", "--m", "3", "--word", ""]);
    assert_eq!(code, 2);
}

#[test]
fn dump_then_load_round_trips() {
    let dir = std::env::temp_dir();
    for (object, extra) in [("r", true), ("p", true), ("clbot", false), ("z", true)] {
        let path = dir.join(format!("quiver-da-rt-{object}.json"));
        let (code, text) = run_captured(&["dump", "--object", object, "--m", "3", "--i", "1"]);
        assert_eq!(code, 0, "{object}: {text}");
        std::fs::write(&path, &text).unwrap();
        let (code, text) = run_captured(&["load", "--path", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{object}: {text}");
        let _ = extra;
        let _ = std::fs::remove_file(&path);
    }
}

#[test]
fn dump_of_a_parametric_table_carries_power_slots() {
    let (code, text) = run_captured(&["dump", "--object", "p", "--m", "3", "--i", "1"]);
    assert_eq!(code, 0);
    assert!(text.contains("k_slot"), "{text}");
    assert!(text.contains("alexander_shift"), "{text}");
}

#[test]
fn load_rejects_a_mismatched_idempotent_chain() {
    let (code, text) = run_captured(&["dump", "--object", "r", "--m", "3", "--i", "1"]);
    assert_eq!(code, 0);
    let mut j: serde_json::Value = serde_json::from_str(&text).unwrap();
    // retarget the first arrow with distinct endpoints
    let arrows = j["arrows"].as_array_mut().unwrap();
    let names: Vec<String> = arrows
        .iter()
        .map(|a| a["to"].as_str().unwrap().to_string())
        .collect();
    let idx = arrows
        .iter()
        .position(|a| a["from"] != a["to"])
        .unwrap();
    let other = names
        .iter()
        .find(|n| **n != arrows[idx]["to"] && **n != arrows[idx]["from"])
        .unwrap()
        .clone();
    arrows[idx]["to"] = serde_json::Value::String(other);
    let path = std::env::temp_dir().join("quiver-da-bad.json");
    std::fs::write(&path, serde_json::to_string(&j).unwrap()).unwrap();
    let (code, msg) = run_captured(&["load", "--path", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{msg}");
    assert!(msg.contains("->"), "error names the arrow: {msg}");
    let _ = std::fs::remove_file(&path);
}
