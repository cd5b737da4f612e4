//! Fixture files mirror the built-in example complexes; `regenerate` (run
//! with `--ignored`) rewrites them from the presets.

use std::fs;
use std::path::PathBuf;

use brauer_core::io::{parse_complex, ComplexDocument, QuiverDocument};
use brauer_core::presets;
use brauer_core::quiver::derive_quiver;
use brauer_core::ribbon::BrauerComplex;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn named() -> Vec<(&'static str, BrauerComplex)> {
    vec![
        ("e1", presets::segment()),
        ("e2", presets::theta()),
        ("e3", presets::theta_loop()),
        ("e4_c1", presets::decagon_c1()),
        ("e4_c2", presets::decagon_c2()),
        ("e5", presets::star3()),
        ("e6", presets::one_loop()),
        ("e6x", presets::loop_with_leaf()),
        ("star_a", presets::star3_marked(0)),
        ("star_b", presets::star3_marked(1)),
    ]
}

#[test]
fn fixtures_match_builtins() {
    for (name, expected) in named() {
        let path = fixture_dir().join(format!("{name}.json"));
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
        let parsed = parse_complex(&text).unwrap();
        assert_eq!(
            parsed.canonical_key(),
            expected.canonical_key(),
            "fixture {name} drifted from the built-in definition"
        );
    }
}

#[test]
fn quiver_fixtures_match_builtins() {
    for (name, complex) in [("q1", presets::theta()), ("q2", presets::theta_loop())] {
        let path = fixture_dir().join(format!("{name}.json"));
        let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path:?}: {e}"));
        let doc: QuiverDocument = serde_json::from_str(&text).unwrap();
        let expected = QuiverDocument::from_quiver(&derive_quiver(&complex));
        assert_eq!(doc, expected, "fixture {name} drifted");
    }
}

#[test]
fn documents_round_trip_byte_stably() {
    for (name, _) in named() {
        let path = fixture_dir().join(format!("{name}.json"));
        let text = fs::read_to_string(&path).unwrap();
        let b = parse_complex(&text).unwrap();
        let doc = ComplexDocument::from_complex(&b);
        let once = serde_json::to_string(&doc).unwrap();
        let again =
            serde_json::to_string(&ComplexDocument::from_complex(&parse_complex(&once).unwrap()))
                .unwrap();
        assert_eq!(once, again);
    }
}

#[test]
#[ignore = "writes the fixture files; run after changing the presets"]
fn regenerate() {
    let dir = fixture_dir();
    fs::create_dir_all(&dir).unwrap();
    for (name, b) in named() {
        let doc = ComplexDocument::from_complex(&b);
        let text = serde_json::to_string_pretty(&doc).unwrap();
        fs::write(dir.join(format!("{name}.json")), text + "\n").unwrap();
    }
    for (name, complex) in [("q1", presets::theta()), ("q2", presets::theta_loop())] {
        let doc = QuiverDocument::from_quiver(&derive_quiver(&complex));
        let text = serde_json::to_string_pretty(&doc).unwrap();
        fs::write(dir.join(format!("{name}.json")), text + "\n").unwrap();
    }
    // one vertex-centric document, exercising the friendlier input format
    let graph = serde_json::json!({
        "vertices": [
            { "id": "U", "mult": 1, "rotation": [["a", 0], ["b", 0], ["c", 0]] },
            { "id": "W", "mult": 1, "rotation": [["a", 1], ["b", 1], ["c", 1]] }
        ],
        "edges": ["a", "b", "c"]
    });
    fs::write(
        dir.join("e2_graph.json"),
        serde_json::to_string_pretty(&graph).unwrap() + "\n",
    )
    .unwrap();
}
