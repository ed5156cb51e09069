use serde_json::Value;

use quadmap_cli::mapfile::{load_map, GALLERY};
use quadmap_cli::{run, Outcome};

fn quadmap(args: &[&str]) -> Outcome {
    run(std::iter::once("quadmap").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut argv = vec!["--json"];
    argv.extend_from_slice(args);
    let out = quadmap(&argv);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    (out.code, v)
}

#[test]
fn every_gallery_entry_verifies() {
    for name in GALLERY {
        let out = quadmap(&["verify", &format!("examples:{name}")]);
        assert_eq!(out.code, 0, "{name}: {}", out.stderr);
        assert!(out.stdout.starts_with("verified: A = "), "{}", out.stdout);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        quadmap(&["segre", "examples:paper-5.1", "--at", "0,0,0,0,0"]).code,
        0
    );
    assert_eq!(
        quadmap(&["segre", "examples:paper-5.2", "--at", "0,1,0"]).code,
        1
    );
    assert_eq!(quadmap(&["normalize", "examples:paper-5.2"]).code, 1);
    assert_eq!(quadmap(&["verify", "examples:nope"]).code, 2);
    assert_eq!(quadmap(&["no-such-command"]).code, 2);
    assert_eq!(quadmap(&["verify", "/nonexistent/map.json"]).code, 2);
}

#[test]
fn errors_are_reported_as_json() {
    let (code, v) = json(&["verify", "examples:nope"]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "error");
    assert!(v["message"].as_str().unwrap().contains("paper-5.1"));
}

#[test]
fn seeded_output_is_byte_identical() {
    let argv = ["--json", "--seed", "11", "gen", "--count", "2"];
    let a = quadmap(&argv);
    let b = quadmap(&argv);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let c = quadmap(&["--json", "--seed", "12", "gen", "--count", "2"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn default_seed_is_zero() {
    let explicit = quadmap(&[
        "--json", "--seed", "0", "lemma", "huang", "--random", "3", "--n", "4",
    ]);
    let default = quadmap(&["--json", "lemma", "huang", "--random", "3", "--n", "4"]);
    assert_eq!(explicit.code, 0, "{}", explicit.stderr);
    assert_eq!(explicit.stdout, default.stdout);
    let v: Value = serde_json::from_str(&explicit.stdout).unwrap();
    assert_eq!(v["instances"][0]["seed"], 0);
}

#[test]
fn saved_maps_load_back() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sharp.json");
    let p = path.to_str().unwrap();
    assert_eq!(quadmap(&["examples", "paper-5.2", "--out", p]).code, 0);
    let (file, map) = load_map(p).unwrap();
    let (_, gallery) = load_map("examples:paper-5.2").unwrap();
    assert_eq!(map, gallery);
    assert_eq!(file.metadata.name.as_deref(), Some("paper-5.2"));
    let (code, v) = json(&["span", p]);
    assert_eq!((code, v["span_dimension"].as_u64()), (0, Some(5)));
}

#[test]
fn corpus_files_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = quadmap(&[
        "--seed",
        "4",
        "gen",
        "--count",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let files: Vec<&str> = out
        .stdout
        .lines()
        .filter(|l| l.ends_with(".json"))
        .collect();
    assert_eq!(files.len(), 3);
    for f in files {
        assert_eq!(quadmap(&["verify", f]).code, 0);
        let (code, v) = json(&["normalize", f]);
        assert_eq!(code, 0, "{v}");
    }
}

#[test]
fn schema_violations_are_listed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"source": {"n": 3, "ell": 1}, "target": {"n": 5, "ell": 2}, "f": ["z1", "z2"], "g": "w + q"}"#)
        .unwrap();
    let (code, v) = json(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    let msg = v["message"].as_str().unwrap();
    assert!(msg.contains("$.f") && msg.contains("$.g"), "{msg}");
}

#[test]
fn inline_families() {
    let (code, v) = json(&[
        "lemma", "dangelo", "--n", "3", "--ell", "1", "--a", "z1,z2", "--b", "z2,z1",
    ]);
    assert_eq!(code, 0, "{v}");
    let (code, _) = json(&[
        "lemma", "two", "--n", "3", "--ell", "1", "--a", "z1", "--b", "z2",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn schema_file_matches_serialized_fields() {
    let schema: Value =
        serde_json::from_str(include_str!("../../../schema/mapfile.schema.json")).unwrap();
    let declared: Vec<&String> = schema["properties"].as_object().unwrap().keys().collect();
    let out = quadmap(&["--seed", "1", "gen", "--count", "1"]);
    let entry: Value = serde_json::from_str(out.stdout.lines().next().unwrap()).unwrap();
    for key in entry.as_object().unwrap().keys() {
        assert!(declared.contains(&key), "{key} missing from schema");
    }
    let gamma = &schema["$defs"]["autParams"]["required"];
    for key in entry["ground_truth"]["gamma"].as_object().unwrap().keys() {
        assert!(gamma.as_array().unwrap().iter().any(|k| k == key), "{key}");
    }
}
