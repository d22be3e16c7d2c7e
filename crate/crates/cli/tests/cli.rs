use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_globcat")).args(args).output().expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), report, String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn non_associative_input_is_rejected() {
    let (code, report, stderr) = run(&["validate", &data("bad.json")]);
    assert_eq!(code, 2);
    assert_eq!(report["error"]["kind"], "NonAssociative");
    assert!(stderr.contains("NonAssociative"));
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn fiedorowicz_demo() {
    let (code, report, _) = run(&["example", "fiedorowicz"]);
    assert_eq!(code, 0);
    let groups: Vec<&str> =
        report["result"]["report"]["homology"].as_array().unwrap().iter().map(|g| g["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["Z", "0", "Z", "0"]);
}

#[test]
fn horn_demo() {
    let (code, report, _) = run(&["example", "horn-counterexample"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["p[1]"]["isomorphism"], false);
    assert_eq!(report["result"]["BC2"]["isomorphism"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = ["dwyer-pushout", &data("source.json"), &data("point_to_bc2.json"), "--against", &data("arrow.json")];
    let a = Command::new(env!("CARGO_BIN_EXE_globcat")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_globcat")).args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (_, timed, _) = run(&["example", "fiedorowicz", "--timings"]);
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn verdicts_map_to_exit_codes() {
    assert_eq!(run(&["dwyer-check", &data("source.json")]).0, 0);
    let (code, report, _) = run(&["dwyer-check", &data("target.json")]);
    assert_eq!(code, 1);
    assert_eq!(report["verdict"], "negative");
    assert_eq!(run(&["fun-preserve", &data("arrow.json"), &data("source.json"), &data("target.json")]).0, 1);
    let (code, report, _) = run(&["fun-preserve", "--strict", &data("arrow.json"), &data("source.json"), &data("target.json")]);
    assert_eq!((code, report["error"]["kind"].as_str()), (2, Some("NotStronglyConnected")));
    assert_eq!(run(&["cog-validate", &data("bad_complex.json")]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn orbit_hom_spellings_agree() {
    let (c1, a, _) = run(&["orbit-hom", &data("c2.json"), "S3"]);
    let (c2, b, _) = run(&["orbit", "hom", &data("c2.json"), "S3"]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["report"]["pi0"], 2);
}

#[test]
fn complex_round_trip_through_files() {
    let dir = std::env::temp_dir().join(format!("globcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let assembled = dir.join("assembled.json");
    let (code, _, _) = run(&["cog-assemble", &data("complex.json"), "--out", assembled.to_str().unwrap()]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&assembled).unwrap()).unwrap();
    let category = dir.join("category.json");
    std::fs::write(&category, report["result"]["category"].to_string()).unwrap();
    let (code, rebuilt, _) = run(&["cog-reconstruct", category.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, original, _) = run(&["cog-validate", &data("complex.json")]);
    assert_eq!(rebuilt["result"]["complex"], original["result"]["complex"]);
    assert_eq!(run(&["cog-reconstruct", category.to_str().unwrap(), "--choices", "random:7"]).0, 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cells_and_global_nerves() {
    let (code, report, _) = run(&["cell", "1", "C2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["cell"]["objects"], 5);
    let (code, report, _) = run(&["global-nerve", &data("bc2.json"), "C2", "--family", "C1", "--family", "C2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["restrictions"], 3);
    let (code, report, _) = run(&["grothendieck", &data("complex.json"), "--index", &data("bc2.json")]);
    assert_eq!(code, 0);
    assert!(report["result"]["comparison"].is_object());
}
