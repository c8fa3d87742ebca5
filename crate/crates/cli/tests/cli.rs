use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_idealgames"));
    c.env_remove("IDEALGAMES_BUDGET");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("idealgames-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str], cwd: &Path) -> Output {
    bin().args(args).current_dir(cwd).output().unwrap()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr)
        .unwrap_or_else(|_| panic!("stderr is not JSON: {}", String::from_utf8_lossy(&o.stderr)))
}

#[test]
fn valid_instance_has_an_empty_report() {
    let o = run(
        &["ideal", "validate", data("good.json").to_str().unwrap()],
        Path::new("."),
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "{\"violations\":[]}\n"
    );
}

#[test]
fn malformed_json_reports_its_position() {
    let dir = scratch("malformed");
    let f = dir.join("bad.json");
    std::fs::write(&f, "{\"ground\": [0,\n 1,, ]}").unwrap();
    let o = run(&["ideal", "validate", f.to_str().unwrap()], &dir);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr_json(&o);
    assert_eq!(e["error"], "parse");
    assert_eq!(e["line"], 2);
}

#[test]
fn schema_errors_carry_a_pointer() {
    let dir = scratch("schema");
    let f = dir.join("inst.json");
    std::fs::write(
        &f,
        r#"{"ground":[0,1],"generators":[[0],[7]],"sigma_stage_bound":1}"#,
    )
    .unwrap();
    let e = stderr_json(&run(&["ideal", "validate", f.to_str().unwrap()], &dir));
    assert_eq!(
        (e["error"].as_str(), e["pointer"].as_str()),
        (Some("schema"), Some("/generators/1/0"))
    );
    let s = dir.join("space.json");
    std::fs::write(&s, r#"{"points":2,"opens":[[0],["x"]]}"#).unwrap();
    let e = stderr_json(&run(&["bm", "decompose", s.to_str().unwrap()], &dir));
    assert_eq!(
        (e["error"].as_str(), e["pointer"].as_str()),
        (Some("schema"), Some("/opens/1/0"))
    );
}

#[test]
fn canonical_form_round_trips() {
    let dir = scratch("canon");
    let messy = dir.join("messy.json");
    std::fs::write(
        &messy,
        "{ \"sigma_stage_bound\": 2, \"ground\": [0,1,2],\n \"generators\": [[1,0],[2]] }",
    )
    .unwrap();
    let canon = dir.join("canon.json");
    assert!(run(
        &[
            "ideal",
            "canon",
            messy.to_str().unwrap(),
            "--out",
            canon.to_str().unwrap()
        ],
        &dir
    )
    .status
    .success());
    let first = std::fs::read_to_string(&canon).unwrap();
    assert_eq!(
        first,
        "{\"generators\":[[0,1],[2]],\"ground\":[0,1,2],\"sigma_stage_bound\":2}\n"
    );
    let again = dir.join("again.json");
    assert!(run(
        &[
            "ideal",
            "canon",
            canon.to_str().unwrap(),
            "--out",
            again.to_str().unwrap()
        ],
        &dir
    )
    .status
    .success());
    assert_eq!(std::fs::read_to_string(&again).unwrap(), first);
}

#[test]
fn empty_tactic_defeat_is_written_out() {
    let dir = scratch("empty");
    let o = run(
        &[
            "game",
            "verify",
            "--tactic",
            "empty",
            "--instance",
            data("empty_fixture.json").to_str().unwrap(),
        ],
        &dir,
    );
    assert_eq!(o.status.code(), Some(0));
    let rep: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep["verdict"], "defeat");
    let lines = std::fs::read_to_string(dir.join("transcript.jsonl")).unwrap();
    assert!(lines.lines().count() >= 2);
    assert!(lines.contains("\"lose\""));
}

#[test]
fn unknown_flags_and_budgets() {
    let dir = scratch("flags");
    let o = run(&["ideal", "validate", "--frobnicate", "x"], &dir);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "usage");
    let doc = dir.join("t.json");
    assert!(run(
        &[
            "tactic",
            "build",
            "--kind",
            "smg2",
            "--out",
            doc.to_str().unwrap()
        ],
        &dir
    )
    .status
    .success());
    let o = bin()
        .args(["game", "verify", "--tactic", doc.to_str().unwrap()])
        .env("IDEALGAMES_BUDGET", "50")
        .current_dir(&dir)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stderr_json(&o)["error"], "resource");
}

#[test]
fn block_and_space_verbs() {
    let (fine, coarse) = (data("fine.json"), data("coarse.json"));
    let o = run(
        &[
            "cantor",
            "subset",
            fine.to_str().unwrap(),
            coarse.to_str().unwrap(),
        ],
        Path::new("."),
    );
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "{\"value\":0,\"verdict\":\"proper_subset_from\"}\n"
    );
    let o = run(
        &[
            "cantor",
            "witness",
            coarse.to_str().unwrap(),
            fine.to_str().unwrap(),
        ],
        Path::new("."),
    );
    let w: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        (w["in_a"].as_bool(), w["in_b"].as_bool()),
        (Some(true), Some(false))
    );
    let o = run(
        &["bm", "decompose", data("two_points.json").to_str().unwrap()],
        Path::new("."),
    );
    let d: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(d["decomposition"]["n"], 2);
    let o = run(&["bm", "reduce", "--plays", "20"], Path::new("."));
    assert!(o.status.success());
}

#[test]
fn runs_are_reproducible() {
    let dir = scratch("repro");
    let doc = dir.join("t.json");
    let args = [
        "--seed",
        "4",
        "tactic",
        "build",
        "--kind",
        "mg",
        "--out",
        doc.to_str().unwrap(),
    ];
    assert!(run(&args, &dir).status.success());
    let first = std::fs::read(&doc).unwrap();
    assert!(run(&args, &dir).status.success());
    assert_eq!(std::fs::read(&doc).unwrap(), first);
    let play = [
        "--seed",
        "9",
        "game",
        "play",
        "--tactic",
        doc.to_str().unwrap(),
    ];
    assert_eq!(run(&play, &dir).stdout, run(&play, &dir).stdout);
    let defeat = [
        "--seed",
        "7",
        "tactic",
        "defeat",
        "--kind",
        "slight",
        "--candidate",
        "random",
    ];
    assert_eq!(run(&defeat, &dir).stdout, run(&defeat, &dir).stdout);
}

#[test]
fn tampered_tactic_documents_are_rejected() {
    let dir = scratch("tamper");
    let doc = dir.join("t.json");
    assert!(run(
        &[
            "tactic",
            "build",
            "--kind",
            "vsg3",
            "--out",
            doc.to_str().unwrap()
        ],
        &dir
    )
    .status
    .success());
    let text = std::fs::read_to_string(&doc)
        .unwrap()
        .replace("\"menu\":[[0,7]", "\"menu\":[[1,7]");
    std::fs::write(&doc, text).unwrap();
    let o = run(&["game", "verify", "--tactic", doc.to_str().unwrap()], &dir);
    assert_eq!(o.status.code(), Some(2));
}
