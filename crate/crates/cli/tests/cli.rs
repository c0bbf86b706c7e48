//! End-to-end runs of the binary against the fixtures and golden outputs.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_torus-rigidity"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap()
}

fn without_seed(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"seed\""))
        .collect::<Vec<_>>()
        .join("\n")
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn run_on(cmd: &str, input: &str, extra: &[&str]) -> (i32, String, String) {
    let path = fixture(input);
    let mut args = vec![cmd, "--input", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn check_goldens_and_exit_codes() {
    for (input, gold, code) in [
        ("fig1.json", "check_fig1.txt", 0),
        ("fig2.json", "check_fig2.txt", 0),
        ("fig7e.json", "check_fig7e.txt", 0),
        ("zero_gain.json", "check_zero_gain.txt", 1),
    ] {
        let (exit, stdout, _) = run_on("check", input, &[]);
        assert_eq!(exit, code, "{input}");
        assert_eq!(stdout, golden(gold), "{input}");
    }
    assert_eq!(
        golden("check_fig1.txt"),
        "laman: yes, rank: 6/6, agree: yes\n"
    );
}

#[test]
fn exhaustive_flag_gives_the_same_answers() {
    for input in ["fig1.json", "fig7e.json", "zero_gain.json"] {
        assert_eq!(
            run_on("check", input, &["--exhaustive"]).1,
            run_on("check", input, &[]).1
        );
    }
}

#[test]
fn malformed_input_exits_two_with_position() {
    let (exit, stdout, stderr) = run_on("check", "truncated.json", &[]);
    assert_eq!(exit, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("line 5 column"), "{stderr}");
    assert!(stderr.contains("edges[1]"), "{stderr}");
    let (exit, _, _) = run(&["check", "--input", "/no/such/file.json"]);
    assert_eq!(exit, 2);
}

#[test]
fn json_goldens() {
    let cfg = fixture("fig1_config.json");
    let cfg = cfg.to_str().unwrap();
    for (cmd, input, extra, gold) in [
        ("rank", "fig1.json", vec![], "rank_fig1.json"),
        (
            "rank",
            "fig1.json",
            vec!["--config", cfg, "--matrix"],
            "rank_fig1_config.json",
        ),
        (
            "tgain",
            "fig2.json",
            vec!["--root", "3", "--tree", "1,4"],
            "tgain_fig2.json",
        ),
        ("replay", "fig7_sequence.json", vec![], "replay_fig7.json"),
        ("decompose", "fig7e.json", vec![], "decompose_fig7e.json"),
        (
            "derive",
            "fig1.json",
            vec!["--config", cfg, "--window", "3x3"],
            "derive_fig1_3x3.json",
        ),
    ] {
        let (exit, stdout, stderr) = run_on(cmd, input, &extra);
        assert_eq!(exit, 0, "{cmd} {input}: {stderr}");
        assert_eq!(
            without_seed(&stdout),
            without_seed(&golden(gold)),
            "{cmd} {input}"
        );
    }
}

#[test]
fn seed_changes_only_the_seed_field() {
    let (_, a, _) = run_on("rank", "fig1.json", &["--seed", "0"]);
    let (_, b, _) = run_on("rank", "fig1.json", &["--seed", "17"]);
    assert_ne!(a, b);
    assert_eq!(without_seed(&a), without_seed(&b));
}

#[test]
fn tgain_values() {
    let (_, stdout, _) = run_on("tgain", "fig2.json", &["--root", "3", "--tree", "1,4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let gains: Vec<serde_json::Value> = v["graph"]["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["gain"].clone())
        .collect();
    assert_eq!(
        serde_json::Value::from(gains),
        serde_json::json!([[0, 0], [2, 2], [4, 0], [0, 0]])
    );
    assert_eq!(
        v["gain_space"]["basis"],
        serde_json::json!([[4, 0], [2, 2]])
    );
    let (exit, _, stderr) = run_on("tgain", "fig2.json", &["--root", "3", "--tree", "1,2,3"]);
    assert_eq!(exit, 1, "{stderr}");
}

#[test]
fn decompose_then_replay_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("seq.json");
    let graph = dir.path().join("graph.json");
    let (exit, _, _) = run_on(
        "decompose",
        "fig7e.json",
        &["--output", seq.to_str().unwrap()],
    );
    assert_eq!(exit, 0);
    let (exit, _, _) = run(&[
        "replay",
        "--input",
        seq.to_str().unwrap(),
        "--output",
        graph.to_str().unwrap(),
        "--validate",
    ]);
    assert_eq!(exit, 0);
    let (exit, stdout, _) = run(&["check", "--input", graph.to_str().unwrap()]);
    assert_eq!(exit, 0);
    assert_eq!(stdout, golden("check_fig7e.txt"));
    let (exit, _, stderr) = run_on("decompose", "zero_gain.json", &[]);
    assert_eq!(exit, 1);
    assert!(stderr.contains("non-constructive"), "{stderr}");
}

#[test]
fn generate_and_derive() {
    let dir = tempfile::tempdir().unwrap();
    let (exit, stdout, _) = run(&[
        "generate",
        "--vertices",
        "6",
        "--gain-bound",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(exit, 0);
    let g = dir.path().join("g.json");
    std::fs::write(&g, stdout).unwrap();
    assert_eq!(run(&["check", "--input", g.to_str().unwrap()]).0, 0);

    let many = dir.path().join("many");
    assert_eq!(
        run(&[
            "generate",
            "--count",
            "3",
            "--output",
            many.to_str().unwrap()
        ])
        .0,
        0
    );
    assert_eq!(std::fs::read_dir(&many).unwrap().count(), 3);
    assert_eq!(run(&["generate", "--count", "3"]).0, 2);

    let svg = dir.path().join("w.svg");
    let (exit, stdout, _) = run_on(
        "derive",
        "fig1.json",
        &[
            "--random-config",
            "--window",
            "2x2",
            "--svg",
            svg.to_str().unwrap(),
        ],
    );
    assert_eq!(exit, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 16);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let (_, stdout, _) = run_on(
        "derive",
        "fig1.json",
        &["--random-config", "--window", "0x0"],
    );
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(v["vertices"].as_array().unwrap().is_empty());
    assert_eq!(run_on("derive", "fig1.json", &[]).0, 2);
}

#[test]
fn corpus_runs() {
    let (exit, stdout, _) = run(&["corpus", "--count", "0"]);
    assert_eq!(exit, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["count"], 0);
    let (exit, stdout, _) = run(&["corpus", "--count", "60", "--max-vertices", "6"]);
    assert_eq!(exit, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["disagreements"].as_array().unwrap().len(), 0);
    assert_eq!(
        run(&["corpus", "--min-vertices", "5", "--max-vertices", "2"]).0,
        2
    );
}
