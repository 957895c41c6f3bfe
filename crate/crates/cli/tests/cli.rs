use std::process::{Command, Output};

fn stirling(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stirling"))
        .args(args)
        .env_remove("STIRLING_SEED")
        .output()
        .unwrap()
}

#[test]
fn json_is_reproducible_for_a_fixed_seed() {
    let args = [
        "betti", "--n", "6", "--k", "2", "--format", "json", "--seed", "42",
    ];
    let a = stirling(&args);
    let b = stirling(&args);
    assert!(a.status.success());
    assert_eq!(
        String::from_utf8(a.stdout.clone()).unwrap(),
        String::from_utf8(b.stdout).unwrap()
    );
    let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["results"][0]["homology"]["betti"]["6"], 274);
}

#[test]
fn seed_falls_back_to_environment() {
    let args = ["betti", "--n", "6", "--k", "2", "--format", "json"];
    let text = |o: Output| String::from_utf8(o.stdout).unwrap();
    let flag = text(
        Command::new(env!("CARGO_BIN_EXE_stirling"))
            .args(args)
            .arg("--seed")
            .arg("9")
            .output()
            .unwrap(),
    );
    let env = text(
        Command::new(env!("CARGO_BIN_EXE_stirling"))
            .args(args)
            .env("STIRLING_SEED", "9")
            .output()
            .unwrap(),
    );
    assert_eq!(flag, env);
    assert!(flag.contains("\"modular\""));
    assert_ne!(flag, text(stirling(&args)));
}

#[test]
fn betti_reports() {
    for (n, k, beta) in [("5", "2", "50"), ("3", "3", "1"), ("7", "3", "1624")] {
        let out = stirling(&["betti", "--n", n, "--k", k]);
        assert!(out.status.success());
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains(&format!("β_{n}={beta}")), "{text}");
        assert!(text.contains("PASS"));
    }
}

#[test]
fn invalid_range_is_a_usage_error() {
    let out = stirling(&["betti", "--n", "3", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("2 <= k <= n"));
}

#[test]
fn verify_and_graph_exit_zero() {
    assert!(stirling(&[
        "verify",
        "--n",
        "4",
        "--k",
        "2",
        "--checks",
        "d2,reach,euler"
    ])
    .status
    .success());
    assert!(stirling(&["verify", "--n", "5", "--k", "3"])
        .status
        .success());
    assert!(stirling(&["graph", "--m", "4"]).status.success());
}

#[test]
fn characters_list_partitions() {
    let out = stirling(&["characters", "--n", "5", "--k", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("V_{5,1} ⊕ V_{3,3} ⊕ V_{3,2,1} ⊕ V_{2,2,1^2}"),
        "{text}"
    );
    let csv = String::from_utf8(
        stirling(&["characters", "--n", "3", "--k", "2", "--format", "csv"]).stdout,
    )
    .unwrap();
    assert!(csv.starts_with("cycle_type,class_size,value\n"));
}

#[test]
fn table_csv_and_dot_outputs() {
    let csv =
        String::from_utf8(stirling(&["table", "--max-n", "4", "--format", "csv"]).stdout).unwrap();
    assert!(csv.contains("4,2,11,11"));
    let dot = stirling(&[
        "complex", "--n", "4", "--k", "2", "--i", "1", "--index", "3", "--format", "dot",
    ]);
    assert!(String::from_utf8(dot.stdout)
        .unwrap()
        .starts_with("graph \""));
    let no_dot = stirling(&["table", "--format", "dot"]);
    assert_eq!(no_dot.status.code(), Some(2));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("stirling-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("complex.json");
    let out = stirling(&[
        "complex",
        "--n",
        "3",
        "--k",
        "2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(value["degrees"][1]["dim"], 6);
    assert_eq!(
        value["differentials"][0]["triplets"]
            .as_array()
            .unwrap()
            .len(),
        9
    );
    std::fs::remove_dir_all(dir).unwrap();
}
