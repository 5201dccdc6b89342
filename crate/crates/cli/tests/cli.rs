use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn contagion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contagion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn generate_then_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    let out = contagion(&[
        "generate",
        "--n",
        "40",
        "--p",
        "0.2",
        "--seed",
        "3",
        "--out",
        path(&file),
    ]);
    assert_eq!(out.status.code(), Some(0));

    let graph = contagion::graph::read_edge_list(std::io::BufReader::new(
        std::fs::File::open(&file).unwrap(),
    ))
    .unwrap();
    let direct = contagion::sample_gnp(&contagion::GnpParams::new(40, 0.2, 3).unwrap());
    assert_eq!(
        graph.edges().collect::<Vec<_>>(),
        direct.edges().collect::<Vec<_>>()
    );
}

#[test]
fn single_graph_commands_print_json() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    contagion(&[
        "generate",
        "--n",
        "14",
        "--p",
        "0.4",
        "--seed",
        "8",
        "--out",
        path(&file),
    ]);

    let solve = contagion(&["solve", "--graph", path(&file), "--r", "2"]);
    assert_eq!(solve.status.code(), Some(0));
    let solve = json(&solve);
    assert_eq!(solve["status"], "exact");
    let size = solve["size"].as_u64().unwrap();
    assert_eq!(solve["witness"].as_array().unwrap().len() as u64, size);

    let witness: Vec<String> = solve["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let perc = json(&contagion(&[
        "percolate",
        "--graph",
        path(&file),
        "--seeds",
        &witness.join(","),
    ]));
    assert_eq!(perc["contagious"], true);
    assert_eq!(perc["active_count"], 14);
    assert_eq!(perc["generation"].as_array().unwrap().len(), 14);

    let built = json(&contagion(&["construct", "--graph", path(&file)]));
    assert!(built["size"].as_u64().unwrap() >= size);
    assert_eq!(built["seeds"], built["trace"]["final_seeds"]);
}

#[test]
fn batch_json_output() {
    let out = contagion(&[
        "sweep", "--n", "800", "--d", "16", "--trials", "2", "--format", "json",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let records = json(&out);
    let records = records.as_array().unwrap();
    assert_eq!(records.len(), 3);
    assert!(records
        .iter()
        .all(|r| r["mode"] == "sweep" && r["schema"] == 1));
}

#[test]
fn exit_codes() {
    assert_eq!(contagion(&["sweep", "--bogus"]).status.code(), Some(1));
    assert_eq!(
        contagion(&["solve", "--graph", "/nonexistent/g.txt"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(contagion(&["--help"]).status.code(), Some(0));
    assert_eq!(
        contagion(&["sweep", "--n", "0", "--d", "5"]).status.code(),
        Some(1)
    );

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("t.toml");
    std::fs::write(
        &cfg,
        "mode = \"threshold\"\nn = [1500]\nbracket = [1e-4, 1e-3]\ntrials = 2\nprobe_trials = 4\n",
    )
    .unwrap();
    let out = contagion(&["threshold", "--config", path(&cfg)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-crossing"));

    let wrong = contagion(&["sweep", "--config", path(&cfg)]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("out.csv");
    let args = [
        "partial", "--n", "1000", "--d", "12", "--trials", "2", "--seed", "4",
    ];
    let stdout = contagion(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path(&file)]);
    assert_eq!(contagion(&with_out).status.code(), Some(0));
    assert_eq!(std::fs::read(&file).unwrap(), stdout);
}
