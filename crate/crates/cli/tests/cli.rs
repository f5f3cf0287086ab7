//! End-to-end tests driving the `devolve` binary.

use std::path::Path;
use std::process::{Command, Output};

fn devolve(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_devolve"))
        .args(args)
        .current_dir(dir)
        .env_remove("DEVOLVE_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn run_writes_requested_number_of_records() {
    let tmp = tempfile::tempdir().unwrap();
    let out = devolve(
        &[
            "run",
            "--function", "1",
            "--dim", "10",
            "--model", "sequential",
            "--np", "20",
            "--trials", "3",
            "--seed", "7",
            "--budget", "2000",
            "--gen-seed", "1",
            "--out", "results.jsonl",
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(tmp.path().join("results.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(stdout(&out).contains("F01"));
    // Resume: rerunning adds nothing.
    let out2 = devolve(
        &[
            "run",
            "--function", "1",
            "--dim", "10",
            "--model", "sequential",
            "--np", "20",
            "--trials", "3",
            "--seed", "7",
            "--budget", "2000",
            "--gen-seed", "1",
            "--out", "results.jsonl",
        ],
        tmp.path(),
    );
    assert!(out2.status.success());
    let text2 = std::fs::read_to_string(tmp.path().join("results.jsonl")).unwrap();
    assert_eq!(text2.lines().count(), 3, "resume must not re-run trials");
}

#[test]
fn missing_data_dir_without_gen_seed_lists_files_and_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::create_dir(tmp.path().join("data")).unwrap();
    let out = devolve(
        &[
            "run",
            "--function", "5",
            "--dim", "10",
            "--trials", "1",
            "--budget", "500",
            "--np", "10",
            "--data-dir", "data",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    let err = stderr(&out);
    assert!(err.contains("F05_shift_D10.txt"), "{err}");
    assert!(err.contains("F05_shuffle_D10.txt"), "{err}");
}

#[test]
fn no_data_source_at_all_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = devolve(
        &["run", "--function", "1", "--dim", "10", "--trials", "1"],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--gen-seed"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let tmp = tempfile::tempdir().unwrap();
    let out = devolve(&["run", "--no-such-flag"], tmp.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gen_data_round_trips_and_is_idempotent() {
    let tmp = tempfile::tempdir().unwrap();
    let args = [
        "gen-data",
        "--seed", "11",
        "--dim", "12",
        "--function", "1-10",
        "--out-dir", "data",
    ];
    let out = devolve(&args, tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));

    // Byte-identical on regeneration.
    let shift = std::fs::read(tmp.path().join("data/F07_shift_D12.txt")).unwrap();
    let out2 = devolve(&args, tmp.path());
    assert!(out2.status.success());
    let shift2 = std::fs::read(tmp.path().join("data/F07_shift_D12.txt")).unwrap();
    assert_eq!(shift, shift2);

    // And a run can load what gen-data wrote.
    let out3 = devolve(
        &[
            "run",
            "--function", "7",
            "--dim", "12",
            "--np", "12",
            "--trials", "1",
            "--seed", "3",
            "--budget", "600",
            "--data-dir", "data",
            "--out", "r.jsonl",
        ],
        tmp.path(),
    );
    assert!(out3.status.success(), "{}", stderr(&out3));
}

#[test]
fn gen_data_rejects_degenerate_hybrid_dimension() {
    let tmp = tempfile::tempdir().unwrap();
    let out = devolve(
        &[
            "gen-data",
            "--seed", "1",
            "--dim", "3",
            "--function", "7",
            "--out-dir", "data",
        ],
        tmp.path(),
    );
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).contains("degenerate"));
}

#[test]
fn model_equivalence_is_visible_end_to_end() {
    let tmp = tempfile::tempdir().unwrap();
    for (model, extra) in [
        ("sequential", vec![]),
        ("master-slave", vec!["--workers", "4"]),
    ] {
        let mut args = vec![
            "run",
            "--function", "2",
            "--dim", "8",
            "--np", "16",
            "--trials", "2",
            "--seed", "5",
            "--budget", "1600",
            "--gen-seed", "9",
            "--model", model,
            "--algorithm-id", "same-algo",
            "--out", model, // distinct file per model
        ];
        args.extend(extra);
        let out = devolve(&args, tmp.path());
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let a = std::fs::read_to_string(tmp.path().join("sequential")).unwrap();
    let b = std::fs::read_to_string(tmp.path().join("master-slave")).unwrap();
    let errors = |text: &str| -> Vec<String> {
        text.lines()
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                format!("{}:{}", v["seed"], v["final_error"])
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(errors(&a), errors(&b));
}

#[test]
fn trace_emits_strided_monotone_rows_and_models_agree() {
    let tmp = tempfile::tempdir().unwrap();
    let trace = |model: &str, stride: &str, out: &str| {
        let o = devolve(
            &[
                "trace",
                "--function", "1",
                "--dim", "8",
                "--np", "10",
                "--seed", "4",
                "--budget", "1010",
                "--gen-seed", "2",
                "--stride", stride,
                "--model", model,
                "--workers", "2",
                "--out", out,
            ],
            tmp.path(),
        );
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read_to_string(tmp.path().join(out)).unwrap()
    };

    // 1010 FEs at NP=10: init + 100 generations.
    let full = trace("sequential", "1", "t1.csv");
    let lines: Vec<&str> = full.lines().collect();
    assert_eq!(lines[0], "generation,fe_count,elapsed_seconds,best_error");
    assert_eq!(lines.len() - 1, 100);
    let best: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(best.windows(2).all(|w| w[1] <= w[0]), "best error must not increase");

    let strided = trace("sequential", "10", "t10.csv");
    assert_eq!(strided.lines().count() - 1, 10);
    let gens: Vec<u32> = strided
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(gens.iter().enumerate().all(|(i, &g)| g == 10 * (i as u32 + 1)));

    // Same seed, different model: identical best_error column.
    let fused = trace("fused", "1", "t2.csv");
    let col = |text: &str| -> Vec<String> {
        text.lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap().to_string())
            .collect()
    };
    assert_eq!(col(&full), col(&fused));
}

#[test]
fn rank_handles_two_files_and_writes_csv() {
    let tmp = tempfile::tempdir().unwrap();
    // Two algorithms on one function with controlled errors.
    let write = |name: &str, alg: &str, errs: &[f64]| {
        let lines: String = errs
            .iter()
            .enumerate()
            .map(|(i, e)| {
                format!(
                    "{}\n",
                    serde_json::json!({
                        "algorithm_id": alg,
                        "function_id": 1,
                        "dimension": 10,
                        "seed": i,
                        "final_error": e,
                        "fes_used": 100,
                        "wall_clock_seconds": 0.5,
                        "solved": false,
                    })
                )
            })
            .collect();
        std::fs::write(tmp.path().join(name), lines).unwrap();
    };
    write("a.jsonl", "A", &[0.1, 0.2, 0.3]);
    write("b.jsonl", "B", &[1.1, 1.2, 1.3]);

    let out = devolve(&["rank", "a.jsonl", "b.jsonl", "--out", "report"], tmp.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let table = stdout(&out);
    assert!(table.contains("F01"), "{table}");

    let scores = std::fs::read_to_string(tmp.path().join("report.scores.csv")).unwrap();
    assert!(scores.contains("A,9,9"), "{scores}");
    assert!(scores.contains("B,0,0"), "{scores}");
    let ranks = std::fs::read_to_string(tmp.path().join("report.ranks.csv")).unwrap();
    assert!(ranks.contains("A,1,1"), "{ranks}");
    assert!(ranks.contains("B,2,2"), "{ranks}");

    // Mismatched trial counts across algorithms must fail.
    write("c.jsonl", "C", &[0.5]);
    let bad = devolve(&["rank", "a.jsonl", "b.jsonl", "c.jsonl"], tmp.path());
    assert_eq!(bad.status.code(), Some(1), "{}", stderr(&bad));
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("cfg.toml"),
        "dim = 8\nnp = 10\ntrials = 2\nbudget = 500\ngen_seed = 3\nseed = 9\nfunction = \"1\"\n",
    )
    .unwrap();
    // Flag overrides trials=2 -> 1; everything else comes from the file.
    let out = devolve(
        &[
            "run",
            "--config", "cfg.toml",
            "--trials", "1",
            "--out", "r.jsonl",
        ],
        tmp.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(tmp.path().join("r.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["seed"], 9);
}

#[test]
fn env_var_supplies_the_default_data_directory() {
    let tmp = tempfile::tempdir().unwrap();
    let gen = devolve(
        &["gen-data", "--seed", "4", "--dim", "8", "--function", "2", "--out-dir", "d"],
        tmp.path(),
    );
    assert!(gen.status.success(), "{}", stderr(&gen));
    let out = Command::new(env!("CARGO_BIN_EXE_devolve"))
        .args([
            "run",
            "--function", "2",
            "--dim", "8",
            "--np", "8",
            "--trials", "1",
            "--budget", "400",
            "--out", "r.jsonl",
        ])
        .current_dir(tmp.path())
        .env("DEVOLVE_DATA_DIR", tmp.path().join("d"))
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn list_functions_prints_catalog() {
    let tmp = tempfile::tempdir().unwrap();
    let out = devolve(&["list-functions"], tmp.path());
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("F01"));
    assert!(text.contains("F10"));
    assert!(text.contains("Composition"));
    assert!(text.contains("lambda"));
}
