use std::fs;
use std::path::Path;
use std::process::Command;

use kbs::harness::{
    compare_files, read_csv, run_experiment, summaries_from_runs, CompareOptions, ExperimentConfig,
    Metric, OperatorPair, Overrides, RunRow, SummaryRow, RUNS_FILE, SUMMARY_FILE,
};

fn config(json: &str) -> ExperimentConfig {
    ExperimentConfig::from_json(json).unwrap()
}

fn overrides(dir: &Path, threads: usize) -> Overrides {
    Overrides {
        threads: Some(threads),
        seed: None,
        out: Some(dir.to_path_buf()),
    }
}

const ONE_CELL: &str = r#"{
    "problem": "paraboloid",
    "dims": [2],
    "operators": ["alpha_kbs+gm"],
    "runs": 2,
    "generations": 10,
    "population_size": 20
}"#;

const SWEEP: &str = r#"{
    "problems": ["rastrigin", "kmeans4"],
    "dims": [2, 3],
    "operators": ["alpha_kbs+gm", "blx_alpha+sm", "sbx+sm"],
    "runs": 4,
    "generations": 30,
    "population_size": 24,
    "pool_size": 24,
    "master_seed": 99
}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kbs-bench"))
}

#[test]
fn row_accounting_and_headers() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_experiment(&config(ONE_CELL), &overrides(dir.path(), 1)).unwrap();
    assert_eq!(out.runs.len(), 2);
    assert_eq!(out.summary.len(), 1);
    let runs = fs::read_to_string(dir.path().join(RUNS_FILE)).unwrap();
    let summary = fs::read_to_string(dir.path().join(SUMMARY_FILE)).unwrap();
    assert_eq!(runs.lines().count(), 3);
    assert_eq!(summary.lines().count(), 2);
    assert_eq!(
        runs.lines().next().unwrap(),
        "problem,dim,recomb,mutation,run_index,seed,first_hit,final_value"
    );
    assert_eq!(
        summary.lines().next().unwrap(),
        "problem,dim,recomb,mutation,runs,success_rate,mean_runtime_eq4,mean_runtime_successful,mean_final,std_final"
    );
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let cfg = config(SWEEP);
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_experiment(&cfg, &overrides(a.path(), 1)).unwrap();
    run_experiment(&cfg, &overrides(b.path(), 4)).unwrap();
    for file in [
        "runs.csv",
        "summary.csv",
        "lloyd.csv",
        "dataset_d2.txt",
        "dataset_d3.txt",
    ] {
        let x = fs::read(a.path().join(file)).unwrap();
        let y = fs::read(b.path().join(file)).unwrap();
        assert_eq!(x, y, "{file} differs");
    }
}

#[test]
fn summary_is_recomputable_from_runs() {
    let dir = tempfile::tempdir().unwrap();
    run_experiment(&config(SWEEP), &overrides(dir.path(), 2)).unwrap();
    let runs: Vec<RunRow> = read_csv(&dir.path().join(RUNS_FILE)).unwrap();
    let summary: Vec<SummaryRow> = read_csv(&dir.path().join(SUMMARY_FILE)).unwrap();
    assert_eq!(runs.len(), 2 * 2 * 3 * 4);
    assert_eq!(summaries_from_runs(&runs).unwrap(), summary);
    // rows are ordered by cell, then run index
    for chunk in runs.chunks(4) {
        assert_eq!(
            chunk.iter().map(|r| r.run_index).collect::<Vec<_>>(),
            [0, 1, 2, 3]
        );
    }
}

#[test]
fn seed_override_changes_results() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = config(ONE_CELL);
    run_experiment(&cfg, &overrides(a.path(), 1)).unwrap();
    let mut o = overrides(b.path(), 1);
    o.seed = Some(12345);
    run_experiment(&cfg, &o).unwrap();
    assert_ne!(
        fs::read(a.path().join(RUNS_FILE)).unwrap(),
        fs::read(b.path().join(RUNS_FILE)).unwrap()
    );
}

#[test]
fn compare_self_is_not_significant() {
    let dir = tempfile::tempdir().unwrap();
    run_experiment(&config(SWEEP), &overrides(dir.path(), 1)).unwrap();
    let report = compare_files(
        dir.path(),
        dir.path(),
        &CompareOptions::new(Metric::FinalValue),
    )
    .unwrap();
    assert_eq!(report.compared.len(), 12);
    assert!(report
        .compared
        .iter()
        .all(|c| c.test.z == 0.0 && !c.significant));
}

#[test]
fn compare_two_operators_and_partial_overlap() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_experiment(&config(SWEEP), &overrides(a.path(), 1)).unwrap();
    let mut other = config(SWEEP);
    other.dims = vec![3, 5];
    other.problem = kbs::harness::OneOrMany::One(kbs::harness::Problem::Function(
        kbs::objectives::BenchmarkFunction::Rastrigin,
    ));
    run_experiment(&other, &overrides(b.path(), 1)).unwrap();

    let report = compare_files(a.path(), b.path(), &CompareOptions::new(Metric::FirstHit)).unwrap();
    assert_eq!(report.compared.len(), 3);
    assert!(report
        .compared
        .iter()
        .all(|c| c.problem == "rastrigin" && c.dim == 3));
    assert_eq!(report.only_in_a.len(), 9);
    assert_eq!(report.only_in_b.len(), 3);

    let mut opts = CompareOptions::new(Metric::FinalValue);
    opts.a_op = Some("alpha_kbs+gm".parse::<OperatorPair>().unwrap());
    opts.b_op = Some("blx_alpha+sm".parse::<OperatorPair>().unwrap());
    let report = compare_files(a.path(), a.path(), &opts).unwrap();
    assert_eq!(report.compared.len(), 4);
    let table = report.render_table();
    assert!(table.contains("alpha_kbs+gm"));
}

#[test]
fn cli_run_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("cfg.json");
    fs::write(&cfg_path, ONE_CELL).unwrap();
    let out = dir.path().join("res");
    let status = bin()
        .args(["--threads", "1", "--seed", "3", "--out"])
        .arg(&out)
        .arg("run")
        .arg(&cfg_path)
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let runs: Vec<RunRow> = read_csv(&out.join(RUNS_FILE)).unwrap();
    assert_eq!(runs.len(), 2);

    let status = bin()
        .arg("compare")
        .arg(out.join(SUMMARY_FILE))
        .arg(&out)
        .args(["--metric", "final_value"])
        .output()
        .unwrap();
    assert!(
        status.status.success(),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let csv = fs::read_to_string(out.join("compare_final_value.csv")).unwrap();
    assert!(csv.starts_with(
        "problem,dim,recomb_a,mutation_a,recomb_b,mutation_b,metric,n_a,n_b,u,u1,u2,z,p,significant"
    ));
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"problem": "nope", "dims": [2], "operators": ["sbx+sm"]}"#,
    )
    .unwrap();
    let code = |args: &[&std::ffi::OsStr]| bin().args(args).output().unwrap().status.code();

    assert_eq!(code(&["run".as_ref(), bad.as_os_str()]), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&["run".as_ref(), missing.as_os_str()]), Some(3));

    let odd = dir.path().join("odd.json");
    fs::write(&odd, r#"{"problem": "paraboloid", "dims": [2], "operators": ["sbx+sm"], "population_size": 21, "pool_size": 21}"#).unwrap();
    assert_eq!(code(&["run".as_ref(), odd.as_os_str()]), Some(2));

    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, ONE_CELL).unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for (out, seed) in [(&a, "1"), (&b, "2")] {
        let st = bin()
            .args(["--seed", seed, "--out"])
            .arg(out)
            .arg("run")
            .arg(&cfg)
            .output()
            .unwrap()
            .status;
        assert!(st.success());
    }
    let mut other = fs::read_to_string(a.join(RUNS_FILE)).unwrap();
    other = other.replace("paraboloid", "ackley");
    fs::write(b.join(RUNS_FILE), other).unwrap();
    assert_eq!(
        code(&["compare".as_ref(), a.as_os_str(), b.as_os_str()]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "compare".as_ref(),
            a.as_os_str(),
            dir.path().join("nowhere").as_os_str()
        ]),
        Some(3)
    );
}
