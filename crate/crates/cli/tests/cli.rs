use std::process::Command;

use spectile::{TilingStatus, TileSet};
use spectile_cli::{
    analyze, enumerate_sets, run_experiment, AnalysisReport, AnalyzeConfig, Experiment,
    ExperimentConfig, ExperimentReport, SearchOutcome,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectile"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn analyze_examples() {
    let cfg = AnalyzeConfig::default();
    let r = analyze(&[0, 1, 6, 7], &cfg).unwrap();
    assert!(r.t1 && r.t2);
    assert_eq!(r.divisors, vec![2, 4, 12]);
    assert_eq!(r.tiling.status, TilingStatus::Tiles);
    assert!(r.tiling.certificate.as_ref().unwrap().at_period(8).unwrap().verify(&r.set));
    assert_eq!(r.searched_spectrum.as_ref().unwrap().to_string(), "{0, 1/12, 1/2, 7/12}");
    assert_eq!(r.constructed_spectrum.as_ref().unwrap().to_string(), "{0, 1/4, 1/2, 3/4}");
    assert!(r.all_checks_pass());

    let r = analyze(&[0, 1, 3], &cfg).unwrap();
    assert!(!r.t1);
    assert_eq!(r.tiling.status, TilingStatus::DoesNotTile);
    assert_eq!(r.search, SearchOutcome::NoneExists);
    assert!(r.constructed_spectrum.is_none() && r.searched_spectrum.is_none());

    let r = analyze(&[0], &cfg).unwrap();
    assert_eq!(r.tiling.certificate.as_ref().unwrap().period, 1);
    assert_eq!(r.searched_spectrum.unwrap().len(), 1);
}

#[test]
fn reports_round_trip_through_json() {
    for set in [vec![0, 1, 6, 7], vec![0, 1, 3], vec![-2, 0, 2], vec![0]] {
        let r = analyze(&set, &AnalyzeConfig::default()).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: AnalysisReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
    let report = run_experiment(&ExperimentConfig::new(Experiment::Thm3N2, 1, 5, 20)).unwrap();
    let text = serde_json::to_string(&report).unwrap();
    let back: ExperimentReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, report);
}

#[test]
fn experiments_are_independent_of_worker_count() {
    let mut one = ExperimentConfig::new(Experiment::CmCrosscheck, 2, 5, 10);
    let a = serde_json::to_string(&run_experiment(&one).unwrap()).unwrap();
    one.workers = 4;
    let b = serde_json::to_string(&run_experiment(&one).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn rows_follow_enumeration_order() {
    let report = run_experiment(&ExperimentConfig::new(Experiment::N3Equivalence, 3, 3, 9)).unwrap();
    let expected: Vec<TileSet> = enumerate_sets(3, 9).unwrap().collect();
    let got: Vec<TileSet> = report.rows.iter().map(|r| r.set.clone()).collect();
    assert_eq!(got, expected);
    assert!(report.passed());
}

#[test]
fn cli_analyze_text_and_json() {
    let (code, out, _) = run(&["analyze", "--set", "0,1,6,7"]);
    assert_eq!(code, 0);
    assert!(out.contains("t1 = true, t2 = true"));
    assert!(out.contains("searched spectrum: {0, 1/12, 1/2, 7/12}"));

    let (code, out, _) = run(&["analyze", "--set", "5,6,11,12", "--json"]);
    assert_eq!(code, 0);
    let r: AnalysisReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.shift, 5);
    assert_eq!(r.set.elements(), &[0, 1, 6, 7]);
    assert_eq!(r.format_version, spectile_cli::report::FORMAT_VERSION);

    let (code, out, _) = run(&["analyze", "--set=-1,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("translated by 1"));
}

#[test]
fn cli_rejects_bad_input() {
    for bad in ["0,1.5", "0,a", "0,1,1", ""] {
        let (code, _, err) = run(&["analyze", "--set", bad]);
        assert_eq!(code, 2, "input {bad:?}");
        assert!(err.starts_with("error:"), "{err}");
    }
    let (code, _, err) = run(&["enumerate", "--n", "3", "--max", "9", "--experiment", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown experiment"));
    let (code, _, _) = run(&["tile", "--set", "0,1,6,7", "--period-bound", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn cli_tile_and_spectrum() {
    let (_, out, _) = run(&["tile", "--set", "0,1,6,7", "--period-bound", "64"]);
    assert_eq!(out.trim(), "tiles: period 4, complement {0}");
    let (_, out, _) = run(&["tile", "--set", "0,1,3", "--period-bound", "64"]);
    assert!(out.starts_with("does not tile"));
    let (_, out, _) = run(&["spectrum", "--set", "0,1,6,7", "--construct"]);
    assert_eq!(out.trim(), "{0, 1/4, 1/2, 3/4}");
    let (_, out, _) = run(&["spectrum", "--set", "0,1,6,7", "--search"]);
    assert_eq!(out.trim(), "{0, 1/12, 1/2, 7/12}");
    let (_, out, _) = run(&["spectrum", "--set", "0,1,6,7", "--denominator-cap", "6"]);
    assert!(out.starts_with("unknown"));
    let (_, out, _) = run(&["spectrum", "--set", "0,1,3"]);
    assert_eq!(out.trim(), "no rational spectrum found");
}

#[test]
fn cli_enumerate_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let (code, out, _) = run(&[
        "enumerate", "--n", "1..6", "--max", "100", "--experiment", "thm-3N2", "--workers", "3",
        "--out", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("violations 0"));
    let report: ExperimentReport = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(report.passed());
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), report.rows.len() + 1);
    assert!(rows.starts_with("set,n,m,t1,t2,tiling"));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "set = [0, 1, 3]\nexperiment = \"n3-equivalence\"\nn = 3\nmax = 8\n").unwrap();
    let c = cfg.to_str().unwrap();

    let (code, out, _) = run(&["--config", c, "analyze"]);
    assert_eq!(code, 0);
    assert!(out.contains("A = {0,1,3}"));
    let (_, out, _) = run(&["--config", c, "analyze", "--set", "0,2"]);
    assert!(out.contains("A = {0,2}"));
    let (code, out, _) = run(&["--config", c, "enumerate"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n3-equivalence: 21 sets"), "{out}");
    let (_, out, _) = run(&["--config", c, "enumerate", "--max", "6"]);
    assert!(out.starts_with("n3-equivalence: 10 sets"), "{out}");

    std::fs::write(&cfg, "sett = [0]\n").unwrap();
    let (code, _, err) = run(&["--config", c, "analyze"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid configuration"));
}
