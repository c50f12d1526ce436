use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use genus_cli::cache::{Cache, CacheRecord};
use genus_cli::scan::{run_scan, Check, ScanJob, ScanSummary, SignFilter};
use genus_core::bqf::DEFAULT_MAX_CLASS_NUMBER;
use genus_core::genus::Genus;
use genus_core::quadfield::QuadField;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussgenus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn genus_json_report() {
    let o = run(&["genus", "-d", "-5", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["r"], 2);
    assert_eq!(v["rank2"], 1);
    assert_eq!(v["gauss_holds"], true);
    assert_eq!(v["kernel_generator_kind"], "support_d");
}

#[test]
fn genus_text_report() {
    let o = run(&["genus", "-d", "3"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("gauss holds"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&run(&["genus", "-d", "4"])), 2);
    assert_eq!(code(&run(&["genus", "-d", "1"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["genus"])), 2);
    assert_eq!(code(&run(&["scan", "--min", "10", "--max", "2"])), 2);
    assert_eq!(code(&run(&["nodecode", "-n", "3", "-k", "4", "-w", "1"])), 2);
    assert_eq!(code(&run(&["--workers", "0", "scan", "--min", "2", "--max", "3"])), 2);
}

#[test]
fn resource_bounds_exit_3() {
    // h+(-84) = 4
    assert_eq!(code(&run(&["--bound", "2", "classgroup", "-d", "-21"])), 3);
    assert_eq!(code(&run(&["nodecode", "-n", "32", "-k", "6", "-w", "16,20,32", "--node-budget", "50"])), 3);
    assert_eq!(code(&run(&["nodecode", "-n", "41", "-k", "1", "-w", "4"])), 3);
}

#[test]
fn classgroup_json_matches_record_format() {
    let o = run(&["classgroup", "-d", "-21", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let expected: Value = serde_json::from_str(
        r#"{"D":-84,"h_plus":4,"invariant_factors":[2,2],"reps":[[1,0,21],[2,2,11],[3,0,7],[5,4,5]],"two_torsion_basis":[1,2]}"#,
    )
    .unwrap();
    assert_eq!(v, expected);
}

fn scan_args<'a>(cache: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut args = vec!["--json", "--cache", cache, "--workers", "3", "scan", "--min", "-300", "--max", "300"];
    args.extend_from_slice(extra);
    args
}

#[test]
fn cold_and_warm_scans_print_identical_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache_s = cache.to_str().unwrap();
    let cold = run(&scan_args(cache_s, &[]));
    assert_eq!(code(&cold), 0);
    assert!(String::from_utf8_lossy(&cold.stderr).contains("0 hits"));
    let lines_after_cold = fs::read_to_string(&cache).unwrap().lines().count();
    let warm = run(&scan_args(cache_s, &[]));
    assert_eq!(code(&warm), 0);
    assert!(String::from_utf8_lossy(&warm.stderr).contains("0 computed"));
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(fs::read_to_string(&cache).unwrap().lines().count(), lines_after_cold);
    let summary: ScanSummary = serde_json::from_slice(&cold.stdout).unwrap();
    assert!(summary.anomalies.is_empty());
    assert!(summary.tallies.iter().all(|t| t.fail == 0));
}

#[test]
fn cache_records_agree_with_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let o = run(&["--cache", cache.to_str().unwrap(), "scan", "--min", "-120", "--max", "120", "--checks", "gauss"]);
    assert_eq!(code(&o), 0);
    for line in fs::read_to_string(&cache).unwrap().lines() {
        let rec: CacheRecord = serde_json::from_str(line).unwrap();
        let field = QuadField::from_d(rec.genus_report.d).unwrap();
        let genus = Genus::new(field, DEFAULT_MAX_CLASS_NUMBER).unwrap();
        assert_eq!(genus.group, rec.class_group);
        assert_eq!(genus.verify_gauss().unwrap(), rec.genus_report);
        let back: CacheRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        assert_eq!(back, rec);
    }
}

#[test]
fn corrupted_cache_lines_are_skipped_and_newest_wins() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.jsonl");
    let cache_s = path.to_str().unwrap();
    assert_eq!(code(&run(&["--cache", cache_s, "genus", "-d", "-5"])), 0);
    let good = fs::read_to_string(&path).unwrap();
    // a stale record for the same D followed by the good one, then a torn line
    let mut stale: Value = serde_json::from_str(good.trim()).unwrap();
    stale["genus_report"]["wide_rank"] = 7.into();
    let text = format!("{}\n{}{{\"version\":\"gaussgen", serde_json::to_string(&stale).unwrap(), good);
    fs::write(&path, text).unwrap();
    let cache = Cache::open(&path).unwrap();
    assert_eq!(cache.rejected, 1);
    assert_eq!(cache.get(-20).unwrap().genus_report.wide_rank, 1);
    let o = run(&["--json", "--cache", cache_s, "genus", "-d", "-5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["wide_rank"], 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped 1"));
}

#[test]
fn scan_counts_skipped_entries() {
    let o = run(&["--json", "scan", "--min", "4", "--max", "4"]);
    assert_eq!(code(&o), 0);
    let s: ScanSummary = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((s.examined, s.skipped_non_squarefree), (0, 1));
    let o = run(&["--json", "scan", "--min", "-1", "--max", "1", "--checks", "gauss"]);
    let s: ScanSummary = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((s.examined, s.skipped_degenerate), (1, 2));
}

#[test]
fn norm_minus_one_agreement_is_total() {
    let o = run(&["--json", "scan", "--min", "2", "--max", "200", "--checks", "norm-minus-one"]);
    assert_eq!(code(&o), 0);
    let s: ScanSummary = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(s.tallies[0].check, Check::NormMinusOne);
    assert_eq!((s.tallies[0].pass, s.tallies[0].fail), (s.examined, 0));
}

#[test]
fn scan_summary_is_independent_of_workers() {
    let job = |workers| ScanJob {
        d_min: -150,
        d_max: 150,
        sign: SignFilter::Negative,
        checks: vec![Check::Wide, Check::Gauss, Check::Kernel],
        workers,
        max_class_number: DEFAULT_MAX_CLASS_NUMBER,
    };
    let one = run_scan(&job(1), &Cache::disabled()).unwrap().summary;
    let four = run_scan(&job(4), &Cache::disabled()).unwrap().summary;
    assert_eq!(one, four);
    assert_eq!(one.checks, vec![Check::Gauss, Check::Kernel, Check::Wide]);
    let back: ScanSummary = serde_json::from_str(&serde_json::to_string(&one).unwrap()).unwrap();
    assert_eq!(back, one);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn keylemma_file_pass_through() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(
        dir.path(),
        "branch.json",
        r#"{"n_components":4,"ambient_rank":1,"phi_matrix":[[1,1,0,0]]}"#,
    );
    let o = run(&["--json", "keylemma", &ok]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["quotient_dim"], 2);
    assert_eq!(v["two_torsion_rank"], 2);
    assert_eq!(v["kernel_basis"].as_array().unwrap().len(), 3);

    let odd = write(dir.path(), "odd.json", r#"{"n_components":3,"ambient_rank":1,"phi_matrix":[[1,0,0]]}"#);
    assert_eq!(code(&run(&["keylemma", &odd])), 2);
    let bad = write(dir.path(), "bad.json", r#"{"n_components":2,"ambient_rank":1,"phi_matrix":[[1]]}"#);
    assert_eq!(code(&run(&["keylemma", &bad])), 2);
    assert_eq!(code(&run(&["keylemma", "/nonexistent/branch.json"])), 2);
}

#[test]
fn surface_datasets_pass_their_parity_checks() {
    let o = run(&["--json", "campedelli"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["all_checks_pass"], true);
    assert_eq!(v["keylemma"]["quotient_dim"], 0);
    let o = run(&["--json", "werner"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["parity_checks"].as_array().unwrap().len(), 2);
    assert_eq!(v["keylemma"]["quotient_dim"], 1);
}

#[test]
fn nodecode_reports_stage() {
    let o = run(&["--json", "nodecode", "-n", "2", "-k", "2", "-w", "1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["search"]["outcome"]["verdict"], "NONEXISTENT");
    assert_eq!(v["decided_by"], "macwilliams");
    let o = run(&["--json", "nodecode", "-n", "4", "-k", "1", "-w", "4"]);
    let v = json(&o);
    assert_eq!(v["search"]["outcome"]["generator"][0], "1111");
    assert_eq!(v["decided_by"], "search");
}

#[test]
fn quintic_certificate_shape() {
    let o = run(&["--json", "quintic", "--nodes", "26"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verdict"], "no_claim");
    for step in v["steps"].as_array().unwrap() {
        assert!(step["claim"].is_string() && step["arithmetic"].is_string() && step["source"].is_string());
    }
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.toml", "json = true\nbound = 2\n");
    let o = run(&["--config", &cfg, "genus", "-d", "-5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["rank2"], 1);
    assert_eq!(code(&run(&["--config", &cfg, "genus", "-d", "-21"])), 3);
    assert_eq!(code(&run(&["--config", &cfg, "--bound", "10", "genus", "-d", "-21"])), 0);
    let bad = write(dir.path(), "bad.toml", "colour = 3\n");
    assert_eq!(code(&run(&["--config", &bad, "genus", "-d", "-5"])), 2);
}
