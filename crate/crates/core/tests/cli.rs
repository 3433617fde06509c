use matsketch::cli::run_cli;
use matsketch::io::{save_matrix, MatrixFormat};
use matsketch::synthetic::low_rank_plus_noise;
use serde_json::Value;

fn run(line: &str) -> matsketch::cli::CliOutput {
    let mut argv = vec!["matsketch".to_string()];
    argv.extend(line.split_whitespace().map(String::from));
    run_cli(argv)
}

fn report(line: &str) -> Value {
    let out = run(line);
    assert_eq!(out.code, 0, "{line}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn error(line: &str) -> (i32, Value) {
    let out = run(line);
    assert!(out.stdout.is_empty());
    (out.code, serde_json::from_str(&out.stderr).unwrap())
}

fn strip_timings(mut v: Value) -> Value {
    fn walk(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.remove("timings");
                map.values_mut().for_each(walk);
            }
            Value::Array(items) => items.iter_mut().for_each(walk),
            _ => {}
        }
    }
    walk(&mut v);
    v
}

#[test]
fn deterministic_cx_meets_its_bound() {
    let r = report("cx frobenius --mode deterministic -k 2 -r 8");
    assert_eq!(r["seed"], "deterministic");
    assert!((r["bound"]["constant"].as_f64().unwrap() - 5f64.sqrt()).abs() < 1e-12);
    assert_eq!(r["satisfied"], true);
    assert!(r["ratios"]["error"].as_f64().unwrap() <= 5f64.sqrt());
}

#[test]
fn barrier_coreset_size_and_ratio() {
    let r = report("coreset --method barrier --eps 0.5");
    assert_eq!(r["parameters"]["r"], 3600);
    assert!(r["ratios"]["residual_sq"].as_f64().unwrap() <= 1.5);
    assert_eq!(r["satisfied"], true);
}

#[test]
fn lower_bound_ratio_is_two() {
    let r = report("lowerbound -n 5 --alpha 1 -r 2");
    assert!((r["ratios"]["error_spectral_sq"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(r["satisfied"], true);
}

#[test]
fn every_subcommand_produces_a_report() {
    for line in [
        "cx spectral --mode fast -k 2 -r 20",
        "cssp --mode frobenius -k 2",
        "id -k 3",
        "coreset --method subspace --eps 0.5 --seed 3",
        "coreset --method srht --eps 0.5 --seed 3 --allow-wider",
        "kmeans --method select -k 3 --c0 0.1",
        "sketch-svd --mode frobenius -k 3",
        "sketch-svd --mode srht -k 3 --eps 0.4 --allow-wider",
    ] {
        let r = report(line);
        assert!(r["experiment"].is_string(), "{line}");
        assert_eq!(r["determinism_hash"].as_str().unwrap().len(), 64, "{line}");
    }
}

#[test]
fn argument_errors_exit_two() {
    let (code, e) = error("cx frobenius -k 0 -r 8");
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "argument");
    assert_eq!(e["error"]["exit_code"], 2);
    let (code, _) = error("cx nuclear -k 2 -r 8");
    assert_eq!(code, 2);
    let (code, _) = error("no-such-command");
    assert_eq!(code, 2);
    let (code, e) = error("coreset --method srht --eps 0.5");
    assert_eq!(code, 2);
    assert_eq!(e["error"]["kind"], "oversized");
}

#[test]
fn io_errors_exit_four() {
    let (code, e) = error("cx frobenius -k 2 -r 8 --in /nonexistent/matrix.mtx");
    assert_eq!(code, 4);
    assert_eq!(e["error"]["kind"], "io");

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "1,2\n3,oops\n").unwrap();
    let (code, e) = error(&format!("cx frobenius -k 1 -r 2 --in {}", bad.display()));
    assert_eq!(code, 4);
    assert_eq!(e["error"]["kind"], "parse");
}

#[test]
fn help_exits_zero() {
    let out = run("--help");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("coreset"));
}

#[test]
fn reports_repeat_modulo_timings() {
    for line in ["cx frobenius --mode relative -k 2 -r 40 --seed 9 --trials 3", "kmeans -k 3 --seed 4"] {
        let a = report(line);
        let b = report(line);
        assert_eq!(a["determinism_hash"], b["determinism_hash"], "{line}");
        assert_eq!(
            serde_json::to_string(&strip_timings(a)).unwrap(),
            serde_json::to_string(&strip_timings(b)).unwrap()
        );
    }
    let a = report("cx frobenius --mode relative -k 2 -r 40 --seed 9");
    let b = report("cx frobenius --mode relative -k 2 -r 40 --seed 10");
    assert_ne!(a["determinism_hash"], b["determinism_hash"]);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&format!("lowerbound -n 4 -r 2 --out {}", path.display()));
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["experiment"], "lowerbound");
}

#[test]
fn file_input_matches_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let a = low_rank_plus_noise(30, 20, 2, 0.05, 5);
    for name in ["a.mtx", "a.csv"] {
        let path = dir.path().join(name);
        save_matrix(&path, &a, MatrixFormat::Auto).unwrap();
        let r = report(&format!("cx frobenius --mode deterministic -k 2 -r 6 --in {}", path.display()));
        assert_eq!(r["input"]["rows"], 30);
        assert_eq!(r["input"]["cols"], 20);
        assert_eq!(r["input"]["seed"], Value::Null);
        assert!(r["input"]["source"].as_str().unwrap().starts_with("file:"));
    }
}

#[test]
fn seed_from_environment() {
    // The only test that touches MATSKETCH_SEED.
    std::env::set_var("MATSKETCH_SEED", "17");
    let r = report("cx frobenius --mode relative -k 2 -r 40");
    std::env::remove_var("MATSKETCH_SEED");
    assert_eq!(r["seed"], 17);
}

#[test]
fn bench_suite_is_sorted_and_deterministic() {
    let a = report("bench-suite --seed 2 --trials 1");
    let items = a.as_array().unwrap();
    assert_eq!(items.len(), 11);
    let ids: Vec<&str> = items.iter().map(|r| r["experiment"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let b = report("bench-suite --seed 2 --trials 1");
    let hashes = |v: &Value| v.as_array().unwrap().iter().map(|r| r["determinism_hash"].clone()).collect::<Vec<_>>();
    assert_eq!(hashes(&a), hashes(&b));
}
