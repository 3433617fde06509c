// Write a matrix to disk, run an experiment on it through the command-line front end
// and read back the JSON report.

use matsketch::cli::run_cli;
use matsketch::io::{load_matrix, save_matrix, MatrixFormat};
use matsketch::synthetic::low_rank_plus_noise;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("matsketch-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("a.mtx");
    let a = low_rank_plus_noise(50, 30, 2, 0.1, 8);
    save_matrix(&path, &a, MatrixFormat::Auto)?;
    assert_eq!(load_matrix(&path, MatrixFormat::Auto)?, a);

    let args = ["matsketch", "cx", "frobenius", "--mode", "deterministic", "-k", "2", "-r", "8", "--in"];
    let out = run_cli(args.iter().map(|s| s.to_string()).chain([path.display().to_string()]));
    println!("exit code {}", out.code);
    let report: serde_json::Value = serde_json::from_str(&out.stdout)?;
    println!(
        "{}: ratio {:.4}, bound {} = {:.4}, satisfied {}",
        report["experiment"], report["ratios"]["error"], report["bound"]["formula"], report["bound"]["constant"], report["satisfied"]
    );

    let bad = run_cli(["matsketch", "cx", "frobenius", "-k", "2", "-r", "999"]);
    println!("exit code {} with {}", bad.code, bad.stderr.lines().collect::<String>());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
