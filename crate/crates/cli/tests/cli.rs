//! End-to-end tests of the `polescore` binary: exit codes, CSV/SVG output,
//! config-file precedence and the data-driven subcommands.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polescore"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn polescore")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polescore-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("power"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let o = run(&["power", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_config_value_is_usage_error() {
    let o = run(&["power", "--alpha", "3.0", "--reps", "2", "--m", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha"));
}

#[test]
fn zero_statistic_needs_p2() {
    let o = run(&["power", "--statistic", "zero", "--p", "1", "--reps", "2", "--m", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn power_writes_csv_and_svg() {
    let csv = tmp("power.csv");
    let svg = tmp("power.svg");
    let o = run(&[
        "power",
        "--snr-grid",
        "0.1,1",
        "--m",
        "10",
        "--reps",
        "5",
        "--seed",
        "3",
        "--statistic",
        "original",
        "--test",
        "hotelling",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with(
        "alpha,snr,xi_re,xi_im,m,reps,beta,statistic,test,mode,power,mc_stderr,discarded,seed\n"
    ));
    assert_eq!(text.lines().count(), 3);
    let svg_text = std::fs::read_to_string(&svg).unwrap();
    assert!(svg_text.contains("<polyline"));
}

#[test]
fn power_is_deterministic_and_flags_override_config_file() {
    let conf = tmp("exp.conf");
    std::fs::write(&conf, "m = 6\nreps = 4\nstatistic = original\ntest = hotelling\nsnr-grid = 0.5\nseed = 11\n").unwrap();
    let base = ["power", "--config", conf.to_str().unwrap()];
    let a = run(&base);
    let b = run(&base);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains(",6,4,"));
    // flag overrides the file's m
    let c = run(&["power", "--config", conf.to_str().unwrap(), "--m", "8"]);
    assert!(c.status.success());
    assert!(stdout(&c).contains(",8,4,"));
}

#[test]
fn unknown_config_key_rejected() {
    let conf = tmp("bad.conf");
    std::fs::write(&conf, "bogus = 1\n").unwrap();
    let o = run(&["power", "--config", conf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn sample_emits_series_rows() {
    let o = run(&[
        "sample", "--snr-grid", "1", "--reps", "3", "--p", "2", "--seed", "5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,re,im,replicate");
    // 3 replicates x 2p = 4 coefficients
    assert_eq!(lines.len(), 13);
    assert!(lines[1].starts_with("0,"));
    assert!(lines[4].starts_with("3,"));
}

#[test]
fn pade_recovers_worked_example() {
    let input = tmp("series.csv");
    std::fs::write(&input, "3,0\n0,0\n0.375,0\n0.09375,0\n").unwrap();
    let o = run(&["pade", input.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("pole[0]: 0.5"), "{text}");
    assert!(text.contains("pole[1]: -0.25"), "{text}");
    assert!(text.contains("zero[0]: 0.25"), "{text}");
    assert!(text.contains("residual[0]: 1 "), "{text}");
    assert!(text.contains("residual[1]: 2"), "{text}");
}

#[test]
fn test_subcommand_reads_stdin() {
    // clearly off-center cloud: hotelling must reject
    let mut rows = String::from("re,im\n");
    for i in 0..40 {
        let t = i as f64;
        rows.push_str(&format!("{},{}\n", 5.0 + 0.1 * (1.3 * t).sin(), 5.0 + 0.1 * (2.1 * t).cos()));
    }
    let mut child = bin()
        .args(["test", "--test", "hotelling"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(rows.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("test: hotelling"));
    assert!(text.contains("reject: true"), "{text}");
}

#[test]
fn test_subcommand_rank_test_runs() {
    let input = tmp("points.csv");
    let mut rows = String::new();
    // deterministic scattered cloud around the origin
    for i in 0..30 {
        let t = i as f64;
        rows.push_str(&format!("{},{}\n", (1.7 * t).sin(), (2.3 * t + 0.5).cos()));
    }
    std::fs::write(&input, rows).unwrap();
    let o = run(&["test", "--test", "pole_score", input.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.contains("score: pole_score"));
    assert!(text.contains("threshold: 5.99"), "{text}");
}

#[test]
fn density_check_passes_and_small_reps_rejected() {
    let o = run(&["density-check", "--reps", "2000", "--seed", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("p_value"));
    let o = run(&["density-check", "--reps", "1000", "--sigma", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn numerical_error_exits_three() {
    // constant series makes the p=2 pencil singular
    let input = tmp("degenerate.csv");
    std::fs::write(&input, "1,0\n1,0\n1,0\n1,0\n").unwrap();
    let o = run(&["pade", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}
