use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracolloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_passes() {
    let o = run(&["verify", "all", "--seed", "42"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["failed"], 0);
    assert!(report["total"].as_u64().unwrap() >= 40);
}

#[test]
fn symbol_grid_rows() {
    let o = run(&["symbol", "--p", "3", "--alpha", "1.5", "--resolution", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta,f_a1.5"));
    let theta: Vec<f64> = lines
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(theta.len(), 10);
    assert!(theta.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn convergence_block_matches_table() {
    let o = run(&[
        "convergence",
        "--solution",
        "poly33",
        "--p",
        "2",
        "--alpha",
        "1.2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let errors: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    let published = [1.3146e-03, 1.5675e-04, 2.4941e-05, 3.5227e-06, 5.0507e-07];
    assert_eq!(errors.len(), published.len());
    for (e, t) in errors.iter().zip(published) {
        assert!((e - t).abs() <= 5e-3 * t, "{e} vs {t}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "eigs", "--p", "3", "--n", "20", "--alpha", "1.5", "--alpha", "1.8",
    ];
    let a = run(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_fracolloc"))
        .args(args)
        .env("COLLOC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_format() {
    let o = run(&[
        "bounds",
        "--p",
        "3",
        "--alpha",
        "1.5",
        "--resolution",
        "50",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["symbol", "--p", "3", "--alpha", "3.5"],
        vec!["symbol", "--p", "1", "--alpha", "0.5"],
        vec!["eigs", "--p", "3"],
        vec!["verify", "nonsense"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_fracolloc"))
        .args(["verify", "splines"])
        .env("COLLOC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn out_file_written() {
    let dir = std::env::temp_dir().join(format!("fracolloc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sym.csv");
    let o = run(&[
        "symbol",
        "--p",
        "2",
        "--alpha",
        "1.2",
        "--resolution",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 5);
    std::fs::remove_dir_all(&dir).unwrap();
}
