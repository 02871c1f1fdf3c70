use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_listcolour"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("listcolour-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["mc", "--bogus"]).status.code(), Some(1));
    assert_eq!(
        run(&["mc", "--graph", "path:2", "--m", "2", "--trials", "5", "--seed", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["mc", "--graph", "wheel:5", "--k", "1", "--m", "2", "--trials", "5", "--seed", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["bounds", "no_such_formula"]).status.code(), Some(1));
}

#[test]
fn malformed_input_exits_two() {
    let lists = scratch("bad-lists", "not a list dump\n");
    let o = run(&[
        "solve",
        "--graph",
        "cycle:5",
        "--lists",
        lists.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let config = scratch("bad-config.json", "{ \"k\": ");
    let o = run(&["--config", config.to_str().unwrap(), "bounds", "--list"]);
    assert_eq!(o.status.code(), Some(2));
    let unknown = scratch("unknown-config.json", "{\"colours\": 3}");
    assert_eq!(
        run(&["--config", unknown.to_str().unwrap(), "bounds", "--list"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn solver_cap_exits_three() {
    let lists = scratch("c5-lists", "0: 1 2\n1: 1 2\n2: 1 2\n3: 1 2\n4: 1 2\n");
    let path = lists.to_str().unwrap();
    let o = run(&[
        "solve",
        "--graph",
        "cycle:5",
        "--lists",
        path,
        "--exact-cap",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&[
        "solve",
        "--graph",
        "cycle:5",
        "--lists",
        path,
        "--emit-witness",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["colourable"], false);
    assert_eq!(v["witness"]["vertices"].as_array().unwrap().len(), 5);
}

#[test]
fn mc_output_is_identical_across_worker_counts() {
    let args = [
        "mc",
        "--graph",
        "cyclepow:500:2",
        "--k",
        "2",
        "--m",
        "7",
        "--trials",
        "60",
        "--seed",
        "3",
    ];
    let reference = run(&[&["--workers", "1"][..], &args].concat());
    assert!(reference.status.success());
    for w in ["2", "5"] {
        let o = run(&[&["--workers", w][..], &args].concat());
        assert_eq!(o.stdout, reference.stdout, "workers={w}");
    }
    let text = stdout(&reference);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), listcolour::experiment::CSV_HEADER);
    assert!(lines
        .next()
        .unwrap()
        .starts_with("cyclepow:500:2,500,4,2,7,60,"));
}

#[test]
fn flags_override_config() {
    let config = scratch(
        "config.json",
        r#"{"graph": "path:2", "k": 1, "m": 2, "trials": 10, "seed": 1, "workers": 1}"#,
    );
    let c = config.to_str().unwrap();
    let o = run(&["--config", c, "mc"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("path:2,2,1,1,2,10,"));
    let o = run(&[
        "--config",
        c,
        "mc",
        "--trials",
        "20",
        "--graph",
        "complete:3",
    ]);
    assert!(stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("complete:3,3,2,1,2,20,0,"));
}

#[test]
fn sweep_writes_one_row_per_palette() {
    let out = std::env::temp_dir().join(format!("listcolour-cli-{}-sweep.csv", std::process::id()));
    let o = run(&[
        "sweep",
        "--graph",
        "complete:3",
        "--k",
        "1",
        "--m-values",
        "2,3,50",
        "--trials",
        "100",
        "--seed",
        "9",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let p: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(7).unwrap().parse().unwrap())
        .collect();
    assert_eq!(p.len(), 3);
    assert_eq!(p[0], 0.0);
    assert!(p[2] > 0.8);
    let o = run(&[
        "sweep",
        "--graph",
        "complete:3",
        "--k",
        "1",
        "--m-values",
        "3,2",
        "--trials",
        "10",
        "--seed",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bounds_json_and_listing() {
    let o = run(&[
        "bounds",
        "threshold_general_growth",
        "--param",
        "n=1000",
        "--param",
        "delta=10",
        "--param",
        "k=2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // n^{1/k²} Δ^{1/k}
    let expected = 1000f64.powf(0.25) * 10f64.sqrt();
    assert!((v["value"].as_f64().unwrap() - expected).abs() < 1e-9 * expected);
    assert_eq!(v["flags"].as_array().unwrap().len(), 0);
    let o = run(&[
        "bounds",
        "g_clique_upper",
        "--param",
        "r=3",
        "--param",
        "k=2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["flags"][0], "order-only");
    let listing = stdout(&run(&["bounds", "--list"]));
    assert!(listing
        .lines()
        .any(|l| l.starts_with("integral_closed_form ")));
}

#[test]
fn sample_and_gsearch() {
    let o = run(&[
        "sample", "--n", "4", "--k", "2", "--m", "5", "--seed", "8", "--trial", "3",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert_eq!(
        text,
        stdout(&run(&[
            "sample", "--n", "4", "--k", "2", "--m", "5", "--seed", "8", "--trial", "3"
        ]))
    );

    let mut child = bin()
        .args(["gsearch", "--forbidden", "clique:3", "--k", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // K1, K2, P3, C4, C5 in graph6.
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"@\nA_\nBg\nCl\nDhc\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certified_g"], 4);
    assert_eq!(v["counterexample"]["n"], 5);
}
