use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use mssc_cli::format::parse_instance;
use tempfile::TempDir;

fn mssc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mssc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|rest| rest.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no `{key}` in {text}"))
}

#[test]
fn gen_is_deterministic_and_valid() {
    let dir = TempDir::new().unwrap();
    let args = ["gen", "--n", "5", "--T", "6", "--r", "2", "--seed", "3"];
    let a = stdout(&mssc(&args));
    assert_eq!(a, stdout(&mssc(&args)));
    let inst = parse_instance(&a).unwrap();
    assert!(inst.requests().iter().all(|r| r.len() == 2));
    let file = write(&dir, "g.txt", &a);
    assert_eq!(stdout(&mssc(&["validate", &file])), "ok\n");
}

#[test]
fn gen_rejects_bad_params() {
    let out = mssc(&["gen", "--n", "3", "--T", "2", "--r", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_exact_on_two_elements() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "i.txt", "mssc 1\nn 2 T 1\npi0 0 1\nreq 1 1\n");
    let out = stdout(&mssc(&["solve", &file, "--algo", "exact"]));
    assert_eq!(field(&out, "total"), "2");
}

#[test]
fn greedy_serves_every_request_first() {
    let dir = TempDir::new().unwrap();
    let inst = stdout(&mssc(&["gen", "--n", "5", "--T", "4", "--r", "2", "--seed", "11"]));
    let file = write(&dir, "i.txt", &inst);
    let out = stdout(&mssc(&["solve", &file, "--algo", "greedy"]));
    assert_eq!(field(&out, "covering"), "4");
}

#[test]
fn rand_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let inst = stdout(&mssc(&["gen", "--n", "5", "--T", "4", "--r", "3", "--seed", "2"]));
    let file = write(&dir, "i.txt", &inst);
    let args = ["solve", &file, "--algo", "rand", "--seed", "7", "--json"];
    let a = stdout(&mssc(&args));
    assert_eq!(a, stdout(&mssc(&args)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn frac_reports_lp_objective_and_dumps_program() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "i.txt", "mssc 1\nn 2 T 1\npi0 0 1\nreq 1 1\n");
    let lp = dir.path().join("p.lp");
    let out = stdout(&mssc(&["solve", &file, "--algo", "frac", "--csv", "--dump-lp", lp.to_str().unwrap()]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("algo,seed,n,T,covering,moving,total,lp_objective"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "frac");
    assert!((row[7].parse::<f64>().unwrap() - 2.0).abs() < 1e-6);
    assert!(!fs::read_to_string(lp).unwrap().is_empty());
}

#[test]
fn reduce_places_dummies_first() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "s.txt", "setcover 1\nelements 1 sets 1\nset 1 0\n");
    let out = stdout(&mssc(&["reduce", &file, "--dummies", "4"]));
    let inst = parse_instance(&out).unwrap();
    assert_eq!(inst.n(), 5);
    assert_eq!(inst.pi0().to_indices(), vec![1, 2, 3, 4, 0]);
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.txt", "mssc 1\nn 2 T 1\npi0 0 0\nreq 1 1\n");
    assert_eq!(mssc(&["validate", &file]).status.code(), Some(2));
    assert_eq!(mssc(&["solve", &file, "--algo", "exact"]).status.code(), Some(2));
    let file = write(&dir, "trunc.txt", "mssc 1\nn 2 T 2\npi0 0 1\nreq 1 1\n");
    assert_eq!(mssc(&["solve", &file, "--algo", "greedy"]).status.code(), Some(2));
    let missing = dir.path().join("nope.txt");
    assert_ne!(mssc(&["validate", missing.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn oversized_exact_exits_3() {
    let dir = TempDir::new().unwrap();
    let ids: Vec<String> = (0..10).map(|i| i.to_string()).collect();
    let text = format!("mssc 1\nn 10 T 1\npi0 {0}\nreq 10 {0}\n", ids.join(" "));
    let file = write(&dir, "big.txt", &text);
    assert_eq!(mssc(&["solve", &file, "--algo", "exact"]).status.code(), Some(3));
}

#[test]
fn experiment_with_no_algorithms_writes_header_only() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("e.csv");
    stdout(&mssc(&["experiment", "--sizes", "3x2", "--algos", "", "--out", out.to_str().unwrap()]));
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        "instance,n,T,r,algo,seed,covering,moving,total,baseline,ratio,wall_ms\n"
    );
}

fn without_wall_ms(path: &Path) -> String {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.rsplit_once(',').unwrap().0.to_string())
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn experiment_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        stdout(&mssc(&[
            "experiment", "--sizes", "3x2,4x2", "--trials", "2", "--seeds", "3", "--out",
            path.to_str().unwrap(),
        ]));
    }
    let text = without_wall_ms(&a);
    assert_eq!(text, without_wall_ms(&b));
    assert!(text.lines().any(|l| l.contains(",mean,")));
    for line in text.lines().skip(1).filter(|l| l.contains(",greedy,")) {
        let ratio: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!(ratio >= 1.0 - 1e-9);
    }
}
