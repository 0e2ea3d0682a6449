use std::path::Path;
use std::process::{Command, Output};

fn dfaint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfaint"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn counter(name: &str, m: u32, accept: u32) -> String {
    let mut s = format!("dfa {name}\nalphabet a\nstates {m}\ninitial 0\nfinal {accept}\n");
    for q in 0..m {
        s += &format!("trans {q} a {}\n", (q + 1) % m);
    }
    s
}

const CONTAINS_ONE: &str = "ntm contains_one\nstates 2\ninitial 0\naccept 1\n\
                            delta 0 0 0 -> 0 0 R S\ndelta 0 1 0 -> 1 0 S S\n";

#[test]
fn solve_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "odd.dfa", &counter("odd", 2, 1));
    write(dir.path(), "even.dfa", &counter("even", 2, 0));
    write(dir.path(), "mod3.dfa", &counter("mod3", 3, 0));
    let both = write(dir.path(), "both.int", "use odd.dfa\nuse mod3.dfa\n");
    let never = write(dir.path(), "never.int", "use odd.dfa\nuse even.dfa\n");

    for strategy in ["on-the-fly", "materialized"] {
        let o = dfaint(&["solve", &both, "--strategy", strategy]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.starts_with("NONEMPTY\nwitness: aaa\n"), "{out}");
    }
    let o = dfaint(&["solve", &never]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("EMPTY"));
    let o = dfaint(&["solve", &both, "--step-cap", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = dfaint(&["solve", &both, "--step-cap", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_two_with_locations() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "bad.dfa",
        "dfa bad\nalphabet a\nstates 1\ninitial 0\ntrans 0 a 0\ntrans 0 a 0\n",
    );
    let int = write(dir.path(), "bad.int", "use bad.dfa\n");
    let o = dfaint(&["solve", &int]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.dfa") && err.contains("line 6"), "{err}");

    write(
        dir.path(),
        "partial.dfa",
        "dfa p\nalphabet a b\nstates 1\ninitial 0\nfinal 0\ntrans 0 a 0\n",
    );
    let int = write(dir.path(), "partial.int", "use partial.dfa\n");
    assert_eq!(dfaint(&["solve", &int]).status.code(), Some(0));
    assert_eq!(dfaint(&["solve", &int, "--strict"]).status.code(), Some(2));
    assert_eq!(dfaint(&["solve", "/nonexistent.int"]).status.code(), Some(2));
}

#[test]
fn compile_then_solve_prints_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let ntm = write(dir.path(), "c1.ntm", CONTAINS_ONE);
    let out = dir.path().join("fam/lin.int");
    let out = out.to_str().unwrap();
    let o = dfaint(&[
        "compile-linear",
        &ntm,
        "--input",
        "0100",
        "-S",
        "1",
        "--compact",
        "--out",
        out,
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = dfaint(&["solve", out]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("run of contains_one on 0100 in 1 cells, 2 steps"),
        "{text}"
    );
    assert!(text.contains("q1 h0=2 h1=0"), "{text}");

    let out = dir.path().join("kozen.int");
    let out = out.to_str().unwrap();
    let o = dfaint(&["compile-kozen", &ntm, "--input", "0000", "-k", "1", "--out", out]);
    assert!(o.status.success());
    assert_eq!(dfaint(&["solve", out]).status.code(), Some(1));
}

#[test]
fn amplify_preserves_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    for (name, m) in [("a", 2), ("b", 3), ("c", 2), ("d", 3)] {
        write(dir.path(), &format!("{name}.dfa"), &counter(name, m, m - 1));
    }
    let int = write(dir.path(), "four.int", "use a.dfa\nuse b.dfa\nuse c.dfa\nuse d.dfa\n");
    let out = dir.path().join("two.int");
    let out = out.to_str().unwrap();
    let o = dfaint(&["amplify", &int, "-k", "2", "--out", out]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("4 automata -> 2 (group size 2, padding 0)"), "{text}");
    assert_eq!(text.matches(": 6 states").count(), 2, "{text}");
    let before = stdout(&dfaint(&["solve", &int]));
    let after = stdout(&dfaint(&["solve", out]));
    assert_eq!(before.lines().nth(1), after.lines().nth(1));
    assert_eq!(
        dfaint(&["amplify", &int, "-k", "0", "--out", out]).status.code(),
        Some(2)
    );
}

#[test]
fn simulate_and_savitch() {
    let dir = tempfile::tempdir().unwrap();
    let ntm = write(dir.path(), "c1.ntm", CONTAINS_ONE);
    for cmd in ["simulate", "savitch"] {
        assert_eq!(dfaint(&[cmd, &ntm, "-i", "001", "-S", "1"]).status.code(), Some(0));
        assert_eq!(dfaint(&[cmd, &ntm, "-i", "000", "-S", "1"]).status.code(), Some(1));
    }
}

#[test]
fn verify_reports_and_detects_faults() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let o = dfaint(&[
        "verify",
        "--cases",
        "15",
        "--seed",
        "11",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("seed 11, 15 cases"), "{text}");
    assert!(text.contains("0 disagree"));
    assert_eq!(std::fs::read_to_string(&report).unwrap(), text);
    assert_eq!(stdout(&dfaint(&["verify", "--cases", "15", "--seed", "11"])), text);

    let o = dfaint(&["verify", "--cases", "10", "--max-states", "1", "--initial-accepting"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("10/10 agree"));

    let o = dfaint(&["verify", "--cases", "40", "--fault", "skip-input"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_csv() {
    let o = dfaint(&["bench", "--n-min", "100", "--n-max", "50"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "construction,n,k_or_S,strategy,dfas,max_states,product_states_explored,time_ns,verdict\n"
    );
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("b.csv");
    let args = [
        "bench",
        "--n-min",
        "8",
        "--n-max",
        "16",
        "--strategy",
        "on-the-fly,materialized",
        "--repeats",
        "1",
        "--out",
    ];
    let o = dfaint(&[&args[..], &[csv.to_str().unwrap()]].concat());
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * 2 * 2);
    assert!(text.contains("modular,8,2,materialized,2,13,143,"), "{text}");
    let strip = |t: &str| -> Vec<String> {
        t.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(7);
                f.join(",")
            })
            .collect()
    };
    let o = dfaint(&args[..9]);
    assert_eq!(strip(&stdout(&o)), strip(&text));
}
