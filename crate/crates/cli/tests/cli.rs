use std::process::{Command, Output};

use projline::matrices::Factorization;
use projline::oracle::{default_bound, geodesic_summary, VerifyReport};
use projline::transition::{KleinDoc, Sail};
use projline::{Cycle, Path, ProjPoint};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_projline"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn pt(s: &str) -> ProjPoint {
    s.parse().unwrap()
}

#[test]
fn dist_of_the_worked_example() {
    assert_eq!(ok(&["dist", "1:0", "37:158"]).trim(), "5");
    let v: Value = serde_json::from_str(&ok(&["--json", "dist", "1:0", "37:158"])).unwrap();
    assert_eq!(v["distance"], 5);
    assert_eq!(v["y"], "37:158");
}

#[test]
fn consistent_reports_both_lengths() {
    let s = ok(&["consistent", "1:0", "37:158"]);
    assert!(s.lines().any(|l| l == "d_a=8 d_b=7 unique=true"), "{s}");
    let v: Value = serde_json::from_str(&ok(&["consistent", "1:0", "37:158", "--json"])).unwrap();
    assert_eq!(
        (v["d_a"].as_u64(), v["d_b"].as_u64(), v["unique"].as_bool()),
        (Some(8), Some(7), Some(true))
    );
    let f: Path = serde_json::from_value(v["f_path"].clone()).unwrap();
    assert_eq!(f.len(), 7);
    let v: Value = serde_json::from_str(&ok(&["--json", "consistent", "1:0", "26:111"])).unwrap();
    assert_eq!(
        (v["d_a"].as_u64(), v["d_b"].as_u64(), v["unique"].as_bool()),
        (Some(7), Some(7), Some(false))
    );
}

#[test]
fn path_count_matches_the_oracle() {
    for (x, y) in [
        ("1:0", "26:111"),
        ("1:0", "37:158"),
        ("-1:2", "5:3"),
        ("2:7", "-13:4"),
    ] {
        let n: u128 = ok(&["paths", x, y, "--count"]).trim().parse().unwrap();
        let (x, y) = (pt(x), pt(y));
        let s = geodesic_summary(x, y, default_bound(x, y)).unwrap();
        assert_eq!(n, s.count, "{x} {y}");
        let all: Vec<Path> =
            serde_json::from_str(&ok(&["--json", "paths", &x.to_string(), &y.to_string()]))
                .unwrap();
        assert_eq!(all.len() as u128, n);
        assert!(all
            .iter()
            .all(|p| p.len() as u64 == s.distance && p.first() == x && p.last() == y));
    }
}

#[test]
fn path_and_standard_path() {
    let short: Path = serde_json::from_str(&ok(&["--json", "path", "1:0", "37:158"])).unwrap();
    assert_eq!(short.len(), 5);
    let std: Path =
        serde_json::from_str(&ok(&["--json", "path", "1:0", "37:158", "--standard"])).unwrap();
    assert_eq!(std.len(), 6);
    let text = ok(&["path", "1:0", "37:158"]);
    let parsed: Vec<ProjPoint> = text.split_whitespace().map(pt).collect();
    assert_eq!(parsed, short.vertices());
}

#[test]
fn json_documents_round_trip() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["path", "1:0", "37:158"],
        vec!["paths", "1:0", "26:111"],
        vec!["klein", "1:0", "37:158"],
        vec!["klein", "1:0", "37:158", "--corners"],
        vec!["factor", "1:0", "37:158"],
        vec!["factor", "1:0", "26:111"],
        vec!["cycle", "1:0", "--da", "4", "--db", "3"],
        vec!["sails", "1:0", "3:7", "--window", "20"],
    ];
    for args in cases {
        let mut full = vec!["--json"];
        full.extend(&args);
        let text = ok(&full);
        let raw: Value = serde_json::from_str(&text).unwrap();
        let again = match args[0] {
            "path" => serde_json::to_value(serde_json::from_value::<Path>(raw.clone()).unwrap()),
            "paths" => {
                serde_json::to_value(serde_json::from_value::<Vec<Path>>(raw.clone()).unwrap())
            }
            "klein" => {
                serde_json::to_value(serde_json::from_value::<KleinDoc>(raw.clone()).unwrap())
            }
            "factor" => {
                serde_json::to_value(serde_json::from_value::<Factorization>(raw.clone()).unwrap())
            }
            "cycle" => serde_json::to_value(serde_json::from_value::<Cycle>(raw.clone()).unwrap()),
            "sails" => {
                serde_json::to_value(serde_json::from_value::<Vec<Sail>>(raw.clone()).unwrap())
            }
            _ => unreachable!(),
        }
        .unwrap();
        assert_eq!(raw, again, "{args:?}");
    }
}

#[test]
fn klein_dot_lists_every_vertex() {
    let dot = ok(&["klein", "1:0", "37:158", "--dot"]);
    assert!(dot.starts_with("graph "));
    let doc: KleinDoc = serde_json::from_str(&ok(&["klein", "1:0", "37:158", "--json"])).unwrap();
    for v in &doc.vertices {
        assert!(dot.contains(&format!("\"{v}\" [label=\"{v}\"")), "{v}");
    }
    assert_eq!(dot.matches(" -- ").count(), doc.edges.len());
}

#[test]
fn factor_of_a_two_matrix_pair() {
    let s = ok(&["factor", "1:0", "26:111"]);
    assert_eq!(
        s.lines().filter(|l| l.starts_with("matrix: ")).count(),
        2,
        "{s}"
    );
    assert!(s.contains("unique=false"));
}

#[test]
fn cycle_has_the_requested_length() {
    let c: Cycle =
        serde_json::from_str(&ok(&["--json", "cycle", "1:0", "--da", "5", "--db", "4"])).unwrap();
    assert_eq!(c.len(), 9);
    assert_eq!(c.vertices()[0], pt("1:0"));
}

#[test]
fn verify_small_corpus_is_clean() {
    let out = run(&["verify", "--max", "8", "--random", "20", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let reports: Vec<VerifyReport> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    // canonical points a:b with b > 0 and gcd 1, plus 1:0
    let axis = 1
        + (1..=8)
            .map(|b| (-8..=8).filter(|&a| gcd(a, b) == 1).count())
            .sum::<usize>();
    assert_eq!(reports.len(), axis + 20);
    assert!(reports.iter().all(|r| r.ok));
    for (line, r) in text.lines().zip(&reports) {
        assert_eq!(serde_json::to_string(r).unwrap(), line);
    }
}

#[test]
fn verify_is_deterministic() {
    let a = run(&[
        "verify",
        "--max",
        "4",
        "--random",
        "10",
        "--seed",
        "7",
        "--no-stability",
    ]);
    let b = run(&[
        "verify",
        "--max",
        "4",
        "--random",
        "10",
        "--seed",
        "7",
        "--no-stability",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "verify",
        "--max",
        "4",
        "--random",
        "10",
        "--seed",
        "8",
        "--no-stability",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn sails_writes_an_svg() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("sails.svg");
    let f = file.to_str().unwrap();
    ok(&["sails", "1:0", "37:158", "--svg", f]);
    let svg = std::fs::read_to_string(&file).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("<circle"));
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["--help"], 0),
        (&["--version"], 0),
        (&["dist", "--help"], 0),
        (&["dist", "1:0", "-3:4"], 0),
        (&[], 1),
        (&["frobnicate"], 1),
        (&["dist", "1:0"], 1),
        (&["dist", "1:0", "37"], 1),
        (&["dist", "1:0", "a:b"], 1),
        (&["dist", "1:0", "1:2:3"], 1),
        (&["dist", "1:0", "99999999999999999999:1"], 1),
        (&["cycle", "1:0", "--da", "x", "--db", "2"], 1),
        (&["verify"], 1),
        (&["klein", "1:0", "3:7", "--dot", "--json"], 1),
        (&["dist", "2:4", "1:0"], 2),
        (&["dist", "0:0", "1:0"], 2),
        (&["consistent", "1:0", "1:0"], 2),
        (&["consistent", "1:0", "0:1"], 2),
        (&["klein", "1:0", "5:1"], 2),
        (&["factor", "3:5", "3:5"], 2),
        (&["cycle", "1:0", "--da", "0", "--db", "3"], 2),
        (&["sails", "1:0", "1:0"], 2),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(*code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        if *code != 0 {
            assert!(out.stdout.is_empty(), "{args:?}");
            assert!(!out.stderr.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn verify_the_full_axis_corpus() {
    let out = run(&["verify", "--max", "60"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains(" 0 with disagreements"));
}
