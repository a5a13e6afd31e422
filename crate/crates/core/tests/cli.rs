use std::path::PathBuf;
use std::process::Command;

use kakimizu::cli;
use kakimizu::io::{self, Instance};
use kakimizu::projection::ProjectionStructure;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (u8, String) {
    let mut argv = vec!["kakimizu"];
    argv.extend(args);
    cli::run(argv)
}

#[test]
fn check_all_on_f1() {
    let (code, text) = run(&["check", "--axioms", "all", &fixture("f1.hf")]);
    assert_eq!(code, 0, "{text}");
    let expected = "\
PASS ball.retention cases=18
PASS basis.change cases=4
PASS chain.bound cases=5
PASS domination.monotonicity cases=2
PASS domination.same-layer cases=12
PASS domination.same-projection cases=0
PASS model.identity cases=18
PASS model.metric cases=9
PASS order.acyclicity cases=3
PASS order.comparability cases=6
PASS order.distance-rule cases=6
PASS projection.decrement cases=6
";
    assert_eq!(text, expected);
}

#[test]
fn axiom_selection() {
    let (code, text) = run(&["check", "--axioms", "order", &fixture("f1.hf")]);
    assert_eq!(code, 0);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.starts_with("PASS order.")));
    assert_eq!(
        run(&["check", "--axioms", "nonsense", &fixture("f1.hf")]).0,
        2
    );
}

#[test]
fn dismantle_f1_from_two() {
    let (code, text) = run(&["dismantle", "--base", "2", &fixture("f1.hf")]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        "order 1 0 2\nwitness 1 0\nwitness 0 2\nPASS dismantling.certificate cases=2\n"
    );
}

#[test]
fn greedy_dismantling_of_complexes() {
    let (code, text) = run(&["dismantle", &fixture("p3.fc")]);
    assert_eq!(code, 0);
    assert!(text.starts_with("order 0 1 2\n"), "{text}");
    for cycle in ["c4.fc", "c5.fc"] {
        let (code, text) = run(&["dismantle", &fixture(cycle)]);
        assert_eq!(code, 1);
        assert!(text.starts_with("FAIL dismantling.greedy"));
    }
}

#[test]
fn homology_reports_without_failing() {
    assert_eq!(
        run(&["homology", &fixture("c4.fc")]),
        (0, "betti 0 = 0\nbetti 1 = 1\n".into())
    );
    assert_eq!(
        run(&["homology", &fixture("k3.fc")]).1,
        "betti 0 = 0\nbetti 1 = 0\nbetti 2 = 0\n"
    );
    assert_eq!(
        run(&["homology", "--max-dim", "0", &fixture("c4.fc")]).1,
        "betti 0 = 0\n"
    );
}

#[test]
fn fixed_point_on_f1() {
    let (code, text) = run(&[
        "fixpoint",
        "--vertex",
        "1",
        "--action",
        &fixture("swap.act"),
        &fixture("f1.hf"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        "orbit {1,2}\nhull {0,1,2}\nstep 0 diameter 2 l 1 removed {1,2} -> diameter 0 l 0\nsimplex {0}\nPASS fix.invariant-simplex steps=1\n"
    );
    // the default action is the column symmetry group, here the same swap
    assert_eq!(
        run(&["fixpoint", "--vertex", "1", &fixture("f1.hf")]).1,
        text
    );
}

#[test]
fn fix_complex_of_symmetric_family() {
    let (code, text) = run(&["fixcomplex", &fixture("sym2.hf")]);
    assert_eq!(code, 0, "{text}");
    assert_eq!(
        text.lines().filter(|l| l.starts_with("fixvertex")).count(),
        15
    );
    assert!(text.contains("PASS fix.dismantling cases=15"));
    assert!(text.contains("PASS fix.distance-sum"));
    assert!(text.contains("PASS fix.homology-point"));
}

#[test]
fn hull_keeps_diameter() {
    let (code, text) = run(&["hull", "--vertices", "1,2", &fixture("f1.hf")]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        "hull {0,1,2}\ndiameter 2 -> 2\nPASS hull.diameter cases=1\n"
    );
    let (code, text) = run(&["hull", "--vertices", "1", "--base", "2", &fixture("f1.hf")]);
    assert_eq!(code, 0);
    assert!(text.starts_with("hull {0,1,2}\n"), "{text}");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hf");
    std::fs::write(&bad, "%heightfamily v1\ncolumns 2\nvertex 0 1 1\n").unwrap();
    let (code, text) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(text.contains("line 3, column 10"), "{text}");
    assert!(text.contains("subtract 1"), "{text}");
    assert_eq!(run(&["check", "/nonexistent/file.hf"]).0, 2);
    assert_eq!(run(&["check", &fixture("c4.fc")]).0, 2);
    assert_eq!(run(&["dismantle", "--base", "9", &fixture("f1.hf")]).0, 2);
    assert_eq!(
        run(&["check", "--cap-vertices", "2", &fixture("f1.hf")]).0,
        2
    );
}

#[test]
fn adversarial_table_fails_checks() {
    let text = std::fs::read_to_string(fixture("f1.hf")).unwrap();
    let Instance::Family(fam) = io::parse_instance(&text).unwrap() else {
        panic!("not a family");
    };
    let table = io::serialize_projection_table(&ProjectionStructure::from_family(&fam).unwrap());
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("f1.pt");
    std::fs::write(&good, &table).unwrap();
    assert_eq!(run(&["check", good.to_str().unwrap()]).0, 0);

    // flip the order on one edge for base 0
    let flipped: String = table
        .lines()
        .map(|l| match l {
            "ord 0 0 1 0" => "ord 0 0 1 1".to_string(),
            "ord 0 1 0 1" => "ord 0 1 0 0".to_string(),
            other => other.to_string(),
        })
        .map(|l| l + "\n")
        .collect();
    assert_ne!(flipped, table);
    let bad = dir.path().join("bad.pt");
    std::fs::write(&bad, flipped).unwrap();
    let (code, text) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 1, "{text}");
    assert!(text.lines().any(|l| l.starts_with("FAIL ")), "{text}");
    assert!(
        !text.contains("model."),
        "table-backed instances skip model checks"
    );
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.hf");
    let b = dir.path().join("b.hf");
    for out in [&a, &b] {
        let (code, text) = run(&[
            "gen",
            "--seed",
            "9",
            "--columns",
            "3",
            "--max-height",
            "4",
            "--count",
            "5",
            "-o",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(text.starts_with("wrote "));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (_, stdout) = run(&[
        "gen",
        "--seed",
        "9",
        "--columns",
        "3",
        "--max-height",
        "4",
        "--count",
        "5",
    ]);
    assert_eq!(stdout.as_bytes(), std::fs::read(&a).unwrap());

    let report = dir.path().join("report.txt");
    let (_, text) = run(&["check", a.to_str().unwrap(), "-o", report.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&report).unwrap(), text);
}

#[test]
fn bench_rows_and_caps() {
    let args = [
        "bench",
        "--sizes",
        "10,20,1000",
        "--seed",
        "3",
        "--cap-vertices",
        "100",
    ];
    let (code, first) = run(&args);
    assert_eq!(code, 0);
    let lines: Vec<&str> = first.lines().collect();
    assert_eq!(lines[0], cli::BENCH_HEADER);
    assert_eq!(lines.len(), 1 + 3 * 8);
    assert!(lines[1..17].iter().all(|l| l.ends_with(",PASS")), "{first}");
    assert!(lines[17..].iter().all(|l| l.ends_with(",SKIPPED(cap)")));
    let (_, second) = run(&args);
    let without_time = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(5);
                f.join(",")
            })
            .collect()
    };
    assert_eq!(without_time(&first), without_time(&second));
}

#[test]
fn fixtures_round_trip() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut checked = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let again = match io::parse_instance(&text).unwrap() {
            Instance::Complex(c) => io::serialize_flag_complex(&c),
            Instance::Family(f) => io::serialize_height_family(&f),
            Instance::Action(g) => {
                let n = g.first().map_or(0, Vec::len);
                io::serialize_action(&kakimizu::GroupAction::new(n, g).unwrap())
            }
            Instance::Table(t) => io::serialize_projection_table(&t),
        };
        assert_eq!(again, text, "{}", path.display());
        checked += 1;
    }
    assert!(checked >= 8);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kakimizu");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["check", &fixture("f1.hf")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("PASS "));
    assert_eq!(
        status(&["dismantle", &fixture("c4.fc")]).status.code(),
        Some(1)
    );
    let usage = status(&["check"]);
    assert_eq!(usage.status.code(), Some(2));
    assert!(!usage.stderr.is_empty());
}
