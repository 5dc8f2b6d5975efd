mod cases;

use std::io::Write;
use std::process::{Command, Stdio};

use cases::{cases, fixture, run};

#[test]
fn every_subcommand_matches_the_library() {
    let all = cases();
    let mut failures = Vec::new();
    for c in &all {
        let r = run(&c.args);
        if r.stdout != c.stdout || r.status != c.status {
            failures.push(format!(
                "{}: status {} (want {}), stderr {:?}\n--- got\n{}--- want\n{}",
                c.name, r.status, c.status, r.stderr, r.stdout, c.stdout
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
    let covered: std::collections::BTreeSet<&str> =
        all.iter().map(|c| c.args[0].as_str()).collect();
    assert_eq!(covered.len(), 18, "{covered:?}");
}

#[test]
fn literal_outputs() {
    let f = |n: &str| fixture(n).to_string_lossy().into_owned();
    assert_eq!(run(&["bestpath".into(), f("acc.ntw")]).stdout, "1\tab\n");
    assert_eq!(
        run(&["align".into(), "kitten".into(), "sitting".into()]).stdout,
        "3\nkitten-\nsitting\n"
    );
    let ai = run(&[
        "autointersect".into(),
        "--tape-i".into(),
        "1".into(),
        "--tape-j".into(),
        "2".into(),
        f("zero_delay.ntw"),
    ]);
    assert!(ai
        .stdout
        .starts_with("# complete true\nntwfsm 1\narity 2\nsemiring tropical\n"));
    assert_eq!(
        run(&[
            "enumerate".into(),
            "--hop-limit".into(),
            "3".into(),
            f("bool.ntw")
        ])
        .stdout,
        "1\tx\n1\txyx\n"
    );
}

#[test]
fn strict_incomplete_exits_two() {
    let r = run(&[
        "autointersect".into(),
        "--tape-i".into(),
        "1".into(),
        "--tape-j".into(),
        "2".into(),
        fixture("unbounded.ntw").to_string_lossy().into_owned(),
        "--strict".into(),
    ]);
    assert_eq!(r.status, 2);
    assert!(r.stdout.starts_with("# complete false\n"));
}

#[test]
fn usage_and_validation_errors_exit_one() {
    let f = |n: &str| fixture(n).to_string_lossy().into_owned();
    let bad = [
        vec!["join".to_string()],
        vec!["frobnicate".to_string()],
        vec!["project".into(), "--tapes".into(), "0".into(), f("t1.ntw")],
        vec!["project".into(), "--tapes".into(), "4".into(), f("t1.ntw")],
        vec![
            "compile".into(),
            "--semiring".into(),
            "log".into(),
            f("t1.ntw"),
        ],
        vec!["union".into(), f("t1.ntw"), f("acc.ntw")],
        vec!["union".into(), f("t1.ntw"), f("eps.ntw")],
        vec!["print".into(), f("missing.ntw")],
        vec!["print".into(), f("source.txt")],
        vec!["closure".into(), f("eps.ntw")],
        vec![
            "cognates".into(),
            f("words1.txt"),
            f("words2.txt"),
            "--top".into(),
            "0".into(),
        ],
        vec![
            "align".into(),
            "a".into(),
            "b".into(),
            "--sub".into(),
            "-1".into(),
        ],
    ];
    for args in bad {
        let r = run(&args);
        assert_eq!(r.status, 1, "{args:?}: {}", r.stderr);
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn dash_reads_standard_input() {
    let text = std::fs::read_to_string(fixture("t2.ntw")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_ntwfsm"))
        .args(["print", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let via_file = run(&[
        "print".into(),
        fixture("t2.ntw").to_string_lossy().into_owned(),
    ]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), via_file.stdout);
}

#[test]
fn output_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("joined.ntw");
    let joined = run(&[
        "compose".into(),
        fixture("t1.ntw").to_string_lossy().into_owned(),
        fixture("t2.ntw").to_string_lossy().into_owned(),
    ]);
    std::fs::write(&path, &joined.stdout).unwrap();
    let again = run(&["print".into(), path.to_string_lossy().into_owned()]);
    assert_eq!(again.status, 0);
    assert_eq!(again.stdout, joined.stdout);
}
