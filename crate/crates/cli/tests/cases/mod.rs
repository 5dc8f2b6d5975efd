//! The fixed example set for the command-line tests. Each case pairs an
//! argument list with the bytes the library itself produces for the same
//! request.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use ntwfsm::io::{parse, parse_with, serialize, to_dot, ParseMode};
use ntwfsm::*;

pub struct Case {
    pub name: &'static str,
    pub args: Vec<String>,
    pub stdout: String,
    pub status: i32,
}

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

pub fn load<W: Semiring>(name: &str) -> Machine<W> {
    parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

pub fn run(args: &[String]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_ntwfsm"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        status: out.status.code().unwrap_or(-1),
    }
}

fn rows<W: Semiring>(entries: impl IntoIterator<Item = (StringTuple, W)>) -> String {
    entries
        .into_iter()
        .map(|(t, w)| {
            let tapes: Vec<String> = t.iter().map(|tape| tape_string(tape)).collect();
            format!("{w}\t{}\n", tapes.join("\t"))
        })
        .collect()
}

fn headed<W: Semiring>(complete: bool, m: &Machine<W>) -> String {
    format!("# complete {complete}\n{}", serialize(m))
}

fn case(name: &'static str, args: &[&str], stdout: String) -> Case {
    Case {
        name,
        args: args.iter().map(|s| s.to_string()).collect(),
        stdout,
        status: 0,
    }
}

use ntwfsm::TropicalWeight as T;

pub fn cases() -> Vec<Case> {
    let t1: Machine<T> = load("t1.ntw");
    let t2: Machine<T> = load("t2.ntw");
    let acc: Machine<T> = load("acc.ntw");
    let three: Machine<T> = load("three.ntw");
    let unbounded: Machine<T> = load("unbounded.ntw");
    let zero: Machine<T> = load("zero_delay.ntw");
    let eps: Machine<RealWeight> = load("eps.ntw");
    let boolean: Machine<BooleanWeight> = load("bool.ntw");
    let tapes = |s: &str| s.parse::<TapeIndexList>().unwrap();
    let pairs = |s: &str| s.parse::<JoinSpec>().unwrap();
    let source = std::fs::read_to_string(fixture("source.txt")).unwrap();

    let mut out = vec![
        case(
            "compile",
            &["compile", &fx("source.txt")],
            serialize(&parse_with::<T>(&source, ParseMode::Lenient).unwrap()),
        ),
        case(
            "compile_with_semiring",
            &["compile", "--semiring", "real", &fx("source.txt")],
            serialize(&parse_with::<RealWeight>(&source, ParseMode::Lenient).unwrap()),
        ),
        case(
            "compile_tuples",
            &["compile", "--tuples", &fx("tuples.tsv")],
            serialize(
                &Machine::<T>::from_tuples(
                    2,
                    [
                        (vec![chars("ab"), chars("ba")], T(0.0)),
                        (vec![chars("a"), chars("")], T(2.0)),
                        (vec![chars(""), chars("b")], T(1.5)),
                    ],
                )
                .unwrap(),
            ),
        ),
        case("print", &["print", &fx("three.ntw")], serialize(&three)),
        case(
            "print_boolean",
            &["print", &fx("bool.ntw")],
            serialize(&boolean),
        ),
        case("dot", &["dot", &fx("acc.ntw")], to_dot(&acc)),
        case(
            "union",
            &["union", &fx("t1.ntw"), &fx("t2.ntw")],
            serialize(&union(&t1, &t2).unwrap()),
        ),
        case(
            "concat",
            &["concat", &fx("t1.ntw"), &fx("t2.ntw")],
            serialize(&concat(&t1, &t2).unwrap()),
        ),
        case(
            "closure",
            &["closure", &fx("acc.ntw")],
            serialize(&closure(&acc).unwrap()),
        ),
        case(
            "cross",
            &["cross", &fx("acc.ntw"), &fx("t2.ntw")],
            serialize(&cross_product(&acc, &t2).unwrap()),
        ),
        case(
            "project",
            &["project", "--tapes", "3,1", &fx("three.ntw")],
            serialize(&project(&three, &tapes("3,1")).unwrap()),
        ),
        case(
            "coproject",
            &["coproject", "--tapes", "2", &fx("three.ntw")],
            serialize(&coproject(&three, &tapes("2")).unwrap()),
        ),
        case(
            "rmeps",
            &["rmeps", &fx("eps.ntw")],
            serialize(&remove_epsilon_tuples(&eps).unwrap()),
        ),
        case(
            "autointersect_complete",
            &[
                "autointersect",
                "--tape-i",
                "1",
                "--tape-j",
                "2",
                &fx("zero_delay.ntw"),
            ],
            {
                let r = auto_intersect(&zero, 1, 2, &AutoIntersectionConfig::default()).unwrap();
                assert!(r.complete);
                headed(r.complete, &r.machine)
            },
        ),
        case(
            "autointersect_incomplete",
            &[
                "autointersect",
                "--tape-i",
                "1",
                "--tape-j",
                "2",
                "--delta-max",
                "2",
                &fx("unbounded.ntw"),
            ],
            {
                let r =
                    auto_intersect(&unbounded, 1, 2, &AutoIntersectionConfig::with_delta_max(2))
                        .unwrap();
                assert!(!r.complete);
                headed(r.complete, &r.machine)
            },
        ),
        case(
            "join_direct",
            &["join", "--pairs", "2=1", &fx("t1.ntw"), &fx("t2.ntw")],
            headed(true, &join_direct(&t1, &pairs("2=1"), &t2).unwrap()),
        ),
        case(
            "join_via_sigma",
            &[
                "join",
                "--via-sigma",
                "--pairs",
                "1=1",
                &fx("acc.ntw"),
                &fx("acc.ntw"),
            ],
            {
                let r = join_via_sigma(&acc, &pairs("1=1"), &acc).unwrap();
                headed(r.complete, &r.machine)
            },
        ),
        case(
            "compose",
            &["compose", &fx("t1.ntw"), &fx("t2.ntw")],
            serialize(&compose(&t1, &t2, false).unwrap()),
        ),
        case(
            "compose_keep_intermediate",
            &[
                "compose",
                "--keep-intermediate",
                &fx("t1.ntw"),
                &fx("t2.ntw"),
            ],
            serialize(&compose(&t1, &t2, true).unwrap()),
        ),
        case("bestpath", &["bestpath", &fx("acc.ntw")], {
            let p = best_path(&acc).unwrap().unwrap();
            rows([(p.tuple(1), p.weight)])
        }),
        case("bestpath_three_tapes", &["bestpath", &fx("three.ntw")], {
            let p = best_path(&three).unwrap().unwrap();
            rows([(p.tuple(3), p.weight)])
        }),
        case(
            "enumerate",
            &["enumerate", "--hop-limit", "4", &fx("t2.ntw")],
            rows(
                t2.enumerate_tuples(4)
                    .unwrap()
                    .iter()
                    .map(|(t, w)| (t.clone(), *w)),
            ),
        ),
        case(
            "enumerate_boolean",
            &["enumerate", "--hop-limit", "5", &fx("bool.ntw")],
            rows(
                boolean
                    .enumerate_tuples(5)
                    .unwrap()
                    .iter()
                    .map(|(t, w)| (t.clone(), *w)),
            ),
        ),
        case("align", &["align", "kitten", "sitting"], {
            let a = align(&["kitten", "sitting"], &EditCostModel::default()).unwrap();
            let mut s = format!("{}\n", T(a.weight));
            for r in a.rows(2, "-") {
                s.push_str(&r);
                s.push('\n');
            }
            s
        }),
        case(
            "align_three_costed",
            &["align", "ab", "b", "abb", "--sub", "2", "--ins", "0.5"],
            {
                let costs = EditCostModel {
                    substitution_cost: 2.0,
                    insertion_cost: 0.5,
                    ..EditCostModel::default()
                };
                let a = align(&["ab", "b", "abb"], &costs).unwrap();
                let mut s = format!("{}\n", T(a.weight));
                for r in a.rows(3, "-") {
                    s.push_str(&r);
                    s.push('\n');
                }
                s
            },
        ),
        case(
            "cognates",
            &[
                "cognates",
                &fx("words1.txt"),
                &fx("words2.txt"),
                "--top",
                "3",
            ],
            {
                let read = |n: &str| -> Vec<String> {
                    std::fs::read_to_string(fixture(n))
                        .unwrap()
                        .lines()
                        .map(String::from)
                        .collect()
                };
                cognate_pairs(
                    &read("words1.txt"),
                    &read("words2.txt"),
                    &EditCostModel::default(),
                    3,
                )
                .unwrap()
                .into_iter()
                .map(|p| format!("{}\t{}\t{}\n", p.left, p.right, T(p.weight)))
                .collect()
            },
        ),
        case(
            "cascade",
            &["cascade", &fx("t1.ntw"), &fx("t2.ntw"), &fx("t2.ntw")],
            serialize(&cascade_with_intermediates(&[t1.clone(), t2.clone(), t2.clone()]).unwrap()),
        ),
    ];
    out.push(Case {
        name: "autointersect_strict_incomplete",
        args: [
            "autointersect",
            "--tape-i",
            "1",
            "--tape-j",
            "2",
            &fx("unbounded.ntw"),
            "--strict",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
        stdout: {
            let r = auto_intersect(&unbounded, 1, 2, &AutoIntersectionConfig::default()).unwrap();
            headed(r.complete, &r.machine)
        },
        status: 2,
    });
    out
}
