use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde_json::Value;
use umbra::associated::{self, Kind};
use umbra::families::{family, FAMILY_IDS};
use umbra::kernel::{parse_rational, ratio};
use umbra::numbers::Params;
use umbra::{Rational, Triangle};

fn umbra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn parse_csv(text: &str) -> Vec<Vec<Rational>> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,k,value"));
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for line in lines {
        let mut parts = line.splitn(3, ',');
        let n: usize = parts.next().unwrap().parse().unwrap();
        let k: usize = parts.next().unwrap().parse().unwrap();
        let v = parse_rational(parts.next().unwrap()).unwrap();
        if n == rows.len() {
            rows.push(Vec::new());
        }
        assert_eq!((n, k), (rows.len() - 1, rows[n].len()), "entries in order");
        rows[n].push(v);
    }
    rows
}

fn parse_json(text: &str) -> (Value, Vec<Vec<Rational>>) {
    let v: Value = serde_json::from_str(text).unwrap();
    let rows = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|x| parse_rational(x.as_str().unwrap()).unwrap())
                .collect()
        })
        .collect();
    (v, rows)
}

fn column(text: &str) -> Vec<String> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,value"));
    lines
        .map(|l| l.split_once(',').unwrap().1.to_string())
        .collect()
}

#[test]
fn monomial_s2_row_four() {
    let out = umbra(&[
        "triangle", "--family", "monomial", "--kind", "s2", "--max-n", "4",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(parse_csv(&stdout(&out))[4][2], ratio(7, 1));
}

#[test]
fn classical_eulerian_row_four() {
    let out = umbra(&["triangle", "--classical", "eulerian", "--max-n", "4"]);
    assert_eq!(code(&out), 0);
    let rows = parse_csv(&stdout(&out));
    let want: Vec<Rational> = [1, 11, 11, 1, 0].iter().map(|&v| ratio(v, 1)).collect();
    assert_eq!(rows[4], want);

    let alt = umbra(&["triangle", "--kind", "classical:eulerian", "--max-n", "4"]);
    assert_eq!(stdout(&alt), stdout(&out));
}

#[test]
fn rising_s1_entry() {
    let out = umbra(&[
        "triangle", "--family", "rising", "--kind", "s1", "--max-n", "3",
    ]);
    assert_eq!(parse_csv(&stdout(&out))[3][2], ratio(-6, 1));
}

#[test]
fn csv_and_json_round_trip() {
    let cases: &[(&str, &[&str], Kind)] = &[
        ("falling_deg", &["--lambda", "-1/3"], Kind::Second),
        ("gould_hopper", &["--r", "2", "--s", "3"], Kind::First),
        ("bernoulli_product", &[], Kind::First),
        ("rising_deg", &["--lambda", "1/2"], Kind::Second),
    ];
    for (id, extra, kind) in cases {
        let tag = match kind {
            Kind::First => "s1",
            Kind::Second => "s2",
        };
        let mut params = Params::new();
        for pair in extra.chunks(2) {
            params.insert(
                pair[0].trim_start_matches("--").into(),
                parse_rational(pair[1]).unwrap(),
            );
        }
        let fam = family(id, &params).unwrap();
        let want: Triangle = associated::triangle(&fam, *kind, 7).unwrap();

        let mut args = vec!["triangle", "--family", id, "--kind", tag, "--max-n", "7"];
        args.extend_from_slice(extra);
        let csv = umbra(&args);
        assert_eq!(code(&csv), 0, "{id}");
        assert_eq!(parse_csv(&stdout(&csv)), want.rows(), "{id} csv");

        args.extend_from_slice(&["--format", "json"]);
        let json = umbra(&args);
        let (doc, rows) = parse_json(&stdout(&json));
        assert_eq!(rows, want.rows(), "{id} json");
        assert_eq!(doc["meta"]["family"], *id);
        assert_eq!(doc["meta"]["kind"], tag);
        assert_eq!(doc["meta"]["max_n"], 7);
        let meta_params: BTreeMap<String, Rational> = doc["meta"]["params"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), parse_rational(v.as_str().unwrap()).unwrap()))
            .collect();
        assert_eq!(meta_params, fam.params);
    }
}

#[test]
fn ascii_is_aligned() {
    let out = umbra(&[
        "triangle",
        "--classical",
        "stirling2",
        "--max-n",
        "3",
        "--format",
        "ascii",
    ]);
    assert_eq!(stdout(&out), "0 | 1\n1 | 0 1\n2 | 0 1 1\n3 | 0 1 3 1\n");
}

#[test]
fn gf_dumps() {
    let out = umbra(&[
        "gf",
        "--family",
        "falling_deg",
        "--lambda",
        "1/2",
        "--kind",
        "s2",
        "--k",
        "1",
        "--order",
        "4",
    ]);
    assert_eq!(column(&stdout(&out)), ["0", "1", "1/2", "0", "0"]);

    let out = umbra(&[
        "gf", "--family", "monomial", "--kind", "s1", "--k", "1", "--order", "4",
    ]);
    assert_eq!(column(&stdout(&out)), ["0", "1", "-1", "2", "-6"]);

    let out = umbra(&[
        "gf",
        "--family",
        "bernoulli2nd",
        "--kind",
        "s2",
        "--k",
        "0",
        "--order",
        "4",
    ]);
    assert_eq!(column(&stdout(&out)), ["1", "1/2", "-1/6", "1/4", "-19/30"]);
}

#[test]
fn gf_eulerian_matches_triangle() {
    let args = ["--family", "central_bell", "--max-n", "6"];
    let tri = umbra(&[&["triangle", "--kind", "eulerian"][..], &args].concat());
    let gf = umbra(&[
        "gf",
        "--family",
        "central_bell",
        "--kind",
        "eulerian",
        "--order",
        "6",
    ]);
    assert_eq!(code(&gf), 0);
    assert_eq!(parse_csv(&stdout(&gf)), parse_csv(&stdout(&tri)));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["triangle", "--family", "nope", "--kind", "s2"],
        &["triangle", "--family", "monomial", "--kind", "s3"],
        &["triangle", "--classical", "nope"],
        &[
            "triangle",
            "--family",
            "gould_hopper",
            "--r",
            "0",
            "--s",
            "1",
            "--kind",
            "s2",
        ],
        &["triangle", "--family", "falling_deg", "--kind", "s2"],
        &["gf", "--family", "monomial", "--kind", "s2"],
        &["gf", "--family", "bernoulli", "--kind", "s1", "--k", "1"],
        &[
            "gf",
            "--family",
            "bernoulli_product",
            "--kind",
            "s2",
            "--k",
            "1",
        ],
        &["verify", "--family", "nope"],
        &[
            "triangle",
            "--family",
            "falling_deg",
            "--kind",
            "s2",
            "--lambda",
            "1/0",
        ],
    ];
    for args in cases {
        let out = umbra(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_reports_skips() {
    let out = umbra(&[
        "verify",
        "--suite",
        "eulerian",
        "--family",
        "bernoulli",
        "--max-n",
        "6",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let checks = v[0]["checks"].as_array().unwrap();
    for id in ["eulerian.frobenius", "eulerian.frobenius_inverse"] {
        let c = checks.iter().find(|c| c["identity_id"] == id).unwrap();
        assert_eq!(c["status"]["skipped"], "p_n(0) ≠ 0");
    }
}

#[test]
fn verify_orthogonality_bernoulli_product() {
    let out = umbra(&[
        "verify",
        "--suite",
        "orthogonality",
        "--family",
        "bernoulli_product",
        "--max-n",
        "8",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn verify_uses_given_params() {
    let out = umbra(&[
        "verify",
        "--suite",
        "umbral",
        "--family",
        "falling_deg",
        "--lambda",
        "3/7",
        "--max-n",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["family"], "falling_deg(lambda=3/7)");
}

#[test]
fn verify_everything() {
    let out = umbra(&[
        "verify", "--suite", "all", "--family", "all", "--max-n", "8",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = v.as_array().unwrap();
    let keys: Vec<(String, String)> = reports
        .iter()
        .map(|r| {
            (
                r["family"].as_str().unwrap().into(),
                r["suite"].as_str().unwrap().into(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for id in FAMILY_IDS {
        assert!(
            keys.iter()
                .any(|(f, _)| f == id || f.starts_with(&format!("{id}("))),
            "{id}"
        );
    }
    assert!(keys.contains(&("classical".into(), "eulerian".into())));
    for r in reports {
        let ids: Vec<&str> = r["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["identity_id"].as_str().unwrap())
            .collect();
        assert!(ids.windows(2).all(|w| w[0] <= w[1]));
    }
}
