//! Text renderings of triangles and coefficient lists. Every number is an
//! exact `p` or `p/q` string.

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use serde::Serialize;
use umbra::kernel::format_rational;
use umbra::{Rational, Triangle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Ascii,
}

#[derive(Serialize)]
pub struct Meta {
    pub family: String,
    pub kind: String,
    pub params: BTreeMap<String, String>,
    pub max_n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

pub fn params_meta(params: &BTreeMap<String, Rational>) -> BTreeMap<String, String> {
    params
        .iter()
        .map(|(k, v)| (k.clone(), format_rational(v)))
        .collect()
}

#[derive(Serialize)]
struct TriangleDoc<'a> {
    meta: &'a Meta,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct SeriesDoc<'a> {
    meta: &'a Meta,
    coefficients: Vec<String>,
}

pub fn triangle(t: &Triangle, meta: &Meta, format: Format) -> String {
    let rows = t.string_rows();
    match format {
        Format::Csv => {
            let mut out = String::from("n,k,value\n");
            for (n, row) in rows.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    writeln!(out, "{n},{k},{v}").unwrap();
                }
            }
            out
        }
        Format::Json => json(&TriangleDoc { meta, rows }),
        Format::Ascii => ascii(&rows),
    }
}

/// `values[n]` is `n!` times the coefficient of `t^n`.
pub fn series(values: &[Rational], meta: &Meta, format: Format) -> String {
    let strs: Vec<String> = values.iter().map(format_rational).collect();
    match format {
        Format::Csv => {
            let mut out = String::from("n,value\n");
            for (n, v) in strs.iter().enumerate() {
                writeln!(out, "{n},{v}").unwrap();
            }
            out
        }
        Format::Json => json(&SeriesDoc {
            meta,
            coefficients: strs,
        }),
        Format::Ascii => ascii(&strs.into_iter().map(|s| vec![s]).collect::<Vec<_>>()),
    }
}

fn json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn ascii(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut width = vec![0; cols];
    for row in rows {
        for (k, v) in row.iter().enumerate() {
            width[k] = width[k].max(v.chars().count());
        }
    }
    let label = rows.len().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for (n, row) in rows.iter().enumerate() {
        write!(out, "{n:>label$} |").unwrap();
        for (k, v) in row.iter().enumerate() {
            write!(out, " {v:>w$}", w = width[k]).unwrap();
        }
        out.push('\n');
    }
    out
}
