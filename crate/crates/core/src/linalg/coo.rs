//! `rational-coo` text interchange format.
//!
//! ```text
//! rational-coo <dim> <nnz>
//! <row> <col> <num>/<den>
//! ...
//! ```
//!
//! Indices are 0-based, lines are sorted by `(row, col)`, denominators are
//! positive and every value is reduced and nonzero. Vectors use the same
//! layout with `col` fixed to 0.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::OperatorMatrix;
use super::rational::{render, Rational};
use super::vector::RationalVector;
use super::LinalgError;

const HEADER: &str = "rational-coo";

pub fn write_matrix(m: &OperatorMatrix) -> String {
    let mut out = format!("{HEADER} {} {}\n", m.dim(), m.nnz());
    for (r, c, q) in m.iter() {
        writeln!(out, "{r} {c} {}", render(q)).expect("writing to a String");
    }
    out
}

pub fn write_vector(v: &RationalVector) -> String {
    let mut out = format!("{HEADER} {} {}\n", v.dim(), v.nnz());
    for (i, q) in v.iter() {
        writeln!(out, "{i} 0 {}", render(q)).expect("writing to a String");
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<OperatorMatrix, LinalgError> {
    let (dim, entries) = parse_entries(text)?;
    OperatorMatrix::from_entries(dim, entries)
}

pub fn parse_vector(text: &str) -> Result<RationalVector, LinalgError> {
    let (dim, entries) = parse_entries(text)?;
    let mut pairs = Vec::with_capacity(entries.len());
    for (line, (r, c, q)) in entries.into_iter().enumerate() {
        if c != 0 {
            return Err(err(line + 2, "vector entries must use column 0"));
        }
        pairs.push((r, q));
    }
    RationalVector::from_entries(dim, pairs)
}

fn err(line: usize, msg: &str) -> LinalgError {
    LinalgError::Parse(format!("rational-coo line {line}: {msg}"))
}

type Entries = Vec<(usize, usize, Rational)>;

fn parse_entries(text: &str) -> Result<(usize, Entries), LinalgError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [tag, dim, nnz] = fields[..] else {
        return Err(err(1, "header must be `rational-coo <dim> <nnz>`"));
    };
    if tag != HEADER {
        return Err(err(1, "header must start with `rational-coo`"));
    }
    let dim: usize = dim.parse().map_err(|_| err(1, "invalid dimension"))?;
    let nnz: usize = nnz.parse().map_err(|_| err(1, "invalid entry count"))?;

    let mut entries = Vec::with_capacity(nnz);
    let mut last: Option<(usize, usize)> = None;
    for (k, line) in lines.enumerate() {
        let lineno = k + 2;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [row, col, value] = fields[..] else {
            return Err(err(lineno, "expected `<row> <col> <num>/<den>`"));
        };
        let row: usize = row.parse().map_err(|_| err(lineno, "invalid row index"))?;
        let col: usize = col.parse().map_err(|_| err(lineno, "invalid column index"))?;
        if row >= dim || col >= dim.max(1) {
            return Err(err(lineno, "index out of range"));
        }
        if last.is_some_and(|prev| prev >= (row, col)) {
            return Err(err(lineno, "entries must be strictly sorted by (row, col)"));
        }
        last = Some((row, col));
        entries.push((row, col, parse_canonical(value, lineno)?));
    }
    if entries.len() != nnz {
        return Err(err(
            1,
            &format!("header declares {nnz} entries, found {}", entries.len()),
        ));
    }
    Ok((dim, entries))
}

fn parse_canonical(text: &str, lineno: usize) -> Result<Rational, LinalgError> {
    let (num, den) = text
        .split_once('/')
        .ok_or_else(|| err(lineno, "value must be written as num/den"))?;
    let num: BigInt = num.parse().map_err(|_| err(lineno, "invalid numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err(lineno, "invalid denominator"))?;
    if !den.is_positive() {
        return Err(err(lineno, "denominator must be positive"));
    }
    if num.is_zero() {
        return Err(err(lineno, "zero entries must not be stored"));
    }
    if !num.gcd(&den).is_one() {
        return Err(err(lineno, "value is not reduced"));
    }
    Ok(Rational::new_raw(num, den))
}
