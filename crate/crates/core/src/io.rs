//! Plain-text series and node files.
//!
//! Series: one `n re im` per line, indices strictly increasing.
//! Nodes: `sigma t` or `sigma t z_re z_im`, the same arity on every line.
//! Blank lines and `#` comments are skipped in both.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::dirichlet::DirichletPolynomial;
use crate::error::{Error, Result};
use crate::specialfn::ComplexPoint;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then(|| (i + 1, line.split_whitespace().collect()))
    })
}

fn number(line: usize, field: &str) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::Parse { line, msg: format!("not a number: {field:?}") })?;
    if !v.is_finite() {
        return Err(Error::Parse { line, msg: format!("non-finite value {field:?}") });
    }
    Ok(v)
}

pub fn parse_series_terms(text: &str) -> Result<Vec<(u64, Complex64)>> {
    let mut out: Vec<(u64, Complex64)> = Vec::new();
    for (line, fields) in content_lines(text) {
        if fields.len() != 3 {
            return Err(Error::Parse { line, msg: format!("expected `n re im`, found {} fields", fields.len()) });
        }
        let n: u64 = fields[0].parse().map_err(|_| Error::Parse { line, msg: format!("bad index {:?}", fields[0]) })?;
        if n == 0 {
            return Err(Error::Parse { line, msg: "indices start at 1".into() });
        }
        if let Some(&(prev, _)) = out.last() {
            if n <= prev {
                return Err(Error::Parse { line, msg: format!("index {n} does not exceed {prev}") });
            }
        }
        out.push((n, Complex64::new(number(line, fields[1])?, number(line, fields[2])?)));
    }
    Ok(out)
}

/// The start index of the result is the smallest index in the file.
pub fn parse_series(text: &str) -> Result<DirichletPolynomial> {
    DirichletPolynomial::from_terms(parse_series_terms(text)?)
}

pub fn read_series(path: impl AsRef<Path>) -> Result<DirichletPolynomial> {
    parse_series(&std::fs::read_to_string(path)?)
}

/// Round-trips through [`parse_series`] bit for bit.
pub fn format_series(f: &DirichletPolynomial) -> String {
    let mut s = String::new();
    for (n, a) in f.terms() {
        let _ = writeln!(s, "{n} {:e} {:e}", a.re, a.im);
    }
    s
}

pub fn write_series(path: impl AsRef<Path>, f: &DirichletPolynomial) -> Result<()> {
    std::fs::write(path, format_series(f))?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeFile {
    pub nodes: Vec<ComplexPoint>,
    pub targets: Option<Vec<Complex64>>,
}

pub fn parse_nodes(text: &str) -> Result<NodeFile> {
    let mut nodes = Vec::new();
    let mut targets = Vec::new();
    let mut arity = None;
    for (line, fields) in content_lines(text) {
        if fields.len() != 2 && fields.len() != 4 {
            return Err(Error::Parse { line, msg: "expected `sigma t [z_re z_im]`".into() });
        }
        if *arity.get_or_insert(fields.len()) != fields.len() {
            return Err(Error::Parse { line, msg: "mixed lines with and without targets".into() });
        }
        let point = ComplexPoint::new(number(line, fields[0])?, number(line, fields[1])?)
            .map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        nodes.push(point);
        if fields.len() == 4 {
            targets.push(Complex64::new(number(line, fields[2])?, number(line, fields[3])?));
        }
    }
    let targets = (arity == Some(4)).then_some(targets);
    Ok(NodeFile { nodes, targets })
}

pub fn read_nodes(path: impl AsRef<Path>) -> Result<NodeFile> {
    parse_nodes(&std::fs::read_to_string(path)?)
}
