//! Text formats: exact rationals, edge lists, distance matrices, and a
//! line-based dump of complexes and boundary matrices.
//!
//! Edge list: first non-comment line is `n`, then one `u v` pair per line,
//! 0-indexed. Distance matrix: `n`, then `n` rows of `n` entries, each a
//! finite decimal or `p/q`. `#` starts a comment anywhere on a line.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rips_kunneth_core::flag::{boundary_matrix, FlagComplex};
use rips_kunneth_core::{FiniteMetricSpace, Graph, SparseIntMatrix};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(#[from] rips_kunneth_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn at(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

/// Parses `p/q`, an integer, or a finite decimal such as `-0.375`, exactly.
/// Exponents, `inf` and `nan` are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("not an exact rational: {s:?}");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let value = if let Some((p, q)) = body.split_once('/') {
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        BigRational::new(p.parse().map_err(|_| bad())?, q)
    } else {
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if !(digits(int) || digits(frac)) || !(int.is_empty() || digits(int)) || !(frac.is_empty() || digits(frac)) {
            return Err(bad());
        }
        let num: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        BigRational::new(num, den)
    };
    Ok(if neg { -value } else { value })
}

/// Meaningful lines with their 1-based numbers, comments and blanks removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_count(line: Option<(usize, &str)>) -> Result<usize, FormatError> {
    let (no, l) = line.ok_or_else(|| at(0, "empty input: expected a vertex count"))?;
    l.parse().map_err(|_| at(no, format!("expected a vertex count, found {l:?}")))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = content_lines(text);
    let n = parse_count(lines.next())?;
    let mut edges = Vec::new();
    for (no, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = fields[..] else {
            return Err(at(no, format!("expected `u v`, found {l:?}")));
        };
        let vertex = |s: &str| -> Result<usize, FormatError> {
            let x: usize = s.parse().map_err(|_| at(no, format!("bad vertex {s:?}")))?;
            if x >= n {
                return Err(at(no, format!("vertex {x} out of range for n = {n}")));
            }
            Ok(x)
        };
        edges.push((vertex(u)?, vertex(v)?));
    }
    Ok(Graph::new(n, &edges)?)
}

pub fn parse_distance_matrix(text: &str) -> Result<FiniteMetricSpace, FormatError> {
    let mut lines = content_lines(text);
    let n = parse_count(lines.next())?;
    let mut dist = Vec::with_capacity(n * n);
    let mut rows = 0;
    for (no, l) in lines {
        if rows == n {
            return Err(at(no, format!("more than {n} rows")));
        }
        let row: Vec<&str> = l.split_whitespace().collect();
        if row.len() != n {
            return Err(at(no, format!("expected {n} entries, found {}", row.len())));
        }
        for entry in row {
            dist.push(parse_rational(entry).map_err(|e| at(no, e))?);
        }
        rows += 1;
    }
    if rows != n {
        return Err(at(0, format!("expected {n} rows, found {rows}")));
    }
    Ok(FiniteMetricSpace::new(n, dist)?)
}

fn read(path: &Path) -> Result<String, FormatError> {
    std::fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.display().to_string(), source })
}

pub fn load_edge_list(path: &Path) -> Result<Graph, FormatError> {
    parse_edge_list(&read(path)?)
}

pub fn load_distance_matrix(path: &Path) -> Result<FiniteMetricSpace, FormatError> {
    parse_distance_matrix(&read(path)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Integers print bare, everything else as `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn write_distance_matrix(m: &FiniteMetricSpace) -> String {
    let n = m.point_count();
    let mut out = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_rational(m.dist(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// `matrix rows cols nnz` followed by one `r c v` triplet per line.
pub fn write_matrix(m: &SparseIntMatrix) -> String {
    let mut out = format!("matrix {} {} {}\n", m.rows(), m.cols(), m.nnz());
    for (r, c, v) in m.triplets() {
        let _ = writeln!(out, "{r} {c} {v}");
    }
    out
}

/// Every simplex (`degree q` header, one vertex tuple per line), then every
/// boundary matrix `∂_q` in triplet form.
pub fn write_complex(k: &FlagComplex) -> String {
    let mut out = String::new();
    for q in 0..=k.dim() {
        let _ = writeln!(out, "degree {q} {}", k.count(q));
        for s in k.simplices(q) {
            let row: Vec<String> = s.iter().map(u32::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    for q in 1..=k.dim() {
        let _ = writeln!(out, "boundary {q}");
        // In range by construction.
        out.push_str(&write_matrix(&boundary_matrix(k, q).expect("degree within complex")));
    }
    out
}
