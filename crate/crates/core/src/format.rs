//! Text formats for algebras and modules.
//!
//! Algebra files:
//!
//! ```text
//! field p=2
//! vertices 1 2 3
//! arrows a:1->2 b:2->3
//! relations b*a
//! ```
//!
//! Several relations are separated by `,`; a term is `[coef*]path`, terms are
//! joined by `+` or `-`. Blank lines and lines starting with `#` are ignored.
//!
//! Module files:
//!
//! ```text
//! dims 1=0 2=1 3=1
//! arrow a = []
//! arrow b = [[1]]
//! ```
//!
//! Matrices are row-major with one row per basis vector of the target vertex;
//! `[]` stands for any matrix with a zero dimension.

use std::sync::Arc;

use crate::algebra::{Algebra, Path, Quiver, Relation, DEFAULT_LENGTH_CAP};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat, Subspace};
use crate::rep::{Rep, SubRep};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    })
}

/// Splits a line into its keyword and the rest, returning the column where the rest starts.
fn keyword(line: &str) -> (&str, &str, usize) {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    match trimmed.find(char::is_whitespace) {
        Some(k) => {
            let rest = &trimmed[k..];
            let rest_trim = rest.trim_start();
            let col = lead + k + (rest.len() - rest_trim.len()) + 1;
            (&trimmed[..k], rest_trim.trim_end(), col)
        }
        None => (trimmed, "", line.len() + 1),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str, start_col: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut idx = 0;
    for tok in line.split_whitespace() {
        let off = line[idx..].find(tok).unwrap() + idx;
        out.push((start_col + off, tok));
        idx = off + tok.len();
    }
    out
}

fn is_arrow_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// The parsed but not yet reduced contents of an algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDef {
    pub field: Fp,
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl AlgebraDef {
    pub fn build(self, length_cap: usize) -> Result<Arc<Algebra>> {
        Algebra::build(self.quiver, self.relations, self.field, length_cap)
    }
}

pub fn parse_algebra_def(text: &str) -> Result<AlgebraDef> {
    let mut field: Option<Fp> = None;
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut relation_lines: Vec<(usize, usize, String)> = Vec::new();

    for (ln, line) in content_lines(text) {
        let (kw, rest, col) = keyword(line);
        match kw {
            "field" => {
                let value = rest.strip_prefix("p=").ok_or_else(|| parse_err(ln, col, "expected `p=<prime>`"))?;
                let p: u32 =
                    value.trim().parse().map_err(|_| parse_err(ln, col + 2, format!("`{value}` is not an integer")))?;
                field = Some(Fp::new(p).map_err(|e| parse_err(ln, col + 2, e.to_string()))?);
            }
            "vertices" => {
                let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
                for (c, tok) in tokens(rest, col) {
                    if tok.contains(':') || tok.contains("->") || tok.contains(',') {
                        return Err(parse_err(ln, c, format!("invalid vertex label `{tok}`")));
                    }
                }
                if labels.is_empty() {
                    return Err(parse_err(ln, col, "no vertices listed"));
                }
                vertices = Some(labels);
            }
            "arrows" => {
                for (c, tok) in tokens(rest, col) {
                    let (label, ends) = tok
                        .split_once(':')
                        .ok_or_else(|| parse_err(ln, c, format!("expected `label:src->dst`, got `{tok}`")))?;
                    let (s, t) = ends
                        .split_once("->")
                        .ok_or_else(|| parse_err(ln, c, format!("expected `label:src->dst`, got `{tok}`")))?;
                    if !is_arrow_label(label) {
                        return Err(parse_err(ln, c, format!("invalid arrow label `{label}`")));
                    }
                    if s.is_empty() || t.is_empty() {
                        return Err(parse_err(ln, c, "missing arrow endpoint"));
                    }
                    arrows.push((label.to_string(), s.to_string(), t.to_string()));
                }
            }
            "relations" => relation_lines.push((ln, col, rest.to_string())),
            other => return Err(parse_err(ln, 1, format!("unknown keyword `{other}`"))),
        }
    }

    let field = field.ok_or_else(|| parse_err(1, 1, "missing `field` line"))?;
    let vertices = vertices.ok_or_else(|| parse_err(1, 1, "missing `vertices` line"))?;
    let quiver = Quiver::new(vertices, arrows)?;
    let mut relations = Vec::new();
    for (ln, col, rest) in relation_lines {
        let mut offset = 0;
        for chunk in rest.split(',') {
            if !chunk.trim().is_empty() {
                relations.push(parse_relation(&quiver, field, chunk, ln, col + offset)?);
            }
            offset += chunk.len() + 1;
        }
    }
    Ok(AlgebraDef { field, quiver, relations })
}

fn parse_relation(q: &Quiver, field: Fp, text: &str, ln: usize, col: usize) -> Result<Relation> {
    // Split into signed terms at top-level `+` / `-`.
    let mut terms: Vec<(bool, usize, &str)> = Vec::new();
    let mut negative = false;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == '+' || ch == '-' {
            let piece = &text[start..i];
            if !piece.trim().is_empty() {
                terms.push((negative, start, piece));
            } else if !terms.is_empty() || i != text.len() - text.trim_start().len() {
                return Err(parse_err(ln, col + i, "dangling sign"));
            }
            negative = ch == '-';
            start = i + 1;
        }
    }
    let tail = &text[start..];
    if tail.trim().is_empty() {
        return Err(parse_err(ln, col + start, "relation ends without a term"));
    }
    terms.push((negative, start, tail));

    let mut parsed = Vec::new();
    for (neg, off, raw) in terms {
        let c0 = col + off + (raw.len() - raw.trim_start().len());
        let factors: Vec<&str> = raw.split('*').map(str::trim).collect();
        let (coef, labels) = match factors[0].parse::<u64>() {
            Ok(c) => (field.reduce((c % field.p() as u64) as i64), &factors[1..]),
            Err(_) => (1, &factors[..]),
        };
        if labels.is_empty() {
            return Err(parse_err(ln, c0, "term has no path"));
        }
        let mut idx = Vec::with_capacity(labels.len());
        for l in labels {
            if l.is_empty() {
                return Err(parse_err(ln, c0, "empty factor in term"));
            }
            idx.push(q.arrow_index(l).ok_or_else(|| Error::UnknownArrow(l.to_string()))?);
        }
        let path = Path::from_written(q, &idx)?;
        let coef = if neg { field.neg(coef) } else { coef };
        parsed.push((coef, path));
    }
    Relation::new(field, parsed)
}

/// Parses and reduces an algebra with the default length cap.
pub fn parse_algebra(text: &str) -> Result<Arc<Algebra>> {
    parse_algebra_def(text)?.build(DEFAULT_LENGTH_CAP)
}

pub fn print_algebra_def(def: &AlgebraDef) -> String {
    print_parts(def.field, &def.quiver, &def.relations)
}

pub fn print_algebra(alg: &Algebra) -> String {
    print_parts(alg.field(), alg.quiver(), alg.relations())
}

fn print_parts(field: Fp, q: &Quiver, relations: &[Relation]) -> String {
    let mut out = format!("field p={}\nvertices {}\narrows", field.p(), q.vertices().join(" "));
    for a in q.arrows() {
        out.push_str(&format!(" {}:{}->{}", a.label, q.vertices()[a.source], q.vertices()[a.target]));
    }
    out.push_str("\nrelations");
    if !relations.is_empty() {
        let rels: Vec<String> = relations.iter().map(|r| r.display(q, field)).collect();
        out.push(' ');
        out.push_str(&rels.join(", "));
    }
    out.push('\n');
    out
}

fn parse_matrix(text: &str, field: Fp, ln: usize, col: usize) -> Result<(usize, Vec<Vec<u32>>)> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err(ln, col, "matrix must be enclosed in `[` `]`"))?;
    if inner.is_empty() {
        return Ok((0, Vec::new()));
    }
    let body = inner
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err(ln, col, "expected rows of the form `[..]`"))?;
    let mut rows = Vec::new();
    for row in body.split("],[") {
        if row.contains('[') || row.contains(']') {
            return Err(parse_err(ln, col, "malformed matrix rows"));
        }
        let mut entries = Vec::new();
        for e in row.split(',') {
            let v: i64 = e.parse().map_err(|_| parse_err(ln, col, format!("`{e}` is not an integer")))?;
            entries.push(field.reduce(v));
        }
        rows.push(entries);
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(parse_err(ln, col, "matrix rows have different lengths"));
    }
    Ok((width, rows))
}

// Rows, columns and entries of an arrow matrix as written.
type Written = (usize, usize, Vec<Vec<u32>>);

pub fn parse_module(text: &str, alg: &Arc<Algebra>) -> Result<Rep> {
    let q = alg.quiver();
    let field = alg.field();
    let mut dims: Option<Vec<usize>> = None;
    let mut mats: Vec<Option<Written>> = vec![None; q.arrows().len()];
    for (ln, line) in content_lines(text) {
        let (kw, rest, col) = keyword(line);
        match kw {
            "dims" => {
                let mut d = vec![0usize; q.num_vertices()];
                let mut seen = vec![false; q.num_vertices()];
                for (c, tok) in tokens(rest, col) {
                    let (v, n) = tok
                        .split_once('=')
                        .ok_or_else(|| parse_err(ln, c, format!("expected `vertex=dim`, got `{tok}`")))?;
                    let vi = q.vertex_index(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
                    if seen[vi] {
                        return Err(parse_err(ln, c, format!("vertex `{v}` listed twice")));
                    }
                    seen[vi] = true;
                    d[vi] = n.parse().map_err(|_| parse_err(ln, c, format!("`{n}` is not a dimension")))?;
                }
                dims = Some(d);
            }
            "arrow" => {
                let (label, matrix) =
                    rest.split_once('=').ok_or_else(|| parse_err(ln, col, "expected `arrow <label> = <matrix>`"))?;
                let label = label.trim();
                let ai = q.arrow_index(label).ok_or_else(|| Error::UnknownArrow(label.to_string()))?;
                if mats[ai].is_some() {
                    return Err(parse_err(ln, col, format!("arrow `{label}` given twice")));
                }
                let mcol = col + rest.find('=').unwrap() + 1;
                let (width, rows) = parse_matrix(matrix, field, ln, mcol)?;
                mats[ai] = Some((rows.len(), width, rows));
            }
            other => return Err(parse_err(ln, 1, format!("unknown keyword `{other}`"))),
        }
    }
    let dims = dims.ok_or_else(|| parse_err(1, 1, "missing `dims` line"))?;
    let mut arrow_mats = Vec::with_capacity(q.arrows().len());
    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (rows, cols) = (dims[arrow.target], dims[arrow.source]);
        let m = match mats[ai].take() {
            None if rows == 0 || cols == 0 => Mat::zeros(field, rows, cols),
            None => return Err(Error::ShapeMismatch(format!("arrow `{}` is missing a matrix", arrow.label))),
            Some((0, _, _)) if rows == 0 || cols == 0 => Mat::zeros(field, rows, cols),
            Some((r, c, data)) if r == rows && c == cols => Mat::from_rows(field, cols, &data),
            Some((r, c, _)) => {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` has a {r}x{c} matrix, expected {rows}x{cols}",
                    arrow.label
                )))
            }
        };
        arrow_mats.push(m);
    }
    Rep::new(alg, dims, arrow_mats)
}

fn print_matrix(m: &Mat) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "[]".into();
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let entries: Vec<String> = m.row(r).iter().map(u32::to_string).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub fn print_module(m: &Rep) -> String {
    let alg = m.algebra();
    let q = alg.quiver();
    let dims: Vec<String> = q.vertices().iter().zip(m.dims()).map(|(v, d)| format!("{v}={d}")).collect();
    let mut out = format!("dims {}\n", dims.join(" "));
    for (a, mat) in q.arrows().iter().zip(m.arrow_mats()) {
        out.push_str(&format!("arrow {} = {}\n", a.label, print_matrix(mat)));
    }
    out
}

/// A submodule as `vertex=[[basis row],..]` per vertex, e.g. `1=[[1,0]] 2=[]`.
pub fn print_subrep(m: &Rep, sub: &SubRep) -> String {
    let q = m.algebra().quiver();
    q.vertices()
        .iter()
        .zip(sub.spaces())
        .map(|(v, s)| format!("{v}={}", print_matrix(s.basis())))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_subrep(text: &str, m: &Rep) -> Result<SubRep> {
    let alg = m.algebra();
    let q = alg.quiver();
    let field = alg.field();
    let mut spaces: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(field, d)).collect();
    for (c, tok) in tokens(text.trim(), 1) {
        let (v, matrix) =
            tok.split_once('=').ok_or_else(|| parse_err(1, c, format!("expected `vertex=[..]`, got `{tok}`")))?;
        let vi = q.vertex_index(v).ok_or_else(|| Error::UnknownVertex(v.to_string()))?;
        let (width, rows) = parse_matrix(matrix, field, 1, c + v.len() + 1)?;
        if !rows.is_empty() && width != m.dims()[vi] {
            return Err(Error::ShapeMismatch(format!(
                "vectors at vertex `{v}` have length {width}, expected {}",
                m.dims()[vi]
            )));
        }
        spaces[vi] = Subspace::from_vectors(field, m.dims()[vi], &rows);
    }
    let sub = SubRep::new(spaces);
    m.check_subrep(&sub)?;
    Ok(sub)
}
