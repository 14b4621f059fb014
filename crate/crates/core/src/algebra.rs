//! Bound quiver algebras `kQ/I` over a prime field.
//!
//! Paths are written in function order: the path "first `a: 1 -> 2`, then
//! `b: 2 -> 3`" is `b*a`, and on a left module it acts as `rho(b) . rho(a)`.
//! Internally a [`Path`] stores its arrows in traversal order.
//!
//! The ideal is reduced linear-algebraically. For `L = 1, 2, ...` we work in
//! `kQ / J^(L+1)` (paths longer than `L` vanish), span the image of the
//! relation ideal there, and stop at the first `L` for which every path of
//! length `L` lies in that image. For an admissible ideal this gives exactly
//! `kQ/I`, and `L` is the nilpotency index of the radical.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat, Subspace};

pub const DEFAULT_LENGTH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(label, source, target)` triples.
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::ShapeMismatch(format!("duplicate vertex label `{v}`")));
            }
        }
        let lookup = |v: &str| vertices.iter().position(|x| x == v).ok_or_else(|| Error::UnknownVertex(v.to_string()));
        let mut out: Vec<Arrow> = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            if out.iter().any(|a| a.label == label) {
                return Err(Error::ShapeMismatch(format!("duplicate arrow label `{label}`")));
            }
            out.push(Arrow { source: lookup(&s)?, target: lookup(&t)?, label });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }
}

/// A path in a quiver; `arrows[0]` is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arr = &q.arrows[a];
        Path { source: arr.source, target: arr.target, arrows: vec![a] }
    }

    /// Builds a path from arrow indices in written (function) order, so
    /// `[b, a]` is "a then b".
    pub fn from_written(q: &Quiver, written: &[usize]) -> Result<Self> {
        let mut traversal: Vec<usize> = written.to_vec();
        traversal.reverse();
        let first = *traversal.first().ok_or_else(|| Error::MalformedRelation("empty path".into()))?;
        let mut path = Path::arrow(q, first);
        for &a in &traversal[1..] {
            path = path.then(&Path::arrow(q, a)).ok_or_else(|| {
                Error::MalformedRelation(format!(
                    "arrows `{}` and `{}` do not compose",
                    q.arrows[path.arrows[path.arrows.len() - 1]].label,
                    q.arrows[a].label
                ))
            })?;
        }
        Ok(path)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    /// Arrow indices in traversal order.
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// `self` followed by `next`, i.e. the product `next * self`.
    pub fn then(&self, next: &Path) -> Option<Path> {
        if self.target != next.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Some(Path { source: self.source, target: next.target, arrows })
    }

    /// Written form: `e<v>` for trivial paths, otherwise labels in function order joined by `*`.
    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", q.vertices[self.source]);
        }
        self.arrows.iter().rev().map(|&a| q.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    terms: Vec<(u32, Path)>,
}

impl Relation {
    pub fn new(field: Fp, terms: Vec<(u32, Path)>) -> Result<Self> {
        let mut merged: Vec<(u32, Path)> = Vec::new();
        for (c, path) in terms {
            let c = c % field.p();
            if let Some(slot) = merged.iter_mut().find(|(_, p)| *p == path) {
                slot.0 = field.add(slot.0, c);
            } else {
                merged.push((c, path));
            }
        }
        merged.retain(|(c, _)| *c != 0);
        let Some((_, first)) = merged.first() else {
            return Err(Error::MalformedRelation("relation has no nonzero terms".into()));
        };
        let (s, t) = (first.source, first.target);
        for (_, p) in &merged {
            if p.len() < 2 {
                return Err(Error::MalformedRelation("relation contains a path of length < 2".into()));
            }
            if p.source != s || p.target != t {
                return Err(Error::MalformedRelation("relation paths are not parallel".into()));
            }
        }
        Ok(Relation { terms: merged })
    }

    pub fn terms(&self) -> &[(u32, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn display(&self, q: &Quiver, field: Fp) -> String {
        let mut out = String::new();
        for (i, (c, path)) in self.terms.iter().enumerate() {
            let body = path.display(q);
            let neg = field.p() > 2 && *c == field.p() - 1;
            match (i, neg, *c) {
                (0, true, _) => out.push_str(&format!("-{body}")),
                (0, false, 1) => out.push_str(&body),
                (0, false, c) => out.push_str(&format!("{c}*{body}")),
                (_, true, _) => out.push_str(&format!(" - {body}")),
                (_, false, 1) => out.push_str(&format!(" + {body}")),
                (_, false, c) => out.push_str(&format!(" + {c}*{body}")),
            }
        }
        out
    }
}

/// A finite-dimensional bound quiver algebra with an explicit path basis.
#[derive(Debug)]
pub struct Algebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    field: Fp,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    /// `mult[i * dim + j]` holds the coordinates of `basis[i] * basis[j]`.
    mult: Vec<Vec<u32>>,
    nil_index: usize,
    length_cap: usize,
}

fn paths_by_length(q: &Quiver, max_len: usize) -> Vec<Vec<Path>> {
    let mut levels: Vec<Vec<Path>> = vec![(0..q.num_vertices()).map(Path::trivial).collect()];
    for _ in 0..max_len {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for p in prev {
            for a in q.outgoing(p.target) {
                next.push(p.then(&Path::arrow(q, a)).unwrap());
            }
        }
        levels.push(next);
    }
    levels
}

impl Algebra {
    pub fn build(quiver: Quiver, relations: Vec<Relation>, field: Fp, length_cap: usize) -> Result<Arc<Algebra>> {
        if quiver.num_vertices() == 0 {
            return Err(Error::ShapeMismatch("quiver has no vertices".into()));
        }
        let cap = length_cap.max(2);
        for level in 1..=cap {
            let levels = paths_by_length(&quiver, level);
            let all: Vec<Path> = levels.iter().flatten().cloned().collect();
            let pos: HashMap<&Path, usize> = all.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let n = all.len();

            let mut gens: Vec<Vec<u32>> = Vec::new();
            for rel in &relations {
                let base = rel.min_len();
                for before_len in 0..=level.saturating_sub(base) {
                    for after_len in 0..=level.saturating_sub(base + before_len) {
                        for before in levels[before_len].iter().filter(|v| v.target == rel.source()) {
                            for after in levels[after_len].iter().filter(|u| u.source == rel.target()) {
                                let mut v = vec![0u32; n];
                                for (c, term) in &rel.terms {
                                    let full = before.then(term).unwrap().then(after).unwrap();
                                    if full.len() <= level {
                                        let k = pos[&full];
                                        v[k] = field.add(v[k], *c);
                                    }
                                }
                                if v.iter().any(|&x| x != 0) {
                                    gens.push(v);
                                }
                            }
                        }
                    }
                }
            }
            let ideal = Subspace::from_vectors(field, n, &gens);
            let unit = |k: usize| {
                let mut e = vec![0u32; n];
                e[k] = 1;
                e
            };
            let top_level_vanishes = levels[level].iter().all(|p| ideal.contains(&unit(pos[p])));
            if !top_level_vanishes {
                continue;
            }

            let mut span = ideal.clone();
            let mut chosen: Vec<usize> = Vec::new();
            for k in 0..n {
                if span.insert(&unit(k)) {
                    chosen.push(k);
                }
            }
            let unit_rows: Vec<Vec<u32>> = chosen.iter().map(|&k| unit(k)).collect();
            let change = ideal
                .basis()
                .vstack(&Mat::from_rows(field, n, &unit_rows))
                .inverse()
                .expect("ideal plus complement spans the truncated path space");
            let offset = ideal.dim();
            let normal_form = |k: usize| change.row(k)[offset..].to_vec();

            let basis: Vec<Path> = chosen.iter().map(|&k| all[k].clone()).collect();
            let dim = basis.len();
            let index: HashMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
            let mut mult = Vec::with_capacity(dim * dim);
            for x in &basis {
                for y in &basis {
                    let coeffs = match y.then(x) {
                        Some(prod) if prod.len() <= level => normal_form(pos[&prod]),
                        _ => vec![0u32; dim],
                    };
                    mult.push(coeffs);
                }
            }
            return Ok(Arc::new(Algebra {
                quiver,
                relations,
                field,
                basis,
                index,
                mult,
                nil_index: level,
                length_cap: cap,
            }));
        }
        Err(Error::NotAdmissibleWithinCap { cap })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Least `N` with `J^N = 0`.
    pub fn nil_index(&self) -> usize {
        self.nil_index
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn vertex_element(&self, v: usize) -> usize {
        self.index[&Path::trivial(v)]
    }

    pub fn arrow_element(&self, a: usize) -> usize {
        self.index[&Path::arrow(&self.quiver, a)]
    }

    /// Basis indices of the paths from `source` to `target`.
    pub fn basis_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == source && self.basis[i].target == target).collect()
    }

    /// Basis indices of the paths starting at `source`.
    pub fn basis_from(&self, source: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].source == source).collect()
    }

    /// Coordinates of `basis[i] * basis[j]`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[u32] {
        &self.mult[i * self.dim() + j]
    }

    pub fn unit(&self, i: usize) -> Vec<u32> {
        let mut e = vec![0u32; self.dim()];
        e[i] = 1;
        e
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let f = self.field;
        let n = self.dim();
        let mut out = vec![0u32; n];
        for (i, &xi) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (j, &yj) in y.iter().enumerate().filter(|(_, &c)| c != 0) {
                let c = f.mul(xi, yj);
                for (o, &m) in out.iter_mut().zip(self.mul_basis(i, j)) {
                    if m != 0 {
                        *o = f.add(*o, f.mul(c, m));
                    }
                }
            }
        }
        out
    }

    /// Every vertex has at most one incoming and one outgoing arrow.
    pub fn is_nakayama(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.quiver.incoming(v).count() <= 1 && self.quiver.outgoing(v).count() <= 1)
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }
}

/// A left (possibly two-sided) ideal, as a subspace of the algebra.
#[derive(Clone, Debug)]
pub struct Ideal {
    alg: Arc<Algebra>,
    span: Subspace,
    two_sided: bool,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.span == other.span
    }
}

impl Ideal {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Ideal { span: Subspace::zero(alg.field(), alg.dim()), alg: alg.clone(), two_sided: true }
    }

    pub fn whole(alg: &Arc<Algebra>) -> Self {
        Ideal { span: Subspace::full(alg.field(), alg.dim()), alg: alg.clone(), two_sided: true }
    }

    /// The arrow ideal: all paths of length at least one.
    pub fn jacobson_radical(alg: &Arc<Algebra>) -> Self {
        let gens: Vec<Vec<u32>> = (0..alg.dim()).filter(|&i| !alg.basis()[i].is_empty()).map(|i| alg.unit(i)).collect();
        Ideal { span: Subspace::from_vectors(alg.field(), alg.dim(), &gens), alg: alg.clone(), two_sided: true }
    }

    /// Wraps a subspace, checking that it is a left ideal; `two_sided` is
    /// determined by testing right multiplication as well.
    pub fn from_span(alg: &Arc<Algebra>, span: Subspace) -> Result<Self> {
        if span.ambient() != alg.dim() {
            return Err(Error::ShapeMismatch("ideal span has the wrong ambient dimension".into()));
        }
        let closed = |left: bool| {
            span.vectors().all(|x| {
                (0..alg.dim()).all(|b| {
                    let e = alg.unit(b);
                    let prod = if left { alg.mul(&e, x) } else { alg.mul(x, &e) };
                    span.contains(&prod)
                })
            })
        };
        if !closed(true) {
            return Err(Error::NotSubmodule("span is not closed under left multiplication".into()));
        }
        let two_sided = closed(false);
        Ok(Ideal { alg: alg.clone(), span, two_sided })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.span.is_zero()
    }

    pub fn is_two_sided(&self) -> bool {
        self.two_sided
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !Arc::ptr_eq(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let mut gens = Vec::new();
        for x in self.span.vectors() {
            for y in other.span.vectors() {
                gens.push(self.alg.mul(x, y));
            }
        }
        Ok(Ideal {
            span: Subspace::from_vectors(self.alg.field(), self.alg.dim(), &gens),
            alg: self.alg.clone(),
            two_sided: self.two_sided && other.two_sided,
        })
    }

    pub fn power(&self, n: usize) -> Ideal {
        let mut acc = Ideal::whole(&self.alg);
        for _ in 0..n {
            acc = acc.product(self).expect("same algebra");
        }
        acc
    }
}
