//! Exact linear algebra over prime fields.
//!
//! Scalars are `u32` values in `0..p`. The modulus is a runtime value carried
//! by every matrix, so a single build handles all test fields. Subspaces are
//! stored by the reduced row-echelon form of a spanning set, which is unique:
//! two subspaces are equal exactly when their stored bases are equal.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp {
    p: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    /// Largest modulus accepted; keeps products inside `u64` with room to spare.
    pub const MAX_P: u32 = 65521;

    pub fn new(p: u32) -> Result<Self> {
        if p > Self::MAX_P || !is_prime(p) {
            return Err(Error::InvalidField(format!("p = {p} is not a prime in 2..={}", Self::MAX_P)));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, (self.p - 2) as u64)
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// All field elements, `0..p`.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

/// `y += c * x` over `F_p`.
#[inline]
fn axpy(field: Fp, y: &mut [u32], c: u32, x: &[u32]) {
    if c == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        if xi != 0 {
            *yi = field.add(*yi, field.mul(c, xi));
        }
    }
}

/// A dense matrix over `F_p`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat<F_{}>{}x{}", self.field.p, self.rows, self.cols)?;
        f.debug_list().entries((0..self.rows).map(|r| self.row(r))).finish()
    }
}

/// Result of row reduction: the reduced matrix (zero rows kept at the bottom)
/// and the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Mat {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod `p`.
    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        let data = data.into_iter().map(|x| x % field.p).collect();
        Mat { field, rows, cols, data }
    }

    /// Builds a matrix from rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(field: Fp, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r.iter().map(|&x| x % field.p));
        }
        Mat { field, rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_cols(field: Fp, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x % field.p;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in product {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a != 0 {
                    axpy(f, out_row, a, other.row(k));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let f = self.field;
        (0..self.rows).map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in sum");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch in difference");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> Mat {
        let f = self.field;
        let c = c % f.p;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// `self` to the left of `other`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Mat { field: self.field, rows: self.rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Writes `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            m.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Gauss–Jordan elimination in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.data[r * cols + c]);
            for x in &mut self.data[r * cols + c..(r + 1) * cols] {
                *x = f.mul(*x, inv);
            }
            let pivot_row: Vec<u32> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let e = self.data[i * cols + c];
                if e != 0 {
                    let target = &mut self.data[i * cols + c..(i + 1) * cols];
                    axpy(f, target, f.neg(e), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> Rref {
        let mut reduced = self.clone();
        let pivots = reduced.rref_in_place();
        Rref { reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Null space `{v : self * v = 0}` as a subspace of `F^cols`.
    pub fn kernel(&self) -> Subspace {
        let Rref { reduced, pivots } = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vecs = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(reduced.get(k, free));
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, self.cols, &vecs)
    }

    /// Column space as a subspace of `F^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::from_mat_rows(&self.transpose())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_mat_rows(self)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Mat::identity(self.field, n));
        let Rref { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(reduced.submatrix(0, n, n, n))
    }

    pub fn pow(&self, mut exp: u64) -> Mat {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let rhs = Mat::from_cols(self.field, self.rows, &[b.to_vec()]);
        let Rref { reduced, pivots } = self.hstack(&rhs).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (k, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(k, self.cols);
        }
        Some(x)
    }
}

/// A linear subspace of `F_p^n`, canonically represented by its RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in F_{}^{})", self.dim(), self.field().p, self.ambient())?;
        f.debug_list().entries((0..self.dim()).map(|r| self.basis.row(r))).finish()
    }
}

impl Subspace {
    pub fn zero(field: Fp, ambient: usize) -> Self {
        Subspace { basis: Mat::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Fp, ambient: usize) -> Self {
        Subspace { basis: Mat::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// Row space of `m`.
    pub fn from_mat_rows(m: &Mat) -> Self {
        let Rref { reduced, pivots } = m.rref();
        let basis = reduced.submatrix(0, 0, pivots.len(), m.cols());
        Subspace { basis, pivots }
    }

    pub fn from_vectors(field: Fp, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Self::from_mat_rows(&Mat::from_rows(field, ambient, vectors))
    }

    pub fn field(&self) -> Fp {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient() - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.dim()).map(move |r| self.basis.row(r))
    }

    /// Column indices not used as pivots; the unit vectors at these indices
    /// span a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Residue of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient(), "vector has wrong length");
        let f = self.field();
        let mut out = v.to_vec();
        for (k, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c != 0 {
                axpy(f, &mut out, f.neg(c), self.basis.row(k));
            }
        }
        out
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` with respect to the RREF basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// Coordinates of the class of `v` in the quotient, with respect to the
    /// complement spanned by the non-pivot unit vectors.
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        self.complement_indices().into_iter().map(|c| r[c]).collect()
    }

    /// The matrix (`codim x ambient`) of the canonical projection onto the quotient.
    pub fn quotient_projection(&self) -> Mat {
        let comp = self.complement_indices();
        let f = self.field();
        let mut q = Mat::zeros(f, comp.len(), self.ambient());
        for (t, &c) in comp.iter().enumerate() {
            q.set(t, c, 1);
        }
        for (k, &pc) in self.pivots.iter().enumerate() {
            for (t, &c) in comp.iter().enumerate() {
                q.set(t, pc, f.neg(self.basis.get(k, c)));
            }
        }
        q
    }

    /// The matrix (`ambient x codim`) sending quotient coordinates to their
    /// canonical representatives.
    pub fn lift_matrix(&self) -> Mat {
        let comp = self.complement_indices();
        let mut l = Mat::zeros(self.field(), self.ambient(), comp.len());
        for (t, &c) in comp.iter().enumerate() {
            l.set(c, t, 1);
        }
        l
    }

    /// The matrix (`ambient x dim`) whose columns are the basis vectors.
    pub fn inclusion_matrix(&self) -> Mat {
        self.basis.transpose()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.vectors().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient(), "ambient mismatch in subspace sum");
        Subspace::from_mat_rows(&self.basis.vstack(&other.basis))
    }

    /// Intersection by the Zassenhaus construction.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient(), other.ambient(), "ambient mismatch in subspace intersection");
        let n = self.ambient();
        let f = self.field();
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Mat::zeros(f, other.dim(), n));
        let Rref { reduced, pivots } = top.vstack(&bottom).rref();
        let vecs: Vec<Vec<u32>> =
            pivots.iter().enumerate().filter(|&(_, &pc)| pc >= n).map(|(k, _)| reduced.row(k)[n..].to_vec()).collect();
        Subspace::from_vectors(f, n, &vecs)
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        if self.contains(v) {
            return false;
        }
        let row = Mat::from_rows(self.field(), self.ambient(), &[v.to_vec()]);
        *self = Subspace::from_mat_rows(&self.basis.vstack(&row));
        true
    }

    /// Image under a linear map `a: F^ambient -> F^m`.
    pub fn image_under(&self, a: &Mat) -> Subspace {
        assert_eq!(a.cols(), self.ambient(), "map does not act on this space");
        if self.is_zero() {
            return Subspace::zero(self.field(), a.rows());
        }
        a.mul(&self.inclusion_matrix()).image()
    }

    /// Preimage of `self` (a subspace of `F^m`) under `a: F^n -> F^m`.
    pub fn preimage_under(&self, a: &Mat) -> Subspace {
        assert_eq!(a.rows(), self.ambient(), "map does not land in this space");
        if self.is_full() {
            return Subspace::full(self.field(), a.cols());
        }
        self.quotient_projection().mul(a).kernel()
    }
}
