//! Finite-dimensional left modules as quiver representations.
//!
//! A [`Rep`] stores one vector space dimension per vertex and one matrix per
//! arrow `a: i -> j`, of shape `dims[j] x dims[i]`.

mod hom;
mod proj;
mod random;

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Ideal, Path};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Mat, Subspace};

pub(crate) use hom::{field_power, for_each_combination};
pub use hom::{Fingerprint, IsoVerdict, ISO_ENUM_BOUND};
pub use proj::{regular_coordinates, regular_subrep_span, ProjDim, DEFAULT_PD_CAP};
pub use random::{random_module, random_submodule};

#[derive(Clone)]
pub struct Rep {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    mats: Vec<Mat>,
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.dims == other.dims && self.mats == other.mats
    }
}

impl Eq for Rep {}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.dims)?;
        f.debug_list().entries(self.mats.iter()).finish()
    }
}

/// A submodule, given by one subspace per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubRep {
    spaces: Vec<Subspace>,
}

/// A module homomorphism, given by one matrix per vertex (`dim N_i x dim M_i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    maps: Vec<Mat>,
}

impl Rep {
    /// Builds a module, checking shapes and that every relation acts as zero.
    pub fn new(alg: &Arc<Algebra>, dims: Vec<usize>, mats: Vec<Mat>) -> Result<Rep> {
        let q = alg.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} vertex dimensions, got {}",
                q.num_vertices(),
                dims.len()
            )));
        }
        if mats.len() != q.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} arrow matrices, got {}",
                q.arrows().len(),
                mats.len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&mats) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] || m.field() != alg.field() {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` needs a {}x{} matrix over F_{}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    alg.field().p()
                )));
            }
        }
        let rep = Rep { alg: alg.clone(), dims, mats };
        rep.validate()?;
        Ok(rep)
    }

    /// For constructions that satisfy the relations by design.
    pub(crate) fn assemble(alg: &Arc<Algebra>, dims: Vec<usize>, mats: Vec<Mat>) -> Rep {
        let rep = Rep { alg: alg.clone(), dims, mats };
        debug_assert!(rep.validate().is_ok(), "constructed module violates a relation");
        rep
    }

    pub fn zero(alg: &Arc<Algebra>) -> Rep {
        let q = alg.quiver();
        let mats = q.arrows().iter().map(|_| Mat::zeros(alg.field(), 0, 0)).collect();
        Rep::assemble(alg, vec![0; q.num_vertices()], mats)
    }

    pub fn validate(&self) -> Result<()> {
        let q = self.alg.quiver();
        let f = self.alg.field();
        for rel in self.alg.relations() {
            let (s, t) = (rel.source(), rel.target());
            let mut acc = Mat::zeros(f, self.dims[t], self.dims[s]);
            for (c, path) in rel.terms() {
                acc = acc.add(&self.path_matrix(path).scale(*c));
            }
            if !acc.is_zero() {
                return Err(Error::RelationViolated { relation: rel.display(q, f) });
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Fp {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrow_mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn arrow_mat(&self, a: usize) -> &Mat {
        &self.mats[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Vertices where the module is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn same_algebra(&self, other: &Rep) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Action of a path, `dims[target] x dims[source]`.
    pub fn path_matrix(&self, path: &Path) -> Mat {
        let mut m = Mat::identity(self.field(), self.dims[path.source()]);
        for &a in path.arrows() {
            m = self.mats[a].mul(&m);
        }
        m
    }

    /// Action of an algebra element restricted to `M_source -> M_target`.
    pub fn element_block(&self, x: &[u32], source: usize, target: usize) -> Mat {
        let mut acc = Mat::zeros(self.field(), self.dims[target], self.dims[source]);
        for (i, path) in self.alg.basis().iter().enumerate() {
            if x[i] != 0 && path.source() == source && path.target() == target {
                acc = acc.add(&self.path_matrix(path).scale(x[i]));
            }
        }
        acc
    }

    pub fn check_subrep(&self, sub: &SubRep) -> Result<()> {
        if sub.spaces.len() != self.dims.len() || sub.spaces.iter().zip(&self.dims).any(|(s, &d)| s.ambient() != d) {
            return Err(Error::NotSubmodule("subspaces do not match the module's dimensions".into()));
        }
        for (ai, a) in self.alg.quiver().arrows().iter().enumerate() {
            if !sub.spaces[a.source].image_under(&self.mats[ai]).is_subspace_of(&sub.spaces[a.target]) {
                return Err(Error::NotSubmodule(format!("not closed under arrow `{}`", a.label)));
            }
        }
        Ok(())
    }

    /// The submodule as a module in its own right, with coordinates taken in
    /// the RREF bases of the subspaces.
    pub fn sub_rep(&self, sub: &SubRep) -> Rep {
        debug_assert!(self.check_subrep(sub).is_ok());
        let f = self.field();
        let q = self.alg.quiver();
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let (src, tgt) = (&sub.spaces[a.source], &sub.spaces[a.target]);
                let cols: Vec<Vec<u32>> = src
                    .vectors()
                    .map(|v| tgt.coords(&self.mats[ai].mul_vec(v)).expect("closed under arrows"))
                    .collect();
                if cols.is_empty() {
                    Mat::zeros(f, tgt.dim(), 0)
                } else {
                    Mat::from_cols(f, tgt.dim(), &cols)
                }
            })
            .collect();
        Rep::assemble(&self.alg, sub.dims(), mats)
    }

    /// The inclusion of a submodule, from [`Rep::sub_rep`] into `self`.
    pub fn inclusion(&self, sub: &SubRep) -> Morphism {
        Morphism { maps: sub.spaces.iter().map(Subspace::inclusion_matrix).collect() }
    }

    /// `M/N` with the projection `M -> M/N`.
    pub fn quotient(&self, sub: &SubRep) -> Result<(Rep, Morphism)> {
        self.check_subrep(sub)?;
        let q = self.alg.quiver();
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                sub.spaces[a.target].quotient_projection().mul(&self.mats[ai]).mul(&sub.spaces[a.source].lift_matrix())
            })
            .collect();
        let dims = sub.spaces.iter().map(Subspace::codim).collect();
        let proj = Morphism { maps: sub.spaces.iter().map(Subspace::quotient_projection).collect() };
        Ok((Rep::assemble(&self.alg, dims, mats), proj))
    }

    /// Quotient module only; panics if `sub` is not a submodule.
    pub fn quotient_rep(&self, sub: &SubRep) -> Rep {
        self.quotient(sub).expect("quotient by a submodule").0
    }

    /// Sum of the images of all incoming arrows at each vertex.
    pub fn radical(&self) -> SubRep {
        let f = self.field();
        let q = self.alg.quiver();
        let spaces = (0..self.dims.len())
            .map(|j| q.incoming(j).fold(Subspace::zero(f, self.dims[j]), |acc, a| acc.sum(&self.mats[a].image())))
            .collect();
        SubRep { spaces }
    }

    /// Intersection of the kernels of all outgoing arrows at each vertex.
    pub fn socle(&self) -> SubRep {
        let f = self.field();
        let q = self.alg.quiver();
        let spaces = (0..self.dims.len())
            .map(|i| {
                q.outgoing(i).fold(Subspace::full(f, self.dims[i]), |acc, a| acc.intersect(&self.mats[a].kernel()))
            })
            .collect();
        SubRep { spaces }
    }

    pub fn top(&self) -> Rep {
        self.quotient_rep(&self.radical())
    }

    /// Smallest submodule containing the given vectors (`gens[v]` lists vectors of `M_v`).
    pub fn generated_subrep(&self, gens: &[Vec<Vec<u32>>]) -> SubRep {
        let f = self.field();
        let spaces = (0..self.dims.len())
            .map(|v| Subspace::from_vectors(f, self.dims[v], gens.get(v).map_or(&[][..], |g| &g[..])))
            .collect();
        self.close_under_arrows(SubRep { spaces })
    }

    /// Smallest submodule containing the given subspaces.
    pub fn close_under_arrows(&self, mut sub: SubRep) -> SubRep {
        let q = self.alg.quiver();
        loop {
            let mut grew = false;
            for (ai, a) in q.arrows().iter().enumerate() {
                let img = sub.spaces[a.source].image_under(&self.mats[ai]);
                if !img.is_subspace_of(&sub.spaces[a.target]) {
                    sub.spaces[a.target] = sub.spaces[a.target].sum(&img);
                    grew = true;
                }
            }
            if !grew {
                return sub;
            }
        }
    }

    /// Largest submodule contained in the given subspaces.
    pub fn shrink_to_subrep(&self, mut sub: SubRep) -> SubRep {
        let q = self.alg.quiver();
        loop {
            let mut shrank = false;
            for (ai, a) in q.arrows().iter().enumerate() {
                let pre = sub.spaces[a.target].preimage_under(&self.mats[ai]);
                let next = sub.spaces[a.source].intersect(&pre);
                if next.dim() < sub.spaces[a.source].dim() {
                    sub.spaces[a.source] = next;
                    shrank = true;
                }
            }
            if !shrank {
                return sub;
            }
        }
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        assert!(Arc::ptr_eq(&self.alg, &other.alg), "direct sum across algebras");
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.block_diag(b)).collect();
        Rep::assemble(&self.alg, dims, mats)
    }

    pub fn direct_sum_all<'a>(alg: &Arc<Algebra>, parts: impl IntoIterator<Item = &'a Rep>) -> Rep {
        parts.into_iter().fold(Rep::zero(alg), |acc, m| acc.direct_sum(m))
    }

    pub fn power(&self, n: usize) -> Rep {
        (0..n).fold(Rep::zero(&self.alg), |acc, _| acc.direct_sum(self))
    }

    /// The isomorphic module obtained by the basis change `g_v` at each vertex.
    pub fn conjugate(&self, change: &[Mat]) -> Rep {
        let q = self.alg.quiver();
        let mats = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let inv = change[a.source].inverse().expect("basis change must be invertible");
                change[a.target].mul(&self.mats[ai]).mul(&inv)
            })
            .collect();
        Rep::assemble(&self.alg, self.dims.clone(), mats)
    }

    /// `I.M`: span of all `x.v` for `x` in the ideal and `v` in the module.
    pub fn act(&self, ideal: &Ideal) -> Result<SubRep> {
        if !Arc::ptr_eq(ideal.algebra(), &self.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let f = self.field();
        let n = self.dims.len();
        let mut spaces: Vec<Subspace> = self.dims.iter().map(|&d| Subspace::zero(f, d)).collect();
        for x in ideal.span().vectors() {
            for s in (0..n).filter(|&s| self.dims[s] > 0) {
                for (t, space) in spaces.iter_mut().enumerate() {
                    if self.dims[t] > 0 {
                        *space = space.sum(&self.element_block(x, s, t).image());
                    }
                }
            }
        }
        let sub = SubRep { spaces };
        debug_assert!(!ideal.is_two_sided() || self.check_subrep(&sub).is_ok());
        Ok(self.close_under_arrows(sub))
    }
}

impl SubRep {
    pub fn new(spaces: Vec<Subspace>) -> SubRep {
        SubRep { spaces }
    }

    pub fn zero(m: &Rep) -> SubRep {
        SubRep { spaces: m.dims.iter().map(|&d| Subspace::zero(m.field(), d)).collect() }
    }

    pub fn full(m: &Rep) -> SubRep {
        SubRep { spaces: m.dims.iter().map(|&d| Subspace::full(m.field(), d)).collect() }
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn space(&self, v: usize) -> &Subspace {
        &self.spaces[v]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    pub fn is_full(&self) -> bool {
        self.spaces.iter().all(Subspace::is_full)
    }

    pub fn sum(&self, other: &SubRep) -> SubRep {
        SubRep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.sum(b)).collect() }
    }

    pub fn intersect(&self, other: &SubRep) -> SubRep {
        SubRep { spaces: self.spaces.iter().zip(&other.spaces).map(|(a, b)| a.intersect(b)).collect() }
    }

    pub fn is_contained_in(&self, other: &SubRep) -> bool {
        self.spaces.iter().zip(&other.spaces).all(|(a, b)| a.is_subspace_of(b))
    }

    /// Image under a morphism out of the ambient module.
    pub fn image_under(&self, f: &Morphism) -> SubRep {
        SubRep { spaces: self.spaces.iter().zip(&f.maps).map(|(s, m)| s.image_under(m)).collect() }
    }

    /// Preimage under a morphism into the ambient module.
    pub fn preimage_under(&self, f: &Morphism) -> SubRep {
        SubRep { spaces: self.spaces.iter().zip(&f.maps).map(|(s, m)| s.preimage_under(m)).collect() }
    }
}

impl Morphism {
    pub fn new(maps: Vec<Mat>) -> Morphism {
        Morphism { maps }
    }

    pub fn identity(m: &Rep) -> Morphism {
        Morphism { maps: m.dims.iter().map(|&d| Mat::identity(m.field(), d)).collect() }
    }

    pub fn zero(source: &Rep, target: &Rep) -> Morphism {
        Morphism {
            maps: source.dims.iter().zip(&target.dims).map(|(&s, &t)| Mat::zeros(source.field(), t, s)).collect(),
        }
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn map(&self, v: usize) -> &Mat {
        &self.maps[v]
    }

    /// Whether the squares commute for every arrow.
    pub fn is_homomorphism(&self, source: &Rep, target: &Rep) -> bool {
        source
            .alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(ai, a)| target.mats[ai].mul(&self.maps[a.source]) == self.maps[a.target].mul(&source.mats[ai]))
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.mul(b)).collect() }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> Morphism {
        Morphism { maps: self.maps.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn kernel(&self) -> SubRep {
        SubRep { spaces: self.maps.iter().map(Mat::kernel).collect() }
    }

    pub fn image(&self) -> SubRep {
        SubRep { spaces: self.maps.iter().map(Mat::image).collect() }
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.is_invertible())
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let maps = self.maps.iter().map(Mat::inverse).collect::<Option<Vec<_>>>()?;
        Some(Morphism { maps })
    }

    /// Block-diagonal sum `f (+) g: M (+) M' -> N (+) N'`.
    pub fn direct_sum(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect() }
    }

    /// The morphism `(f, g): M -> N (+) N'` (stacked vertically).
    pub fn pair(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.vstack(b)).collect() }
    }

    /// The morphism `[f g]: M (+) M' -> N` (side by side).
    pub fn copair(&self, other: &Morphism) -> Morphism {
        Morphism { maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.hstack(b)).collect() }
    }
}

#[cfg(test)]
mod tests;
