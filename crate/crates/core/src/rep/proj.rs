use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Morphism, Rep, SubRep};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};

pub const DEFAULT_PD_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProjDim {
    Finite(usize),
    /// No syzygy up to the cap vanished.
    AtLeast(usize),
}

impl ProjDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            ProjDim::Finite(d) => Some(d),
            ProjDim::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Finite(d) => write!(f, "{d}"),
            ProjDim::AtLeast(c) => write!(f, ">={c}"),
        }
    }
}

fn check_vertex(alg: &Algebra, v: usize) -> Result<()> {
    if v < alg.num_vertices() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v.to_string()))
    }
}

impl Rep {
    pub fn simple(alg: &Arc<Algebra>, v: usize) -> Result<Rep> {
        check_vertex(alg, v)?;
        let mut dims = vec![0; alg.num_vertices()];
        dims[v] = 1;
        let mats =
            alg.quiver().arrows().iter().map(|a| Mat::zeros(alg.field(), dims[a.target], dims[a.source])).collect();
        Ok(Rep::assemble(alg, dims, mats))
    }

    /// `P_v = Lambda e_v`: at vertex `j` the basis paths `v -> j`, arrows acting by left multiplication.
    pub fn projective(alg: &Arc<Algebra>, v: usize) -> Result<Rep> {
        check_vertex(alg, v)?;
        let n = alg.num_vertices();
        let local: Vec<Vec<usize>> = (0..n).map(|j| alg.basis_between(v, j)).collect();
        let dims = local.iter().map(Vec::len).collect();
        let mats = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let ae = alg.arrow_element(ai);
                let (src, tgt) = (&local[a.source], &local[a.target]);
                let mut m = Mat::zeros(alg.field(), tgt.len(), src.len());
                for (c, &p) in src.iter().enumerate() {
                    let prod = alg.mul_basis(ae, p);
                    for (r, &q) in tgt.iter().enumerate() {
                        m.set(r, c, prod[q]);
                    }
                }
                m
            })
            .collect();
        Ok(Rep::assemble(alg, dims, mats))
    }

    /// `I_v = D(e_v Lambda)`: at vertex `j` the dual of the paths `j -> v`.
    pub fn injective(alg: &Arc<Algebra>, v: usize) -> Result<Rep> {
        check_vertex(alg, v)?;
        let n = alg.num_vertices();
        let local: Vec<Vec<usize>> = (0..n).map(|j| alg.basis_between(j, v)).collect();
        let dims = local.iter().map(Vec::len).collect();
        let mats = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let ae = alg.arrow_element(ai);
                let (src, tgt) = (&local[a.source], &local[a.target]);
                let mut m = Mat::zeros(alg.field(), tgt.len(), src.len());
                // (a.phi)(q) = phi(q * a).
                for (r, &q) in tgt.iter().enumerate() {
                    let prod = alg.mul_basis(q, ae);
                    for (c, &p) in src.iter().enumerate() {
                        m.set(r, c, prod[p]);
                    }
                }
                m
            })
            .collect();
        Ok(Rep::assemble(alg, dims, mats))
    }

    /// `Lambda` as a left module over itself; see [`regular_coordinates`].
    pub fn regular(alg: &Arc<Algebra>) -> Rep {
        let local = regular_coordinates(alg);
        let dims = local.iter().map(Vec::len).collect();
        let mats = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let ae = alg.arrow_element(ai);
                let (src, tgt) = (&local[a.source], &local[a.target]);
                let mut m = Mat::zeros(alg.field(), tgt.len(), src.len());
                for (c, &p) in src.iter().enumerate() {
                    let prod = alg.mul_basis(ae, p);
                    for (r, &q) in tgt.iter().enumerate() {
                        m.set(r, c, prod[q]);
                    }
                }
                m
            })
            .collect();
        Rep::assemble(alg, dims, mats)
    }

    /// Minimal projective presentation step: a projective module with a
    /// surjection onto `self` whose kernel lies in the radical.
    ///
    /// Generators are the unit vectors at the non-pivot coordinates of the
    /// radical, taken vertex by vertex.
    pub fn projective_cover(&self) -> (Rep, Morphism) {
        let alg = &self.alg;
        let rad = self.radical();
        let mut parts = Vec::new();
        let mut cover: Option<Morphism> = None;
        for v in 0..self.dims.len() {
            let pv = Rep::projective(alg, v).expect("valid vertex");
            for c in rad.space(v).complement_indices() {
                let mut gen = vec![0u32; self.dims[v]];
                gen[c] = 1;
                let map = Morphism::new(
                    (0..self.dims.len())
                        .map(|j| {
                            let cols: Vec<Vec<u32>> = alg
                                .basis_between(v, j)
                                .iter()
                                .map(|&p| self.path_matrix(&alg.basis()[p]).mul_vec(&gen))
                                .collect();
                            if cols.is_empty() {
                                Mat::zeros(self.field(), self.dims[j], 0)
                            } else {
                                Mat::from_cols(self.field(), self.dims[j], &cols)
                            }
                        })
                        .collect(),
                );
                cover = Some(match cover {
                    None => map,
                    Some(acc) => acc.copair(&map),
                });
                parts.push(pv.clone());
            }
        }
        let p = Rep::direct_sum_all(alg, &parts);
        let cover = cover.unwrap_or_else(|| Morphism::zero(&p, self));
        (p, cover)
    }

    /// First syzygy: the kernel of the projective cover.
    pub fn syzygy(&self) -> Rep {
        if self.is_zero() {
            return self.clone();
        }
        let (p, cover) = self.projective_cover();
        p.sub_rep(&cover.kernel())
    }

    pub fn syzygy_power(&self, k: usize) -> Rep {
        (0..k).fold(self.clone(), |m, _| m.syzygy())
    }

    pub fn is_projective(&self) -> bool {
        self.syzygy().is_zero()
    }

    pub fn proj_dim(&self, cap: usize) -> ProjDim {
        if self.is_zero() {
            return ProjDim::Finite(0);
        }
        let mut x = self.clone();
        for d in 0..cap {
            let y = x.syzygy();
            if y.is_zero() {
                return ProjDim::Finite(d);
            }
            x = y;
        }
        ProjDim::AtLeast(cap)
    }
}

/// For each vertex `j`, the algebra basis indices of the paths ending at `j`;
/// these are the coordinates of `Rep::regular` at `j`.
pub fn regular_coordinates(alg: &Algebra) -> Vec<Vec<usize>> {
    (0..alg.num_vertices()).map(|j| (0..alg.dim()).filter(|&i| alg.basis()[i].target() == j).collect()).collect()
}

/// The subspace of the algebra underlying a submodule of the regular module.
pub fn regular_subrep_span(alg: &Algebra, sub: &SubRep) -> Subspace {
    let local = regular_coordinates(alg);
    let mut gens = Vec::new();
    for (j, idx) in local.iter().enumerate() {
        for v in sub.space(j).vectors() {
            let mut g = vec![0u32; alg.dim()];
            for (k, &i) in idx.iter().enumerate() {
                g[i] = v[k];
            }
            gens.push(g);
        }
    }
    Subspace::from_vectors(alg.field(), alg.dim(), &gens)
}
