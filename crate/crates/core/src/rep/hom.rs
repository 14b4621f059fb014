use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Morphism, Rep};
use crate::error::Result;
use crate::linalg::Mat;

/// Largest number of `Hom` elements searched exhaustively for an isomorphism.
pub const ISO_ENUM_BOUND: u64 = 4096;

const ISO_RANDOM_TRIES: usize = 256;
const ISO_SEED: u64 = 0x1503;

/// Isomorphism invariants that are cheap to compare.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    /// Dimension vectors of `rad^k M`, `k >= 1`, down to zero.
    pub radical_series: Vec<Vec<usize>>,
    /// Dimension vectors of the successive socles `soc(M / soc^(k-1) M)`.
    pub socle_series: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Certified by an invertible homomorphism.
    Iso(Morphism),
    /// Certified: invariants differ, or every element of `Hom` was tried.
    NotIso,
    /// Random search found no isomorphism in a large `Hom` space.
    ProbablyNotIso,
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso(_))
    }
}

/// `p^exp`, saturating.
pub(crate) fn field_power(p: u32, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(p as u64);
    }
    acc
}

/// Calls `visit` on every nonzero linear combination of `basis`, stopping
/// when it returns `true`. The combination is updated incrementally: bumping
/// one digit of the coefficient odometer always amounts to adding that basis
/// element once.
pub(crate) fn for_each_combination(
    basis: &[Morphism],
    start: Morphism,
    p: u32,
    mut visit: impl FnMut(&Morphism) -> bool,
) -> bool {
    let mut digits = vec![0u32; basis.len()];
    let mut current = start;
    loop {
        let mut k = 0;
        loop {
            if k == digits.len() {
                return false;
            }
            current = current.add(&basis[k]);
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        if visit(&current) {
            return true;
        }
    }
}

impl Rep {
    /// A basis of `Hom(self, target)`.
    pub fn hom_space(&self, target: &Rep) -> Result<Vec<Morphism>> {
        self.same_algebra(target)?;
        let f = self.field();
        let n = self.dims.len();
        let mut offsets = Vec::with_capacity(n);
        let mut unknowns = 0;
        for v in 0..n {
            offsets.push(unknowns);
            unknowns += target.dims[v] * self.dims[v];
        }
        if unknowns == 0 {
            return Ok(Vec::new());
        }
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (ai, a) in self.alg.quiver().arrows().iter().enumerate() {
            let (i, j) = (a.source, a.target);
            let (mi, nj, ni, mj) = (self.dims[i], target.dims[j], target.dims[i], self.dims[j]);
            let (src, tgt) = (&self.mats[ai], &target.mats[ai]);
            // Entry (r, c) of  N_a f_i - f_j M_a.
            for r in 0..nj {
                for c in 0..mi {
                    let mut row = vec![0u32; unknowns];
                    for k in 0..ni {
                        let x = tgt.get(r, k);
                        if x != 0 {
                            let idx = offsets[i] + k * mi + c;
                            row[idx] = f.add(row[idx], x);
                        }
                    }
                    for k in 0..mj {
                        let x = src.get(k, c);
                        if x != 0 {
                            let idx = offsets[j] + r * mj + k;
                            row[idx] = f.sub(row[idx], x);
                        }
                    }
                    if row.iter().any(|&x| x != 0) {
                        rows.push(row);
                    }
                }
            }
        }
        let kernel = Mat::from_rows(f, unknowns, &rows).kernel();
        Ok(kernel
            .vectors()
            .map(|v| {
                Morphism::new(
                    (0..n)
                        .map(|u| {
                            let (r, c) = (target.dims[u], self.dims[u]);
                            Mat::from_vec(f, r, c, v[offsets[u]..offsets[u] + r * c].to_vec())
                        })
                        .collect(),
                )
            })
            .collect())
    }

    pub fn endomorphisms(&self) -> Vec<Morphism> {
        self.hom_space(self).expect("same algebra")
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let mut radical_series = Vec::new();
        let mut x = self.clone();
        while !x.is_zero() {
            let r = x.radical();
            radical_series.push(r.dims());
            x = x.sub_rep(&r);
        }
        let mut socle_series = Vec::new();
        let mut x = self.clone();
        while !x.is_zero() {
            let s = x.socle();
            socle_series.push(s.dims());
            x = x.quotient_rep(&s);
        }
        Fingerprint { dims: self.dims.clone(), radical_series, socle_series }
    }

    /// Searches `Hom(self, other)` for an isomorphism.
    pub fn iso_test(&self, other: &Rep) -> IsoVerdict {
        if self.same_algebra(other).is_err() || self.dims != other.dims {
            return IsoVerdict::NotIso;
        }
        if self.is_zero() {
            return IsoVerdict::Iso(Morphism::identity(self));
        }
        if self == other {
            return IsoVerdict::Iso(Morphism::identity(self));
        }
        if self.fingerprint() != other.fingerprint() {
            return IsoVerdict::NotIso;
        }
        self.iso_search(other)
    }

    /// Like [`Rep::iso_test`] but without the invariant pre-check; used when
    /// fingerprints are already known to agree.
    pub(crate) fn iso_search(&self, other: &Rep) -> IsoVerdict {
        let basis = self.hom_space(other).expect("same algebra");
        if basis.is_empty() {
            return IsoVerdict::NotIso;
        }
        if let Some(h) = basis.iter().find(|h| h.is_iso()) {
            return IsoVerdict::Iso(h.clone());
        }
        let p = self.field().p();
        if field_power(p, basis.len()) <= ISO_ENUM_BOUND {
            let mut found = None;
            for_each_combination(&basis, Morphism::zero(self, other), p, |h| {
                if h.is_iso() {
                    found = Some(h.clone());
                    true
                } else {
                    false
                }
            });
            return match found {
                Some(h) => IsoVerdict::Iso(h),
                None => IsoVerdict::NotIso,
            };
        }
        let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
        for _ in 0..ISO_RANDOM_TRIES {
            let h = basis.iter().fold(Morphism::zero(self, other), |acc, b| acc.add(&b.scale(rng.gen_range(0..p))));
            if h.is_iso() {
                return IsoVerdict::Iso(h);
            }
        }
        IsoVerdict::ProbablyNotIso
    }

    pub fn is_isomorphic(&self, other: &Rep) -> bool {
        self.iso_test(other).is_iso()
    }
}
