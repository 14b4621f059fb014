//! Krull-Schmidt decomposition by Fitting splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::rep::{field_power, for_each_combination, Morphism, Rep, ISO_ENUM_BOUND};

const RANDOM_CANDIDATES: usize = 256;
const SPLIT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Every endomorphism was checked to be nilpotent or invertible.
    Certified,
    /// `End` was too large to enumerate and no splitting was found.
    Heuristic,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Rep,
    pub multiplicity: usize,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    /// One entry per isomorphism class.
    pub summands: Vec<Summand>,
    /// The indecomposable pieces in splitting order.
    pub parts: Vec<Rep>,
    /// An isomorphism from the direct sum of `parts` onto the input.
    pub witness: Morphism,
}

impl Decomposition {
    pub fn is_certified(&self) -> bool {
        self.summands.iter().all(|s| s.certificate == Certificate::Certified)
    }

    pub fn total_count(&self) -> usize {
        self.summands.iter().map(|s| s.multiplicity).sum()
    }

    pub fn reassemble(&self, like: &Rep) -> Rep {
        Rep::direct_sum_all(like.algebra(), &self.parts)
    }
}

fn power(e: &Morphism, k: usize) -> Morphism {
    Morphism::new(e.maps().iter().map(|m| m.pow(k as u64)).collect())
}

enum Split {
    Found(Morphism),
    Leaf(Certificate),
}

/// `e^d` for `d = dim M` has `M = ker ⊕ im`; it splits unless it is zero or invertible.
fn splits(m: &Rep, e: &Morphism) -> Option<Morphism> {
    let f = power(e, m.total_dim());
    if f.is_zero() || f.is_iso() {
        None
    } else {
        Some(f)
    }
}

fn find_split(m: &Rep) -> Split {
    let basis = m.endomorphisms();
    if let Some(f) = basis.iter().find_map(|e| splits(m, e)) {
        return Split::Found(f);
    }
    let p = m.field().p();
    if field_power(p, basis.len()) <= ISO_ENUM_BOUND {
        let mut found = None;
        for_each_combination(&basis, Morphism::zero(m, m), p, |e| {
            found = splits(m, e);
            found.is_some()
        });
        return match found {
            Some(f) => Split::Found(f),
            None => Split::Leaf(Certificate::Certified),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    for _ in 0..RANDOM_CANDIDATES {
        let e = basis.iter().fold(Morphism::zero(m, m), |acc, b| acc.add(&b.scale(rng.gen_range(0..p))));
        if let Some(f) = splits(m, &e) {
            return Split::Found(f);
        }
    }
    Split::Leaf(Certificate::Heuristic)
}

fn split_into(m: &Rep, into_top: Morphism, out: &mut Vec<(Rep, Morphism, Certificate)>) {
    if m.is_zero() {
        return;
    }
    match find_split(m) {
        Split::Found(f) => {
            for sub in [f.kernel(), f.image()] {
                let piece = m.sub_rep(&sub);
                split_into(&piece, into_top.compose(&m.inclusion(&sub)), out);
            }
        }
        Split::Leaf(cert) => out.push((m.clone(), into_top, cert)),
    }
}

pub fn decompose(m: &Rep) -> Decomposition {
    let mut pieces = Vec::new();
    split_into(m, Morphism::identity(m), &mut pieces);
    let mut witness: Option<Morphism> = None;
    let mut summands: Vec<Summand> = Vec::new();
    let mut parts = Vec::new();
    for (piece, inc, cert) in pieces {
        witness = Some(match witness {
            None => inc,
            Some(w) => w.copair(&inc),
        });
        match summands.iter_mut().find(|s| s.module.is_isomorphic(&piece)) {
            Some(s) => {
                s.multiplicity += 1;
                if cert == Certificate::Heuristic {
                    s.certificate = Certificate::Heuristic;
                }
            }
            None => summands.push(Summand { module: piece.clone(), multiplicity: 1, certificate: cert }),
        }
        parts.push(piece);
    }
    let witness = witness.unwrap_or_else(|| Morphism::zero(m, m));
    Decomposition { summands, parts, witness }
}

/// The direct sum of the non-projective indecomposable summands.
pub fn non_projective_part(m: &Rep) -> Rep {
    let d = decompose(m);
    let kept: Vec<&Rep> = d.parts.iter().filter(|p| !p.is_projective()).collect();
    Rep::direct_sum_all(m.algebra(), kept)
}

/// Isomorphism up to projective summands.
pub fn stably_isomorphic(a: &Rep, b: &Rep) -> bool {
    non_projective_part(a).is_isomorphic(&non_projective_part(b))
}
