use std::sync::Arc;

use super::{torsion_generated, FunctorExpr, Verdict, VertexSet};
use crate::algebra::Algebra;
use crate::rep::Rep;

/// A class of modules closed under isomorphism and finite direct sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassDesc {
    Zero,
    All,
    Semisimple,
    /// Composition factors in the set, i.e. supported on those vertices.
    Supported(VertexSet),
    /// Top has no simple summand from the set.
    TopAvoids(VertexSet),
    /// Socle has no simple summand from the set.
    SocleAvoids(VertexSet),
    /// Torsion class generated by the modules.
    Torsion(Vec<Rep>),
    /// Modules receiving no nonzero map from the given ones.
    TorsionFree(Vec<Rep>),
}

impl ClassDesc {
    pub fn contains(&self, m: &Rep) -> bool {
        match self {
            ClassDesc::Zero => m.is_zero(),
            ClassDesc::All => true,
            ClassDesc::Semisimple => m.radical().is_zero(),
            ClassDesc::Supported(s) => m.dims().iter().enumerate().all(|(v, &d)| d == 0 || s.contains(&v)),
            ClassDesc::TopAvoids(s) => {
                let top = m.top();
                s.iter().all(|&v| top.dims()[v] == 0)
            }
            ClassDesc::SocleAvoids(s) => {
                let soc = m.socle();
                s.iter().all(|&v| soc.space(v).dim() == 0)
            }
            ClassDesc::Torsion(gens) => torsion_generated(gens, m).is_full(),
            ClassDesc::TorsionFree(gens) => gens.iter().all(|g| g.hom_space(m).expect("same algebra").is_empty()),
        }
    }

    fn quotient_closed(&self) -> bool {
        !matches!(self, ClassDesc::SocleAvoids(_) | ClassDesc::TorsionFree(_))
    }

    fn submodule_closed(&self) -> bool {
        !matches!(self, ClassDesc::TopAvoids(_) | ClassDesc::Torsion(_))
    }

    fn extension_closed(&self) -> bool {
        !matches!(self, ClassDesc::Semisimple)
    }

    /// Members whose quotients and sums (and extensions, if flagged) give the class.
    fn quotient_generators(&self, alg: &Arc<Algebra>) -> Option<(Vec<Rep>, bool)> {
        let n = alg.num_vertices();
        Some(match self {
            ClassDesc::Zero => (Vec::new(), false),
            ClassDesc::All => (vec![Rep::regular(alg)], false),
            ClassDesc::Semisimple => (simples(alg, 0..n), false),
            ClassDesc::Supported(s) => (simples(alg, s.iter().copied()), true),
            ClassDesc::TopAvoids(s) => (projectives(alg, (0..n).filter(|v| !s.contains(v))), false),
            ClassDesc::Torsion(gens) => (gens.clone(), true),
            ClassDesc::SocleAvoids(_) | ClassDesc::TorsionFree(_) => return None,
        })
    }

    /// Members whose submodules and sums (and extensions, if flagged) give the class.
    fn submodule_cogenerators(&self, alg: &Arc<Algebra>) -> Option<(Vec<Rep>, bool)> {
        let n = alg.num_vertices();
        Some(match self {
            ClassDesc::Zero => (Vec::new(), false),
            ClassDesc::All => (injectives(alg, 0..n), false),
            ClassDesc::Semisimple => (simples(alg, 0..n), false),
            ClassDesc::Supported(s) => (simples(alg, s.iter().copied()), true),
            ClassDesc::SocleAvoids(s) => (injectives(alg, (0..n).filter(|v| !s.contains(v))), false),
            ClassDesc::TopAvoids(_) | ClassDesc::Torsion(_) | ClassDesc::TorsionFree(_) => return None,
        })
    }

    /// For a torsion-free class `{M : Hom(G, M) = 0}`, the modules `G`.
    fn orthogonal_to(&self, alg: &Arc<Algebra>) -> Option<Vec<Rep>> {
        let n = alg.num_vertices();
        Some(match self {
            ClassDesc::Zero => vec![Rep::regular(alg)],
            ClassDesc::All => Vec::new(),
            ClassDesc::Supported(s) => projectives(alg, (0..n).filter(|v| !s.contains(v))),
            ClassDesc::SocleAvoids(s) => simples(alg, s.iter().copied()),
            ClassDesc::TorsionFree(gens) => gens.clone(),
            _ => return None,
        })
    }

    /// Decides `self ⊆ other` where the structure of the two classes allows it.
    pub fn included_in(&self, other: &ClassDesc, alg: &Arc<Algebra>) -> Verdict {
        if *self == ClassDesc::Zero || *other == ClassDesc::All || self == other {
            return Verdict::Yes;
        }
        if let Some((gens, ext)) = self.quotient_generators(alg) {
            if !gens.iter().all(|g| other.contains(g)) {
                return Verdict::No;
            }
            if other.quotient_closed() && (!ext || other.extension_closed()) {
                return Verdict::Yes;
            }
        }
        if let Some((cogens, ext)) = self.submodule_cogenerators(alg) {
            if !cogens.iter().all(|g| other.contains(g)) {
                return Verdict::No;
            }
            if other.submodule_closed() && (!ext || other.extension_closed()) {
                return Verdict::Yes;
            }
        }
        // Torsion-free classes are ordered opposite to their torsion classes.
        if let (Some(mine), Some(theirs)) = (self.orthogonal_to(alg), other.orthogonal_to(alg)) {
            return Verdict::from_bool(theirs.iter().all(|g| torsion_generated(&mine, g).is_full()));
        }
        match (self, other) {
            (ClassDesc::Supported(s), ClassDesc::Semisimple) => {
                // A nonzero arrow inside the set gives a non-semisimple module.
                let inner = alg.quiver().arrows().iter().any(|a| s.contains(&a.source) && s.contains(&a.target));
                Verdict::from_bool(!inner)
            }
            (ClassDesc::TopAvoids(s), ClassDesc::SocleAvoids(s2)) => {
                // Any composition factor of a projective cover shows up as
                // the socle of some quotient.
                let n = alg.num_vertices();
                let hit = projectives(alg, (0..n).filter(|v| !s.contains(v)))
                    .iter()
                    .any(|p| s2.iter().any(|&v| p.dims()[v] != 0));
                Verdict::from_bool(!hit)
            }
            (ClassDesc::SocleAvoids(s), ClassDesc::TopAvoids(s2)) => {
                let n = alg.num_vertices();
                let hit = injectives(alg, (0..n).filter(|v| !s.contains(v)))
                    .iter()
                    .any(|i| s2.iter().any(|&v| i.dims()[v] != 0));
                Verdict::from_bool(!hit)
            }
            _ => {
                // Standard modules as candidate witnesses.
                let n = alg.num_vertices();
                let probes = simples(alg, 0..n).into_iter().chain(projectives(alg, 0..n)).chain(injectives(alg, 0..n));
                for m in probes {
                    if self.contains(&m) && !other.contains(&m) {
                        return Verdict::No;
                    }
                }
                Verdict::Unknown
            }
        }
    }

    pub fn display(&self, alg: &Algebra) -> String {
        let set = |s: &VertexSet| s.iter().map(|&v| alg.vertex_label(v).to_string()).collect::<Vec<_>>().join(",");
        match self {
            ClassDesc::Zero => "0".into(),
            ClassDesc::All => "all".into(),
            ClassDesc::Semisimple => "semisimple".into(),
            ClassDesc::Supported(s) => format!("supp{{{}}}", set(s)),
            ClassDesc::TopAvoids(s) => format!("top-avoids{{{}}}", set(s)),
            ClassDesc::SocleAvoids(s) => format!("soc-avoids{{{}}}", set(s)),
            ClassDesc::Torsion(g) => format!("torsion[{} gens]", g.len()),
            ClassDesc::TorsionFree(g) => format!("torsion-free[{} gens]", g.len()),
        }
    }
}

fn simples(alg: &Arc<Algebra>, vs: impl Iterator<Item = usize>) -> Vec<Rep> {
    vs.map(|v| Rep::simple(alg, v).expect("valid vertex")).collect()
}

fn projectives(alg: &Arc<Algebra>, vs: impl Iterator<Item = usize>) -> Vec<Rep> {
    vs.map(|v| Rep::projective(alg, v).expect("valid vertex")).collect()
}

fn injectives(alg: &Arc<Algebra>, vs: impl Iterator<Item = usize>) -> Vec<Rep> {
    vs.map(|v| Rep::injective(alg, v).expect("valid vertex")).collect()
}

/// A pre-radical together with its torsion class `{alpha(M) = M}` and
/// torsion-free class `{alpha(M) = 0}`.
#[derive(Clone, Debug)]
pub struct TorsionData {
    pub functor: FunctorExpr,
    pub torsion: ClassDesc,
    pub free: ClassDesc,
}

impl TorsionData {
    /// Closed-form descriptions for the built-in pre-radicals.
    pub fn of(functor: &FunctorExpr) -> Option<TorsionData> {
        let (torsion, free) = match functor {
            FunctorExpr::Identity => (ClassDesc::All, ClassDesc::Zero),
            FunctorExpr::Rad => (ClassDesc::Zero, ClassDesc::Semisimple),
            FunctorExpr::Soc => (ClassDesc::Semisimple, ClassDesc::Zero),
            FunctorExpr::TorsT(s) => (ClassDesc::TopAvoids(s.clone()), ClassDesc::Supported(s.clone())),
            FunctorExpr::TorsX(s) => (ClassDesc::Supported(s.clone()), ClassDesc::SocleAvoids(s.clone())),
            FunctorExpr::TorsGen(g) => (ClassDesc::Torsion(g.clone()), ClassDesc::TorsionFree(g.clone())),
            _ => return None,
        };
        Some(TorsionData { functor: functor.clone(), torsion, free })
    }

    pub fn in_torsion(&self, m: &Rep) -> bool {
        self.torsion.contains(m)
    }

    pub fn in_free(&self, m: &Rep) -> bool {
        self.free.contains(m)
    }
}
