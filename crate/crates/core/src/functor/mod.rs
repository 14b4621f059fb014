//! Subfunctors of the identity and their subquotient relatives, evaluated on
//! objects.
//!
//! Every expression is subquotient-valued: its value on `M` is a subquotient
//! of `M`. Layer-length iterations therefore either shrink in dimension or
//! stabilize, which is how termination is detected.

mod classes;
mod meta;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Ideal};
use crate::error::{Error, Result};
use crate::rep::{regular_subrep_span, Rep, SubRep};

pub use classes::{ClassDesc, TorsionData};
pub(crate) use meta::quotient_preserves_mono;
pub use meta::{FunctorMeta, Judgement, Provenance, Verdict};
pub use parse::{parse_functor, parse_vertex_set};

/// A set of vertices, standing for the corresponding simple modules.
pub type VertexSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorExpr {
    Identity,
    Rad,
    Soc,
    /// The torsion radical whose torsion-free class is the modules supported on the set.
    TorsT(VertexSet),
    /// The largest submodule supported on the set.
    TorsX(VertexSet),
    /// The torsion radical of the torsion class generated by the modules.
    TorsGen(Vec<Rep>),
    /// `M / alpha(M)`.
    QuotOf(Box<FunctorExpr>),
    /// `outer(inner(M))`.
    Compose(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `rad(alpha(M))`.
    AlphaRad(Box<FunctorExpr>),
    /// `alpha(M) / soc(alpha(M))`.
    AlphaSocQuot(Box<FunctorExpr>),
}

/// A layer length: a count or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LayerLength {
    Finite(usize),
    Infinite,
}

impl LayerLength {
    pub fn finite(self) -> Option<usize> {
        match self {
            LayerLength::Finite(n) => Some(n),
            LayerLength::Infinite => None,
        }
    }

    pub fn succ(self) -> LayerLength {
        match self {
            LayerLength::Finite(n) => LayerLength::Finite(n + 1),
            LayerLength::Infinite => LayerLength::Infinite,
        }
    }
}

impl fmt::Display for LayerLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayerLength::Finite(n) => write!(f, "{n}"),
            LayerLength::Infinite => write!(f, "inf"),
        }
    }
}

impl FunctorExpr {
    pub fn t(set: impl IntoIterator<Item = usize>) -> FunctorExpr {
        FunctorExpr::TorsT(set.into_iter().collect())
    }

    pub fn x(set: impl IntoIterator<Item = usize>) -> FunctorExpr {
        FunctorExpr::TorsX(set.into_iter().collect())
    }

    pub fn quot(self) -> FunctorExpr {
        FunctorExpr::QuotOf(Box::new(self))
    }

    pub fn after(self, inner: FunctorExpr) -> FunctorExpr {
        FunctorExpr::Compose(Box::new(self), Box::new(inner))
    }

    /// `F_alpha = rad . alpha`.
    pub fn radical_step(self) -> FunctorExpr {
        FunctorExpr::AlphaRad(Box::new(self))
    }

    /// `G_alpha = alpha / soc . alpha`.
    pub fn socle_step(self) -> FunctorExpr {
        FunctorExpr::AlphaSocQuot(Box::new(self))
    }

    /// Whether the expression is syntactically a subfunctor of the identity.
    pub fn is_subfunctor(&self) -> bool {
        match self {
            FunctorExpr::Identity
            | FunctorExpr::Rad
            | FunctorExpr::Soc
            | FunctorExpr::TorsT(_)
            | FunctorExpr::TorsX(_)
            | FunctorExpr::TorsGen(_) => true,
            FunctorExpr::Compose(o, i) => o.is_subfunctor() && i.is_subfunctor(),
            FunctorExpr::AlphaRad(a) => a.is_subfunctor(),
            FunctorExpr::QuotOf(_) | FunctorExpr::AlphaSocQuot(_) => false,
        }
    }

    /// Checks vertex references, generator algebras, and that quotients are
    /// taken by subfunctors.
    pub fn validate(&self, alg: &Arc<Algebra>) -> Result<()> {
        match self {
            FunctorExpr::Identity | FunctorExpr::Rad | FunctorExpr::Soc => Ok(()),
            FunctorExpr::TorsT(s) | FunctorExpr::TorsX(s) => match s.iter().find(|&&v| v >= alg.num_vertices()) {
                Some(v) => Err(Error::IllFormedExpr(format!("vertex index {v} out of range"))),
                None => Ok(()),
            },
            FunctorExpr::TorsGen(mods) => {
                if mods.iter().all(|m| Arc::ptr_eq(m.algebra(), alg)) {
                    Ok(())
                } else {
                    Err(Error::AlgebraMismatch)
                }
            }
            FunctorExpr::QuotOf(a) => {
                if !a.is_subfunctor() {
                    return Err(Error::IllFormedExpr("quotient by a functor that is not a subfunctor of Id".into()));
                }
                a.validate(alg)
            }
            FunctorExpr::Compose(o, i) => {
                o.validate(alg)?;
                i.validate(alg)
            }
            FunctorExpr::AlphaRad(a) | FunctorExpr::AlphaSocQuot(a) => a.validate(alg),
        }
    }

    /// The value on `m`, as a module.
    pub fn evaluate(&self, m: &Rep) -> Result<Rep> {
        self.validate(m.algebra())?;
        Ok(self.eval_unchecked(m))
    }

    pub(crate) fn eval_unchecked(&self, m: &Rep) -> Rep {
        match self {
            FunctorExpr::Identity => m.clone(),
            FunctorExpr::QuotOf(a) => m.quotient_rep(&a.sub_unchecked(m)),
            FunctorExpr::Compose(o, i) => o.eval_unchecked(&i.eval_unchecked(m)),
            FunctorExpr::AlphaRad(a) => {
                let x = a.eval_unchecked(m);
                x.sub_rep(&x.radical())
            }
            FunctorExpr::AlphaSocQuot(a) => {
                let x = a.eval_unchecked(m);
                x.quotient_rep(&x.socle())
            }
            _ => m.sub_rep(&self.sub_unchecked(m)),
        }
    }

    /// The value on `m` as a submodule of `m`; only for subfunctors of Id.
    pub fn evaluate_sub(&self, m: &Rep) -> Result<SubRep> {
        self.validate(m.algebra())?;
        if !self.is_subfunctor() {
            return Err(Error::IllFormedExpr("expression is not a subfunctor of Id".into()));
        }
        Ok(self.sub_unchecked(m))
    }

    pub(crate) fn sub_unchecked(&self, m: &Rep) -> SubRep {
        match self {
            FunctorExpr::Identity => SubRep::full(m),
            FunctorExpr::Rad => m.radical(),
            FunctorExpr::Soc => m.socle(),
            FunctorExpr::TorsT(s) => torsion_t(m, s),
            FunctorExpr::TorsX(s) => torsion_x(m, s),
            FunctorExpr::TorsGen(gens) => torsion_generated(gens, m),
            FunctorExpr::Compose(o, i) => {
                let inner = i.sub_unchecked(m);
                let x = m.sub_rep(&inner);
                o.sub_unchecked(&x).image_under(&m.inclusion(&inner))
            }
            FunctorExpr::AlphaRad(a) => FunctorExpr::Rad.after((**a).clone()).sub_unchecked(m),
            FunctorExpr::QuotOf(_) | FunctorExpr::AlphaSocQuot(_) => {
                unreachable!("checked by is_subfunctor")
            }
        }
    }

    pub fn display(&self, alg: &Algebra) -> String {
        let set = |s: &VertexSet| s.iter().map(|&v| alg.vertex_label(v).to_string()).collect::<Vec<_>>().join(",");
        match self {
            FunctorExpr::Identity => "id".into(),
            FunctorExpr::Rad => "rad".into(),
            FunctorExpr::Soc => "soc".into(),
            FunctorExpr::TorsT(s) => format!("t{{{}}}", set(s)),
            FunctorExpr::TorsX(s) => format!("x{{{}}}", set(s)),
            FunctorExpr::TorsGen(mods) => {
                let dims: Vec<String> =
                    mods.iter().map(|m| m.dims().iter().map(usize::to_string).collect::<Vec<_>>().join("")).collect();
                format!("gen[{}]", dims.join(";"))
            }
            FunctorExpr::QuotOf(a) => format!("q({})", a.display(alg)),
            FunctorExpr::Compose(o, i) => format!("{}.{}", o.display(alg), i.display(alg)),
            FunctorExpr::AlphaRad(a) => format!("F({})", a.display(alg)),
            FunctorExpr::AlphaSocQuot(a) => format!("G({})", a.display(alg)),
        }
    }
}

/// Subspaces that are everything at the given vertices and zero elsewhere.
fn vertex_block(m: &Rep, keep: impl Fn(usize) -> bool) -> SubRep {
    use crate::linalg::Subspace;
    SubRep::new(
        m.dims()
            .iter()
            .enumerate()
            .map(|(v, &d)| if keep(v) { Subspace::full(m.field(), d) } else { Subspace::zero(m.field(), d) })
            .collect(),
    )
}

/// Smallest submodule whose quotient is supported on `s`: generated by
/// everything at the vertices outside `s`.
pub fn torsion_t(m: &Rep, s: &VertexSet) -> SubRep {
    m.close_under_arrows(vertex_block(m, |v| !s.contains(&v)))
}

/// Largest submodule supported on `s`.
pub fn torsion_x(m: &Rep, s: &VertexSet) -> SubRep {
    m.shrink_to_subrep(vertex_block(m, |v| s.contains(&v)))
}

/// Sum of the images of all homomorphisms from the given modules.
pub fn trace(gens: &[Rep], m: &Rep) -> SubRep {
    let mut acc = SubRep::zero(m);
    for g in gens {
        for h in g.hom_space(m).expect("same algebra") {
            acc = acc.sum(&h.image());
        }
    }
    acc
}

/// Torsion part for the torsion class generated by `gens`: the trace,
/// then the trace in the quotient pulled back, until nothing new appears.
pub fn torsion_generated(gens: &[Rep], m: &Rep) -> SubRep {
    let mut current = trace(gens, m);
    loop {
        let (q, proj) = m.quotient(&current).expect("trace is a submodule");
        let next = trace(gens, &q);
        if next.is_zero() {
            return current;
        }
        current = next.preimage_under(&proj);
    }
}

/// `min { i : alpha(beta^i(M)) = 0 }`, or infinity if the iteration stabilizes first.
pub fn layer_length(alpha: &FunctorExpr, beta: &FunctorExpr, m: &Rep) -> Result<LayerLength> {
    alpha.validate(m.algebra())?;
    beta.validate(m.algebra())?;
    Ok(layer_length_unchecked(alpha, beta, m))
}

fn layer_length_unchecked(alpha: &FunctorExpr, beta: &FunctorExpr, m: &Rep) -> LayerLength {
    let mut x = m.clone();
    for i in 0..=m.total_dim() + 1 {
        if alpha.eval_unchecked(&x).is_zero() {
            return LayerLength::Finite(i);
        }
        let y = beta.eval_unchecked(&x);
        // A subquotient of the same dimension is the module itself.
        if y.total_dim() == x.total_dim() {
            return LayerLength::Infinite;
        }
        x = y;
    }
    LayerLength::Infinite
}

fn finite_or_bug(l: LayerLength) -> usize {
    l.finite().expect("radical and socle layer lengths strictly decrease dimension")
}

/// `dl^alpha`: layer length along `F_alpha = rad . alpha`.
pub fn radical_layer_length(alpha: &FunctorExpr, m: &Rep) -> Result<usize> {
    alpha.validate(m.algebra())?;
    Ok(finite_or_bug(layer_length_unchecked(alpha, &alpha.clone().radical_step(), m)))
}

/// `dl_alpha`: layer length along `G_alpha = alpha / soc . alpha`.
pub fn socle_layer_length(alpha: &FunctorExpr, m: &Rep) -> Result<usize> {
    alpha.validate(m.algebra())?;
    Ok(finite_or_bug(layer_length_unchecked(alpha, &alpha.clone().socle_step(), m)))
}

/// Loewy length: number of nonzero layers of the radical series.
pub fn loewy_length(m: &Rep) -> usize {
    let mut x = m.clone();
    let mut n = 0;
    while !x.is_zero() {
        x = x.sub_rep(&x.radical());
        n += 1;
    }
    n
}

/// Membership flags for the ttf-triple generated by a set of simples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Membership {
    /// Top has no summand from the set.
    pub in_t: bool,
    /// Supported on the set.
    pub in_x: bool,
    /// Socle has no summand from the set.
    pub in_f: bool,
}

pub fn class_membership(s: &VertexSet, m: &Rep) -> Membership {
    let top = m.top();
    let soc = m.socle().dims();
    Membership {
        in_t: s.iter().all(|&v| top.dims()[v] == 0),
        in_x: (0..m.dims().len()).all(|v| s.contains(&v) || m.dims()[v] == 0),
        in_f: s.iter().all(|&v| soc[v] == 0),
    }
}

/// All subsets of the vertex set, in order of size then lexicographically.
pub fn all_vertex_sets(n: usize) -> Vec<VertexSet> {
    let mut sets: Vec<VertexSet> =
        (0u32..1 << n).map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect()).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets
}

#[cfg(test)]
mod tests;

/// `I_S = t_S(Lambda)`, a two-sided ideal with `t_S(M) = I_S M`.
pub fn torsion_ideal(alg: &Arc<Algebra>, s: &VertexSet) -> Ideal {
    let reg = Rep::regular(alg);
    let span = regular_subrep_span(alg, &torsion_t(&reg, s));
    Ideal::from_span(alg, span).expect("torsion part of the regular module is an ideal")
}

/// `J_l(S) = I_S (J I_S)^l`; its annihilator class is `{dl^{t_S} <= l}`.
pub fn layer_ideal(alg: &Arc<Algebra>, s: &VertexSet, ell: usize) -> Ideal {
    let i_s = torsion_ideal(alg, s);
    let step = Ideal::jacobson_radical(alg).product(&i_s).expect("same algebra");
    (0..ell).fold(i_s, |acc, _| acc.product(&step).expect("same algebra"))
}
