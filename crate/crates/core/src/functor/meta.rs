use serde::Serialize;

use super::FunctorExpr;
use crate::rep::{random_submodule, Rep};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Yes, Verdict::Yes) => Verdict::Yes,
            (Verdict::No, _) | (_, Verdict::No) => Verdict::No,
            _ => Verdict::Unknown,
        }
    }

    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Static,
    Empirical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Judgement {
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl Judgement {
    fn stat(verdict: Verdict) -> Judgement {
        Judgement { verdict, provenance: Provenance::Static }
    }

    pub fn is_yes(self) -> bool {
        self.verdict.is_yes()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorMeta {
    pub is_preradical: Judgement,
    pub is_radical: Judgement,
    pub is_idempotent: Judgement,
    pub preserves_epis: Judgement,
    pub preserves_monos: Judgement,
}

impl FunctorMeta {
    fn from_verdicts(pre: Verdict, radical: Verdict, idem: Verdict, epis: Verdict, monos: Verdict) -> Self {
        FunctorMeta {
            is_preradical: Judgement::stat(pre),
            is_radical: Judgement::stat(radical),
            is_idempotent: Judgement::stat(idem),
            preserves_epis: Judgement::stat(epis),
            preserves_monos: Judgement::stat(monos),
        }
    }

    /// Verdicts that follow from the shape of the expression alone.
    pub fn of(expr: &FunctorExpr) -> FunctorMeta {
        use Verdict::{No, Unknown, Yes};
        match expr {
            FunctorExpr::Identity | FunctorExpr::TorsT(_) => Self::from_verdicts(Yes, Yes, Yes, Yes, Yes),
            FunctorExpr::Rad => Self::from_verdicts(Yes, Yes, Unknown, Yes, Yes),
            FunctorExpr::Soc => Self::from_verdicts(Yes, Unknown, Yes, Unknown, Yes),
            FunctorExpr::TorsX(_) | FunctorExpr::TorsGen(_) => Self::from_verdicts(Yes, Yes, Yes, Unknown, Yes),
            FunctorExpr::QuotOf(inner) => {
                let monos = match **inner {
                    FunctorExpr::TorsX(_) | FunctorExpr::Soc | FunctorExpr::Identity => Yes,
                    _ => Unknown,
                };
                Self::from_verdicts(No, No, Unknown, Yes, monos)
            }
            FunctorExpr::Compose(outer, inner) => Self::compose(&Self::of(outer), &Self::of(inner)),
            FunctorExpr::AlphaRad(inner) => Self::compose(&Self::of(&FunctorExpr::Rad), &Self::of(inner)),
            FunctorExpr::AlphaSocQuot(_) => Self::from_verdicts(No, Unknown, Unknown, Unknown, Unknown),
        }
    }

    fn compose(outer: &FunctorMeta, inner: &FunctorMeta) -> FunctorMeta {
        let pre = outer.is_preradical.verdict.and(inner.is_preradical.verdict);
        let epis = outer.preserves_epis.verdict.and(inner.preserves_epis.verdict);
        let monos = outer.preserves_monos.verdict.and(inner.preserves_monos.verdict);
        // A pre-radical that preserves epis is a radical.
        let radical = if pre.is_yes() && epis.is_yes() { Verdict::Yes } else { Verdict::Unknown };
        let pre = if pre == Verdict::No { Verdict::Unknown } else { pre };
        Self::from_verdicts(pre, radical, Verdict::Unknown, epis, monos)
    }

    /// Looks for counterexamples to the `Unknown` verdicts on the given
    /// modules; a found one turns the verdict into an empirical `No`.
    pub fn refine<R: rand::Rng + ?Sized>(mut self, expr: &FunctorExpr, samples: &[Rep], rng: &mut R) -> FunctorMeta {
        let sub = expr.is_subfunctor();
        for m in samples {
            if self.is_idempotent.verdict == Verdict::Unknown {
                let once = expr.eval_unchecked(m);
                let twice = expr.eval_unchecked(&once);
                if !twice.is_isomorphic(&once) {
                    self.is_idempotent = empirical_no();
                }
            }
            if !sub {
                continue;
            }
            let value = expr.sub_unchecked(m);
            if self.is_radical.verdict == Verdict::Unknown {
                let q = m.quotient_rep(&value);
                if !expr.sub_unchecked(&q).is_zero() {
                    self.is_radical = empirical_no();
                }
            }
            if self.preserves_epis.verdict == Verdict::Unknown {
                let n = random_submodule(m, rng);
                let (q, proj) = m.quotient(&n).expect("random submodule");
                if value.image_under(&proj).total_dim() != expr.sub_unchecked(&q).total_dim() {
                    self.preserves_epis = empirical_no();
                }
            }
        }
        if let FunctorExpr::QuotOf(inner) = expr {
            if self.preserves_monos.verdict == Verdict::Unknown && !preserves_sub_intersections(inner, samples, rng) {
                self.preserves_monos = empirical_no();
            }
        }
        self
    }
}

fn empirical_no() -> Judgement {
    Judgement { verdict: Verdict::No, provenance: Provenance::Empirical }
}

/// `q_alpha` preserves the mono `N -> M` iff `alpha(N) = N ∩ alpha(M)`.
pub(crate) fn quotient_preserves_mono(alpha: &FunctorExpr, m: &Rep, n: &crate::rep::SubRep) -> bool {
    let inc = m.inclusion(n);
    let inside = alpha.sub_unchecked(&m.sub_rep(n)).image_under(&inc);
    inside.total_dim() == n.intersect(&alpha.sub_unchecked(m)).total_dim()
}

fn preserves_sub_intersections<R: rand::Rng + ?Sized>(alpha: &FunctorExpr, samples: &[Rep], rng: &mut R) -> bool {
    if !alpha.is_subfunctor() {
        return true;
    }
    samples.iter().all(|m| quotient_preserves_mono(alpha, m, &random_submodule(m, rng)))
}
