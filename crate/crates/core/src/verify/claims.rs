use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::Catalogue;
use crate::algebra::Algebra;
use crate::decompose::stably_isomorphic;
use crate::error::{Error, Result};
use crate::format::print_module;
use crate::functor::{
    layer_length, parse_functor, parse_vertex_set, quotient_preserves_mono, radical_layer_length, socle_layer_length,
    FunctorExpr, FunctorMeta, LayerLength, Verdict, VertexSet,
};
use crate::psi::Atlas;
use crate::rep::{Rep, SubRep};

/// A single checkable statement: a tag plus `key=value` arguments, written
/// `tag key=value ...`. Functor arguments are catalogue names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub tag: String,
    pub args: Vec<(String, String)>,
}

impl Claim {
    pub fn new(tag: &str, args: &[(&str, &str)]) -> Claim {
        Claim { tag: tag.to_string(), args: args.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect() }
    }

    pub fn arg(&self, key: &str) -> Result<&str> {
        self.args
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::MalformedClaim(format!("`{self}` has no `{key}` argument")))
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag)?;
        for (k, v) in &self.args {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Claim> {
        let mut parts = s.split_whitespace();
        let tag = parts.next().ok_or_else(|| Error::MalformedClaim("empty claim".into()))?;
        let args = parts
            .map(|p| {
                p.split_once('=')
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .ok_or_else(|| Error::MalformedClaim(format!("expected `key=value`, got `{p}`")))
            })
            .collect::<Result<_>>()?;
        Ok(Claim { tag: tag.to_string(), args })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails(String),
    /// The instance does not meet the statement's premise.
    Skipped(String),
}

fn holds_if(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Fails(detail())
    }
}

/// Everything a claim needs besides its modules. Layer lengths are memoized
/// by functor and module text.
pub struct Context {
    alg: Arc<Algebra>,
    catalogue: Catalogue,
    pd_cap: usize,
    exprs: RefCell<HashMap<String, FunctorExpr>>,
    lengths: RefCell<HashMap<(String, String), LayerLength>>,
    test1_bounds: RefCell<HashMap<VertexSet, usize>>,
    atlas: RefCell<Atlas>,
    regular: Rep,
}

impl Context {
    pub fn new(alg: &Arc<Algebra>, pd_cap: usize) -> Context {
        Context {
            alg: alg.clone(),
            catalogue: Catalogue::new(alg),
            pd_cap,
            exprs: RefCell::new(HashMap::new()),
            lengths: RefCell::new(HashMap::new()),
            test1_bounds: RefCell::new(HashMap::new()),
            atlas: RefCell::new(Atlas::new(alg, pd_cap)),
            regular: Rep::regular(alg),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn catalogue(&self) -> &Catalogue {
        &self.catalogue
    }

    pub(crate) fn catalogue_mut(&mut self) -> &mut Catalogue {
        &mut self.catalogue
    }

    pub fn pd_cap(&self) -> usize {
        self.pd_cap
    }

    /// Catalogue names, optionally wrapped in `q(..)`, `F(..)`, `G(..)`;
    /// anything else goes through the expression parser.
    pub fn resolve(&self, name: &str) -> Result<FunctorExpr> {
        if let Some(e) = self.exprs.borrow().get(name) {
            return Ok(e.clone());
        }
        let expr = self.resolve_uncached(name)?;
        self.exprs.borrow_mut().insert(name.to_string(), expr.clone());
        Ok(expr)
    }

    fn resolve_uncached(&self, name: &str) -> Result<FunctorExpr> {
        if let Some(e) = self.catalogue.get(name) {
            return Ok(e.expr.clone());
        }
        for (prefix, wrap) in [
            ("q(", FunctorExpr::quot as fn(FunctorExpr) -> FunctorExpr),
            ("F(", FunctorExpr::radical_step),
            ("G(", FunctorExpr::socle_step),
        ] {
            if let Some(inner) = name.strip_prefix(prefix).and_then(|r| r.strip_suffix(')')) {
                if self.catalogue.get(inner).is_some() || inner.starts_with(['q', 'F', 'G']) {
                    let e = wrap(self.resolve(inner)?);
                    e.validate(&self.alg)?;
                    return Ok(e);
                }
            }
        }
        parse_functor(name, &self.alg)
    }

    fn subfunctor(&self, name: &str) -> Result<FunctorExpr> {
        let e = self.resolve(name)?;
        if e.is_subfunctor() {
            Ok(e)
        } else {
            Err(Error::MalformedClaim(format!("`{name}` is not a subfunctor of Id")))
        }
    }

    fn memo(&self, key: String, m: &Rep, f: impl FnOnce() -> Result<LayerLength>) -> Result<LayerLength> {
        let key = (key, print_module(m));
        if let Some(&l) = self.lengths.borrow().get(&key) {
            return Ok(l);
        }
        let l = f()?;
        self.lengths.borrow_mut().insert(key, l);
        Ok(l)
    }

    /// `dl^alpha(M)`.
    pub fn dl_rad(&self, alpha: &str, m: &Rep) -> Result<usize> {
        let e = self.resolve(alpha)?;
        let l = self.memo(format!("rad|{alpha}"), m, || Ok(LayerLength::Finite(radical_layer_length(&e, m)?)))?;
        Ok(l.finite().expect("radical layer lengths are finite"))
    }

    /// `dl_alpha(M)`.
    pub fn dl_soc(&self, alpha: &str, m: &Rep) -> Result<usize> {
        let e = self.resolve(alpha)?;
        let l = self.memo(format!("soc|{alpha}"), m, || Ok(LayerLength::Finite(socle_layer_length(&e, m)?)))?;
        Ok(l.finite().expect("socle layer lengths are finite"))
    }

    /// `dl_alpha^beta(M)`.
    pub fn dl(&self, alpha: &str, beta: &str, m: &Rep) -> Result<LayerLength> {
        let (a, b) = (self.resolve(alpha)?, self.resolve(beta)?);
        self.memo(format!("gen|{alpha}|{beta}"), m, || layer_length(&a, &b, m))
    }

    fn value(&self, name: &str, m: &Rep) -> Result<Rep> {
        Ok(self.resolve(name)?.eval_unchecked(m))
    }

    /// `alpha(M) = M`.
    fn in_torsion(&self, name: &str, m: &Rep) -> Result<bool> {
        Ok(self.value(name, m)?.total_dim() == m.total_dim())
    }

    /// `alpha(M) = 0`.
    fn in_free(&self, name: &str, m: &Rep) -> Result<bool> {
        Ok(self.value(name, m)?.is_zero())
    }

    /// `pd` of the set of simples, 0 for the empty set; `None` if some
    /// member has infinite projective dimension within the cap.
    pub fn set_pd(&self, s: &VertexSet) -> Option<usize> {
        s.iter().try_fold(0, |acc, &v| {
            let pd = Rep::simple(&self.alg, v).expect("valid vertex").proj_dim(self.pd_cap).finite()?;
            Some(acc.max(pd))
        })
    }

    /// `1 + beta + Psi(Omega^{beta+1}(Sigma') + Omega^{beta+2}(Sigma'))` for
    /// `Sigma'` the sum of the simples outside `s`.
    pub fn test1_bound(&self, s: &VertexSet, beta: usize) -> usize {
        if let Some(&b) = self.test1_bounds.borrow().get(s) {
            return b;
        }
        let rest: Vec<Rep> = (0..self.alg.num_vertices())
            .filter(|v| !s.contains(v))
            .map(|v| Rep::simple(&self.alg, v).expect("valid vertex"))
            .collect();
        let sigma = Rep::direct_sum_all(&self.alg, &rest);
        let first = sigma.syzygy_power(beta + 1);
        let arg = first.direct_sum(&first.syzygy());
        let bound = 1 + beta + self.psi(&arg);
        self.test1_bounds.borrow_mut().insert(s.clone(), bound);
        bound
    }

    pub fn psi(&self, m: &Rep) -> usize {
        self.atlas.borrow_mut().psi(m).psi
    }

    pub fn set_label(&self, s: &VertexSet) -> String {
        s.iter().map(|&v| self.alg.vertex_label(v).to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn parse_set(&self, text: &str) -> Result<VertexSet> {
        parse_vertex_set(text, &self.alg)
    }

    fn set_arg(&self, claim: &Claim, key: &str) -> Result<VertexSet> {
        self.parse_set(claim.arg(key)?)
    }

    fn t_name(&self, s: &VertexSet) -> String {
        FunctorExpr::TorsT(s.clone()).display(&self.alg)
    }

    fn x_name(&self, s: &VertexSet) -> String {
        FunctorExpr::TorsX(s.clone()).display(&self.alg)
    }
}

fn module<'a>(claim: &Claim, modules: &[&'a Rep], i: usize) -> Result<&'a Rep> {
    modules.get(i).copied().ok_or_else(|| Error::MalformedClaim(format!("`{claim}` needs {} module(s)", i + 1)))
}

fn submodule<'a>(claim: &Claim, sub: Option<&'a SubRep>) -> Result<&'a SubRep> {
    sub.ok_or_else(|| Error::MalformedClaim(format!("`{claim}` needs a submodule")))
}

/// Evaluates one claim on concrete modules. Both the checkers and counterexample
/// replay go through here.
pub fn eval_claim(ctx: &Context, claim: &Claim, modules: &[&Rep], sub: Option<&SubRep>) -> Result<Outcome> {
    for m in modules {
        if !Arc::ptr_eq(m.algebra(), &ctx.alg) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let m = || module(claim, modules, 0);
    let alpha = || claim.arg("alpha");
    let beta = || claim.arg("beta");
    Ok(match claim.tag.as_str() {
        "laseis" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let lhs = ctx.dl_soc(&format!("q({b})"), m)?;
            let rhs = ctx.dl_rad(a, m)?;
            holds_if(lhs <= rhs, || format!("dl_q(M) = {lhs} > dl^alpha(M) = {rhs}"))
        }
        "ladiez" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let lhs = ctx.dl_rad(a, m)?;
            let rhs = ctx.dl_soc(&format!("q({b})"), m)?;
            holds_if(lhs <= rhs, || format!("dl^alpha(M) = {lhs} > dl_q(M) = {rhs}"))
        }
        "elunico" => {
            let (t, tp, m) = (claim.arg("t")?, claim.arg("tp")?, m()?);
            let lhs = ctx.dl_rad(t, m)?;
            let rhs = ctx.dl_soc(&format!("q({tp})"), m)?;
            holds_if(lhs == rhs, || format!("dl^t(M) = {lhs} != dl_q(M) = {rhs}"))
        }
        "elcoro" => {
            let s = ctx.set_arg(claim, "s")?;
            let m = m()?;
            let lhs = ctx.dl_rad(&ctx.t_name(&s), m)?;
            let rhs = ctx.dl_soc(&format!("q({})", ctx.x_name(&s)), m)?;
            holds_if(lhs == rhs, || format!("dl^t(M) = {lhs} != dl_qx(M) = {rhs}"))
        }
        "prop2" => {
            let (s1, s2) = (ctx.set_arg(claim, "s1")?, ctx.set_arg(claim, "s2")?);
            let m = m()?;
            let lhs = ctx.dl_rad(&ctx.t_name(&s2), m)?;
            let rhs = ctx.dl_rad(&ctx.t_name(&s1), m)?;
            holds_if(lhs <= rhs, || format!("dl^t2(M) = {lhs} > dl^t1(M) = {rhs}"))
        }
        "primero.a" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let l = ctx.dl(a, b, m)?;
            let zero = ctx.in_free(a, m)?;
            holds_if((l == LayerLength::Finite(0)) == zero, || format!("dl(M) = {l} but alpha(M) = 0 is {zero}"))
        }
        "primero.b" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            if ctx.in_free(a, m)? {
                return Ok(Outcome::Skipped("alpha(M) = 0".into()));
            }
            let l = ctx.dl(a, b, m)?;
            let next = ctx.dl(a, b, &ctx.value(b, m)?)?;
            holds_if(l == next.succ(), || format!("dl(M) = {l}, dl(beta(M)) = {next}"))
        }
        "primero.c" => {
            let (a, m) = (alpha()?, m()?);
            if m.is_zero() || !ctx.in_torsion(a, m)? {
                return Ok(Outcome::Skipped("M is zero or not in T_alpha".into()));
            }
            let rad = m.sub_rep(&m.radical());
            let cosoc = m.quotient_rep(&m.socle());
            let (up, up_rad) = (ctx.dl_rad(a, m)?, ctx.dl_rad(a, &rad)?);
            let (down, down_soc) = (ctx.dl_soc(a, m)?, ctx.dl_soc(a, &cosoc)?);
            holds_if(up == up_rad + 1 && down == down_soc + 1, || {
                format!("dl^a: {up} vs {up_rad}+1, dl_a: {down} vs {down_soc}+1")
            })
        }
        "segundo.a" => {
            let (a, b) = (alpha()?, beta()?);
            let (x, y) = (module(claim, modules, 0)?, module(claim, modules, 1)?);
            let sum = ctx.dl(a, b, &x.direct_sum(y))?;
            let (lx, ly) = (ctx.dl(a, b, x)?, ctx.dl(a, b, y)?);
            holds_if(sum == lx.max(ly), || format!("dl(M+N) = {sum}, dl(M) = {lx}, dl(N) = {ly}"))
        }
        "segundo.b1" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let quot = m.quotient_rep(submodule(claim, sub)?);
            let (lq, lm) = (ctx.dl(a, b, &quot)?, ctx.dl(a, b, m)?);
            holds_if(lq <= lm, || format!("dl(quotient) = {lq} > dl(M) = {lm}"))
        }
        "segundo.b2" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let (lm, lr) = (ctx.dl(a, b, m)?, ctx.dl(a, b, &ctx.regular)?);
            holds_if(lm <= lr, || format!("dl(M) = {lm} > dl(regular) = {lr}"))
        }
        "segundo.c" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let inner = m.sub_rep(submodule(claim, sub)?);
            let (ls, lm) = (ctx.dl(a, b, &inner)?, ctx.dl(a, b, m)?);
            holds_if(ls <= lm, || format!("dl(submodule) = {ls} > dl(M) = {lm}"))
        }
        "quotient" => {
            let (a, m) = (alpha()?, m()?);
            let soc = m.sub_rep(&m.socle());
            if m.is_zero() || !ctx.in_torsion(a, &soc)? {
                return Ok(Outcome::Skipped("M is zero or soc(M) is not in T_alpha".into()));
            }
            let whole = ctx.dl_rad(a, m)?;
            let cut = ctx.dl_rad(a, &m.quotient_rep(&m.socle()))?;
            let nonzero = !ctx.in_free(a, m)?;
            holds_if(nonzero && cut + 1 == whole, || {
                format!("alpha(M) != 0 is {nonzero}; dl(M/soc M) = {cut}, dl(M) = {whole}")
            })
        }
        "soc" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let q = ctx.value(&format!("q({b})"), m)?;
            let soc = q.sub_rep(&q.socle());
            let (t, f) = (ctx.in_torsion(a, &soc)?, ctx.in_free(b, &soc)?);
            holds_if(t && f, || format!("soc(q_beta M): in T_alpha {t}, in F_beta {f}"))
        }
        "top" => {
            let (a, b, m) = (alpha()?, beta()?, m()?);
            let top = ctx.value(a, m)?.top();
            let (f, t) = (ctx.in_free(b, &top)?, ctx.in_torsion(a, &top)?);
            holds_if(f && t, || format!("top(alpha M): in F_beta {f}, in T_alpha {t}"))
        }
        "plusuno" => {
            let (a, m) = (alpha()?, m()?);
            if m.is_zero() || !ctx.in_free(a, &m.top())? {
                return Ok(Outcome::Skipped("M is zero or top(M) is not in F_alpha".into()));
            }
            let q = format!("q({a})");
            let whole = ctx.dl_soc(&q, m)?;
            let rad = ctx.dl_soc(&q, &m.sub_rep(&m.radical()))?;
            let outside = !ctx.in_torsion(a, m)?;
            holds_if(outside && whole == rad + 1, || {
                format!("M not in T_alpha is {outside}; dl_q(M) = {whole}, dl_q(rad M) = {rad}")
            })
        }
        "st.a" => {
            let (e, m) = (ctx.subfunctor(alpha()?)?, m()?);
            let n = submodule(claim, sub)?;
            let inside = e.sub_unchecked(&m.sub_rep(n)).image_under(&m.inclusion(n));
            let ok = inside.is_contained_in(&e.sub_unchecked(m).intersect(n));
            holds_if(ok, || "alpha(N) is not inside alpha(M)".into())
        }
        "st.b.sub" => {
            let (a, m) = (alpha()?, m()?);
            if !ctx.in_free(a, m)? {
                return Ok(Outcome::Skipped("M is not in F_alpha".into()));
            }
            let ok = ctx.in_free(a, &m.sub_rep(submodule(claim, sub)?))?;
            holds_if(ok, || "a submodule leaves F_alpha".into())
        }
        "st.b.sum" | "st.c.sum" => {
            let a = alpha()?;
            let (x, y) = (module(claim, modules, 0)?, module(claim, modules, 1)?);
            let torsion = claim.tag == "st.c.sum";
            let member = |r: &Rep| if torsion { ctx.in_torsion(a, r) } else { ctx.in_free(a, r) };
            if !member(x)? || !member(y)? {
                return Ok(Outcome::Skipped("summands are not in the class".into()));
            }
            holds_if(member(&x.direct_sum(y))?, || "the direct sum leaves the class".into())
        }
        "st.c.quot" => {
            let (a, m) = (alpha()?, m()?);
            if !ctx.in_torsion(a, m)? {
                return Ok(Outcome::Skipped("M is not in T_alpha".into()));
            }
            let ok = ctx.in_torsion(a, &m.quotient_rep(submodule(claim, sub)?))?;
            holds_if(ok, || "a quotient leaves T_alpha".into())
        }
        "st.d" => {
            let (e, m) = (ctx.subfunctor(alpha()?)?, m()?);
            let rest = m.quotient_rep(&e.sub_unchecked(m));
            holds_if(e.sub_unchecked(&rest).is_zero(), || "alpha(M / alpha(M)) != 0".into())
        }
        "st.meta" => {
            let meta = FunctorMeta::of(&ctx.resolve(alpha()?)?);
            let epi_ok = !meta.preserves_epis.is_yes() || meta.is_radical.is_yes();
            let mono_ok = !meta.is_preradical.is_yes() || meta.preserves_monos.verdict != Verdict::No;
            holds_if(epi_ok && mono_ok, || format!("inconsistent metadata {meta:?}"))
        }
        "elocho.bc" => {
            let (e, m) = (ctx.subfunctor(alpha()?)?, m()?);
            let n = submodule(claim, sub)?;
            let am = e.sub_unchecked(m);
            let idem_fails = !e.sub_unchecked(&m.sub_rep(&am)).is_full();
            let c_holds = quotient_preserves_mono(&e, m, n);
            if !c_holds {
                // N ∩ alpha(M) sits inside alpha(M) but is not torsion.
                let meet = m.sub_rep(&n.intersect(&am));
                if !idem_fails && e.sub_unchecked(&meet).is_full() {
                    return Ok(Outcome::Fails("q_alpha breaks the mono but (b) has no witness".into()));
                }
            }
            if idem_fails && quotient_preserves_mono(&e, m, &am) {
                return Ok(Outcome::Fails("alpha is not idempotent at M but q_alpha keeps alpha(M) -> M mono".into()));
            }
            let sub_outside = am.is_full() && !e.sub_unchecked(&m.sub_rep(n)).is_full();
            holds_if(!(sub_outside && c_holds), || {
                "T_alpha is not closed under this submodule but q_alpha keeps it mono".into()
            })
        }
        "elocho.qx" => {
            let s = ctx.set_arg(claim, "s")?;
            let (e, m) = (FunctorExpr::TorsX(s), m()?);
            holds_if(quotient_preserves_mono(&e, m, submodule(claim, sub)?), || "q_x is not mono here".into())
        }
        "cuatrop" => {
            let s = ctx.set_arg(claim, "s")?;
            let (t, m) = (ctx.t_name(&s), m()?);
            let tm = ctx.value(&t, m)?;
            if tm.is_zero() {
                return Ok(Outcome::Skipped("t_S(M) = 0".into()));
            }
            let lhs = ctx.dl_rad(&t, &tm.syzygy())?;
            let reg = ctx.dl_rad(&t, &ctx.regular)?;
            holds_if(lhs < reg, || format!("dl(Omega t_S M) = {lhs}, dl(regular) = {reg}"))
        }
        "test1.a" | "test1.b" => {
            let s = ctx.set_arg(claim, "s")?;
            let Some(beta) = ctx.set_pd(&s) else {
                return Ok(Outcome::Skipped("S has a simple of infinite projective dimension".into()));
            };
            let t = ctx.t_name(&s);
            if claim.tag == "test1.a" {
                let m = m()?;
                if ctx.dl_rad(&t, m)? > 1 {
                    return Ok(Outcome::Skipped("M is not in C^S_1".into()));
                }
                let top = ctx.value(&t, m)?.top();
                let ok = stably_isomorphic(&m.syzygy_power(beta + 1), &top.syzygy_power(beta + 1));
                holds_if(ok, || format!("Omega^{} of M and of top(t_S M) differ stably", beta + 1))
            } else {
                let (x, y) = (module(claim, modules, 0)?, module(claim, modules, 1)?);
                if ctx.dl_rad(&t, x)? > 1 || ctx.dl_rad(&t, y)? > 1 {
                    return Ok(Outcome::Skipped("not both in C^S_1".into()));
                }
                let bound = ctx.test1_bound(&s, beta);
                let value = ctx.psi(&x.direct_sum(&y.syzygy()));
                holds_if(value <= bound, || format!("Psi(X + Omega Y) = {value} > {bound}"))
            }
        }
        other => return Err(Error::MalformedClaim(format!("unknown claim tag `{other}`"))),
    })
}
