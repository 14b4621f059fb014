//! Sampled checks of the layer-length comparison results and the syzygy
//! lemmas, with replayable counterexamples.

mod claims;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use claims::{eval_claim, Claim, Context, Outcome};

use crate::algebra::Algebra;
use crate::enumerate::{enumerate_modules, DEFAULT_ENUM_BUDGET};
use crate::error::{Error, Result};
use crate::format::{parse_module, parse_subrep, print_module, print_subrep};
use crate::functor::{all_vertex_sets, ClassDesc, FunctorExpr, FunctorMeta, TorsionData, Verdict, VertexSet};
use crate::rep::{random_module, random_submodule, Rep, SubRep, DEFAULT_PD_CAP};

pub const DEFAULT_SEED: u64 = 0xA17;
const MAX_RECORDED: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Theorem {
    Laseis,
    Ladiez,
    Elunico,
    Elcoro,
    Prop2,
    Primero,
    Segundo,
    Quotient,
    Soc,
    Top,
    Plusuno,
    St,
    Elocho,
    Cuatrop,
    Test1,
}

impl Theorem {
    pub const ALL: [Theorem; 15] = [
        Theorem::Laseis,
        Theorem::Ladiez,
        Theorem::Elunico,
        Theorem::Elcoro,
        Theorem::Prop2,
        Theorem::Primero,
        Theorem::Segundo,
        Theorem::Quotient,
        Theorem::Soc,
        Theorem::Top,
        Theorem::Plusuno,
        Theorem::St,
        Theorem::Elocho,
        Theorem::Cuatrop,
        Theorem::Test1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Laseis => "laseis",
            Theorem::Ladiez => "ladiez",
            Theorem::Elunico => "elunico",
            Theorem::Elcoro => "elcoro",
            Theorem::Prop2 => "prop2",
            Theorem::Primero => "primero",
            Theorem::Segundo => "segundo",
            Theorem::Quotient => "quotient",
            Theorem::Soc => "soc",
            Theorem::Top => "top",
            Theorem::Plusuno => "plusuno",
            Theorem::St => "st",
            Theorem::Elocho => "elocho",
            Theorem::Cuatrop => "cuatrop",
            Theorem::Test1 => "test1",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Every module of total dimension up to this is enumerated.
    pub max_dim: usize,
    /// Number of random modules added on top of the enumeration.
    pub samples: usize,
    pub random_dim: usize,
    pub seed: u64,
    /// Restricts the statements about sets of simples to this one set.
    pub simples: Option<VertexSet>,
    pub pd_cap: usize,
    pub budget: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_dim: 3,
            samples: 50,
            random_dim: 6,
            seed: DEFAULT_SEED,
            simples: None,
            pd_cap: DEFAULT_PD_CAP,
            budget: DEFAULT_ENUM_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Samples {
    pub modules: Vec<Rep>,
    pub enumerated: usize,
    pub random: usize,
    pub probabilistic: bool,
}

/// All modules up to `max_dim`, then `samples` random ones from the seed.
pub fn sample_modules(alg: &Arc<Algebra>, cfg: &VerifyConfig) -> Result<Samples> {
    let en = enumerate_modules(alg, cfg.max_dim, cfg.budget)?;
    let enumerated = en.modules.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut modules = en.modules;
    modules.extend((0..cfg.samples).map(|_| random_module(alg, cfg.random_dim, &mut rng)));
    Ok(Samples { modules, enumerated, random: cfg.samples, probabilistic: en.probabilistic })
}

/// A named built-in functor with what is known about it.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub expr: FunctorExpr,
    pub data: Option<TorsionData>,
    pub meta: FunctorMeta,
    /// Metadata of `q(expr)`.
    pub quot_meta: FunctorMeta,
}

/// Identity, radical, socle, `t_S` and `x_S` for every set of simples, and
/// the torsion radicals generated by each simple and each indecomposable projective.
#[derive(Clone, Debug)]
pub struct Catalogue {
    pub entries: Vec<Entry>,
}

impl Catalogue {
    pub fn new(alg: &Arc<Algebra>) -> Catalogue {
        let mut exprs = vec![FunctorExpr::Identity, FunctorExpr::Rad, FunctorExpr::Soc];
        for s in all_vertex_sets(alg.num_vertices()) {
            exprs.push(FunctorExpr::TorsT(s.clone()));
            exprs.push(FunctorExpr::TorsX(s));
        }
        let mut named: Vec<(String, FunctorExpr)> = exprs.into_iter().map(|e| (e.display(alg), e)).collect();
        for v in 0..alg.num_vertices() {
            let label = alg.vertex_label(v);
            let simple = Rep::simple(alg, v).expect("valid vertex");
            let proj = Rep::projective(alg, v).expect("valid vertex");
            named.push((format!("gen(S{label})"), FunctorExpr::TorsGen(vec![simple])));
            named.push((format!("gen(P{label})"), FunctorExpr::TorsGen(vec![proj])));
        }
        let entries = named
            .into_iter()
            .map(|(name, expr)| Entry {
                name,
                data: TorsionData::of(&expr),
                meta: FunctorMeta::of(&expr),
                quot_meta: FunctorMeta::of(&expr.clone().quot()),
                expr,
            })
            .collect();
        Catalogue { entries }
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Looks for counterexamples to the undecided metadata on the samples.
    pub fn refine<R: Rng + ?Sized>(&mut self, samples: &[Rep], rng: &mut R) {
        for e in &mut self.entries {
            e.meta = e.meta.refine(&e.expr, samples, rng);
            e.quot_meta = e.quot_meta.refine(&e.expr.clone().quot(), samples, rng);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub claim: String,
    pub modules: Vec<String>,
    pub submodule: Option<String>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub algebra: String,
    pub p: u32,
    pub seed: u64,
    pub enumerated: usize,
    pub random: usize,
    pub checked: usize,
    pub hypothesis_violations: usize,
    pub hypothesis_unknown: usize,
    pub failed: usize,
    /// The first few failures.
    pub failures: Vec<Counterexample>,
    /// Instances where the conclusion fails because the hypothesis does.
    pub converse_witnesses: Vec<Counterexample>,
    pub probabilistic: bool,
    pub status: Status,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// The report with the timing zeroed, for byte comparisons.
    pub fn deterministic(&self) -> VerificationReport {
        VerificationReport { elapsed_ms: 0, ..self.clone() }
    }
}

/// Re-evaluates a recorded counterexample; `true` if the claim still fails.
pub fn replay(ctx: &Context, cex: &Counterexample) -> Result<bool> {
    let claim: Claim = cex.claim.parse()?;
    let modules = cex.modules.iter().map(|t| parse_module(t, ctx.algebra())).collect::<Result<Vec<_>>>()?;
    let sub = match (&cex.submodule, modules.first()) {
        (Some(t), Some(m)) => Some(parse_subrep(t, m)?),
        (Some(_), None) => return Err(Error::MalformedClaim("submodule without a module".into())),
        (None, _) => None,
    };
    let refs: Vec<&Rep> = modules.iter().collect();
    Ok(matches!(eval_claim(ctx, &claim, &refs, sub.as_ref())?, Outcome::Fails(_)))
}

/// Verifies one statement on the configured samples.
pub fn verify(
    alg: &Arc<Algebra>,
    algebra_id: &str,
    theorem: Theorem,
    cfg: &VerifyConfig,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let samples = sample_modules(alg, cfg)?;
    let mut ctx = Context::new(alg, cfg.pd_cap);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5a5a);
    ctx.catalogue_mut().refine(&samples.modules, &mut rng);
    let mut run = Runner {
        ctx: &ctx,
        cfg,
        rng,
        report: VerificationReport {
            theorem: theorem.name().into(),
            algebra: algebra_id.into(),
            p: alg.field().p(),
            seed: cfg.seed,
            enumerated: samples.enumerated,
            random: samples.random,
            checked: 0,
            hypothesis_violations: 0,
            hypothesis_unknown: 0,
            failed: 0,
            failures: Vec::new(),
            converse_witnesses: Vec::new(),
            probabilistic: samples.probabilistic,
            status: Status::Pass,
            elapsed_ms: 0,
        },
    };
    let ms = &samples.modules;
    match theorem {
        Theorem::Laseis => run.laseis(ms)?,
        Theorem::Ladiez => run.ladiez(ms)?,
        Theorem::Elunico => run.elunico(ms)?,
        Theorem::Elcoro => run.elcoro(ms)?,
        Theorem::Prop2 => run.prop2(ms)?,
        Theorem::Primero => run.primero(ms)?,
        Theorem::Segundo => run.segundo(ms)?,
        Theorem::Quotient => {
            run.per_alpha(ms, "quotient", |e| e.meta.is_preradical.verdict.and(e.meta.preserves_epis.verdict))?
        }
        Theorem::Soc => run.soc(ms)?,
        Theorem::Top => run.top(ms)?,
        Theorem::Plusuno => {
            run.per_alpha(ms, "plusuno", |e| e.meta.is_preradical.verdict.and(e.quot_meta.preserves_monos.verdict))?
        }
        Theorem::St => run.st(ms)?,
        Theorem::Elocho => run.elocho(ms)?,
        Theorem::Cuatrop => run.cuatrop(ms)?,
        Theorem::Test1 => run.test1(ms)?,
    }
    let mut report = run.report;
    if report.failed > 0 {
        report.status = Status::Fail;
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

struct Runner<'a> {
    ctx: &'a Context,
    cfg: &'a VerifyConfig,
    rng: ChaCha8Rng,
    report: VerificationReport,
}

fn record(claim: &Claim, modules: &[&Rep], sub: Option<&SubRep>, detail: String) -> Counterexample {
    Counterexample {
        claim: claim.to_string(),
        modules: modules.iter().map(|m| print_module(m)).collect(),
        submodule: sub.map(|s| print_subrep(modules[0], s)),
        detail,
    }
}

impl Runner<'_> {
    fn check(&mut self, claim: &Claim, modules: &[&Rep], sub: Option<&SubRep>) -> Result<()> {
        match eval_claim(self.ctx, claim, modules, sub)? {
            Outcome::Holds => self.report.checked += 1,
            Outcome::Fails(detail) => {
                self.report.checked += 1;
                self.report.failed += 1;
                if self.report.failures.len() < MAX_RECORDED {
                    self.report.failures.push(record(claim, modules, sub, detail));
                }
            }
            Outcome::Skipped(_) => self.report.hypothesis_violations += 1,
        }
        Ok(())
    }

    fn check_all(&mut self, claim: &Claim, samples: &[Rep]) -> Result<()> {
        for m in samples {
            self.check(claim, &[m], None)?;
        }
        Ok(())
    }

    /// For a pair failing the hypothesis: the first sample where the conclusion fails too.
    fn converse(&mut self, claim: &Claim, samples: &[Rep]) -> Result<()> {
        for m in samples {
            if let Outcome::Fails(detail) = eval_claim(self.ctx, claim, &[m], None)? {
                if self.report.converse_witnesses.len() < MAX_RECORDED {
                    self.report.converse_witnesses.push(record(claim, &[m], None, detail));
                }
                return Ok(());
            }
        }
        Ok(())
    }

    /// Counts the verdict; `true` only for `Yes`.
    fn hypothesis(&mut self, v: Verdict) -> bool {
        match v {
            Verdict::Yes => true,
            Verdict::No => {
                self.report.hypothesis_violations += 1;
                false
            }
            Verdict::Unknown => {
                self.report.hypothesis_unknown += 1;
                false
            }
        }
    }

    fn entries(&self) -> Vec<Entry> {
        self.ctx.catalogue().entries.clone()
    }

    fn alg(&self) -> &Arc<Algebra> {
        self.ctx.algebra()
    }

    /// `a ⊆ b`, with sampled witnesses for the undecided cases.
    fn inclusion(&self, a: &ClassDesc, b: &ClassDesc, samples: &[Rep]) -> Verdict {
        match a.included_in(b, self.alg()) {
            Verdict::Unknown if samples.iter().any(|m| a.contains(m) && !b.contains(m)) => Verdict::No,
            v => v,
        }
    }

    fn sets(&self) -> Vec<VertexSet> {
        match &self.cfg.simples {
            Some(s) => vec![s.clone()],
            None => all_vertex_sets(self.alg().num_vertices()),
        }
    }

    fn partner<'s>(&mut self, samples: &'s [Rep]) -> &'s Rep {
        &samples[self.rng.gen_range(0..samples.len())]
    }

    /// Pairs `(alpha, beta)` of catalogue radicals, conclusion checked when the
    /// class inclusion holds and exercised in reverse when it fails.
    fn comparison(
        &mut self,
        samples: &[Rep],
        tag: &str,
        alpha_ok: impl Fn(&Entry) -> Verdict,
        beta_ok: impl Fn(&Entry) -> Verdict,
        classes: impl Fn(&TorsionData, &TorsionData) -> (ClassDesc, ClassDesc),
    ) -> Result<()> {
        let entries = self.entries();
        for a in &entries {
            for b in &entries {
                if !self.hypothesis(alpha_ok(a).and(beta_ok(b))) {
                    continue;
                }
                let (Some(da), Some(db)) = (&a.data, &b.data) else {
                    self.report.hypothesis_unknown += 1;
                    continue;
                };
                let (lhs, rhs) = classes(da, db);
                let claim = Claim::new(tag, &[("alpha", &a.name), ("beta", &b.name)]);
                match self.inclusion(&lhs, &rhs, samples) {
                    Verdict::Yes => self.check_all(&claim, samples)?,
                    v => {
                        self.hypothesis(v);
                        if v == Verdict::No {
                            self.converse(&claim, samples)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn laseis(&mut self, samples: &[Rep]) -> Result<()> {
        self.comparison(
            samples,
            "laseis",
            |a| a.meta.is_radical.verdict.and(a.meta.preserves_epis.verdict),
            |b| b.meta.is_radical.verdict,
            |a, b| (a.free.clone(), b.torsion.clone()),
        )
    }

    fn ladiez(&mut self, samples: &[Rep]) -> Result<()> {
        self.comparison(
            samples,
            "ladiez",
            |a| a.meta.is_preradical.verdict.and(a.meta.is_idempotent.verdict),
            |b| b.meta.is_preradical.verdict.and(b.quot_meta.preserves_monos.verdict),
            |a, b| (b.torsion.clone(), a.free.clone()),
        )
    }

    fn elunico(&mut self, samples: &[Rep]) -> Result<()> {
        let entries = self.entries();
        let torsion_radical =
            |e: &Entry| e.data.is_some() && e.meta.is_radical.is_yes() && e.meta.is_idempotent.is_yes();
        for t in entries.iter().filter(|e| torsion_radical(e)) {
            for tp in entries.iter().filter(|e| torsion_radical(e)) {
                let (f, tt) = (&t.data.as_ref().unwrap().free, &tp.data.as_ref().unwrap().torsion);
                let v = self.inclusion(f, tt, samples).and(self.inclusion(tt, f, samples));
                let claim = Claim::new("elunico", &[("t", &t.name), ("tp", &tp.name)]);
                match v {
                    Verdict::Yes => self.check_all(&claim, samples)?,
                    Verdict::No => {
                        self.hypothesis(v);
                        self.converse(&claim, samples)?;
                    }
                    Verdict::Unknown => {
                        self.hypothesis(v);
                    }
                }
            }
        }
        Ok(())
    }

    fn elcoro(&mut self, samples: &[Rep]) -> Result<()> {
        for s in self.sets() {
            let label = self.ctx.set_label(&s);
            self.check_all(&Claim::new("elcoro", &[("s", &label)]), samples)?;
        }
        Ok(())
    }

    fn prop2(&mut self, samples: &[Rep]) -> Result<()> {
        let all = all_vertex_sets(self.alg().num_vertices());
        for s1 in self.sets() {
            for s2 in &all {
                let (l1, l2) = (self.ctx.set_label(&s1), self.ctx.set_label(s2));
                let claim = Claim::new("prop2", &[("s1", &l1), ("s2", &l2)]);
                if s1.is_subset(s2) {
                    self.check_all(&claim, samples)?;
                } else {
                    self.report.hypothesis_violations += 1;
                    self.converse(&claim, samples)?;
                }
            }
        }
        Ok(())
    }

    /// `beta` candidates paired with `alpha` in the general layer-length statements.
    fn betas(alpha: &str) -> [String; 4] {
        ["rad".into(), "soc".into(), format!("F({alpha})"), format!("G({alpha})")]
    }

    fn primero(&mut self, samples: &[Rep]) -> Result<()> {
        for a in self.entries() {
            for b in Self::betas(&a.name) {
                for tag in ["primero.a", "primero.b"] {
                    self.check_all(&Claim::new(tag, &[("alpha", &a.name), ("beta", &b)]), samples)?;
                }
            }
            self.check_all(&Claim::new("primero.c", &[("alpha", &a.name)]), samples)?;
        }
        Ok(())
    }

    fn segundo(&mut self, samples: &[Rep]) -> Result<()> {
        for a in self.entries() {
            for b in Self::betas(&a.name) {
                let bm = FunctorMeta::of(&self.ctx.resolve(&b)?);
                let args = [("alpha", a.name.as_str()), ("beta", b.as_str())];
                let epis = a.meta.preserves_epis.verdict.and(bm.preserves_epis.verdict);
                let monos = a.meta.preserves_monos.verdict.and(bm.preserves_monos.verdict);
                let (check_epis, check_monos) = (self.hypothesis(epis), self.hypothesis(monos));
                for m in samples {
                    let n = self.partner(samples);
                    self.check(&Claim::new("segundo.a", &args), &[m, n], None)?;
                    if check_epis {
                        let k = random_submodule(m, &mut self.rng);
                        self.check(&Claim::new("segundo.b1", &args), &[m], Some(&k))?;
                        self.check(&Claim::new("segundo.b2", &args), &[m], None)?;
                    }
                    if check_monos {
                        let k = random_submodule(m, &mut self.rng);
                        self.check(&Claim::new("segundo.c", &args), &[m], Some(&k))?;
                    }
                }
            }
        }
        Ok(())
    }

    fn per_alpha(&mut self, samples: &[Rep], tag: &str, ok: impl Fn(&Entry) -> Verdict) -> Result<()> {
        for a in self.entries() {
            if self.hypothesis(ok(&a)) {
                self.check_all(&Claim::new(tag, &[("alpha", &a.name)]), samples)?;
            }
        }
        Ok(())
    }

    fn soc(&mut self, samples: &[Rep]) -> Result<()> {
        self.comparison(
            samples,
            "soc",
            |a| a.meta.is_preradical.verdict,
            |b| b.meta.is_radical.verdict,
            |a, b| (a.free.clone(), b.torsion.clone()),
        )
    }

    fn top(&mut self, samples: &[Rep]) -> Result<()> {
        self.comparison(
            samples,
            "top",
            |a| a.meta.is_preradical.verdict.and(a.meta.is_idempotent.verdict),
            |b| b.meta.is_preradical.verdict,
            |a, b| (b.torsion.clone(), a.free.clone()),
        )
    }

    fn st(&mut self, samples: &[Rep]) -> Result<()> {
        for a in self.entries() {
            let args = [("alpha", a.name.as_str())];
            self.check(&Claim::new("st.meta", &args), &[], None)?;
            if !self.hypothesis(a.meta.is_preradical.verdict) {
                continue;
            }
            let radical = a.meta.preserves_epis.is_yes();
            for m in samples {
                let n = self.partner(samples);
                let k = random_submodule(m, &mut self.rng);
                for tag in ["st.a", "st.b.sub", "st.c.quot"] {
                    self.check(&Claim::new(tag, &args), &[m], Some(&k))?;
                }
                for tag in ["st.b.sum", "st.c.sum"] {
                    self.check(&Claim::new(tag, &args), &[m, n], None)?;
                }
                if radical {
                    self.check(&Claim::new("st.d", &args), &[m], None)?;
                }
            }
        }
        Ok(())
    }

    fn elocho(&mut self, samples: &[Rep]) -> Result<()> {
        for a in self.entries() {
            let claim = Claim::new("elocho.bc", &[("alpha", &a.name)]);
            for m in samples {
                let k = random_submodule(m, &mut self.rng);
                self.check(&claim, &[m], Some(&k))?;
            }
        }
        for s in self.sets() {
            let claim = Claim::new("elocho.qx", &[("s", &self.ctx.set_label(&s))]);
            for m in samples {
                let k = random_submodule(m, &mut self.rng);
                self.check(&claim, &[m], Some(&k))?;
            }
        }
        Ok(())
    }

    fn cuatrop(&mut self, samples: &[Rep]) -> Result<()> {
        for s in self.sets() {
            self.check_all(&Claim::new("cuatrop", &[("s", &self.ctx.set_label(&s))]), samples)?;
        }
        Ok(())
    }

    fn test1(&mut self, samples: &[Rep]) -> Result<()> {
        for s in self.sets() {
            if self.ctx.set_pd(&s).is_none() {
                self.report.hypothesis_violations += 1;
                continue;
            }
            let label = self.ctx.set_label(&s);
            self.check_all(&Claim::new("test1.a", &[("s", &label)]), samples)?;
            let claim = Claim::new("test1.b", &[("s", &label)]);
            for m in samples {
                let n = self.partner(samples);
                self.check(&claim, &[m, n], None)?;
            }
        }
        Ok(())
    }
}
