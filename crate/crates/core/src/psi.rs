//! The Igusa-Todorov functions phi and Psi.
//!
//! Syzygy acts on the free abelian group spanned by the isomorphism classes
//! of non-projective indecomposables. phi(M) is the level after which the
//! ranks of the images of add(M) no longer drop; Psi adds the largest finite
//! projective dimension among the summands of the corresponding syzygy.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::Algebra;
use crate::decompose::{decompose, Certificate};
use crate::rep::{Fingerprint, ProjDim, Rep, DEFAULT_PD_CAP};

type Combination = BTreeMap<usize, BigInt>;

struct Entry {
    module: Rep,
    omega: Option<BTreeMap<usize, u64>>,
    pd: Option<ProjDim>,
}

/// Interned non-projective indecomposables and their syzygy transitions.
pub struct Atlas {
    alg: Arc<Algebra>,
    pd_cap: usize,
    entries: Vec<Entry>,
    buckets: HashMap<Fingerprint, Vec<usize>>,
    heuristic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub input_dims: Vec<usize>,
    /// Dimension vectors of the generators met along the syzygies, in atlas order.
    pub basis: Vec<Vec<usize>>,
    pub ranks: Vec<usize>,
    pub phi: usize,
    pub psi: usize,
    pub pd_cap: usize,
    /// Some indecomposability verdict was not certified.
    pub heuristic: bool,
    /// Stabilization was not proven within the level cap.
    pub truncated: bool,
}

impl Atlas {
    pub fn new(alg: &Arc<Algebra>, pd_cap: usize) -> Atlas {
        Atlas { alg: alg.clone(), pd_cap, entries: Vec::new(), buckets: HashMap::new(), heuristic: false }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn module(&self, i: usize) -> &Rep {
        &self.entries[i].module
    }

    pub fn is_heuristic(&self) -> bool {
        self.heuristic
    }

    fn intern(&mut self, m: &Rep) -> usize {
        let bucket = self.buckets.entry(m.fingerprint()).or_default();
        for &i in bucket.iter() {
            if self.entries[i].module.is_isomorphic(m) {
                return i;
            }
        }
        let i = self.entries.len();
        bucket.push(i);
        self.entries.push(Entry { module: m.clone(), omega: None, pd: None });
        i
    }

    /// Non-projective indecomposable summands with multiplicities.
    pub fn components(&mut self, m: &Rep) -> BTreeMap<usize, u64> {
        assert!(Arc::ptr_eq(m.algebra(), &self.alg), "module over another algebra");
        let mut out = BTreeMap::new();
        for s in decompose(m).summands {
            if s.certificate == Certificate::Heuristic {
                self.heuristic = true;
            }
            if !s.module.is_projective() {
                *out.entry(self.intern(&s.module)).or_insert(0) += s.multiplicity as u64;
            }
        }
        out
    }

    /// The syzygy operator on a generator.
    pub fn omega(&mut self, i: usize) -> BTreeMap<usize, u64> {
        if let Some(o) = &self.entries[i].omega {
            return o.clone();
        }
        let syz = self.entries[i].module.syzygy();
        let o = self.components(&syz);
        self.entries[i].omega = Some(o.clone());
        o
    }

    pub fn proj_dim(&mut self, i: usize) -> ProjDim {
        if let Some(pd) = self.entries[i].pd {
            return pd;
        }
        let pd = self.entries[i].module.proj_dim(self.pd_cap);
        self.entries[i].pd = Some(pd);
        pd
    }

    fn apply(&mut self, v: &Combination) -> Combination {
        let mut out = Combination::new();
        for (&i, c) in v {
            for (j, mult) in self.omega(i) {
                *out.entry(j).or_insert_with(BigInt::zero) += c * BigInt::from(mult);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn phi(&mut self, m: &Rep) -> PsiReport {
        let gens: Vec<usize> = self.components(m).into_keys().collect();
        let mut level: Vec<Combination> = gens.iter().map(|&g| Combination::from([(g, BigInt::from(1))])).collect();
        let mut reachable: BTreeSet<usize> = gens.iter().copied().collect();
        let mut ranks = vec![integer_rank(&level)];
        let level_cap = self.pd_cap.max(1) * 4;
        let mut truncated = true;
        // Once the reachable generators are closed under syzygy and the
        // level reaches their number, the ranks are constant from then on.
        for n in 0..level_cap {
            if ranks[n] == 0 {
                truncated = false;
                break;
            }
            let next: Vec<Combination> = level.iter().map(|v| self.apply(v)).collect();
            let before = reachable.len();
            for v in &next {
                reachable.extend(v.keys().copied());
            }
            let closed = reachable
                .iter()
                .all(|&i| self.entries[i].omega.as_ref().is_some_and(|o| o.keys().all(|k| reachable.contains(k))));
            level = next;
            ranks.push(integer_rank(&level));
            if closed && reachable.len() == before && n + 1 >= reachable.len() {
                truncated = false;
                break;
            }
        }
        let last = *ranks.last().expect("nonempty");
        let phi = ranks.iter().rposition(|&r| r != last).map_or(0, |i| i + 1);
        PsiReport {
            input_dims: m.dims().to_vec(),
            basis: reachable.iter().map(|&i| self.entries[i].module.dims().to_vec()).collect(),
            ranks,
            phi,
            psi: phi,
            pd_cap: self.pd_cap,
            heuristic: self.heuristic,
            truncated,
        }
    }

    pub fn psi(&mut self, m: &Rep) -> PsiReport {
        let mut report = self.phi(m);
        let syz = m.syzygy_power(report.phi);
        let tail = self.components(&syz).into_keys().filter_map(|i| self.proj_dim(i).finite()).max().unwrap_or(0);
        report.psi = report.phi + tail;
        report.heuristic = self.heuristic;
        report
    }

    pub fn psi_dim(&mut self, modules: &[Rep]) -> usize {
        modules.iter().map(|m| self.psi(m).psi).max().unwrap_or(0)
    }
}

/// Rank over the rationals of integer vectors, by fraction-free elimination.
fn integer_rank(rows: &[Combination]) -> usize {
    let cols: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut m: Vec<Vec<BigInt>> =
        rows.iter().map(|r| cols.iter().map(|c| r.get(c).cloned().unwrap_or_else(BigInt::zero)).collect()).collect();
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols.len() {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for k in c + 1..cols.len() {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].abs();
        rank += 1;
    }
    rank
}

pub fn phi(m: &Rep, pd_cap: usize) -> PsiReport {
    Atlas::new(m.algebra(), pd_cap).phi(m)
}

pub fn psi(m: &Rep, pd_cap: usize) -> PsiReport {
    Atlas::new(m.algebra(), pd_cap).psi(m)
}

pub fn psi_dim(alg: &Arc<Algebra>, modules: &[Rep], pd_cap: usize) -> usize {
    Atlas::new(alg, pd_cap).psi_dim(modules)
}

pub fn default_psi(m: &Rep) -> usize {
    psi(m, DEFAULT_PD_CAP).psi
}
