//! Exhaustive enumeration of small modules and submodules.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rep::{Fingerprint, IsoVerdict, Rep, SubRep};

/// Default cap on the number of arrow-matrix tuples examined.
pub const DEFAULT_ENUM_BUDGET: u64 = 1 << 18;

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// One representative per isomorphism class, by increasing total dimension.
    pub modules: Vec<Rep>,
    /// Some pair was separated only by random sampling of Hom.
    pub probabilistic: bool,
}

fn dimension_vectors(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn go(v: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if v == cur.len() {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur[v] = d;
            go(v + 1, left - d, cur, out);
        }
        cur[v] = 0;
    }
    go(0, bound, &mut cur, &mut out);
    out.sort_by_key(|d| (d.iter().sum::<usize>(), d.clone()));
    out
}

fn entries(alg: &Algebra, dims: &[usize]) -> usize {
    alg.quiver().arrows().iter().map(|a| dims[a.source] * dims[a.target]).sum()
}

/// Number of arrow-matrix tuples `enumerate_modules` would examine.
pub fn enumeration_work(alg: &Algebra, bound: usize) -> u64 {
    let p = alg.field().p() as u64;
    dimension_vectors(alg.num_vertices(), bound)
        .iter()
        .map(|d| p.checked_pow(entries(alg, d) as u32).unwrap_or(u64::MAX))
        .fold(0u64, u64::saturating_add)
}

/// All modules of total dimension at most `bound`, up to isomorphism.
pub fn enumerate_modules(alg: &Arc<Algebra>, bound: usize, budget: u64) -> Result<Enumeration> {
    let work = enumeration_work(alg, bound);
    if work > budget {
        return Err(Error::BudgetExceeded(format!(
            "{} matrix tuples needed for total dimension {bound}, budget is {budget}",
            if work == u64::MAX { "more than 2^64".to_string() } else { work.to_string() }
        )));
    }
    let f = alg.field();
    let p = f.p();
    let arrows = alg.quiver().arrows();
    let mut modules = Vec::new();
    let mut probabilistic = false;
    for dims in dimension_vectors(alg.num_vertices(), bound) {
        let n = entries(alg, &dims);
        let mut buckets: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
        let mut digits = vec![0u32; n];
        loop {
            let mut offset = 0;
            let mats: Vec<Mat> = arrows
                .iter()
                .map(|a| {
                    let len = dims[a.source] * dims[a.target];
                    let m = Mat::from_vec(f, dims[a.target], dims[a.source], digits[offset..offset + len].to_vec());
                    offset += len;
                    m
                })
                .collect();
            if let Ok(m) = Rep::new(alg, dims.clone(), mats) {
                let bucket = buckets.entry(m.fingerprint()).or_default();
                let mut fresh = true;
                for &i in bucket.iter() {
                    match m.iso_search(&modules[i]) {
                        IsoVerdict::Iso(_) => {
                            fresh = false;
                            break;
                        }
                        IsoVerdict::ProbablyNotIso => probabilistic = true,
                        IsoVerdict::NotIso => {}
                    }
                }
                if fresh {
                    bucket.push(modules.len());
                    modules.push(m);
                }
            }
            // Odometer step.
            let mut k = 0;
            while k < n && digits[k] == p - 1 {
                digits[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            digits[k] += 1;
        }
    }
    Ok(Enumeration { modules, probabilistic })
}

/// Cap on `(number of submodules) x (homogeneous vectors)` explored.
pub const SUBMODULE_BUDGET: u64 = 1 << 20;

/// Every submodule of `m`, found by adding one homogeneous vector at a time.
pub fn enumerate_submodules(m: &Rep) -> Result<Vec<SubRep>> {
    let p = m.field().p() as u64;
    let mut vectors: Vec<(usize, Vec<u32>)> = Vec::new();
    for (v, &d) in m.dims().iter().enumerate() {
        let count = p
            .checked_pow(d as u32)
            .filter(|&c| c <= SUBMODULE_BUDGET)
            .ok_or_else(|| Error::BudgetExceeded(format!("vertex space of dimension {d} is too large to enumerate")))?;
        for code in 1..count {
            let mut x = vec![0u32; d];
            let mut c = code;
            for slot in x.iter_mut() {
                *slot = (c % p) as u32;
                c /= p;
            }
            vectors.push((v, x));
        }
    }
    let zero = SubRep::zero(m);
    let mut seen: HashSet<SubRep> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    let mut out = Vec::new();
    let mut steps = 0u64;
    while let Some(sub) = queue.pop_front() {
        for (v, x) in &vectors {
            if sub.space(*v).contains(x) {
                continue;
            }
            steps += 1;
            if steps > SUBMODULE_BUDGET {
                return Err(Error::BudgetExceeded("too many submodules to enumerate".into()));
            }
            let mut gens: Vec<Vec<Vec<u32>>> =
                sub.spaces().iter().map(|s| s.vectors().map(<[u32]>::to_vec).collect()).collect();
            gens[*v].push(x.clone());
            let bigger = m.generated_subrep(&gens);
            if seen.insert(bigger.clone()) {
                queue.push_back(bigger);
            }
        }
        out.push(sub);
    }
    out.sort_by_key(SubRep::total_dim);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn count(alg: &Arc<Algebra>, bound: usize) -> usize {
        enumerate_modules(alg, bound, DEFAULT_ENUM_BUDGET).unwrap().modules.len()
    }

    #[test]
    fn small_enumerations() {
        let a2 = fixtures::a2();
        assert_eq!(count(&a2, 1), 4);
        // 4 from bound 1, then P1, P2, S1+S2, S1+S3, S2+S3 and three S_i+S_i.
        assert_eq!(count(&a2, 2), 12);
        let a1 = fixtures::a1();
        assert_eq!(count(&a1, 3), 7);
        let a3 = fixtures::a3();
        // 0; S1, S2; P1, S1^2, S1+S2, S2^2.
        assert_eq!(count(&a3, 2), 7);
    }

    #[test]
    fn nilpotent_classes_match_partitions() {
        // Partitions of n into parts of size at most 3.
        let a1 = fixtures::a1();
        let e = enumerate_modules(&a1, 4, DEFAULT_ENUM_BUDGET).unwrap();
        let by_dim = |d: usize| e.modules.iter().filter(|m| m.total_dim() == d).count();
        assert_eq!((0..=4).map(by_dim).collect::<Vec<_>>(), vec![1, 1, 2, 3, 4]);
    }

    #[test]
    fn budget_is_enforced() {
        let k = fixtures::kronecker();
        assert!(matches!(enumerate_modules(&k, 6, 1000), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn submodules_of_small_modules() {
        let a2 = fixtures::a2();
        let p2 = Rep::projective(&a2, 1).unwrap();
        // 0, soc, P2.
        assert_eq!(enumerate_submodules(&p2).unwrap().len(), 3);
        let s = Rep::simple(&a2, 0).unwrap();
        // Subspaces of F_2^2: 0, three lines, the plane.
        assert_eq!(enumerate_submodules(&s.power(2)).unwrap().len(), 5);
        let a1 = fixtures::a1();
        let reg = Rep::regular(&a1);
        // Uniserial: a chain.
        assert_eq!(enumerate_submodules(&reg).unwrap().len(), 4);
    }
}
