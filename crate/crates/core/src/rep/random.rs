use std::sync::Arc;

use rand::Rng;

use super::{Rep, SubRep};
use crate::algebra::Algebra;

fn random_vector<R: Rng + ?Sized>(p: u32, len: usize, rng: &mut R) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..p)).collect()
}

/// A random module of total dimension at most `size_bound`: the cokernel of a
/// random map into a direct sum of indecomposable projectives.
pub fn random_module<R: Rng + ?Sized>(alg: &Arc<Algebra>, size_bound: usize, rng: &mut R) -> Rep {
    let n = alg.num_vertices();
    let projectives: Vec<Rep> = (0..n).map(|v| Rep::projective(alg, v).expect("valid vertex")).collect();
    let budget = rng.gen_range(0..=size_bound);
    let mut used = 0;
    let mut parts = Vec::new();
    loop {
        let fitting: Vec<usize> = (0..n).filter(|&v| used + projectives[v].total_dim() <= budget).collect();
        if fitting.is_empty() {
            break;
        }
        let v = fitting[rng.gen_range(0..fitting.len())];
        used += projectives[v].total_dim();
        parts.push(&projectives[v]);
    }
    let top = Rep::direct_sum_all(alg, parts);
    if top.is_zero() {
        return top;
    }
    let sub = random_submodule(&top, rng);
    top.quotient_rep(&sub)
}

/// The submodule generated by a few random homogeneous vectors.
pub fn random_submodule<R: Rng + ?Sized>(m: &Rep, rng: &mut R) -> SubRep {
    let support = m.support();
    if support.is_empty() {
        return SubRep::zero(m);
    }
    let p = m.field().p();
    let count = rng.gen_range(0..=support.len().min(3));
    let mut gens: Vec<Vec<Vec<u32>>> = vec![Vec::new(); m.dims().len()];
    for _ in 0..count {
        let v = support[rng.gen_range(0..support.len())];
        gens[v].push(random_vector(p, m.dims()[v], rng));
    }
    m.generated_subrep(&gens)
}
