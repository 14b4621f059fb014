use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::Ideal;
use crate::enumerate::{enumerate_modules, enumerate_submodules, DEFAULT_ENUM_BUDGET};
use crate::fixtures;
use crate::rep::random_module;

fn set(vs: &[usize]) -> VertexSet {
    vs.iter().copied().collect()
}

fn modules(alg: &Arc<Algebra>, bound: usize) -> Vec<Rep> {
    enumerate_modules(alg, bound, DEFAULT_ENUM_BUDGET).unwrap().modules
}

/// Smallest submodule with quotient supported on `s`, by trying all submodules.
fn brute_t(m: &Rep, s: &VertexSet) -> SubRep {
    let subs = enumerate_submodules(m).unwrap();
    let good: Vec<&SubRep> =
        subs.iter().filter(|n| ClassDesc::Supported(s.clone()).contains(&m.quotient_rep(n))).collect();
    let min = good.iter().min_by_key(|n| n.total_dim()).unwrap();
    assert!(good.iter().all(|n| min.is_contained_in(n)), "smallest is unique");
    (*min).clone()
}

/// Largest submodule supported on `s`, by trying all submodules.
fn brute_x(m: &Rep, s: &VertexSet) -> SubRep {
    let subs = enumerate_submodules(m).unwrap();
    let good: Vec<&SubRep> = subs.iter().filter(|n| ClassDesc::Supported(s.clone()).contains(&m.sub_rep(n))).collect();
    let max = good.iter().max_by_key(|n| n.total_dim()).unwrap();
    assert!(good.iter().all(|n| n.is_contained_in(max)));
    (*max).clone()
}

#[test]
fn torsion_extremes() {
    let a2 = fixtures::a2();
    for m in modules(&a2, 3) {
        assert!(FunctorExpr::t([]).evaluate_sub(&m).unwrap().is_full());
        assert!(FunctorExpr::t([0, 1, 2]).evaluate_sub(&m).unwrap().is_zero());
    }
}

#[test]
fn torsion_parts_of_p2() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    let t = FunctorExpr::t([1]).evaluate(&p2).unwrap();
    assert!(t.is_isomorphic(&Rep::simple(&a2, 2).unwrap()));
    assert_eq!(FunctorExpr::t([1]).evaluate_sub(&p2).unwrap(), p2.socle());
    assert!(FunctorExpr::x([1]).evaluate(&p2).unwrap().is_zero());
    assert_eq!(brute_t(&p2, &set(&[1])), p2.socle());
    assert!(brute_x(&p2, &set(&[1])).is_zero());
}

#[test]
fn torsion_radicals_match_exhaustive_search() {
    for alg in [fixtures::a2(), fixtures::a1(), fixtures::a3(), fixtures::kronecker()] {
        let n = alg.num_vertices();
        for m in modules(&alg, 3) {
            for s in all_vertex_sets(n) {
                assert_eq!(torsion_t(&m, &s), brute_t(&m, &s));
                assert_eq!(torsion_x(&m, &s), brute_x(&m, &s));
            }
        }
    }
}

#[test]
fn torsion_radical_is_largest_torsion_submodule() {
    let a2 = fixtures::a2();
    for m in modules(&a2, 4) {
        let subs = enumerate_submodules(&m).unwrap();
        for s in all_vertex_sets(3) {
            let t = torsion_t(&m, &s);
            let torsion = ClassDesc::TopAvoids(s.clone());
            for n in &subs {
                if torsion.contains(&m.sub_rep(n)) {
                    assert!(n.is_contained_in(&t));
                }
            }
            assert!(torsion.contains(&m.sub_rep(&t)));
        }
    }
}

#[test]
fn trace_examples() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    assert!(trace(std::slice::from_ref(&p2), &p2).is_full());
    assert_eq!(trace(&[Rep::simple(&a2, 2).unwrap()], &p2), p2.socle());
    assert!(trace(&[Rep::simple(&a2, 0).unwrap()], &p2).is_zero());
}

#[test]
fn generated_torsion_agrees_with_simple_sets() {
    // The torsion class generated by simples in S is the modules supported on
    // S; the one generated by the projectives outside S is the top-avoiding one.
    for alg in [fixtures::a2(), fixtures::a1(), fixtures::kronecker()] {
        let n = alg.num_vertices();
        let mods = modules(&alg, 3);
        for s in all_vertex_sets(n) {
            let simples: Vec<Rep> = s.iter().map(|&v| Rep::simple(&alg, v).unwrap()).collect();
            let projs: Vec<Rep> =
                (0..n).filter(|v| !s.contains(v)).map(|v| Rep::projective(&alg, v).unwrap()).collect();
            for m in &mods {
                assert_eq!(torsion_generated(&simples, m), torsion_x(m, &s));
                assert_eq!(torsion_generated(&projs, m), torsion_t(m, &s));
            }
        }
    }
}

#[test]
fn idempotent_radical_laws() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    let mut functors: Vec<FunctorExpr> =
        all_vertex_sets(3).into_iter().flat_map(|s| [FunctorExpr::TorsT(s.clone()), FunctorExpr::TorsX(s)]).collect();
    functors.push(FunctorExpr::TorsGen(vec![p2.clone()]));
    functors.push(FunctorExpr::TorsGen(vec![Rep::injective(&a2, 1).unwrap()]));
    for m in modules(&a2, 4) {
        for t in &functors {
            let tm = t.evaluate(&m).unwrap();
            assert!(t.evaluate_sub(&tm).unwrap().is_full());
            assert!(t.evaluate(&t.clone().quot().evaluate(&m).unwrap()).unwrap().is_zero());
        }
    }
}

#[test]
fn torsion_pairs_are_hom_orthogonal() {
    let a2 = fixtures::a2();
    let mods = modules(&a2, 3);
    for s in all_vertex_sets(3) {
        for (torsion, free) in [
            (ClassDesc::TopAvoids(s.clone()), ClassDesc::Supported(s.clone())),
            (ClassDesc::Supported(s.clone()), ClassDesc::SocleAvoids(s.clone())),
        ] {
            let ts: Vec<&Rep> = mods.iter().filter(|m| torsion.contains(m)).collect();
            let fs: Vec<&Rep> = mods.iter().filter(|m| free.contains(m)).collect();
            for t in &ts {
                for f in &fs {
                    assert!(t.hom_space(f).unwrap().is_empty());
                }
            }
            // Maximality: anything with no maps to the free class is torsion,
            // and anything with no maps from the torsion class is free.
            for m in &mods {
                if fs.iter().all(|f| m.hom_space(f).unwrap().is_empty()) {
                    assert!(torsion.contains(m));
                }
                if ts.iter().all(|t| t.hom_space(m).unwrap().is_empty()) {
                    assert!(free.contains(m));
                }
            }
        }
    }
}

#[test]
fn torsion_part_is_ideal_action() {
    for alg in [fixtures::a2(), fixtures::a1(), fixtures::kronecker()] {
        let n = alg.num_vertices();
        for s in all_vertex_sets(n) {
            let i_s = torsion_ideal(&alg, &s);
            assert!(i_s.is_two_sided());
            for m in modules(&alg, 3) {
                assert_eq!(m.act(&i_s).unwrap(), torsion_t(&m, &s));
            }
        }
    }
}

#[test]
fn layer_length_examples() {
    let a1 = fixtures::a1();
    let reg = Rep::regular(&a1);
    let id = FunctorExpr::Identity;
    assert_eq!(layer_length(&id, &id.clone().radical_step(), &reg).unwrap(), LayerLength::Finite(3));
    assert_eq!(radical_layer_length(&id, &reg).unwrap(), 3);

    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    assert_eq!(radical_layer_length(&FunctorExpr::t([1]), &p2).unwrap(), 1);
    assert_eq!(socle_layer_length(&FunctorExpr::x([1]).quot(), &p2).unwrap(), 1);
    assert_eq!(radical_layer_length(&FunctorExpr::t([]), &Rep::regular(&a2)).unwrap(), 2);

    // alpha(M) = 0 gives length 0; a beta that fixes M gives infinity.
    assert_eq!(layer_length(&FunctorExpr::Rad, &id, &Rep::simple(&a2, 0).unwrap()).unwrap(), LayerLength::Finite(0));
    assert_eq!(layer_length(&id, &id, &p2).unwrap(), LayerLength::Infinite);
    assert_eq!(layer_length(&id, &id, &Rep::zero(&a2)).unwrap(), LayerLength::Finite(0));
}

#[test]
fn identity_layer_lengths_are_loewy_length() {
    for alg in [fixtures::a1(), fixtures::a2(), fixtures::kronecker()] {
        for m in modules(&alg, 3) {
            let ll = loewy_length(&m);
            assert_eq!(radical_layer_length(&FunctorExpr::Identity, &m).unwrap(), ll);
            assert_eq!(socle_layer_length(&FunctorExpr::Identity, &m).unwrap(), ll);
        }
    }
}

#[test]
fn membership_flags() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    let s2 = set(&[1]);
    assert_eq!(class_membership(&s2, &p2), Membership { in_t: false, in_x: false, in_f: true });
    let zero = Rep::zero(&a2);
    assert_eq!(class_membership(&s2, &zero), Membership { in_t: true, in_x: true, in_f: true });
    for m in modules(&a2, 3) {
        assert!(class_membership(&set(&[0, 1, 2]), &m).in_x);
        for s in all_vertex_sets(3) {
            let flags = class_membership(&s, &m);
            assert_eq!(flags.in_t, torsion_t(&m, &s).is_full());
            assert_eq!(flags.in_x, torsion_t(&m, &s).is_zero());
            assert_eq!(flags.in_f, torsion_x(&m, &s).is_zero());
        }
    }
}

#[test]
fn parser_round_trips() {
    let a2 = fixtures::a2();
    for text in ["id", "rad", "soc", "t{2}", "x{1,3}", "q(x{2})", "F(t{})", "G(q(soc))", "rad.t{1}.soc"] {
        let e = parse_functor(text, &a2).unwrap();
        assert_eq!(e.display(&a2), text);
    }
    assert_eq!(parse_functor(" t{ S1 , 2 } ", &a2).unwrap(), FunctorExpr::t([0, 1]));
    assert_eq!(parse_functor("rad.soc", &a2).unwrap(), FunctorExpr::Rad.after(FunctorExpr::Soc));
    assert!(matches!(parse_functor("t{7}", &a2), Err(Error::UnknownVertex(_))));
    assert!(matches!(parse_functor("q(G(id))", &a2), Err(Error::IllFormedExpr(_))));
    assert!(matches!(parse_functor("rad soc", &a2), Err(Error::IllFormedExpr(_))));
    assert!(matches!(parse_functor("", &a2), Err(Error::IllFormedExpr(_))));
}

#[test]
fn compose_semantics() {
    let a2 = fixtures::a2();
    let reg = Rep::regular(&a2);
    let e = FunctorExpr::Rad.after(FunctorExpr::t([0]));
    let direct = FunctorExpr::Rad.evaluate(&FunctorExpr::t([0]).evaluate(&reg).unwrap()).unwrap();
    assert!(e.evaluate(&reg).unwrap().is_isomorphic(&direct));
    assert_eq!(e.evaluate_sub(&reg).unwrap().total_dim(), direct.total_dim());
    assert!(FunctorExpr::Soc.quot().evaluate_sub(&reg).is_err());
}

#[test]
fn mismatched_generators_are_rejected() {
    let a2 = fixtures::a2();
    let other = fixtures::a2();
    let e = FunctorExpr::TorsGen(vec![Rep::simple(&other, 0).unwrap()]);
    assert_eq!(e.evaluate(&Rep::regular(&a2)).unwrap_err(), Error::AlgebraMismatch);
}

#[test]
fn static_meta_survives_sampling() {
    let a2 = fixtures::a2();
    let samples = modules(&a2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in all_vertex_sets(3) {
        for e in [FunctorExpr::TorsT(s.clone()), FunctorExpr::TorsX(s.clone()), FunctorExpr::TorsX(s).quot()] {
            let stat = FunctorMeta::of(&e);
            let refined = stat.refine(&e, &samples, &mut rng);
            for (a, b) in [
                (stat.is_preradical, refined.is_preradical),
                (stat.is_radical, refined.is_radical),
                (stat.is_idempotent, refined.is_idempotent),
                (stat.preserves_epis, refined.preserves_epis),
                (stat.preserves_monos, refined.preserves_monos),
            ] {
                if a.verdict != Verdict::Unknown {
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn refinement_finds_counterexamples() {
    let a1 = fixtures::a1();
    let samples = modules(&a1, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rad = FunctorMeta::of(&FunctorExpr::Rad).refine(&FunctorExpr::Rad, &samples, &mut rng);
    assert_eq!(rad.is_idempotent.verdict, Verdict::No);
    assert_eq!(rad.is_idempotent.provenance, Provenance::Empirical);
    let soc = FunctorMeta::of(&FunctorExpr::Soc).refine(&FunctorExpr::Soc, &samples, &mut rng);
    assert_eq!(soc.is_radical.verdict, Verdict::No);

    let a2 = fixtures::a2();
    let x2 = FunctorExpr::x([1]);
    let samples = modules(&a2, 3);
    let mut found = false;
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if FunctorMeta::of(&x2).refine(&x2, &samples, &mut rng).preserves_epis.verdict == Verdict::No {
            found = true;
            break;
        }
    }
    assert!(found, "P2 -> S2 is an epi that x{{2}} does not preserve");
}

#[test]
fn class_inclusions_agree_with_enumeration() {
    for alg in [fixtures::a2(), fixtures::a3(), fixtures::a1()] {
        let n = alg.num_vertices();
        let mut mods = modules(&alg, 4);
        mods.push(Rep::regular(&alg));
        for v in 0..n {
            mods.push(Rep::injective(&alg, v).unwrap());
        }
        let mut classes = vec![ClassDesc::Zero, ClassDesc::All, ClassDesc::Semisimple];
        for s in all_vertex_sets(n) {
            classes.push(ClassDesc::Supported(s.clone()));
            classes.push(ClassDesc::TopAvoids(s.clone()));
            classes.push(ClassDesc::SocleAvoids(s));
        }
        for v in 0..n {
            classes.push(ClassDesc::Torsion(vec![Rep::simple(&alg, v).unwrap()]));
            classes.push(ClassDesc::TorsionFree(vec![Rep::projective(&alg, v).unwrap()]));
            classes.push(ClassDesc::TorsionFree(vec![Rep::simple(&alg, v).unwrap()]));
        }
        let mut decided = 0;
        for c1 in &classes {
            for c2 in &classes {
                let witness = mods.iter().any(|m| c1.contains(m) && !c2.contains(m));
                match c1.included_in(c2, &alg) {
                    Verdict::Yes => assert!(!witness, "{} in {}", c1.display(&alg), c2.display(&alg)),
                    Verdict::No => assert!(witness, "{} not in {}", c1.display(&alg), c2.display(&alg)),
                    Verdict::Unknown => continue,
                }
                decided += 1;
            }
        }
        assert!(decided * 20 >= classes.len() * classes.len() * 17);
    }
}

#[test]
fn layer_ideal_annihilators() {
    let a2 = fixtures::a2();
    let mods = modules(&a2, 4);
    for s in all_vertex_sets(3) {
        for ell in 0..3 {
            let j = layer_ideal(&a2, &s, ell);
            for m in &mods {
                let short = radical_layer_length(&FunctorExpr::TorsT(s.clone()), m).unwrap() <= ell;
                assert_eq!(short, m.act(&j).unwrap().is_zero());
            }
        }
    }
    assert_eq!(layer_ideal(&a2, &VertexSet::new(), 0), Ideal::whole(&a2));
}

fn sample(alg: &Arc<Algebra>, seed: u64) -> Rep {
    random_module(alg, 6, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn sample_functors(n: usize) -> Vec<FunctorExpr> {
    let mut out = vec![FunctorExpr::Identity, FunctorExpr::Rad, FunctorExpr::Soc];
    for s in all_vertex_sets(n) {
        out.push(FunctorExpr::TorsT(s.clone()));
        out.push(FunctorExpr::TorsX(s.clone()).quot());
        out.push(FunctorExpr::TorsX(s));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn layer_length_recursion(alg_idx in 0usize..3, seed in any::<u64>(), a in 0usize..64, b in 0usize..64) {
        let alg = [fixtures::a1(), fixtures::a2(), fixtures::kronecker()][alg_idx].clone();
        let fs = sample_functors(alg.num_vertices());
        let (alpha, beta) = (&fs[a % fs.len()], &fs[b % fs.len()]);
        let beta = match b % 3 {
            0 => alpha.clone().radical_step(),
            1 => alpha.clone().socle_step(),
            _ => beta.clone(),
        };
        let m = sample(&alg, seed);
        let dl = layer_length(alpha, &beta, &m).unwrap();
        let zero = alpha.evaluate(&m).unwrap().is_zero();
        prop_assert_eq!(dl == LayerLength::Finite(0), zero);
        if !zero {
            let next = layer_length(alpha, &beta, &beta.evaluate(&m).unwrap()).unwrap();
            prop_assert_eq!(dl, next.succ());
        }
    }

    #[test]
    fn direct_sums_take_the_max(seed in any::<u64>(), a in 0usize..64, b in 0usize..64) {
        let alg = fixtures::a2();
        let fs = sample_functors(3);
        let (alpha, beta) = (&fs[a % fs.len()], &fs[b % fs.len()]);
        let m = sample(&alg, seed);
        let n = sample(&alg, seed.wrapping_add(1));
        let sum = layer_length(alpha, beta, &m.direct_sum(&n)).unwrap();
        prop_assert_eq!(sum, layer_length(alpha, beta, &m).unwrap().max(layer_length(alpha, beta, &n).unwrap()));
    }

    #[test]
    fn torsion_part_is_ideal_action_sampled(alg_idx in 0usize..3, seed in any::<u64>(), mask in 0usize..8) {
        let alg = [fixtures::a1(), fixtures::a2(), fixtures::kronecker()][alg_idx].clone();
        let n = alg.num_vertices();
        let s: VertexSet = (0..n).filter(|v| mask & (1 << v) != 0).collect();
        let m = sample(&alg, seed);
        prop_assert_eq!(m.act(&torsion_ideal(&alg, &s)).unwrap(), torsion_t(&m, &s));
    }
}
