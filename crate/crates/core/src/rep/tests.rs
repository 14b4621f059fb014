use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::Ideal;
use crate::fixtures;
use crate::format::parse_module;

fn all_fixtures() -> Vec<Arc<Algebra>> {
    vec![fixtures::a1(), fixtures::a2(), fixtures::a3(), fixtures::kronecker()]
}

/// Counts homomorphisms by trying every tuple of per-vertex matrices.
fn brute_hom_count(a: &Rep, b: &Rep) -> u64 {
    let f = a.field();
    let p = f.p();
    let shapes: Vec<(usize, usize)> = a.dims().iter().zip(b.dims()).map(|(&s, &t)| (t, s)).collect();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    assert!(total <= 14, "oracle too expensive");
    let mut count = 0;
    let mut digits = vec![0u32; total];
    loop {
        let mut maps = Vec::new();
        let mut off = 0;
        for &(r, c) in &shapes {
            maps.push(Mat::from_vec(f, r, c, digits[off..off + r * c].to_vec()));
            off += r * c;
        }
        if Morphism::new(maps).is_homomorphism(a, b) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == total {
                return count;
            }
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn simples_and_projectives() {
    let a2 = fixtures::a2();
    assert_eq!(Rep::simple(&a2, 0).unwrap().dims(), &[1, 0, 0]);
    let p1 = Rep::projective(&a2, 0).unwrap();
    assert_eq!(p1.dims(), &[1, 1, 0]);
    assert_eq!(p1.arrow_mat(0), &Mat::identity(a2.field(), 1));
    assert!(Rep::simple(&a2, 3).is_err());

    let a1 = fixtures::a1();
    let p = Rep::projective(&a1, 0).unwrap();
    assert_eq!(p.dims(), &[3]);
    let jordan = Mat::from_rows(a1.field(), 3, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
    assert_eq!(p.arrow_mat(0), &jordan);
}

#[test]
fn regular_module_dimensions() {
    assert_eq!(Rep::regular(&fixtures::a1()).dims(), &[3]);
    assert_eq!(Rep::regular(&fixtures::a2()).dims(), &[1, 2, 2]);
    assert_eq!(Rep::regular(&fixtures::semisimple(4)).dims(), &[1, 1, 1, 1]);
    for alg in all_fixtures() {
        let sum = Rep::direct_sum_all(
            &alg,
            &(0..alg.num_vertices()).map(|v| Rep::projective(&alg, v).unwrap()).collect::<Vec<_>>(),
        );
        assert!(Rep::regular(&alg).is_isomorphic(&sum));
    }
}

#[test]
fn injectives_over_a2() {
    let a2 = fixtures::a2();
    let p1 = Rep::projective(&a2, 0).unwrap();
    let p2 = Rep::projective(&a2, 1).unwrap();
    assert!(Rep::injective(&a2, 0).unwrap().is_isomorphic(&Rep::simple(&a2, 0).unwrap()));
    assert!(Rep::injective(&a2, 1).unwrap().is_isomorphic(&p1));
    assert!(Rep::injective(&a2, 2).unwrap().is_isomorphic(&p2));
    for alg in all_fixtures() {
        for v in 0..alg.num_vertices() {
            let inj = Rep::injective(&alg, v).unwrap();
            assert!(inj.validate().is_ok());
            let soc = inj.sub_rep(&inj.socle());
            assert!(soc.is_isomorphic(&Rep::simple(&alg, v).unwrap()));
        }
    }
}

#[test]
fn radical_socle_top() {
    let a2 = fixtures::a2();
    let p1 = Rep::projective(&a2, 0).unwrap();
    let s1 = Rep::simple(&a2, 0).unwrap();
    let s2 = Rep::simple(&a2, 1).unwrap();
    let s3 = Rep::simple(&a2, 2).unwrap();
    assert_eq!(p1.radical().dims(), vec![0, 1, 0]);
    assert!(p1.sub_rep(&p1.radical()).is_isomorphic(&s2));
    assert!(p1.top().is_isomorphic(&s1));
    let p2 = Rep::projective(&a2, 1).unwrap();
    assert_eq!(p2.socle().dims(), vec![0, 0, 1]);
    assert!(p2.sub_rep(&p2.socle()).is_isomorphic(&s3));
    for s in [&s1, &s2, &s3] {
        assert!(s.radical().is_zero());
        assert!(s.socle().is_full());
    }
}

#[test]
fn quotients() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    let (same, proj) = p2.quotient(&SubRep::zero(&p2)).unwrap();
    assert!(same.is_isomorphic(&p2));
    assert!(proj.is_homomorphism(&p2, &same));
    assert!(p2.quotient_rep(&SubRep::full(&p2)).is_zero());
    let (q, proj) = p2.quotient(&p2.socle()).unwrap();
    assert!(q.is_isomorphic(&Rep::simple(&a2, 1).unwrap()));
    assert_eq!(proj.kernel(), p2.socle());

    let bad =
        SubRep::new(vec![Subspace::zero(a2.field(), 0), Subspace::full(a2.field(), 1), Subspace::zero(a2.field(), 1)]);
    assert!(matches!(p2.quotient(&bad), Err(Error::NotSubmodule(_))));
}

#[test]
fn generated_submodules() {
    let a2 = fixtures::a2();
    let p1 = Rep::projective(&a2, 0).unwrap();
    let all = p1.generated_subrep(&[vec![vec![1]], vec![], vec![]]);
    assert!(all.is_full());
    let soc = p1.generated_subrep(&[vec![], vec![vec![1]], vec![]]);
    assert_eq!(soc, p1.socle());
    assert!(p1.generated_subrep(&[]).is_zero());
}

#[test]
fn hom_space_examples() {
    let a2 = fixtures::a2();
    let s1 = Rep::simple(&a2, 0).unwrap();
    let s2 = Rep::simple(&a2, 1).unwrap();
    let p1 = Rep::projective(&a2, 0).unwrap();
    assert!(s1.hom_space(&s2).unwrap().is_empty());
    assert_eq!(p1.hom_space(&p1).unwrap().len(), 1);
    let to_top = p1.hom_space(&s1).unwrap();
    assert_eq!(to_top.len(), 1);
    assert!(to_top[0].is_surjective());
    assert_eq!(s1.hom_space(&Rep::simple(&fixtures::a3(), 0).unwrap()), Err(Error::AlgebraMismatch));
}

#[test]
fn hom_space_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for alg in all_fixtures() {
        let mut checked = 0;
        while checked < 25 {
            let a = random_module(&alg, 4, &mut rng);
            let b = random_module(&alg, 4, &mut rng);
            let cost: usize = a.dims().iter().zip(b.dims()).map(|(x, y)| x * y).sum();
            if cost > 12 {
                continue;
            }
            let basis = a.hom_space(&b).unwrap();
            assert!(basis.iter().all(|h| h.is_homomorphism(&a, &b)));
            assert_eq!(brute_hom_count(&a, &b), 2u64.pow(basis.len() as u32), "{a:?} -> {b:?}");
            checked += 1;
        }
    }
}

#[test]
fn isomorphism_tests() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    assert!(p2.is_isomorphic(&p2));
    assert_eq!(Rep::simple(&a2, 0).unwrap().iso_test(&Rep::simple(&a2, 1).unwrap()), IsoVerdict::NotIso);

    let f3 = crate::format::parse_algebra("field p=3\nvertices 1 2\narrows a:1->2 b:1->2\nrelations\n").unwrap();
    let m = parse_module("dims 1=2 2=2\narrow a = [[1,0],[0,1]]\narrow b = [[1,1],[0,1]]", &f3).unwrap();
    let g1 = Mat::from_rows(f3.field(), 2, &[vec![2, 1], vec![1, 1]]);
    let g2 = Mat::from_rows(f3.field(), 2, &[vec![0, 1], vec![1, 2]]);
    let conj = m.conjugate(&[g1, g2]);
    assert_ne!(conj, m);
    match m.iso_test(&conj) {
        IsoVerdict::Iso(w) => {
            assert!(w.is_homomorphism(&m, &conj));
            assert!(w.is_iso());
        }
        other => panic!("expected an isomorphism, got {other:?}"),
    }
    // Same dimension vector and same layers, different Kronecker parameter.
    let other = parse_module("dims 1=2 2=2\narrow a = [[1,0],[0,1]]\narrow b = [[2,1],[0,2]]", &f3).unwrap();
    assert_eq!(m.fingerprint(), other.fingerprint());
    assert_eq!(m.iso_test(&other), IsoVerdict::NotIso);
}

#[test]
fn projective_covers() {
    for alg in all_fixtures() {
        for v in 0..alg.num_vertices() {
            let s = Rep::simple(&alg, v).unwrap();
            let p = Rep::projective(&alg, v).unwrap();
            let (cover, _) = s.projective_cover();
            assert!(cover.is_isomorphic(&p));
            let (pp, map) = p.projective_cover();
            assert!(pp.is_isomorphic(&p));
            assert!(map.is_iso());
        }
    }
    let a2 = fixtures::a2();
    let p1 = Rep::projective(&a2, 0).unwrap();
    let rad = p1.sub_rep(&p1.radical());
    assert!(rad.projective_cover().0.is_isomorphic(&Rep::projective(&a2, 1).unwrap()));
    let zero = Rep::zero(&a2);
    let (z, _) = zero.projective_cover();
    assert!(z.is_zero());
}

#[test]
fn syzygies_and_projective_dimension() {
    let a2 = fixtures::a2();
    let s = |v| Rep::simple(&a2, v).unwrap();
    assert!(s(0).syzygy().is_isomorphic(&s(1)));
    assert!(s(0).syzygy_power(2).is_isomorphic(&s(2)));
    assert!(s(0).syzygy_power(3).is_zero());
    assert_eq!(s(2).proj_dim(DEFAULT_PD_CAP), ProjDim::Finite(0));
    assert_eq!(s(1).proj_dim(DEFAULT_PD_CAP), ProjDim::Finite(1));
    assert_eq!(s(0).proj_dim(DEFAULT_PD_CAP), ProjDim::Finite(2));
    assert_eq!(Rep::zero(&a2).proj_dim(5), ProjDim::Finite(0));

    let a1 = fixtures::a1();
    let simple = Rep::simple(&a1, 0).unwrap();
    let omega = simple.syzygy();
    let p = Rep::projective(&a1, 0).unwrap();
    let two = p.quotient_rep(&p.radical().intersect(&p.socle()));
    assert_eq!(two.dims(), &[2]);
    assert!(omega.is_isomorphic(&two));
    assert!(omega.syzygy().is_isomorphic(&simple));
    for cap in [1, 4, 9] {
        assert_eq!(simple.proj_dim(cap), ProjDim::AtLeast(cap));
    }
    assert_eq!(p.proj_dim(DEFAULT_PD_CAP), ProjDim::Finite(0));
    assert!(p.syzygy().is_zero());
}

#[test]
fn cokernel_presentations() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    // The image of P3 -> P2 is the socle; its cokernel is S2.
    let image = p2.generated_subrep(&[vec![], vec![], vec![vec![1]]]);
    assert_eq!(p2.quotient_rep(&image).dims(), &[0, 1, 0]);
    assert!(p2.quotient_rep(&SubRep::full(&p2)).is_zero());
    assert_eq!(p2.quotient_rep(&SubRep::zero(&p2)), p2);
}

#[test]
fn ideal_action() {
    let a2 = fixtures::a2();
    let p2 = Rep::projective(&a2, 1).unwrap();
    assert!(p2.act(&Ideal::zero(&a2)).unwrap().is_zero());
    assert!(p2.act(&Ideal::whole(&a2)).unwrap().is_full());
    assert_eq!(p2.act(&Ideal::jacobson_radical(&fixtures::a1())), Err(Error::AlgebraMismatch));
}

#[test]
fn random_modules_respect_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for alg in all_fixtures() {
        for _ in 0..40 {
            let m = random_module(&alg, 5, &mut rng);
            assert!(m.total_dim() <= 5);
            assert!(m.validate().is_ok());
        }
    }
}

fn sample(alg: &Arc<Algebra>, seed: u64, bound: usize) -> Rep {
    random_module(alg, bound, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn radical_and_socle_facts(alg_idx in 0usize..4, seed in any::<u64>()) {
        let m = sample(&all_fixtures()[alg_idx], seed, 6);
        let rad = m.radical();
        prop_assert!(m.check_subrep(&rad).is_ok());
        prop_assert!(m.check_subrep(&m.socle()).is_ok());
        prop_assert_eq!(m.top().total_dim() + rad.total_dim(), m.total_dim());
        if !m.is_zero() {
            prop_assert!(!m.socle().is_zero());
            prop_assert!(rad.total_dim() < m.total_dim());
        }
        let j = Ideal::jacobson_radical(m.algebra());
        prop_assert_eq!(m.act(&j).unwrap(), rad);
        prop_assert!(m.top().radical().is_zero());
    }

    #[test]
    fn cover_is_minimal(alg_idx in 0usize..4, seed in any::<u64>()) {
        let m = sample(&all_fixtures()[alg_idx], seed, 6);
        let (p, cover) = m.projective_cover();
        prop_assert!(cover.is_homomorphism(&p, &m));
        prop_assert!(cover.is_surjective());
        prop_assert!(cover.kernel().is_contained_in(&p.radical()));
        prop_assert!(m.syzygy().validate().is_ok());
    }

    #[test]
    fn syzygy_is_additive(alg_idx in 0usize..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let alg = &all_fixtures()[alg_idx];
        let a = sample(alg, s1, 4);
        let b = sample(alg, s2, 4);
        let lhs = a.direct_sum(&b).syzygy();
        let rhs = a.syzygy().direct_sum(&b.syzygy());
        prop_assert!(lhs.is_isomorphic(&rhs));
    }

    #[test]
    fn epis_carry_radicals_onto_radicals(alg_idx in 0usize..4, seed in any::<u64>()) {
        let m = sample(&all_fixtures()[alg_idx], seed, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x55);
        let sub = random_submodule(&m, &mut rng);
        let (q, proj) = m.quotient(&sub).unwrap();
        prop_assert_eq!(m.radical().image_under(&proj), q.radical());
        prop_assert!(m.socle().image_under(&proj).is_contained_in(&q.socle()));
    }

    #[test]
    fn conjugates_are_isomorphic(alg_idx in 0usize..4, seed in any::<u64>()) {
        let m = sample(&all_fixtures()[alg_idx], seed, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let change: Vec<Mat> = m.dims().iter().map(|&d| loop {
            let data = (0..d * d).map(|_| rand::Rng::gen_range(&mut rng, 0..2)).collect();
            let g = Mat::from_vec(m.field(), d, d, data);
            if g.is_invertible() { break g; }
        }).collect();
        let c = m.conjugate(&change);
        prop_assert!(m.is_isomorphic(&c));
    }
}
