mod common;

use common::{f, fields, q, rng, seeded_algebra};
use prealg_core::idempotents::{anti_pre_classification_check, enumerate_idempotents, roundtrip_check, IdempotentKind};
use prealg_core::identities::is_pre_lie;
use prealg_core::morphisms::{classify_map, AlgebraMap};
use prealg_core::samples::{all_algebras, all_matrices, random_associative};
use prealg_core::superalgebra::{double, prop_doubling_equivalences, DoublingParams, SuperAlgebra, SuperElement};
use prealg_core::tensor::{
    enumerate_trees, generators_in_kernel_check, graded_ideal_closure, graded_mul, theorem_generators, tree_product, universal_morphism_eval,
    GeneratorKind, GradedElement, MagmaTree,
};
use prealg_core::{Algebra, CoeffDomain, Vector, DEFAULT_BUDGET};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn idempotent_bijections_over_small_fields() {
    for a in all_algebras(f(2), 2, DEFAULT_BUDGET).unwrap().step_by(3) {
        for kind in [IdempotentKind::PreMorphism, IdempotentKind::GeneralizedMorphism] {
            let r = roundtrip_check(&a, kind, DEFAULT_BUDGET).unwrap();
            assert!(r.bijection && r.idempotents == r.pairs);
        }
    }
    for seed in 0..10 {
        let a = seeded_algebra(seed, f(3), 2);
        for kind in IdempotentKind::ALL {
            assert!(roundtrip_check(&a, kind, DEFAULT_BUDGET).unwrap().bijection);
        }
        let a = seeded_algebra(seed, f(2), 3);
        for kind in [IdempotentKind::PreMorphism, IdempotentKind::GeneralizedMorphism] {
            assert!(roundtrip_check(&a, kind, 1024).unwrap().bijection);
        }
    }
}

#[test]
fn idempotent_algebra_endomorphisms_belong_to_both_kinds() {
    for seed in 0..20 {
        let a = seeded_algebra(seed, f(2), 2);
        let pre = enumerate_idempotents(&a, IdempotentKind::PreMorphism, DEFAULT_BUDGET).unwrap();
        let gen = enumerate_idempotents(&a, IdempotentKind::GeneralizedMorphism, DEFAULT_BUDGET).unwrap();
        for m in all_matrices(f(2), 2, 2, DEFAULT_BUDGET).unwrap() {
            let is_morphism = classify_map(&AlgebraMap::endo(&a, m.clone()).unwrap()).unwrap().algebra_morphism.holds;
            if is_morphism && m.mul(&m).unwrap() == m {
                assert!(pre.contains(&m) && gen.contains(&m));
            }
        }
    }
}

#[test]
fn anti_pre_characterization() {
    for seed in 0..10 {
        for p in [3, 5] {
            let r = anti_pre_classification_check(&seeded_algebra(seed, f(p), 2), 1 << 20).unwrap();
            assert!(r.agree, "{:?}", r.counterexample);
        }
    }
}

fn random_element<R: Rng>(d: CoeffDomain, n: usize, r: &mut R) -> Vector {
    Vector::new(d, (0..n).map(|_| d.random(r)).collect()).unwrap()
}

proptest! {
    #[test]
    fn doubles_are_graded_and_the_closed_form_matches(seed in any::<u64>(), which in 0usize..4, dim in 1usize..4) {
        let d = fields()[which];
        let a = seeded_algebra(seed, d, dim);
        let mut r = rng(seed ^ 7);
        let p = DoublingParams::new(d.random(&mut r), d.random(&mut r)).unwrap();
        let s = SuperAlgebra::new(&a, &p).unwrap();
        prop_assert!(s.grading_holds());
        prop_assert_eq!(double(&a, &p).unwrap().dim(), 2 * dim);
        for _ in 0..4 {
            let u = SuperElement::new(random_element(d, dim, &mut r), random_element(d, dim, &mut r)).unwrap();
            let v = SuperElement::new(random_element(d, dim, &mut r), random_element(d, dim, &mut r)).unwrap();
            prop_assert_eq!(s.supercommutator(&u, &v).unwrap(), s.supercommutator_closed_form(&u, &v).unwrap());
        }
    }

    #[test]
    fn universal_morphism_is_multiplicative(seed in any::<u64>(), which in 0usize..3, dim in 1usize..3) {
        let d = [q(), f(2), f(3)][which];
        let a = seeded_algebra(seed, d, dim);
        let max = 4;
        let trees = enumerate_trees(max);
        let mut r = rng(seed ^ 3);
        // u of degree ≤ 2 and v of degree ≤ 2 never truncate at 4
        let element = |r: &mut rand_chacha::ChaCha8Rng| {
            let mut u = GradedElement::zero(d, dim, max);
            for t in trees[..2].iter().flatten() {
                let len = dim.pow(t.degree() as u32);
                u.add_component(t.clone(), &random_element(d, len, r)).unwrap();
            }
            u
        };
        let (u, v) = (element(&mut r), element(&mut r));
        let uv = graded_mul(&u, &v).unwrap();
        let lhs = universal_morphism_eval(&a, &uv).unwrap();
        let rhs = a.mul(&universal_morphism_eval(&a, &u).unwrap(), &universal_morphism_eval(&a, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // bilinearity and grading of the product
        let w = element(&mut r);
        prop_assert_eq!(graded_mul(&u.add(&w).unwrap(), &v).unwrap(), uv.add(&graded_mul(&w, &v).unwrap()).unwrap());
        for (t, _) in uv.components() {
            let (l, rt) = t.children().unwrap();
            prop_assert!(u.component(l).is_some() && v.component(rt).is_some());
        }
    }
}

#[test]
fn doubling_equivalences_over_f2_dim2() {
    let params: Vec<DoublingParams> = [(0, 0), (0, 1), (1, 1)].iter().map(|&(m, l)| DoublingParams::from_i64(f(2), m, l)).collect();
    for a in all_algebras(f(2), 2, DEFAULT_BUDGET).unwrap().step_by(5) {
        for m in all_matrices(f(2), 2, 2, DEFAULT_BUDGET).unwrap() {
            let map = AlgebraMap::endo(&a, m).unwrap();
            for p in &params {
                assert!(prop_doubling_equivalences(&map, p).unwrap().all_agree);
            }
        }
    }
}

#[test]
fn tree_counts_follow_the_catalan_recurrence() {
    let max = 7;
    let mut catalan = vec![0u64; max + 1];
    catalan[1] = 1;
    for n in 2..=max {
        catalan[n] = (1..n).map(|i| catalan[i] * catalan[n - i]).sum();
    }
    let trees = enumerate_trees(max);
    for (d, ts) in trees.iter().enumerate() {
        assert_eq!(ts.len() as u64, catalan[d + 1]);
        assert!(ts.iter().all(|t| t.degree() == d + 1));
    }
    let mut r = rng(1);
    for _ in 0..100 {
        let s = &trees[r.gen_range(0..3)];
        let t = &trees[r.gen_range(0..3)];
        let (s, t) = (&s[r.gen_range(0..s.len())], &t[r.gen_range(0..t.len())]);
        assert_eq!(tree_product(s, t).degree(), s.degree() + t.degree());
    }
    assert_eq!(tree_product(&MagmaTree::leaf(), &MagmaTree::leaf()), trees[1][0]);
}

#[test]
fn pre_lie_generators_and_kernels() {
    let mut r = rng(2);
    for d in [q(), f(3), f(5)] {
        for dim in 1..4 {
            let a = random_associative(d, dim, &mut r);
            let rep = generators_in_kernel_check(&a, GeneratorKind::PreLie);
            assert!(rep.all_in_kernel && rep.agree);
            let rep = generators_in_kernel_check(&a, GeneratorKind::LieAdmissible);
            assert!(rep.all_in_kernel && rep.agree);
        }
    }
    for seed in 0..20 {
        let a = seeded_algebra(seed, f(3), 2);
        let rep = generators_in_kernel_check(&a, GeneratorKind::PreLie);
        assert!(rep.agree);
        assert_eq!(rep.all_in_kernel, is_pre_lie(&a).holds);
    }
}

#[test]
fn closure_stays_out_of_degree_one_for_associative_inputs() {
    let mut r = rng(4);
    for dim in 1..3 {
        let a = random_associative(f(3), dim, &mut r);
        let gens = theorem_generators(&a, GeneratorKind::PreLie, 4).unwrap();
        let t = graded_ideal_closure(&gens, 4, DEFAULT_BUDGET).unwrap();
        assert!(t.degree_one_trivial);
        assert_eq!(t.per_degree.iter().map(|x| x.dim).sum::<usize>(), t.total_dim);
    }
    let zero = Algebra::zero(q(), 2);
    let t = graded_ideal_closure(&theorem_generators(&zero, GeneratorKind::PreLie, 3).unwrap(), 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(t.per_degree[1].dim, 1);
}
