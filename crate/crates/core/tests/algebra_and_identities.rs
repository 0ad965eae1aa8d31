mod common;

use common::{f, fields, q, seeded_algebra};
use prealg_core::format::{parse_algebra, write_algebra};
use prealg_core::identities::{jacobi_defect, pre_lie_defect, Identity};
use prealg_core::samples::{all_algebras, change_basis, pick, random_associative, random_invertible};
use prealg_core::{Algebra, CoeffDomain, TwoProfile, Vector, DEFAULT_BUDGET};
use proptest::prelude::*;

proptest! {
    #[test]
    fn functors_have_the_right_symmetry(seed in any::<u64>(), which in 0usize..4, dim in 1usize..5) {
        let d = fields()[which];
        let a = seeded_algebra(seed, d, dim);
        prop_assert!(a.commutator_algebra().is_anticommutative());
        prop_assert!(a.anticommutator_algebra().is_commutative());
        if d.characteristic() == 2 {
            prop_assert_eq!(a.commutator_algebra(), a.anticommutator_algebra());
        }
    }

    #[test]
    fn split_product_recombines(seed in any::<u64>(), which in 0usize..3, dim in 1usize..5) {
        let d = [q(), f(3), CoeffDomain::residue_ring(15).unwrap()][which];
        prop_assert_eq!(d.two_profile(), TwoProfile::TwoInvertible);
        let a = seeded_algebra(seed, d, dim);
        let s = a.split_product().unwrap();
        prop_assert!(s.comm.is_commutative());
        prop_assert!(s.anticomm.is_anticommutative());
        prop_assert_eq!(s.recombine(), a.clone());
        let two = d.from_i64(2);
        prop_assert_eq!(a.commutator_algebra(), s.anticomm.scaled(&two));
        prop_assert_eq!(a.anticommutator_algebra(), s.comm.scaled(&two));
    }

    #[test]
    fn witnesses_reevaluate(seed in any::<u64>(), which in 0usize..4, dim in 1usize..4) {
        let a = seeded_algebra(seed, fields()[which], dim);
        for id in Identity::ALL {
            let r = id.check(&a, DEFAULT_BUDGET);
            prop_assert_eq!(r.holds, r.witness.is_none());
            prop_assert_eq!(r.holds, r.failed_clauses.is_empty());
            if let Some(w) = &r.witness {
                prop_assert!(!w.defect.is_zero());
                let args = &w.arguments;
                match id {
                    Identity::PreLie => prop_assert_eq!(&pre_lie_defect(&a, &args[0], &args[1], &args[2]), &w.defect),
                    Identity::LieAdmissible => prop_assert_eq!(&jacobi_defect(&a, &args[0], &args[1], &args[2]), &w.defect),
                    Identity::Associative => {
                        prop_assert_eq!(&a.associator(&args[0], &args[1], &args[2]).unwrap(), &w.defect)
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn files_roundtrip(seed in any::<u64>(), which in 0usize..4, dim in 1usize..5) {
        let a = seeded_algebra(seed, fields()[which], dim);
        let text = write_algebra(&a);
        let back = parse_algebra(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.name(), a.name());
        prop_assert_eq!(back.labels(), a.labels());
        prop_assert_eq!(write_algebra(&back), text);
    }
}

#[test]
fn identity_hierarchy_over_f2_dim2() {
    for a in all_algebras(f(2), 2, DEFAULT_BUDGET).unwrap() {
        let holds = |id: Identity| id.check(&a, DEFAULT_BUDGET).holds;
        if holds(Identity::Associative) {
            assert!(holds(Identity::PreLie));
            assert!(holds(Identity::PreJordan));
        }
        if holds(Identity::PreLie) {
            assert!(holds(Identity::LieAdmissible));
        }
    }
}

#[test]
fn anti_pre_lie_implies_lie_admissible() {
    let mut found = Vec::new();
    for d in [f(2), f(3)] {
        found.extend(all_algebras(d, 2, 10_000).unwrap().filter(|a| Identity::AntiPreLie.check(a, DEFAULT_BUDGET).holds));
    }
    // random basis changes of the 𝔽₃ examples widen the sample
    let mut r = common::rng(5);
    let f3: Vec<Algebra> = found.iter().filter(|a| a.domain() == f(3)).cloned().collect();
    for _ in 0..300 {
        let a = pick(&f3, &mut r);
        let p = random_invertible(f(3), 2, &mut r);
        found.push(change_basis(a, &p).unwrap());
    }
    assert!(found.len() >= 500);
    for a in &found {
        assert!(Identity::AntiPreLie.check(a, DEFAULT_BUDGET).holds);
        assert!(Identity::LieAdmissible.check(a, DEFAULT_BUDGET).holds);
    }
}

#[test]
fn trivial_algebras_satisfy_everything() {
    for d in fields() {
        for n in 1..4 {
            let z = Algebra::zero(d, n);
            assert!(Identity::ALL.iter().all(|id| id.check(&z, DEFAULT_BUDGET).holds));
        }
        // e·e = c e
        for c in [0, 1, 2] {
            let a = Algebra::from_fn("line", d, 1, |_, _| Vector::from_i64s(d, &[c]));
            for id in Identity::ALL.into_iter().filter(|&i| i != Identity::Anticommutative) {
                assert!(id.check(&a, DEFAULT_BUDGET).holds, "{id} on line {c} over {d}");
            }
        }
    }
}

#[test]
fn associative_samples_are_pre_lie() {
    let mut r = common::rng(11);
    for d in fields() {
        for dim in 1..4 {
            let a = random_associative(d, dim, &mut r);
            assert!(Identity::Associative.check(&a, DEFAULT_BUDGET).holds);
            assert!(Identity::PreLie.check(&a, DEFAULT_BUDGET).holds);
        }
    }
}
