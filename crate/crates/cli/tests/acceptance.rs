//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. All sampling uses fixed seeds, and every comparison is
//! exact (tolerance 0).

use std::fs;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use prealg_core::idempotents::{anti_pre_classification_check, roundtrip_check, IdempotentKind};
use prealg_core::identities::{is_anti_pre_lie, is_lie_admissible, is_pre_lie};
use prealg_core::linear::enumerate_subspaces;
use prealg_core::morphisms::{
    classify_map, first_iso_theorem, lambda_anti_criterion, lambda_map, second_iso_theorem, torsionfree_bridge, AlgebraMap,
};
use prealg_core::samples::{a2, all_algebras, all_matrices, random_algebra, random_associative};
use prealg_core::substructures::{huq_smith_commutator, is_kind, pre_ideal_commutator, SubstructureKind};
use prealg_core::superalgebra::{
    epsilon_prop_check, prop_doubling_equivalences, super_morphism_prop_check, DoublingParams, SuperAlgebra, SuperElement,
};
use prealg_core::tensor::{
    enumerate_trees, generators_in_kernel_check, graded_ideal_closure, graded_mul, theorem_generators, universal_morphism_eval,
    GeneratorKind, GradedElement,
};
use prealg_core::{Algebra, CoeffDomain, Subspace, TwoProfile, Vector, DEFAULT_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn f(p: u64) -> CoeffDomain {
    CoeffDomain::prime_field(p).unwrap()
}

fn q() -> CoeffDomain {
    CoeffDomain::rationals()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn endomaps(a: &Algebra) -> impl Iterator<Item = AlgebraMap> + '_ {
    all_matrices(a.domain(), a.dim(), a.dim(), 1 << 20).unwrap().map(move |m| AlgebraMap::endo(a, m).unwrap())
}

fn random_vector<R: Rng>(d: CoeffDomain, n: usize, r: &mut R) -> Vector {
    Vector::new(d, (0..n).map(|_| d.random(r)).collect()).unwrap()
}

fn functor_laws() -> Outcome {
    let mut r = rng(1);
    let fields = [q(), f(2), f(3), f(5)];
    let mut char2 = 0;
    for k in 0..500 {
        let d = fields[k % 4];
        let a = random_algebra(d, r.gen_range(1..=4), &mut r);
        let (u, c) = (a.commutator_algebra(), a.anticommutator_algebra());
        ensure(u.is_anticommutative(), || format!("U not anticommutative for sample {k}"))?;
        ensure(c.is_commutative(), || format!("C not commutative for sample {k}"))?;
        if d.characteristic() == 2 {
            char2 += 1;
            ensure(u == c, || format!("U != C in characteristic 2 for sample {k}"))?;
        }
    }
    Ok(format!("500 algebras, {char2} in characteristic 2"))
}

/// `xy = yx` and `xy = -yx` as conditions on the structure constants.
fn symmetric(a: &Algebra) -> bool {
    a.opposite() == *a
}

fn skew(a: &Algebra) -> bool {
    a.opposite() == a.scaled(&-a.domain().one())
}

fn decomposition() -> Outcome {
    let mut r = rng(2);
    let fields = [q(), f(3), f(5), CoeffDomain::residue_ring(15).unwrap()];
    for k in 0..200 {
        let d = fields[k % 4];
        assert_eq!(d.two_profile(), TwoProfile::TwoInvertible);
        let a = random_algebra(d, r.gen_range(1..=4), &mut r);
        let s = a.split_product().map_err(|e| e.to_string())?;
        ensure(s.recombine() == a, || format!("sample {k} does not recombine"))?;
        ensure(symmetric(&s.comm) && s.comm.is_commutative(), || format!("comm part of sample {k} not symmetric"))?;
        ensure(s.anticomm.is_anticommutative(), || format!("anticomm part of sample {k} not alternating"))?;
    }
    let mut n = 0;
    for a in all_algebras(f(2), 2, DEFAULT_BUDGET).unwrap() {
        n += 1;
        ensure(symmetric(&a) == skew(&a), || "commutative and anticommutative products differ over F2".into())?;
    }
    Ok(format!("200 random splits recombine; {n} F2 tensors have Comm = AntiComm"))
}

fn lambda_criterion() -> Outcome {
    let mut samples: Vec<Algebra> = all_algebras(f(2), 2, DEFAULT_BUDGET).unwrap().collect();
    let mut r = rng(3);
    samples.extend((0..200).map(|_| random_algebra(f(3), 2, &mut r)));
    let (mut pre, mut anti) = (0, 0);
    for (k, a) in samples.iter().enumerate() {
        let lambda_pre = classify_map(&lambda_map(a)).unwrap().pre_morphism.holds;
        ensure(is_pre_lie(a).holds == lambda_pre, || format!("pre-Lie criterion disagrees on sample {k}"))?;
        let rep = lambda_anti_criterion(a);
        ensure(rep.agree, || format!("anti-pre-Lie criterion disagrees on sample {k}: {rep:?}"))?;
        ensure(rep.anti_pre_lie == is_anti_pre_lie(a).holds && rep.lie_admissible == is_lie_admissible(a).holds, || "inconsistent report".into())?;
        pre += usize::from(lambda_pre);
        anti += usize::from(rep.anti_pre_lie);
    }
    Ok(format!("{} algebras, {pre} pre-Lie, {anti} anti-pre-Lie, 0 disagreements", samples.len()))
}

fn bridge() -> Outcome {
    let a = a2(f(3));
    let mut morphisms = 0;
    let mut n = 0;
    for map in endomaps(&a) {
        n += 1;
        let rep = torsionfree_bridge(&map).map_err(|e| e.to_string())?;
        ensure(rep.passed, || format!("bridge fails for {}", map.matrix()))?;
        morphisms += usize::from(rep.algebra_morphism);
    }
    ensure(n == 81, || format!("{n} endomaps"))?;
    Ok(format!("81 endomaps of A2/F3, {morphisms} algebra morphisms, 0 exceptions"))
}

fn idempotent_bijections() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for a in all_algebras(f(2), 2, DEFAULT_BUDGET).unwrap() {
        for kind in [IdempotentKind::PreMorphism, IdempotentKind::GeneralizedMorphism] {
            let rep = roundtrip_check(&a, kind, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(rep.bijection && rep.idempotents == rep.pairs, || format!("bijection fails: {rep:?}"))?;
            total += rep.idempotents;
        }
    }
    let mut r = rng(5);
    let mut qualifying = 0;
    for k in 0..50 {
        let a = random_algebra(f(3), 2, &mut r);
        let rep = anti_pre_classification_check(&a, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(rep.agree && rep.matrices_checked == 81, || format!("anti-pre characterization fails on sample {k}: {rep:?}"))?;
        qualifying += rep.qualifying;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= Duration::from_secs(60), || format!("took {elapsed:?}, budget 60 s"))?;
    Ok(format!(
        "256 F2 algebras x 2 kinds ({total} idempotents), 50 F3 algebras x 81 matrices ({qualifying} anti-pre idempotents), {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn substructure_correspondence() -> Outcome {
    let mut r = rng(6);
    let (mut pre_ideals, mut kernels) = (0, 0);
    for dim in [2, 3] {
        let subspaces: Vec<Subspace> = enumerate_subspaces(f(2), dim, DEFAULT_BUDGET).unwrap().collect();
        for k in 0..50 {
            let a = random_algebra(f(2), dim, &mut r);
            let u = a.commutator_algebra();
            let mut members = Vec::new();
            for s in &subspaces {
                let pre = is_kind(&a, s, SubstructureKind::PreIdeal).unwrap();
                ensure(pre == is_kind(&u, s, SubstructureKind::Ideal).unwrap(), || format!("correspondence fails (dim {dim}, sample {k})"))?;
                if pre {
                    members.push(s);
                }
            }
            pre_ideals += members.len();
            for i in &members {
                for j in &members {
                    let lhs = pre_ideal_commutator(&a, i, j).unwrap();
                    let rhs = huq_smith_commutator(&u, i, j).unwrap();
                    ensure(lhs == rhs, || format!("commutators differ (dim {dim}, sample {k})"))?;
                }
            }
            for map in endomaps(&a) {
                if classify_map(&map).unwrap().pre_morphism.holds {
                    kernels += 1;
                    ensure(is_kind(&a, &map.kernel().unwrap(), SubstructureKind::PreIdeal).unwrap(), || "kernel is not a pre-ideal".into())?;
                }
            }
        }
    }
    Ok(format!("100 algebras over F2^2 and F2^3, {pre_ideals} pre-ideals, {kernels} pre-morphism kernels"))
}

fn isomorphism_theorems() -> Outcome {
    let mut r = rng(7);
    let (mut first, mut second) = (0, 0);
    for k in 0..20 {
        let a = random_algebra(f(2), 2, &mut r);
        for map in endomaps(&a) {
            if classify_map(&map).unwrap().pre_morphism.holds {
                let rep = first_iso_theorem(&map).map_err(|e| e.to_string())?;
                ensure(rep.holds, || format!("first isomorphism theorem fails on sample {k}: {rep:?}"))?;
                first += 1;
            }
        }
        let subspaces: Vec<Subspace> = enumerate_subspaces(f(2), 2, DEFAULT_BUDGET).unwrap().collect();
        for n in subspaces.iter().filter(|s| is_kind(&a, s, SubstructureKind::PreSubalgebra).unwrap()) {
            for kk in subspaces.iter().filter(|s| is_kind(&a, s, SubstructureKind::PreIdeal).unwrap()) {
                let rep = second_iso_theorem(&a, n, kk).map_err(|e| e.to_string())?;
                ensure(rep.holds, || format!("second isomorphism theorem fails on sample {k}: {rep:?}"))?;
                second += 1;
            }
        }
    }
    Ok(format!("{first} pre-morphisms (first theorem), {second} (N, K) pairs (second theorem)"))
}

fn superalgebra() -> Outcome {
    let mut r = rng(8);
    let fields = [q(), f(2), f(3), f(5)];
    for k in 0..100 {
        let d = fields[k % 4];
        let dim = r.gen_range(1..=3);
        let a = random_algebra(d, dim, &mut r);
        let p = DoublingParams::new(d.random(&mut r), d.random(&mut r)).unwrap();
        let s = SuperAlgebra::new(&a, &p).unwrap();
        ensure(s.grading_holds(), || format!("grading fails on sample {k}"))?;
        for _ in 0..5 {
            let u = SuperElement::new(random_vector(d, dim, &mut r), random_vector(d, dim, &mut r)).unwrap();
            let v = SuperElement::new(random_vector(d, dim, &mut r), random_vector(d, dim, &mut r)).unwrap();
            ensure(s.supercommutator(&u, &v).unwrap() == s.supercommutator_closed_form(&u, &v).unwrap(), || {
                format!("closed form differs from the expansion on sample {k}")
            })?;
        }
        let eps = epsilon_prop_check(&a);
        ensure(eps.holds, || format!("epsilon identity fails on sample {k} at {:?}", eps.witness))?;
    }
    let params: Vec<DoublingParams> = [(0, 0), (0, 1), (1, 1)].iter().map(|&(m, l)| DoublingParams::from_i64(f(2), m, l)).collect();
    let mut equivalences = 0;
    for a in all_algebras(f(2), 2, DEFAULT_BUDGET).unwrap() {
        for map in endomaps(&a) {
            for p in &params {
                let rep = prop_doubling_equivalences(&map, p).map_err(|e| e.to_string())?;
                ensure(rep.all_agree, || format!("doubling equivalence fails: {rep:?}"))?;
                equivalences += 1;
            }
        }
    }
    let a = a2(f(3));
    let mut super_checks = 0;
    for map in endomaps(&a) {
        for (mu, lambda) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let rep = super_morphism_prop_check(&map, &DoublingParams::from_i64(f(3), mu, lambda)).map_err(|e| e.to_string())?;
            ensure(rep.agree, || format!("super-morphism equivalence fails: {rep:?}"))?;
            super_checks += 1;
        }
    }
    Ok(format!(
        "100 doubles graded with closed form and epsilon identity exact; {equivalences} F2 doubling equivalences; {super_checks} A2/F3 super-morphism checks"
    ))
}

fn tensor() -> Outcome {
    let mut catalan = [0usize; 6];
    catalan[1] = 1;
    for n in 2..=5 {
        catalan[n] = (1..n).map(|i| catalan[i] * catalan[n - i]).sum();
    }
    let counts: Vec<usize> = enumerate_trees(5).iter().map(Vec::len).collect();
    ensure(counts == catalan[1..] && counts == [1, 1, 2, 5, 14], || format!("tree counts {counts:?}"))?;

    let mut r = rng(9);
    let trees = enumerate_trees(4);
    for k in 0..100 {
        let d = [q(), f(3)][k % 2];
        let n = r.gen_range(1..=2);
        let a = random_algebra(d, n, &mut r);
        // degrees split so the product never exceeds the truncation
        let du = r.gen_range(1..=3);
        let dv = r.gen_range(1..=4 - du);
        let mut element = |deg: usize| {
            let mut u = GradedElement::zero(d, n, 4);
            for t in trees[..deg].iter().flatten() {
                u.add_component(t.clone(), &random_vector(d, n.pow(t.degree() as u32), &mut r)).unwrap();
            }
            u
        };
        let (u, v) = (element(du), element(dv));
        let lhs = universal_morphism_eval(&a, &graded_mul(&u, &v).unwrap()).unwrap();
        let rhs = a.mul(&universal_morphism_eval(&a, &u).unwrap(), &universal_morphism_eval(&a, &v).unwrap()).unwrap();
        ensure(lhs == rhs, || format!("evaluation not multiplicative on pair {k}"))?;
    }

    let mut closures = 0;
    for k in 0..20 {
        let d = [q(), f(3), f(5)][k % 3];
        let a = random_associative(d, 1 + k % 3, &mut r);
        ensure(is_pre_lie(&a).holds, || "associative sample is not pre-Lie".into())?;
        let rep = generators_in_kernel_check(&a, GeneratorKind::PreLie);
        ensure(rep.all_in_kernel && rep.agree, || format!("pre-Lie sample {k} has a generator outside the kernel"))?;
        if a.dim() <= 2 {
            let gens = theorem_generators(&a, GeneratorKind::PreLie, 4).unwrap();
            let table = graded_ideal_closure(&gens, 4, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            ensure(table.degree_one_trivial, || format!("closure meets degree one for sample {k}"))?;
            closures += 1;
        }
    }
    let mut outside = 0;
    while outside < 20 {
        let a = random_algebra(f(3), 2, &mut r);
        if is_pre_lie(&a).holds {
            continue;
        }
        let rep = generators_in_kernel_check(&a, GeneratorKind::PreLie);
        ensure(!rep.all_in_kernel && rep.agree, || "non-pre-Lie sample has every generator in the kernel".into())?;
        outside += 1;
    }
    Ok(format!(
        "tree counts {counts:?}; 100 multiplicative pairs; 20 pre-Lie samples in the kernel ({closures} closures at degree 4 miss degree one); 20 non-pre-Lie samples outside"
    ))
}

fn cli() -> Outcome {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let run = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_prealg")).current_dir(&root).args(args).output().unwrap();
    let golden_dir = root.join("tests/golden");
    let cases: &[(&str, &[&str], i32)] = &[
        ("check_all", &["check", "tests/fixtures/a2.json"], 1),
        ("classify_neg_identity", &["classify-map", "tests/fixtures/a2.json", "tests/fixtures/neg_identity.json"], 0),
        ("idempotents_pre_f2", &["idempotents", "tests/fixtures/a2_f2.json", "--kind", "pre", "--enumerate"], 0),
        ("idempotents_verify", &["idempotents", "tests/fixtures/a2.json", "--kind", "pre", "--verify", "tests/fixtures/diag10.json"], 0),
        ("decompose", &["decompose", "tests/fixtures/a2.json"], 0),
        ("double", &["double", "tests/fixtures/a2.json", "--mu", "1", "--lambda", "-1"], 0),
        ("tensor_prelie", &["tensor", "tests/fixtures/a2_f3.json", "--kind", "prelie", "--max-degree", "4"], 0),
        ("quotient_dot", &["quotient", "tests/fixtures/a2.json", "tests/fixtures/span_e2.json", "--product", "dot"], 0),
        ("commutator_pre", &["commutator", "tests/fixtures/a2.json", "tests/fixtures/full.json", "tests/fixtures/full.json", "--pre"], 0),
    ];
    for (name, args, code) in cases {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let outs: Vec<_> = (0..3).map(|_| run(&full)).collect();
        ensure(outs.iter().all(|o| o.status.code() == Some(*code)), || format!("{name}: wrong exit code"))?;
        ensure(outs.windows(2).all(|w| w[0].stdout == w[1].stdout), || format!("{name}: output not byte-stable"))?;
        let golden = fs::read(golden_dir.join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
        ensure(outs[0].stdout == golden, || format!("{name}: differs from golden file"))?;
    }
    let exits: &[(&[&str], i32)] = &[
        (&["check", "tests/fixtures/bad_scalar.json"], 2),
        (&["classify-map", "tests/fixtures/a2.json", "tests/fixtures/bad_shape.json"], 2),
        (&["idempotents", "tests/fixtures/a2_f2.json", "--kind", "anti", "--enumerate"], 2),
        (&["idempotents", "tests/fixtures/a2_f3.json", "--kind", "pre", "--enumerate", "--budget", "5"], 3),
        (&["check", "tests/fixtures/twisted.json", "--identity", "pre-lie"], 1),
        (&["check", "tests/fixtures/zero3.json", "--all"], 0),
    ];
    for (args, code) in exits {
        let out = run(args);
        ensure(out.status.code() == Some(*code), || format!("{args:?}: exit {:?}, expected {code}", out.status.code()))?;
    }
    Ok(format!("{} golden reports stable over 3 runs; {} exit-code cases", cases.len(), exits.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("functor laws", functor_laws),
        ("commutative/anticommutative decomposition", decomposition),
        ("left-multiplication criterion", lambda_criterion),
        ("torsion-free bridge", bridge),
        ("idempotent bijections", idempotent_bijections),
        ("substructure correspondence", substructure_correspondence),
        ("isomorphism theorems", isomorphism_theorems),
        ("superalgebra", superalgebra),
        ("tensor algebra", tensor),
        ("command line", cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1} s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1} s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
