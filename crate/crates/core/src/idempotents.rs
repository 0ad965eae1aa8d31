//! Idempotent pre-, generalized and anti-pre-endomorphisms and their
//! correspondence with direct-sum decompositions `M = K ⊕ B`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::coefficients::{CoeffDomain, DomainKind, TwoProfile};
use crate::error::{Error, Result};
use crate::linear::{check_budget, enumerate_subspaces, image, kernel, Matrix, Subspace, Vector};
use crate::morphisms::{classify_map, AlgebraMap, Condition};
use crate::samples::all_matrices;
use crate::substructures::{is_kind, SubstructureKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdempotentKind {
    PreMorphism,
    GeneralizedMorphism,
    AntiPreMorphism,
}

impl IdempotentKind {
    pub const ALL: [IdempotentKind; 3] = [IdempotentKind::PreMorphism, IdempotentKind::GeneralizedMorphism, IdempotentKind::AntiPreMorphism];

    /// Short name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            IdempotentKind::PreMorphism => "pre",
            IdempotentKind::GeneralizedMorphism => "gen",
            IdempotentKind::AntiPreMorphism => "anti",
        }
    }

    fn requires_two_torsion_free(self) -> bool {
        self == IdempotentKind::AntiPreMorphism
    }
}

impl fmt::Display for IdempotentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdempotentKind::PreMorphism => "pre-morphism",
            IdempotentKind::GeneralizedMorphism => "generalized morphism",
            IdempotentKind::AntiPreMorphism => "anti-pre-morphism",
        })
    }
}

impl FromStr for IdempotentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdempotentKind::ALL
            .into_iter()
            .find(|k| k.short_name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown idempotent kind {s:?} (expected pre, gen or anti)")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdempotentReport {
    pub kind: IdempotentKind,
    pub idempotent: bool,
    pub condition: Condition,
    pub holds: bool,
}

fn check_endo(a: &Algebra, e: &Matrix, kind: IdempotentKind) -> Result<()> {
    if e.rows() != a.dim() || e.cols() != a.dim() {
        return Err(Error::ShapeMismatch(format!("expected a {0}x{0} matrix, got {1}x{2}", a.dim(), e.rows(), e.cols())));
    }
    if kind.requires_two_torsion_free() && a.domain().two_profile() != TwoProfile::TwoInvertible {
        return Err(Error::TwoTorsionDomain(a.domain()));
    }
    Ok(())
}

/// `e∘e = e` together with the defining condition of `kind`.
pub fn is_idempotent_endo(a: &Algebra, e: &Matrix, kind: IdempotentKind) -> Result<IdempotentReport> {
    check_endo(a, e, kind)?;
    let idempotent = &e.mul(e)? == e;
    let profile = classify_map(&AlgebraMap::endo(a, e.clone())?)?;
    let condition = match kind {
        IdempotentKind::PreMorphism => profile.pre_morphism,
        IdempotentKind::GeneralizedMorphism => profile.generalized_morphism,
        IdempotentKind::AntiPreMorphism => profile.anti_pre_morphism,
    };
    Ok(IdempotentReport { kind, idempotent, condition, holds: idempotent && condition.holds })
}

/// `M = K ⊕ B` with the closure conditions attached to a kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DecompositionPair {
    pub k_part: Subspace,
    pub b_part: Subspace,
    pub kind: IdempotentKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub direct_sum: bool,
    pub k_condition: bool,
    pub b_condition: bool,
    pub valid: bool,
    /// Recorded for the anti-pre kind, whose conditions do not ask for it.
    pub k_is_pre_ideal: bool,
}

/// Every `[e_i, e_j]`.
fn commutator_span(a: &Algebra) -> Result<Subspace> {
    let n = a.dim();
    let brackets: Vec<Vector> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| a.bracket(&a.basis_vector(i), &a.basis_vector(j))).collect();
    Subspace::span(a.domain(), n, &brackets)
}

fn pairwise_commuting(a: &Algebra, s: &Subspace) -> bool {
    s.basis().iter().all(|x| s.basis().iter().all(|y| a.bracket(x, y).is_zero()))
}

pub fn check_pair(a: &Algebra, p: &DecompositionPair) -> Result<PairCheck> {
    let direct_sum = p.k_part.is_complement_of(&p.b_part)?;
    let (k_condition, b_condition) = match p.kind {
        IdempotentKind::PreMorphism => (
            is_kind(a, &p.k_part, SubstructureKind::PreIdeal)?,
            is_kind(a, &p.b_part, SubstructureKind::PreSubalgebra)?,
        ),
        IdempotentKind::GeneralizedMorphism => (
            is_kind(a, &p.k_part, SubstructureKind::GeneralizedIdeal)?,
            is_kind(a, &p.b_part, SubstructureKind::GeneralizedSubalgebra)?,
        ),
        IdempotentKind::AntiPreMorphism => (commutator_span(a)?.is_subspace_of(&p.k_part), pairwise_commuting(a, &p.b_part)),
    };
    let k_is_pre_ideal = is_kind(a, &p.k_part, SubstructureKind::PreIdeal)?;
    Ok(PairCheck { direct_sum, k_condition, b_condition, valid: direct_sum && k_condition && b_condition, k_is_pre_ideal })
}

/// `(ker e, e(M))`.
pub fn pair_from_idempotent(a: &Algebra, e: &Matrix, kind: IdempotentKind) -> Result<DecompositionPair> {
    if !is_idempotent_endo(a, e, kind)?.holds {
        return Err(Error::NotIdempotentOfKind(kind.to_string()));
    }
    let pair = DecompositionPair { k_part: kernel(e)?, b_part: image(e)?, kind };
    if !check_pair(a, &pair)?.valid {
        return Err(Error::Internal(format!("kernel and image of an idempotent {kind} do not form a valid pair")));
    }
    Ok(pair)
}

/// The projector onto `B` along `K`.
pub fn idempotent_from_pair(p: &DecompositionPair, a: &Algebra) -> Result<Matrix> {
    if p.k_part.ambient_dim() != a.dim() || p.b_part.ambient_dim() != a.dim() {
        return Err(Error::AmbientMismatch { left: a.dim(), right: p.k_part.ambient_dim() });
    }
    let check = check_pair(a, p)?;
    if !check.direct_sum {
        return Err(Error::InvalidPair("K and B are not complementary".into()));
    }
    if !check.k_condition || !check.b_condition {
        return Err(Error::InvalidPair(format!("K or B fails the conditions for an idempotent {}", p.kind)));
    }
    Ok(projector(a.domain(), &p.k_part, &p.b_part))
}

/// `P = [0 | B] · [K | B]^{-1}`; the caller guarantees `K ⊕ B`.
fn projector(domain: CoeffDomain, k: &Subspace, b: &Subspace) -> Matrix {
    let n = k.ambient_dim();
    let mut cols: Vec<Vector> = k.basis().to_vec();
    cols.extend(b.basis().iter().cloned());
    let change = Matrix::from_columns(domain, n, &cols).expect("columns of ambient length");
    let mut targets: Vec<Vector> = vec![Vector::zero(domain, n); k.rank()];
    targets.extend(b.basis().iter().cloned());
    let images = Matrix::from_columns(domain, n, &targets).expect("columns of ambient length");
    let inv = change.inverse().expect("field").expect("complementary subspaces");
    images.mul(&inv).expect("square")
}

fn cmp_entries(x: &Matrix, y: &Matrix) -> Ordering {
    x.entries().iter().zip(y.entries()).map(|(a, b)| a.cmp_value(b)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

fn prime_of(domain: CoeffDomain) -> Result<u64> {
    match domain.kind() {
        DomainKind::PrimeField(p) => Ok(p),
        _ => Err(Error::InvalidDomain(format!("exhaustive enumeration needs a finite prime field, got {domain}"))),
    }
}

/// Idempotents of a kind, by brute force over every matrix, sorted by
/// entries.
pub fn enumerate_idempotents(a: &Algebra, kind: IdempotentKind, budget: u64) -> Result<Vec<Matrix>> {
    prime_of(a.domain())?;
    let mut out = Vec::new();
    for m in all_matrices(a.domain(), a.dim(), a.dim(), budget)? {
        if is_idempotent_endo(a, &m, kind)?.holds {
            out.push(m);
        }
    }
    out.sort_by(cmp_entries);
    Ok(out)
}

/// Every valid pair of a kind. For each `K`, the complements are the graphs
/// `{c + φ(c)}` of linear maps from the standard complement into `K`.
pub fn enumerate_pairs(a: &Algebra, kind: IdempotentKind, budget: u64) -> Result<Vec<DecompositionPair>> {
    let p = prime_of(a.domain())?;
    let domain = a.domain();
    let n = a.dim();
    let mut out = Vec::new();
    for k in enumerate_subspaces(domain, n, budget)? {
        let c = k.complement();
        let (r, s) = (k.rank(), c.rank());
        let total = check_budget(p, r * s, budget)? as u64;
        for mut code in 0..total {
            let mut vectors = Vec::with_capacity(s);
            for cv in c.basis() {
                let mut v = cv.clone();
                for kv in k.basis() {
                    let digit = domain.residue(code % p);
                    code /= p;
                    v.add_scaled(&digit, kv);
                }
                vectors.push(v);
            }
            let b = Subspace::span(domain, n, &vectors)?;
            let pair = DecompositionPair { k_part: k.clone(), b_part: b, kind };
            if check_pair(a, &pair)?.valid {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationMethod {
    /// Every matrix enumerated and compared with the pair side.
    MatrixAndPairs,
    /// Only subspace pairs enumerated; the matrix space was over budget.
    PairsOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub kind: IdempotentKind,
    pub method: EnumerationMethod,
    pub idempotents: usize,
    pub pairs: usize,
    /// `pair(idempotent(P)) = P` for every valid pair.
    pub pair_roundtrip: bool,
    /// `idempotent(pair(e)) = e` for every idempotent.
    pub idempotent_roundtrip: bool,
    /// The idempotents built from pairs are exactly the enumerated ones.
    pub sets_match: bool,
    pub bijection: bool,
    pub sorted_idempotents: Vec<Matrix>,
}

/// Exhaustive check that kernel/image and projector construction are mutually
/// inverse bijections between idempotents of `kind` and valid pairs.
pub fn roundtrip_check(a: &Algebra, kind: IdempotentKind, budget: u64) -> Result<RoundtripReport> {
    let p = prime_of(a.domain())?;
    let n = a.dim();
    if kind.requires_two_torsion_free() && a.domain().two_profile() != TwoProfile::TwoInvertible {
        return Err(Error::TwoTorsionDomain(a.domain()));
    }
    check_budget(p, n, budget)?;
    let pairs = enumerate_pairs(a, kind, budget)?;
    let mut from_pairs = Vec::with_capacity(pairs.len());
    let mut pair_roundtrip = true;
    for pair in &pairs {
        let e = idempotent_from_pair(pair, a)?;
        match pair_from_idempotent(a, &e, kind) {
            Ok(back) => pair_roundtrip &= &back == pair,
            Err(Error::NotIdempotentOfKind(_)) => pair_roundtrip = false,
            Err(err) => return Err(err),
        }
        from_pairs.push(e);
    }
    from_pairs.sort_by(cmp_entries);

    let matrix_side = check_budget(p, n * n, budget).is_ok();
    let (method, idempotents) = if matrix_side {
        (EnumerationMethod::MatrixAndPairs, enumerate_idempotents(a, kind, budget)?)
    } else {
        (EnumerationMethod::PairsOnly, from_pairs.clone())
    };
    let mut idempotent_roundtrip = true;
    for e in &idempotents {
        let pair = pair_from_idempotent(a, e, kind)?;
        idempotent_roundtrip &= &idempotent_from_pair(&pair, a)? == e;
    }
    let sets_match = idempotents == from_pairs;
    Ok(RoundtripReport {
        kind,
        method,
        idempotents: idempotents.len(),
        pairs: pairs.len(),
        pair_roundtrip,
        idempotent_roundtrip,
        sets_match,
        bijection: pair_roundtrip && idempotent_roundtrip && sets_match && idempotents.len() == pairs.len(),
        sorted_idempotents: idempotents,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiPreCharacterizationReport {
    pub matrices_checked: usize,
    pub qualifying: usize,
    pub agree: bool,
    /// First matrix on which the two descriptions differ.
    pub counterexample: Option<Matrix>,
}

/// Over every matrix: `e` is an idempotent anti-pre-endomorphism iff `e` is
/// idempotent, kills `[M,M]` and has a pairwise commuting image.
pub fn anti_pre_classification_check(a: &Algebra, budget: u64) -> Result<AntiPreCharacterizationReport> {
    prime_of(a.domain())?;
    if a.domain().two_profile() != TwoProfile::TwoInvertible {
        return Err(Error::TwoTorsionDomain(a.domain()));
    }
    let brackets = commutator_span(a)?;
    let mut report = AntiPreCharacterizationReport { matrices_checked: 0, qualifying: 0, agree: true, counterexample: None };
    for e in all_matrices(a.domain(), a.dim(), a.dim(), budget)? {
        report.matrices_checked += 1;
        let direct = is_idempotent_endo(a, &e, IdempotentKind::AntiPreMorphism)?.holds;
        let idempotent = e.mul(&e)? == e;
        let characterized = idempotent && brackets.is_subspace_of(&kernel(&e)?) && pairwise_commuting(a, &image(&e)?);
        report.qualifying += usize::from(direct);
        if direct != characterized && report.agree {
            report.agree = false;
            report.counterexample = Some(e);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::a2;

    fn q() -> CoeffDomain {
        CoeffDomain::rationals()
    }
    fn f(p: u64) -> CoeffDomain {
        CoeffDomain::prime_field(p).unwrap()
    }
    fn line(d: CoeffDomain, c: &[i64]) -> Subspace {
        Subspace::span(d, c.len(), &[Vector::from_i64s(d, c)]).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let a = a2(q());
        let id = Matrix::identity(q(), 2);
        let zero = Matrix::zero(q(), 2, 2);
        assert!(is_idempotent_endo(&a, &id, IdempotentKind::PreMorphism).unwrap().holds);
        assert!(is_idempotent_endo(&a, &id, IdempotentKind::GeneralizedMorphism).unwrap().holds);
        for kind in IdempotentKind::ALL {
            assert!(is_idempotent_endo(&a, &zero, kind).unwrap().holds);
        }
        let p = pair_from_idempotent(&a, &id, IdempotentKind::PreMorphism).unwrap();
        assert!(p.k_part.is_zero() && p.b_part.is_full());
        let p = pair_from_idempotent(&a, &zero, IdempotentKind::PreMorphism).unwrap();
        assert!(p.k_part.is_full() && p.b_part.is_zero());
        let back = idempotent_from_pair(&p, &a).unwrap();
        assert_eq!(back, zero);
    }

    #[test]
    fn a2_projector() {
        let a = a2(q());
        let e = Matrix::from_i64_rows(q(), &[&[1, 0], &[0, 0]]);
        assert!(is_idempotent_endo(&a, &e, IdempotentKind::PreMorphism).unwrap().holds);
        let p = pair_from_idempotent(&a, &e, IdempotentKind::PreMorphism).unwrap();
        assert_eq!(p.k_part, line(q(), &[0, 1]));
        assert_eq!(p.b_part, line(q(), &[1, 0]));
        assert_eq!(idempotent_from_pair(&p, &a).unwrap(), e);
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let a = a2(q());
        let e1 = line(q(), &[1, 0]);
        let pair = DecompositionPair { k_part: e1.clone(), b_part: e1, kind: IdempotentKind::PreMorphism };
        assert!(matches!(idempotent_from_pair(&pair, &a), Err(Error::InvalidPair(_))));
    }

    #[test]
    fn anti_pre_needs_two_torsion_free_domain() {
        let a = a2(f(2));
        let e = Matrix::identity(f(2), 2);
        assert_eq!(is_idempotent_endo(&a, &e, IdempotentKind::AntiPreMorphism), Err(Error::TwoTorsionDomain(f(2))));
        assert!(matches!(anti_pre_classification_check(&a, 4096), Err(Error::TwoTorsionDomain(_))));
    }

    #[test]
    fn zero_algebra_census() {
        // 0, 1 and the six rank-one projectors of F_2^2
        let a = Algebra::zero(f(2), 2);
        for kind in [IdempotentKind::PreMorphism, IdempotentKind::GeneralizedMorphism] {
            let r = roundtrip_check(&a, kind, 4096).unwrap();
            assert_eq!(r.idempotents, 8);
            assert!(r.bijection);
        }
    }

    #[test]
    fn a2_census_over_f2_and_f3() {
        let r = roundtrip_check(&a2(f(2)), IdempotentKind::PreMorphism, 4096).unwrap();
        assert_eq!(r.method, EnumerationMethod::MatrixAndPairs);
        assert!(r.bijection);
        let r = roundtrip_check(&a2(f(3)), IdempotentKind::AntiPreMorphism, 4096).unwrap();
        assert!(r.bijection);
        let c = anti_pre_classification_check(&a2(f(3)), 4096).unwrap();
        assert_eq!(c.matrices_checked, 81);
        assert!(c.agree);
        assert_eq!(c.qualifying, r.idempotents);
    }

    #[test]
    fn pair_side_when_matrices_are_over_budget() {
        // 3^4 = 81 matrices exceed a budget of 27 while 3^2 vectors do not
        let r = roundtrip_check(&a2(f(3)), IdempotentKind::PreMorphism, 27).unwrap();
        assert_eq!(r.method, EnumerationMethod::PairsOnly);
        assert!(r.bijection);
        let full = roundtrip_check(&a2(f(3)), IdempotentKind::PreMorphism, 4096).unwrap();
        assert_eq!(full.sorted_idempotents, r.sorted_idempotents);
        assert!(matches!(roundtrip_check(&a2(f(3)), IdempotentKind::PreMorphism, 8), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn kinds_parse() {
        for k in IdempotentKind::ALL {
            assert_eq!(k.short_name().parse::<IdempotentKind>().unwrap(), k);
        }
    }
}
