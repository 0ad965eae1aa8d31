//! The ℤ₂-graded double `M ⊕ M` with product
//! `(a,b)(a',b') = (aa' + μbb', ab' + ba')`, maps `φ ⊕ λφ`, and the
//! supercommutator.
//!
//! The doubled basis lists the even copies `(e_i, 0)` first and the odd
//! copies `(0, e_i)` after them.

use serde::Serialize;

use crate::algebra::Algebra;
use crate::coefficients::{CoeffDomain, Scalar, TwoProfile};
use crate::error::{Error, Result};
use crate::linear::{Matrix, Vector};
use crate::morphisms::{classify_map, AlgebraMap};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingParams {
    pub mu: Scalar,
    pub lambda: Scalar,
}

impl DoublingParams {
    pub fn new(mu: Scalar, lambda: Scalar) -> Result<Self> {
        if mu.domain() != lambda.domain() {
            return Err(Error::DomainMismatch { left: mu.domain(), right: lambda.domain() });
        }
        Ok(DoublingParams { mu, lambda })
    }

    pub fn from_i64(domain: CoeffDomain, mu: i64, lambda: i64) -> Self {
        DoublingParams { mu: domain.from_i64(mu), lambda: domain.from_i64(lambda) }
    }

    pub fn domain(&self) -> CoeffDomain {
        self.mu.domain()
    }

    /// `μ(λ² − 1) = 0`.
    pub fn satisfies_constraint(&self) -> bool {
        let one = self.domain().one();
        (&self.mu * &(&(&self.lambda * &self.lambda) - &one)).is_zero()
    }

    fn check_domain(&self, d: CoeffDomain) -> Result<()> {
        if self.domain() != d {
            return Err(Error::DomainMismatch { left: d, right: self.domain() });
        }
        Ok(())
    }
}

/// An element `(even, odd)` of the double.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperElement {
    pub even: Vector,
    pub odd: Vector,
}

impl SuperElement {
    pub fn new(even: Vector, odd: Vector) -> Result<Self> {
        if even.len() != odd.len() {
            return Err(Error::DimensionMismatch { expected: even.len(), found: odd.len() });
        }
        even.checked_add(&odd)?;
        Ok(SuperElement { even, odd })
    }

    pub fn even(v: Vector) -> Self {
        let odd = Vector::zero(v.domain(), v.len());
        SuperElement { even: v, odd }
    }

    pub fn odd(v: Vector) -> Self {
        let even = Vector::zero(v.domain(), v.len());
        SuperElement { even, odd: v }
    }

    /// Coordinates in the doubled basis.
    pub fn to_vector(&self) -> Vector {
        self.even.concat(&self.odd)
    }

    pub fn from_vector(v: &Vector) -> Self {
        let n = v.len() / 2;
        SuperElement { even: v.slice(0, n), odd: v.slice(n, 2 * n) }
    }
}

/// `F_{μ,λ}(M)` on the doubled basis.
pub fn double(a: &Algebra, p: &DoublingParams) -> Result<Algebra> {
    p.check_domain(a.domain())?;
    let n = a.dim();
    let d = a.domain();
    let zero = Vector::zero(d, n);
    let doubled = Algebra::from_fn(format!("{}.double", a.name()), d, 2 * n, |i, j| {
        let prod = a.product(i % n, j % n);
        match (i < n, j < n) {
            (true, true) => prod.concat(&zero),
            (true, false) | (false, true) => zero.concat(prod),
            (false, false) => prod.scale(&p.mu).concat(&zero),
        }
    });
    let mut labels: Vec<String> = a.labels().iter().map(|l| format!("{l}.0")).collect();
    labels.extend(a.labels().iter().map(|l| format!("{l}.1")));
    doubled.with_labels(labels)
}

/// `φ ⊕ λφ` between the doubles of source and target.
pub fn double_map(f: &AlgebraMap, p: &DoublingParams) -> Result<AlgebraMap> {
    p.check_domain(f.source().domain())?;
    let (m, n) = (f.target().dim(), f.source().dim());
    let d = f.source().domain();
    let mut blocks = Matrix::zero(d, 2 * m, 2 * n);
    for r in 0..m {
        for c in 0..n {
            let v = f.matrix().get(r, c);
            blocks.set(r, c, v.clone());
            blocks.set(m + r, n + c, &p.lambda * v);
        }
    }
    AlgebraMap::new(double(f.source(), p)?, double(f.target(), p)?, blocks)
}

/// A double together with the data that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    base: Algebra,
    params: DoublingParams,
    doubled: Algebra,
}

impl SuperAlgebra {
    pub fn new(base: &Algebra, params: &DoublingParams) -> Result<Self> {
        Ok(SuperAlgebra { base: base.clone(), params: params.clone(), doubled: double(base, params)? })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn params(&self) -> &DoublingParams {
        &self.params
    }

    pub fn algebra(&self) -> &Algebra {
        &self.doubled
    }

    fn check(&self, u: &SuperElement) -> Result<()> {
        if u.even.len() != self.base.dim() {
            return Err(Error::DimensionMismatch { expected: self.base.dim(), found: u.even.len() });
        }
        if u.even.domain() != self.base.domain() {
            return Err(Error::DomainMismatch { left: self.base.domain(), right: u.even.domain() });
        }
        Ok(())
    }

    pub fn mul(&self, u: &SuperElement, v: &SuperElement) -> Result<SuperElement> {
        self.check(u)?;
        self.check(v)?;
        Ok(SuperElement::from_vector(&self.doubled.mul_unchecked(&u.to_vector(), &v.to_vector())))
    }

    /// `[x,y]_s = xy − (−1)^{|x||y|} yx` on homogeneous parts, extended
    /// bilinearly.
    pub fn supercommutator(&self, u: &SuperElement, v: &SuperElement) -> Result<SuperElement> {
        self.check(u)?;
        self.check(v)?;
        let parts = |w: &SuperElement| [(SuperElement::even(w.even.clone()), false), (SuperElement::odd(w.odd.clone()), true)];
        let mut acc = self.doubled.zero_vector();
        for (x, px) in parts(u) {
            for (y, py) in parts(v) {
                let (xv, yv) = (x.to_vector(), y.to_vector());
                let xy = self.doubled.mul_unchecked(&xv, &yv);
                let yx = self.doubled.mul_unchecked(&yv, &xv);
                let term = if px && py { &xy + &yx } else { &xy - &yx };
                acc = &acc + &term;
            }
        }
        Ok(SuperElement::from_vector(&acc))
    }

    /// `([a,a'] + μ(b∘b'), [a,b'] + [b,a'])`.
    pub fn supercommutator_closed_form(&self, u: &SuperElement, v: &SuperElement) -> Result<SuperElement> {
        self.check(u)?;
        self.check(v)?;
        let m = &self.base;
        let even = &m.bracket(&u.even, &v.even) + &m.circle(&u.odd, &v.odd).scale(&self.params.mu);
        let odd = &m.bracket(&u.even, &v.odd) + &m.bracket(&u.odd, &v.even);
        Ok(SuperElement { even, odd })
    }

    /// Even·even and odd·odd land in the even part, mixed products in the odd
    /// part; checked on basis pairs.
    pub fn grading_holds(&self) -> bool {
        let n = self.base.dim();
        (0..2 * n).all(|i| {
            (0..2 * n).all(|j| {
                let p = SuperElement::from_vector(self.doubled.product(i, j));
                if (i < n) == (j < n) {
                    p.odd.is_zero()
                } else {
                    p.even.is_zero()
                }
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseAgreement {
    pub clause: String,
    pub base: bool,
    pub doubled: bool,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingEquivalenceReport {
    pub clauses: Vec<ClauseAgreement>,
    pub all_agree: bool,
}

/// `φ ⊕ λφ` is a pre-/generalized/anti-pre-morphism iff `φ` is, when
/// `μ(λ² − 1) = 0`.
pub fn prop_doubling_equivalences(f: &AlgebraMap, p: &DoublingParams) -> Result<DoublingEquivalenceReport> {
    p.check_domain(f.source().domain())?;
    if !p.satisfies_constraint() {
        return Err(Error::ParamConstraintViolated(format!("mu (lambda^2 - 1) = {} (mu = {}, lambda = {})", &p.mu * &(&(&p.lambda * &p.lambda) - &p.domain().one()), p.mu, p.lambda)));
    }
    let base = classify_map(f)?;
    let doubled = classify_map(&double_map(f, p)?)?;
    let clauses: Vec<ClauseAgreement> = [
        ("pre-morphism", base.pre_morphism.holds, doubled.pre_morphism.holds),
        ("generalized-morphism", base.generalized_morphism.holds, doubled.generalized_morphism.holds),
        ("anti-pre-morphism", base.anti_pre_morphism.holds, doubled.anti_pre_morphism.holds),
    ]
    .into_iter()
    .map(|(c, b, d)| ClauseAgreement { clause: c.to_string(), base: b, doubled: d, agree: b == d })
    .collect();
    let all_agree = clauses.iter().all(|c| c.agree);
    Ok(DoublingEquivalenceReport { clauses, all_agree })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EpsilonReport {
    pub pairs_checked: usize,
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

/// With `μ = 1` and `ε(x) = (x, x)`: `[ε(x), ε(y)]_s = (2xy, 2[x,y])` on
/// every basis pair.
pub fn epsilon_prop_check(a: &Algebra) -> EpsilonReport {
    let d = a.domain();
    let s = SuperAlgebra::new(a, &DoublingParams::from_i64(d, 1, 1)).expect("params share the domain");
    let n = a.dim();
    let two = d.from_i64(2);
    let mut witness = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let (x, y) = (a.basis_vector(i), a.basis_vector(j));
            let ex = SuperElement { even: x.clone(), odd: x.clone() };
            let ey = SuperElement { even: y.clone(), odd: y.clone() };
            let lhs = s.supercommutator(&ex, &ey).expect("dimensions agree");
            let rhs = SuperElement { even: a.mul_unchecked(&x, &y).scale(&two), odd: a.bracket(&x, &y).scale(&two) };
            if lhs != rhs {
                witness = Some((i, j));
                break 'outer;
            }
        }
    }
    EpsilonReport { pairs_checked: n * n, holds: witness.is_none(), witness }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperMorphismReport {
    pub algebra_morphism: bool,
    pub super_morphism: bool,
    /// The route through the proof: pre-morphism and generalized morphism.
    pub pre_and_generalized: bool,
    /// First doubled basis pair where `φ ⊕ λφ` fails to respect `[−,−]_s`.
    pub witness: Option<(usize, usize)>,
    pub agree: bool,
}

/// For `λ² = 1`, invertible `μ` and a 2-torsion free target: `φ` is an
/// algebra morphism iff `φ ⊕ λφ` preserves the supercommutator.
pub fn super_morphism_prop_check(f: &AlgebraMap, p: &DoublingParams) -> Result<SuperMorphismReport> {
    p.check_domain(f.source().domain())?;
    let one = p.domain().one();
    if &p.lambda * &p.lambda != one {
        return Err(Error::ParamConstraintViolated(format!("lambda^2 = 1 fails for lambda = {}", p.lambda)));
    }
    // the argument cancels μ from μφ(b∘b') = μ(φ(b)∘φ(b'))
    if p.mu.try_invert().is_none() {
        return Err(Error::ParamConstraintViolated(format!("mu = {} is not invertible", p.mu)));
    }
    if f.target().domain().two_profile() != TwoProfile::TwoInvertible {
        return Err(Error::TwoTorsionTarget(f.target().domain()));
    }
    let profile = classify_map(f)?;
    let phi = double_map(f, p)?;
    let src = SuperAlgebra::new(f.source(), p)?;
    let tgt = SuperAlgebra::new(f.target(), p)?;
    let n = 2 * f.source().dim();
    let mut witness = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let u = SuperElement::from_vector(&src.algebra().basis_vector(i));
            let v = SuperElement::from_vector(&src.algebra().basis_vector(j));
            let lhs = phi.matrix().apply(&src.supercommutator(&u, &v)?.to_vector());
            let fu = SuperElement::from_vector(&phi.matrix().apply(&u.to_vector()));
            let fv = SuperElement::from_vector(&phi.matrix().apply(&v.to_vector()));
            if lhs != tgt.supercommutator(&fu, &fv)?.to_vector() {
                witness = Some((i, j));
                break 'outer;
            }
        }
    }
    let algebra_morphism = profile.algebra_morphism.holds;
    let super_morphism = witness.is_none();
    let pre_and_generalized = profile.pre_morphism.holds && profile.generalized_morphism.holds;
    Ok(SuperMorphismReport {
        algebra_morphism,
        super_morphism,
        pre_and_generalized,
        witness,
        agree: algebra_morphism == super_morphism && pre_and_generalized == algebra_morphism,
    })
}

/// Whether the doubles for `μ = ±1` coincide and `φ ⊕ λφ` agrees for
/// `λ = ±1` (taking `φ` the identity). True in characteristic 2.
pub fn sign_variants_coincide(a: &Algebra) -> bool {
    let d = a.domain();
    let plus = DoublingParams::from_i64(d, 1, 1);
    let minus = DoublingParams::from_i64(d, -1, -1);
    let same_algebra = double(a, &plus).expect("same domain") == double(a, &minus).expect("same domain");
    let id = AlgebraMap::identity(a);
    let same_map = double_map(&id, &plus).expect("same domain").matrix() == double_map(&id, &minus).expect("same domain").matrix();
    same_algebra && same_map
}
