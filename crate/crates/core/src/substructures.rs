//! Ideals, subalgebras and their pre- and generalized variants; closures,
//! nucleus and center, commutators of ideals, and quotient algebras.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Algebra, ProductKind};
use crate::error::{Error, Result};
use crate::linear::{kernel, require_field, Echelon, Matrix, Subspace, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubstructureKind {
    Ideal,
    PreIdeal,
    GeneralizedIdeal,
    Subalgebra,
    PreSubalgebra,
    GeneralizedSubalgebra,
}

impl SubstructureKind {
    pub const ALL: [SubstructureKind; 6] = [
        SubstructureKind::Ideal,
        SubstructureKind::PreIdeal,
        SubstructureKind::GeneralizedIdeal,
        SubstructureKind::Subalgebra,
        SubstructureKind::PreSubalgebra,
        SubstructureKind::GeneralizedSubalgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubstructureKind::Ideal => "ideal",
            SubstructureKind::PreIdeal => "pre-ideal",
            SubstructureKind::GeneralizedIdeal => "generalized-ideal",
            SubstructureKind::Subalgebra => "subalgebra",
            SubstructureKind::PreSubalgebra => "pre-subalgebra",
            SubstructureKind::GeneralizedSubalgebra => "generalized-subalgebra",
        }
    }

    /// The product the closure condition refers to.
    pub fn product(self) -> ProductKind {
        match self {
            SubstructureKind::Ideal | SubstructureKind::Subalgebra => ProductKind::Dot,
            SubstructureKind::PreIdeal | SubstructureKind::PreSubalgebra => ProductKind::Bracket,
            SubstructureKind::GeneralizedIdeal | SubstructureKind::GeneralizedSubalgebra => ProductKind::Circle,
        }
    }

    pub fn is_ideal(self) -> bool {
        matches!(self, SubstructureKind::Ideal | SubstructureKind::PreIdeal | SubstructureKind::GeneralizedIdeal)
    }

    /// The ideal kind a quotient by the given product needs.
    pub fn ideal_for(product: ProductKind) -> SubstructureKind {
        match product {
            ProductKind::Dot => SubstructureKind::Ideal,
            ProductKind::Bracket => SubstructureKind::PreIdeal,
            ProductKind::Circle => SubstructureKind::GeneralizedIdeal,
        }
    }
}

impl fmt::Display for SubstructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubstructureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SubstructureKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown substructure kind {s:?}")))
    }
}

/// A product that leaves the subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureWitness {
    pub left: Vector,
    pub right: Vector,
    pub product: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubstructureReport {
    pub kind: SubstructureKind,
    pub holds: bool,
    pub witness: Option<ClosureWitness>,
}

fn check_subspace(a: &Algebra, s: &Subspace) -> Result<()> {
    require_field(a.domain())?;
    if s.domain() != a.domain() {
        return Err(Error::DomainMismatch { left: a.domain(), right: s.domain() });
    }
    if s.ambient_dim() != a.dim() {
        return Err(Error::AmbientMismatch { left: a.dim(), right: s.ambient_dim() });
    }
    Ok(())
}

/// The products whose membership in `s` defines `kind`, in a fixed order:
/// parent basis against `s` basis for ideals (both sides for two-sided
/// ideals), pairs of `s` basis vectors for subalgebras.
fn defining_products(a: &Algebra, s: &[Vector], kind: SubstructureKind) -> Vec<(Vector, Vector)> {
    let mut out = Vec::new();
    if kind.is_ideal() {
        for i in 0..a.dim() {
            let e = a.basis_vector(i);
            for v in s {
                out.push((e.clone(), v.clone()));
                if kind == SubstructureKind::Ideal {
                    out.push((v.clone(), e.clone()));
                }
            }
        }
    } else {
        for v in s {
            for w in s {
                out.push((v.clone(), w.clone()));
            }
        }
    }
    out
}

pub fn is_substructure(a: &Algebra, s: &Subspace, kind: SubstructureKind) -> Result<SubstructureReport> {
    check_subspace(a, s)?;
    let product = kind.product();
    for (l, r) in defining_products(a, s.basis(), kind) {
        let p = a.apply_product(product, &l, &r);
        if !s.contains(&p) {
            let witness = ClosureWitness { left: l, right: r, product: p };
            return Ok(SubstructureReport { kind, holds: false, witness: Some(witness) });
        }
    }
    Ok(SubstructureReport { kind, holds: true, witness: None })
}

pub fn is_kind(a: &Algebra, s: &Subspace, kind: SubstructureKind) -> Result<bool> {
    Ok(is_substructure(a, s, kind)?.holds)
}

/// The least subspace containing `gens` and closed in the sense of `kind`.
pub fn generated_substructure(a: &Algebra, gens: &[Vector], kind: SubstructureKind) -> Result<Subspace> {
    let mut current = Echelon::new(a.domain(), a.dim())?;
    for g in gens {
        if g.domain() != a.domain() {
            return Err(Error::DomainMismatch { left: a.domain(), right: g.domain() });
        }
        if g.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: g.len() });
        }
        current.insert(g);
    }
    let product = kind.product();
    // each productive round raises the rank, so dim + 1 rounds always suffice
    for _ in 0..=a.dim() {
        let basis = current.rows().to_vec();
        let mut grew = false;
        for (l, r) in defining_products(a, &basis, kind) {
            grew |= current.insert(&a.apply_product(product, &l, &r));
        }
        if !grew {
            return Ok(current.into_subspace());
        }
    }
    Err(Error::Internal(format!("{} closure did not stabilise within {} rounds", kind, a.dim() + 1)))
}

/// Vectors `x` with `(x,A,A) = (A,x,A) = (A,A,x) = 0`.
pub fn nucleus(a: &Algebra) -> Result<Subspace> {
    require_field(a.domain())?;
    let n = a.dim();
    let basis: Vec<Vector> = (0..n).map(|i| a.basis_vector(i)).collect();
    let mut rows: Vec<Vec<crate::coefficients::Scalar>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let blocks: [Vec<Vector>; 3] = [
                basis.iter().map(|x| a.associator_unchecked(x, &basis[i], &basis[j])).collect(),
                basis.iter().map(|x| a.associator_unchecked(&basis[i], x, &basis[j])).collect(),
                basis.iter().map(|x| a.associator_unchecked(&basis[i], &basis[j], x)).collect(),
            ];
            for cols in blocks {
                for k in 0..n {
                    rows.push(cols.iter().map(|c| c[k].clone()).collect());
                }
            }
        }
    }
    kernel(&Matrix::from_rows(a.domain(), rows, n)?)
}

/// Nucleus elements commuting with everything.
pub fn center(a: &Algebra) -> Result<Subspace> {
    let nuc = nucleus(a)?;
    let n = a.dim();
    let basis: Vec<Vector> = (0..n).map(|i| a.basis_vector(i)).collect();
    let mut rows = Vec::new();
    for e in &basis {
        let cols: Vec<Vector> = basis.iter().map(|x| a.bracket(x, e)).collect();
        for k in 0..n {
            rows.push(cols.iter().map(|c| c[k].clone()).collect());
        }
    }
    let commuting = kernel(&Matrix::from_rows(a.domain(), rows, n)?)?;
    nuc.intersect(&commuting)
}

/// Whether the center, written in nucleus coordinates, is a pre-ideal of the
/// nucleus with the restricted product.
pub fn center_is_pre_ideal_of_nucleus(a: &Algebra) -> Result<bool> {
    let nuc = nucleus(a)?;
    let z = center(a)?;
    let restricted = a.restrict(&nuc, ProductKind::Dot)?;
    let coords: Vec<Vector> = z
        .basis()
        .iter()
        .map(|v| nuc.coordinates(v).ok_or_else(|| Error::Internal("center not inside nucleus".into())))
        .collect::<Result<_>>()?;
    let inner = Subspace::span(a.domain(), nuc.rank(), &coords)?;
    is_kind(&restricted, &inner, SubstructureKind::PreIdeal)
}

/// Smallest pre-ideal containing every `[u, v]` with `u ∈ i`, `v ∈ j`.
pub fn pre_ideal_commutator(a: &Algebra, i: &Subspace, j: &Subspace) -> Result<Subspace> {
    if !is_kind(a, i, SubstructureKind::PreIdeal)? || !is_kind(a, j, SubstructureKind::PreIdeal)? {
        return Err(Error::NotPreIdeal);
    }
    let gens: Vec<Vector> = i.basis().iter().flat_map(|u| j.basis().iter().map(move |v| a.bracket(u, v))).collect();
    generated_substructure(a, &gens, SubstructureKind::PreIdeal)
}

/// The ideal generated by `I·J ∪ J·I`.
pub fn huq_smith_commutator(a: &Algebra, i: &Subspace, j: &Subspace) -> Result<Subspace> {
    if !is_kind(a, i, SubstructureKind::Ideal)? || !is_kind(a, j, SubstructureKind::Ideal)? {
        return Err(Error::NotIdeal);
    }
    let mut gens = Vec::new();
    for u in i.basis() {
        for v in j.basis() {
            gens.push(a.mul_unchecked(u, v));
            gens.push(a.mul_unchecked(v, u));
        }
    }
    generated_substructure(a, &gens, SubstructureKind::Ideal)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub pre_ideal: bool,
    pub ideal_of_commutator_algebra: bool,
    pub agree: bool,
}

/// Pre-ideals of `(M,·)` are exactly the ideals of `(M,[−,−])`.
pub fn pre_ideal_correspondence_check(a: &Algebra, s: &Subspace) -> Result<CorrespondenceReport> {
    let pre_ideal = is_kind(a, s, SubstructureKind::PreIdeal)?;
    let ideal = is_kind(&a.commutator_algebra(), s, SubstructureKind::Ideal)?;
    Ok(CorrespondenceReport { pre_ideal, ideal_of_commutator_algebra: ideal, agree: pre_ideal == ideal })
}

/// `M/K` for the chosen product, realised on the standard complement of `K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPresentation {
    parent: Algebra,
    ideal: Subspace,
    section: Subspace,
    induced: Algebra,
    product_kind: ProductKind,
}

impl QuotientPresentation {
    pub fn parent(&self) -> &Algebra {
        &self.parent
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Representatives of the quotient basis.
    pub fn section(&self) -> &Subspace {
        &self.section
    }

    pub fn induced(&self) -> &Algebra {
        &self.induced
    }

    pub fn product_kind(&self) -> ProductKind {
        self.product_kind
    }

    /// Coordinates of the class of `v`.
    pub fn project(&self, v: &Vector) -> Vector {
        let r = self.ideal.reduce(v);
        let coords = self.section.pivots().iter().map(|&p| r[p].clone()).collect();
        Vector::new(self.parent.domain(), coords).expect("homogeneous")
    }

    /// The section representative of a class.
    pub fn lift(&self, class: &Vector) -> Vector {
        let mut out = self.parent.zero_vector();
        for (c, b) in class.coords().iter().zip(self.section.basis()) {
            out.add_scaled(c, b);
        }
        out
    }

    /// The projection is a morphism from the parent (with the chosen
    /// product) onto the induced algebra, checked on basis pairs.
    pub fn projection_is_morphism(&self) -> bool {
        let n = self.parent.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (x, y) = (self.parent.basis_vector(i), self.parent.basis_vector(j));
                let lhs = self.project(&self.parent.apply_product(self.product_kind, &x, &y));
                lhs == self.induced.mul_unchecked(&self.project(&x), &self.project(&y))
            })
        })
    }
}

pub fn quotient(a: &Algebra, k: &Subspace, product_kind: ProductKind) -> Result<QuotientPresentation> {
    let needed = SubstructureKind::ideal_for(product_kind);
    if !is_kind(a, k, needed)? {
        return Err(Error::KindMismatch(needed.name().into()));
    }
    let section = k.complement();
    let reps = section.basis().to_vec();
    let project = |v: &Vector| {
        let r = k.reduce(v);
        Vector::new(a.domain(), section.pivots().iter().map(|&p| r[p].clone()).collect()).expect("homogeneous")
    };
    let induced = Algebra::from_fn(format!("{}/K", a.name()), a.domain(), reps.len(), |i, j| {
        project(&a.apply_product(product_kind, &reps[i], &reps[j]))
    });
    Ok(QuotientPresentation { parent: a.clone(), ideal: k.clone(), section, induced, product_kind })
}
