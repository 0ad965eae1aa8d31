//! Finite-dimensional algebras given by structure constants, and the basic
//! constructions on them.

use std::fmt;

use serde::Serialize;

use crate::coefficients::{CoeffDomain, Scalar, TwoProfile};
use crate::error::{Error, Result};
use crate::linear::{Matrix, Subspace, Vector};

/// Which bilinear operation of an algebra is meant: the product itself, the
/// commutator `xy - yx` or the anticommutator `xy + yx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Dot,
    Bracket,
    Circle,
}

impl ProductKind {
    pub fn name(self) -> &'static str {
        match self {
            ProductKind::Dot => "dot",
            ProductKind::Bracket => "bracket",
            ProductKind::Circle => "circle",
        }
    }
}

/// A finite-dimensional, not necessarily associative algebra. `e_i · e_j` is
/// stored densely as a coordinate vector; every other product follows by
/// bilinearity.
#[derive(Debug, Clone)]
pub struct Algebra {
    name: String,
    domain: CoeffDomain,
    dim: usize,
    labels: Vec<String>,
    sc: Vec<Vector>,
}

/// Equality ignores the name and the basis labels.
impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.dim == other.dim && self.sc == other.sc
    }
}

impl Eq for Algebra {}

pub fn default_labels(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

impl Algebra {
    /// `products[i][j]` is `e_i · e_j`.
    pub fn new(name: impl Into<String>, domain: CoeffDomain, labels: Vec<String>, products: Vec<Vec<Vector>>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Parse(format!("duplicate basis label {l:?}")));
            }
        }
        if products.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: products.len() });
        }
        let mut sc = Vec::with_capacity(dim * dim);
        for row in products {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
                }
                if v.domain() != domain {
                    return Err(Error::DomainMismatch { left: domain, right: v.domain() });
                }
                sc.push(v);
            }
        }
        Ok(Algebra { name: name.into(), domain, dim, labels, sc })
    }

    /// Builds the algebra with `e_i · e_j = f(i, j)` and labels `e1..en`.
    pub fn from_fn(name: impl Into<String>, domain: CoeffDomain, dim: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut sc = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim);
                assert_eq!(v.domain(), domain);
                sc.push(v);
            }
        }
        Algebra { name: name.into(), domain, dim, labels: default_labels(dim), sc }
    }

    pub fn zero(domain: CoeffDomain, dim: usize) -> Self {
        Algebra::from_fn("zero", domain, dim, |_, _| Vector::zero(domain, dim))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &Vector {
        &self.sc[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::unit(self.domain, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vector {
        Vector::zero(self.domain, self.dim)
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.sc.iter().all(Vector::is_zero)
    }

    fn check_vector(&self, x: &Vector) -> Result<()> {
        if x.domain() != self.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: x.domain() });
        }
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = self.zero_vector();
        for (i, xi) in x.coords().iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords().iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                out.add_scaled(&(xi * yj), self.product(i, j));
            }
        }
        out
    }

    /// `[x, y] = xy - yx`.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        &self.mul_unchecked(x, y) - &self.mul_unchecked(y, x)
    }

    /// `x ∘ y = xy + yx`.
    pub fn circle(&self, x: &Vector, y: &Vector) -> Vector {
        &self.mul_unchecked(x, y) + &self.mul_unchecked(y, x)
    }

    pub fn apply_product(&self, kind: ProductKind, x: &Vector, y: &Vector) -> Vector {
        match kind {
            ProductKind::Dot => self.mul_unchecked(x, y),
            ProductKind::Bracket => self.bracket(x, y),
            ProductKind::Circle => self.circle(x, y),
        }
    }

    /// `(x·y)·z − x·(y·z)`.
    pub fn associator(&self, x: &Vector, y: &Vector, z: &Vector) -> Result<Vector> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        self.check_vector(z)?;
        Ok(self.associator_unchecked(x, y, z))
    }

    pub(crate) fn associator_unchecked(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        &self.mul_unchecked(&self.mul_unchecked(x, y), z) - &self.mul_unchecked(x, &self.mul_unchecked(y, z))
    }

    fn derived(&self, suffix: &str, f: impl Fn(&Vector, &Vector) -> Vector) -> Algebra {
        let mut sc = Vec::with_capacity(self.sc.len());
        for i in 0..self.dim {
            for j in 0..self.dim {
                sc.push(f(self.product(i, j), self.product(j, i)));
            }
        }
        Algebra { name: format!("{}{}", self.name, suffix), domain: self.domain, dim: self.dim, labels: self.labels.clone(), sc }
    }

    /// `(A, [−,−])`.
    pub fn commutator_algebra(&self) -> Algebra {
        self.derived(".U", |a, b| a - b)
    }

    /// `(A, ∘)`.
    pub fn anticommutator_algebra(&self) -> Algebra {
        self.derived(".C", |a, b| a + b)
    }

    pub fn opposite(&self) -> Algebra {
        self.derived(".op", |_, b| b.clone())
    }

    /// The algebra whose product is `kind` applied to this one.
    pub fn with_product(&self, kind: ProductKind) -> Algebra {
        match kind {
            ProductKind::Dot => self.clone(),
            ProductKind::Bracket => self.commutator_algebra(),
            ProductKind::Circle => self.anticommutator_algebra(),
        }
    }

    /// Same module, product multiplied by `s`.
    pub fn scaled(&self, s: &Scalar) -> Algebra {
        Algebra {
            name: format!("{}.x{}", self.name, s),
            domain: self.domain,
            dim: self.dim,
            labels: self.labels.clone(),
            sc: self.sc.iter().map(|v| v.scale(s)).collect(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// `xy = -yx` and `xx = 0` on the basis.
    pub fn is_anticommutative(&self) -> bool {
        (0..self.dim).all(|i| {
            self.product(i, i).is_zero() && (i + 1..self.dim).all(|j| self.product(i, j) == &-self.product(j, i))
        })
    }

    /// Splits the product into its commutative and anticommutative halves:
    /// `· = ½∘ + ½[−,−]`.
    pub fn split_product(&self) -> Result<BilinearSplit> {
        let half = self.domain.from_i64(2).try_invert().ok_or(Error::TwoNotInvertible(self.domain))?;
        let comm = self.derived(".comm", |a, b| (a + b).scale(&half));
        let anticomm = self.derived(".anticomm", |a, b| (a - b).scale(&half));
        Ok(BilinearSplit { comm, anticomm })
    }

    /// `ann(2) = {x : 2x = 0}` as a subspace; needs a field.
    pub fn ann2_module(&self) -> Result<Subspace> {
        if !self.domain.is_field() {
            return Err(Error::NonFieldDomain(self.domain));
        }
        Ok(if self.domain.characteristic() == 2 {
            Subspace::full(self.domain, self.dim)
        } else {
            Subspace::zero(self.domain, self.dim)
        })
    }

    /// Elementwise membership in `ann(2)`; works over any domain.
    pub fn in_ann2(&self, x: &Vector) -> bool {
        x.coords().iter().all(|c| c.double().is_zero())
    }

    /// Checks that `x ↦ x/2` is an isomorphism `(M,·) → (M,2·)`.
    pub fn scaling_iso_check(&self) -> Result<ScalingIsoReport> {
        let two = self.domain.from_i64(2);
        let half = two.try_invert().ok_or(Error::TwoNotInvertible(self.domain))?;
        let doubled = self.scaled(&two);
        let phi = |v: &Vector| v.scale(&half);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = phi(self.product(i, j));
                let rhs = doubled.mul_unchecked(&phi(&self.basis_vector(i)), &phi(&self.basis_vector(j)));
                if lhs != rhs {
                    return Ok(ScalingIsoReport { passed: false, witness: Some((i, j)) });
                }
            }
        }
        // φ = ½·id is bijective because ½ is a unit
        Ok(ScalingIsoReport { passed: true, witness: None })
    }

    /// Matrix of `a ↦ x·a`.
    pub fn left_mul_matrix(&self, x: &Vector) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul_unchecked(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.domain, self.dim, &cols).expect("square")
    }

    /// The algebra `s` with product `kind` restricted to it, written in the
    /// canonical basis of `s`. Fails if `s` is not closed.
    pub fn restrict(&self, s: &Subspace, kind: ProductKind) -> Result<Algebra> {
        if s.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch { left: self.dim, right: s.ambient_dim() });
        }
        let r = s.rank();
        let mut sc = Vec::with_capacity(r * r);
        for a in s.basis() {
            for b in s.basis() {
                let p = self.apply_product(kind, a, b);
                let c = s
                    .coordinates(&p)
                    .ok_or_else(|| Error::KindMismatch(format!("subalgebra for the {} product", kind.name())))?;
                sc.push(c);
            }
        }
        Ok(Algebra { name: format!("{}|sub", self.name), domain: self.domain, dim: r, labels: default_labels(r), sc })
    }

    /// Two-torsion classification of the coefficient domain.
    pub fn two_profile(&self) -> TwoProfile {
        self.domain.two_profile()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {} (dim {})", self.name, self.domain, self.dim)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = self.product(i, j);
                if !v.is_zero() {
                    writeln!(f, "  {}·{} = {}", self.labels[i], self.labels[j], v)?;
                }
            }
        }
        Ok(())
    }
}

/// Commutative and anticommutative parts of a product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearSplit {
    pub comm: Algebra,
    pub anticomm: Algebra,
}

impl BilinearSplit {
    /// `x·y = x*y + x◇y`.
    pub fn recombine(&self) -> Algebra {
        let d = self.comm.dim;
        Algebra {
            name: self.comm.name.trim_end_matches(".comm").to_string(),
            domain: self.comm.domain,
            dim: d,
            labels: self.comm.labels.clone(),
            sc: self.comm.sc.iter().zip(&self.anticomm.sc).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalingIsoReport {
    pub passed: bool,
    pub witness: Option<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::a2;

    fn q() -> CoeffDomain {
        CoeffDomain::rationals()
    }
    fn v(d: CoeffDomain, c: &[i64]) -> Vector {
        Vector::from_i64s(d, c)
    }

    #[test]
    fn a2_products() {
        let a = a2(q());
        let e1 = v(q(), &[1, 0]);
        let e2 = v(q(), &[0, 1]);
        assert_eq!(a.mul(&e1, &e2).unwrap(), e2);
        assert!(a.mul(&e2, &e1).unwrap().is_zero());
        assert!(a.mul(&a.zero_vector(), &e2).unwrap().is_zero());
        assert!(a.mul(&v(q(), &[1, 0, 0]), &e2).is_err());
    }

    #[test]
    fn associators() {
        let a = a2(q());
        let e1 = v(q(), &[1, 0]);
        let e2 = v(q(), &[0, 1]);
        assert!(a.associator(&e2, &e1, &e2).unwrap().is_zero());
        // e1e1 = e2, e2e1 = e1
        let b = Algebra::from_fn("b", q(), 2, |i, j| match (i, j) {
            (0, 0) => v(q(), &[0, 1]),
            (1, 0) => v(q(), &[1, 0]),
            _ => v(q(), &[0, 0]),
        });
        assert_eq!(b.associator(&e1, &e1, &e1).unwrap(), e1);
    }

    #[test]
    fn functors_on_a2() {
        let a = a2(q());
        let u = a.commutator_algebra();
        assert_eq!(u.product(0, 1), &v(q(), &[0, 1]));
        assert_eq!(u.product(1, 0), &v(q(), &[0, -1]));
        assert!(u.product(0, 0).is_zero());
        let uu = u.commutator_algebra();
        assert_eq!(uu, u.scaled(&q().from_i64(2)));
        let f2 = CoeffDomain::prime_field(2).unwrap();
        assert!(a2(f2).commutator_algebra().commutator_algebra().is_zero_algebra());

        let c = a.anticommutator_algebra();
        assert_eq!(c.product(0, 0), &v(q(), &[2, 0]));
        assert_eq!(c.product(0, 1), &v(q(), &[0, 1]));
        assert_eq!(c.product(1, 0), &v(q(), &[0, 1]));
        assert!(c.product(1, 1).is_zero());
        assert!(c.is_commutative());
        assert!(u.is_anticommutative());
    }

    #[test]
    fn opposite_of_a2() {
        let op = a2(q()).opposite();
        assert_eq!(op.product(1, 0), &v(q(), &[0, 1]));
        assert!(op.product(0, 1).is_zero());
        assert_eq!(op.opposite(), a2(q()));
    }

    #[test]
    fn split_of_a2() {
        let s = a2(q()).split_product().unwrap();
        let half = q().parse_scalar("1/2").unwrap();
        assert_eq!(s.comm.product(0, 0), &v(q(), &[1, 0]));
        assert_eq!(s.comm.product(0, 1), &Vector::new(q(), vec![q().zero(), half.clone()]).unwrap());
        assert_eq!(s.anticomm.product(0, 1), &Vector::new(q(), vec![q().zero(), half]).unwrap());
        assert_eq!(s.recombine(), a2(q()));
        let z4 = CoeffDomain::residue_ring(4).unwrap();
        assert!(matches!(a2(z4).split_product(), Err(Error::TwoNotInvertible(_))));
    }

    #[test]
    fn ann2() {
        assert!(a2(q()).ann2_module().unwrap().is_zero());
        let f2 = CoeffDomain::prime_field(2).unwrap();
        assert!(a2(f2).ann2_module().unwrap().is_full());
        let z4 = CoeffDomain::residue_ring(4).unwrap();
        let a = a2(z4);
        assert!(a.ann2_module().is_err());
        assert!(a.in_ann2(&v(z4, &[2, 0])));
        assert!(!a.in_ann2(&v(z4, &[1, 0])));
    }

    #[test]
    fn scaling_iso() {
        assert!(Algebra::zero(q(), 3).scaling_iso_check().unwrap().passed);
        assert!(a2(q()).scaling_iso_check().unwrap().passed);
        let f2 = CoeffDomain::prime_field(2).unwrap();
        assert!(a2(f2).scaling_iso_check().is_err());
    }
}
