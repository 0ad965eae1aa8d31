//! Linear maps between algebras and the morphism conditions they can
//! satisfy, derivation checks, and the isomorphism theorems for
//! pre-morphisms.

use serde::Serialize;

use crate::algebra::{Algebra, ProductKind};
use crate::coefficients::TwoProfile;
use crate::error::{Error, Result};
use crate::identities::{is_anti_pre_lie, is_lie_admissible};
use crate::linear::{image, kernel, require_field, solve, Matrix, Subspace, Vector};
use crate::substructures::{is_kind, quotient, SubstructureKind};

/// A module map `source -> target`; column `i` of the matrix is the image of
/// the `i`-th source basis vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    source: Algebra,
    target: Algebra,
    matrix: Matrix,
}

impl AlgebraMap {
    pub fn new(source: Algebra, target: Algebra, matrix: Matrix) -> Result<Self> {
        for d in [target.domain(), matrix.domain()] {
            if d != source.domain() {
                return Err(Error::DomainMismatch { left: source.domain(), right: d });
            }
        }
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::ShapeMismatch(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(AlgebraMap { source, target, matrix })
    }

    pub fn identity(a: &Algebra) -> Self {
        AlgebraMap { source: a.clone(), target: a.clone(), matrix: Matrix::identity(a.domain(), a.dim()) }
    }

    pub fn zero(source: &Algebra, target: &Algebra) -> Result<Self> {
        AlgebraMap::new(source.clone(), target.clone(), Matrix::zero(source.domain(), target.dim(), source.dim()))
    }

    /// An endomorphism of `a` given by a square matrix.
    pub fn endo(a: &Algebra, matrix: Matrix) -> Result<Self> {
        AlgebraMap::new(a.clone(), a.clone(), matrix)
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    fn image_of_basis(&self, i: usize) -> Vector {
        self.matrix.column(i)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("composed maps do not meet at the same algebra".into()));
        }
        AlgebraMap::new(other.source.clone(), self.target.clone(), self.matrix.mul(&other.matrix)?)
    }

    /// `ψ ∗ φ = −(ψ ∘ φ)`, the composition under which anti-pre-morphisms
    /// form a category.
    pub fn star_compose(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        Ok(self.compose(other)?.neg())
    }

    pub fn neg(&self) -> AlgebraMap {
        AlgebraMap { source: self.source.clone(), target: self.target.clone(), matrix: self.matrix.neg() }
    }

    /// The same linear map between the algebras with another product.
    pub fn with_product(&self, kind: ProductKind) -> AlgebraMap {
        AlgebraMap { source: self.source.with_product(kind), target: self.target.with_product(kind), matrix: self.matrix.clone() }
    }

    /// The same linear map into the opposite of the target.
    pub fn into_opposite(&self) -> AlgebraMap {
        AlgebraMap { source: self.source.clone(), target: self.target.opposite(), matrix: self.matrix.clone() }
    }

    pub fn kernel(&self) -> Result<Subspace> {
        kernel(&self.matrix)
    }

    pub fn image(&self) -> Result<Subspace> {
        image(&self.matrix)
    }
}

/// Outcome of one morphism condition; the witness is the first failing basis
/// pair in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub holds: bool,
    pub witness: Option<(usize, usize)>,
}

impl Condition {
    fn from_witness(witness: Option<(usize, usize)>) -> Self {
        Condition { holds: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MorphismProfile {
    pub algebra_morphism: Condition,
    pub anti_homomorphism: Condition,
    pub pre_morphism: Condition,
    pub generalized_morphism: Condition,
    pub anti_pre_morphism: Condition,
}

fn first_failing_pair(n: usize, mut fails: impl FnMut(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| fails(i, j))
}

pub fn classify_map(f: &AlgebraMap) -> Result<MorphismProfile> {
    let (s, t) = (&f.source, &f.target);
    let n = s.dim();
    let imgs: Vec<Vector> = (0..n).map(|i| f.image_of_basis(i)).collect();
    let f_prod: Vec<Vector> = (0..n * n).map(|k| f.matrix.apply(s.product(k / n, k % n))).collect();
    let prod_img: Vec<Vector> = (0..n * n).map(|k| t.mul_unchecked(&imgs[k / n], &imgs[k % n])).collect();
    // D(i,j) = f(e_i e_j) − f(e_i) f(e_j) and A(i,j) = f(e_i e_j) + f(e_i) f(e_j)
    let d: Vec<Vector> = f_prod.iter().zip(&prod_img).map(|(a, b)| a - b).collect();
    let a: Vec<Vector> = f_prod.iter().zip(&prod_img).map(|(a, b)| a + b).collect();
    let at = |i: usize, j: usize| i * n + j;
    Ok(MorphismProfile {
        algebra_morphism: Condition::from_witness(first_failing_pair(n, |i, j| !d[at(i, j)].is_zero())),
        anti_homomorphism: Condition::from_witness(first_failing_pair(n, |i, j| f_prod[at(i, j)] != prod_img[at(j, i)])),
        pre_morphism: Condition::from_witness(first_failing_pair(n, |i, j| d[at(i, j)] != d[at(j, i)])),
        generalized_morphism: Condition::from_witness(first_failing_pair(n, |i, j| !(&d[at(i, j)] + &d[at(j, i)]).is_zero())),
        anti_pre_morphism: Condition::from_witness(first_failing_pair(n, |i, j| a[at(i, j)] != a[at(j, i)])),
    })
}

/// `End(M)` with composition, on the matrix units `E_rc` (index `r·n + c`).
pub fn endomorphism_algebra(a: &Algebra) -> Algebra {
    let n = a.dim();
    let d = a.domain();
    Algebra::from_fn(format!("End({})", a.name()), d, n * n, |i, j| {
        let (r, b) = (i / n, i % n);
        let (c, e) = (j / n, j % n);
        if b == c {
            Vector::unit(d, n * n, r * n + e)
        } else {
            Vector::zero(d, n * n)
        }
    })
}

/// `x ↦ λ_x`, left multiplication, as a map into `End(M)`.
pub fn lambda_map(a: &Algebra) -> AlgebraMap {
    let n = a.dim();
    let d = a.domain();
    let cols: Vec<Vector> = (0..n)
        .map(|i| {
            let mut coords = vec![d.zero(); n * n];
            for j in 0..n {
                for k in 0..n {
                    coords[k * n + j] = a.product(i, j)[k].clone();
                }
            }
            Vector::new(d, coords).expect("homogeneous")
        })
        .collect();
    let matrix = Matrix::from_columns(d, n * n, &cols).expect("columns have length n^2");
    AlgebraMap { source: a.clone(), target: endomorphism_algebra(a), matrix }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LambdaAntiReport {
    pub anti_pre_lie: bool,
    pub lie_admissible: bool,
    pub lambda_anti_pre_morphism: bool,
    pub agree: bool,
}

/// Anti-pre-Lie ⇔ Lie-admissible and `λ` an anti-pre-morphism, both sides
/// computed independently.
pub fn lambda_anti_criterion(a: &Algebra) -> LambdaAntiReport {
    let anti_pre_lie = is_anti_pre_lie(a).holds;
    let lie_admissible = is_lie_admissible(a).holds;
    let lambda_anti_pre_morphism = classify_map(&lambda_map(a)).expect("consistent by construction").anti_pre_morphism.holds;
    LambdaAntiReport { anti_pre_lie, lie_admissible, lambda_anti_pre_morphism, agree: anti_pre_lie == (lie_admissible && lambda_anti_pre_morphism) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub pre_and_generalized: bool,
    pub algebra_morphism: bool,
    pub passed: bool,
}

/// Over a 2-torsion free target, pre ∧ generalized ⇔ algebra morphism.
pub fn torsionfree_bridge(f: &AlgebraMap) -> Result<BridgeReport> {
    if f.target.domain().two_profile() != TwoProfile::TwoInvertible {
        return Err(Error::TwoTorsionTarget(f.target.domain()));
    }
    let p = classify_map(f)?;
    let pre_and_generalized = p.pre_morphism.holds && p.generalized_morphism.holds;
    Ok(BridgeReport { pre_and_generalized, algebra_morphism: p.algebra_morphism.holds, passed: pre_and_generalized == p.algebra_morphism.holds })
}

fn check_square(a: &Algebra, d: &Matrix) -> Result<()> {
    if d.domain() != a.domain() {
        return Err(Error::DomainMismatch { left: a.domain(), right: d.domain() });
    }
    if d.rows() != a.dim() || d.cols() != a.dim() {
        return Err(Error::ShapeMismatch(format!("expected a {0}x{0} matrix, got {1}x{2}", a.dim(), d.rows(), d.cols())));
    }
    Ok(())
}

fn leibniz_failure(a: &Algebra, d: &Matrix, kind: ProductKind) -> Option<(usize, usize)> {
    let n = a.dim();
    first_failing_pair(n, |i, j| {
        let (x, y) = (a.basis_vector(i), a.basis_vector(j));
        let lhs = d.apply(&a.apply_product(kind, &x, &y));
        let rhs = &a.apply_product(kind, &d.apply(&x), &y) + &a.apply_product(kind, &x, &d.apply(&y));
        lhs != rhs
    })
}

/// `d(xy) = d(x)y + x d(y)`.
pub fn is_derivation(a: &Algebra, d: &Matrix) -> Result<Condition> {
    check_square(a, d)?;
    Ok(Condition::from_witness(leibniz_failure(a, d, ProductKind::Dot)))
}

/// `d([x,y]) = [d(x),y] + [x,d(y)]`.
pub fn is_pre_derivation(a: &Algebra, d: &Matrix) -> Result<Condition> {
    check_square(a, d)?;
    Ok(Condition::from_witness(leibniz_failure(a, d, ProductKind::Bracket)))
}

/// Whether `d` is a derivation with `f(xy) = f(x)y + x d(y)` on all pairs.
pub fn is_generalized_derivation_witness(a: &Algebra, f: &Matrix, d: &Matrix) -> Result<bool> {
    check_square(a, f)?;
    check_square(a, d)?;
    if !is_derivation(a, d)?.holds {
        return Ok(false);
    }
    let n = a.dim();
    Ok(first_failing_pair(n, |i, j| {
        let (x, y) = (a.basis_vector(i), a.basis_vector(j));
        let lhs = f.apply(&a.mul_unchecked(&x, &y));
        let rhs = &a.mul_unchecked(&f.apply(&x), &y) + &a.mul_unchecked(&x, &d.apply(&y));
        lhs != rhs
    })
    .is_none())
}

/// Finds a derivation `d` with `f(xy) = f(x)y + x d(y)` by solving the
/// linear system in the entries of `d`.
pub fn find_generalized_derivation_witness(a: &Algebra, f: &Matrix) -> Result<Option<Matrix>> {
    require_field(a.domain())?;
    check_square(a, f)?;
    let n = a.dim();
    let dom = a.domain();
    let basis: Vec<Vector> = (0..n).map(|i| a.basis_vector(i)).collect();
    // residual of both equation families for a candidate d, stacked over
    // basis pairs; linear in d apart from the constant part at d = 0
    let residual = |d: &Matrix| -> Vec<crate::coefficients::Scalar> {
        let mut out = Vec::with_capacity(2 * n * n * n);
        for x in &basis {
            for y in &basis {
                let der = &(&d.apply(&a.mul_unchecked(x, y)) - &a.mul_unchecked(&d.apply(x), y)) - &a.mul_unchecked(x, &d.apply(y));
                let rel = &(&a.mul_unchecked(x, &d.apply(y)) - &f.apply(&a.mul_unchecked(x, y))) + &a.mul_unchecked(&f.apply(x), y);
                out.extend(der.into_coords());
                out.extend(rel.into_coords());
            }
        }
        out
    };
    let constant = residual(&Matrix::zero(dom, n, n));
    let mut columns = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let mut unit = Matrix::zero(dom, n, n);
            unit.set(r, c, dom.one());
            let col: Vec<_> = residual(&unit).iter().zip(&constant).map(|(x, k)| x - k).collect();
            columns.push(Vector::new(dom, col)?);
        }
    }
    let system = Matrix::from_columns(dom, constant.len(), &columns)?;
    let rhs = -&Vector::new(dom, constant)?;
    let Some(sol) = solve(&system, &rhs)? else {
        return Ok(None);
    };
    let rows = (0..n).map(|r| (0..n).map(|c| sol[r * n + c].clone()).collect()).collect();
    let d = Matrix::from_rows(dom, rows, n)?;
    if !is_generalized_derivation_witness(a, f, &d)? {
        return Err(Error::Internal("solution of the derivation system fails verification".into()));
    }
    Ok(Some(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstIsoReport {
    pub kernel: Subspace,
    pub image: Subspace,
    pub kernel_is_pre_ideal: bool,
    pub image_is_pre_subalgebra: bool,
    /// `U(source)/ker f` on the standard complement of the kernel.
    pub quotient_dim: usize,
    /// Images of the quotient basis, as columns in target coordinates.
    pub induced_map: Matrix,
    pub injective: bool,
    pub onto_image: bool,
    pub bracket_morphism: bool,
    pub holds: bool,
}

/// `U(M)/ker f ≅ U(f(M))` for a pre-morphism `f`.
pub fn first_iso_theorem(f: &AlgebraMap) -> Result<FirstIsoReport> {
    require_field(f.source.domain())?;
    let profile = classify_map(f)?;
    if let Some(w) = profile.pre_morphism.witness {
        return Err(Error::NotAPreMorphism(w));
    }
    let ker = f.kernel()?;
    let im = f.image()?;
    let kernel_is_pre_ideal = is_kind(&f.source, &ker, SubstructureKind::PreIdeal)?;
    let image_is_pre_subalgebra = is_kind(&f.target, &im, SubstructureKind::PreSubalgebra)?;
    let q = quotient(&f.source, &ker, ProductKind::Bracket)?;
    let reps = q.section().basis();
    let induced_cols: Vec<Vector> = reps.iter().map(|r| f.matrix.apply(r)).collect();
    let induced_map = Matrix::from_columns(f.source.domain(), f.target.dim(), &induced_cols)?;
    let m = reps.len();
    let injective = induced_map.rank()? == m;
    let onto_image = image(&induced_map)? == im;
    let qa = q.induced();
    let bracket_morphism = first_failing_pair(m, |i, j| {
        let lhs = induced_map.apply(qa.product(i, j));
        lhs != f.target.bracket(&induced_cols[i], &induced_cols[j])
    })
    .is_none();
    let holds = kernel_is_pre_ideal && image_is_pre_subalgebra && injective && onto_image && bracket_morphism;
    Ok(FirstIsoReport { kernel: ker, image: im, kernel_is_pre_ideal, image_is_pre_subalgebra, quotient_dim: m, induced_map, injective, onto_image, bracket_morphism, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondIsoReport {
    pub left_dim: usize,
    pub right_dim: usize,
    /// `N/(N∩K) -> (N+K)/K` on the canonical quotient bases.
    pub canonical_map: Matrix,
    pub bijective: bool,
    pub bracket_morphism: bool,
    pub holds: bool,
}

fn coordinates_in(s: &Subspace, vectors: &[Vector]) -> Result<Subspace> {
    let coords: Vec<Vector> = vectors
        .iter()
        .map(|v| s.coordinates(v).ok_or_else(|| Error::Internal("vector outside the expected subspace".into())))
        .collect::<Result<_>>()?;
    Subspace::span(s.domain(), s.rank(), &coords)
}

/// `N/(N∩K) ≅ (N+K)/K` for a pre-subalgebra `N` and a pre-ideal `K`, both
/// sides carrying the commutator product.
pub fn second_iso_theorem(a: &Algebra, n: &Subspace, k: &Subspace) -> Result<SecondIsoReport> {
    if !is_kind(a, n, SubstructureKind::PreSubalgebra)? {
        return Err(Error::NotPreSubalgebra);
    }
    if !is_kind(a, k, SubstructureKind::PreIdeal)? {
        return Err(Error::NotPreIdeal);
    }
    let u = a.commutator_algebra();
    let nk = n.sum(k)?;
    let meet = n.intersect(k)?;
    let u_n = u.restrict(n, ProductKind::Dot)?;
    let u_nk = u.restrict(&nk, ProductKind::Dot)?;
    let left = quotient(&u_n, &coordinates_in(n, meet.basis())?, ProductKind::Dot)?;
    let right = quotient(&u_nk, &coordinates_in(&nk, k.basis())?, ProductKind::Dot)?;

    let cols: Vec<Vector> = left
        .section()
        .basis()
        .iter()
        .map(|rep| {
            let mut ambient = a.zero_vector();
            for (c, b) in rep.coords().iter().zip(n.basis()) {
                ambient.add_scaled(c, b);
            }
            let in_nk = nk.coordinates(&ambient).expect("N lies in N+K");
            right.project(&in_nk)
        })
        .collect();
    let (ld, rd) = (left.induced().dim(), right.induced().dim());
    let canonical_map = Matrix::from_columns(a.domain(), rd, &cols)?;
    let bijective = ld == rd && canonical_map.rank()? == ld;
    let bracket_morphism = first_failing_pair(ld, |i, j| {
        canonical_map.apply(left.induced().product(i, j)) != right.induced().mul_unchecked(&cols[i], &cols[j])
    })
    .is_none();
    Ok(SecondIsoReport { left_dim: ld, right_dim: rd, canonical_map, bijective, bracket_morphism, holds: bijective && bracket_morphism })
}
