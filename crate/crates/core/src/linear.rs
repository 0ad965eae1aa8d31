//! Dense exact linear algebra: vectors, matrices, reduced echelon forms and
//! the lattice of subspaces over a field domain.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::coefficients::{CoeffDomain, Scalar};
use crate::error::{Error, Result};

/// Default cap on the number of vectors (or matrices) an exhaustive sweep may
/// visit.
pub const DEFAULT_BUDGET: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    domain: CoeffDomain,
    coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(domain: CoeffDomain, coords: Vec<Scalar>) -> Result<Self> {
        if let Some(bad) = coords.iter().find(|c| c.domain() != domain) {
            return Err(Error::DomainMismatch { left: domain, right: bad.domain() });
        }
        Ok(Vector { domain, coords })
    }

    pub(crate) fn from_coords_unchecked(domain: CoeffDomain, coords: Vec<Scalar>) -> Self {
        Vector { domain, coords }
    }

    pub fn zero(domain: CoeffDomain, len: usize) -> Self {
        Vector { domain, coords: vec![domain.zero(); len] }
    }

    /// The `i`-th standard basis vector.
    pub fn unit(domain: CoeffDomain, len: usize, i: usize) -> Self {
        let mut v = Vector::zero(domain, len);
        v.coords[i] = domain.one();
        v
    }

    pub fn from_i64s(domain: CoeffDomain, values: &[i64]) -> Self {
        Vector { domain, coords: values.iter().map(|&v| domain.from_i64(v)).collect() }
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector { domain: self.domain, coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Vector) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            if !b.is_zero() {
                *a = &*a + &(s * b);
            }
        }
    }

    pub fn checked_add(&self, other: &Vector) -> Result<Vector> {
        self.compatible(other)?;
        Ok(self + other)
    }

    pub(crate) fn compatible(&self, other: &Vector) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: other.domain });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().cloned());
        Vector { domain: self.domain, coords }
    }

    pub fn slice(&self, start: usize, end: usize) -> Vector {
        Vector { domain: self.domain, coords: self.coords[start..end].to_vec() }
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.coords[i]
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        Vector { domain: self.domain, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        Vector { domain: self.domain, coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector { domain: self.domain, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    domain: CoeffDomain,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(domain: CoeffDomain, rows: usize, cols: usize) -> Self {
        Matrix { domain, rows, cols, entries: vec![domain.zero(); rows * cols] }
    }

    pub fn identity(domain: CoeffDomain, n: usize) -> Self {
        let mut m = Matrix::zero(domain, n, n);
        for i in 0..n {
            m.set(i, i, domain.one());
        }
        m
    }

    pub fn from_rows(domain: CoeffDomain, rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!("row of length {} in a matrix with {cols} columns", row.len())));
            }
            for s in row {
                if s.domain() != domain {
                    return Err(Error::DomainMismatch { left: domain, right: s.domain() });
                }
                entries.push(s);
            }
        }
        Ok(Matrix { domain, rows: nrows, cols, entries })
    }

    pub fn from_i64_rows(domain: CoeffDomain, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&v| domain.from_i64(v)).collect()).collect();
        Matrix::from_rows(domain, rows, cols).expect("rectangular literal")
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(domain: CoeffDomain, rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Matrix::zero(domain, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            if c.domain() != domain {
                return Err(Error::DomainMismatch { left: domain, right: c.domain() });
            }
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        Ok(m)
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> Vector {
        Vector::from_coords_unchecked(self.domain, self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector::from_coords_unchecked(self.domain, (0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.domain, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        if v.domain() != self.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: v.domain() });
        }
        Ok(self.apply(v))
    }

    /// `self * v` without shape checks.
    pub(crate) fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = self.domain.zero();
            for c in 0..self.cols {
                let x = &v.coords()[c];
                if !x.is_zero() {
                    let a = self.get(r, c);
                    if !a.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
            }
            out.push(acc);
        }
        Vector::from_coords_unchecked(self.domain, out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: other.domain });
        }
        let mut out = Matrix::zero(self.domain, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + &(a * b);
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { domain: self.domain, rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&-self.domain.one())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(rref(self)?.rows)
    }

    /// Inverse of a square matrix over a field, `None` if singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        require_field(self.domain)?;
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).into_coords();
                row.extend(Vector::unit(self.domain, n, r).into_coords());
                row
            })
            .collect();
        let pivots = reduce_rows(&mut rows);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let inv_rows = rows.into_iter().take(n).map(|r| r[n..].to_vec()).collect();
        Ok(Some(Matrix::from_rows(self.domain, inv_rows, n)?))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_vectors().serialize(serializer)
    }
}

pub(crate) fn require_field(domain: CoeffDomain) -> Result<()> {
    if domain.is_field() {
        Ok(())
    } else {
        Err(Error::NonFieldDomain(domain))
    }
}

/// In-place reduced row-echelon form; zero rows are removed. Returns the
/// pivot column of each remaining row. The caller guarantees a field domain.
fn reduce_rows(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].try_invert().expect("nonzero element of a field");
        for x in rows[next].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    pivots
}

/// Reduced row-echelon form with zero rows dropped.
pub fn rref(m: &Matrix) -> Result<Matrix> {
    require_field(m.domain)?;
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows).map(|r| m.row(r).into_coords()).collect();
    reduce_rows(&mut rows);
    Matrix::from_rows(m.domain, rows, m.cols)
}

/// Some `x` with `a x = b`, or `None` if the system is inconsistent. Free
/// variables are set to zero.
pub fn solve(a: &Matrix, b: &Vector) -> Result<Option<Vector>> {
    require_field(a.domain)?;
    if b.len() != a.rows {
        return Err(Error::ShapeMismatch(format!("{}x{} system with right-hand side of length {}", a.rows, a.cols, b.len())));
    }
    if b.domain() != a.domain {
        return Err(Error::DomainMismatch { left: a.domain, right: b.domain() });
    }
    let mut rows: Vec<Vec<Scalar>> = (0..a.rows)
        .map(|r| {
            let mut row = a.row(r).into_coords();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = reduce_rows(&mut rows);
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = Vector::zero(a.domain, a.cols);
    for (row, &p) in rows.iter().zip(&pivots) {
        x.coords[p] = row[a.cols].clone();
    }
    Ok(Some(x))
}

/// A subspace of `F^n` held in canonical reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    domain: CoeffDomain,
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(domain: CoeffDomain, ambient_dim: usize) -> Self {
        Subspace { domain, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(domain: CoeffDomain, ambient_dim: usize) -> Self {
        Subspace {
            domain,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| Vector::unit(domain, ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span(domain: CoeffDomain, ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        require_field(domain)?;
        for v in vectors {
            if v.domain() != domain {
                return Err(Error::DomainMismatch { left: domain, right: v.domain() });
            }
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        let mut rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.coords.clone()).collect();
        let pivots = reduce_rows(&mut rows);
        Ok(Subspace {
            domain,
            ambient_dim,
            basis: rows.into_iter().map(|r| Vector::from_coords_unchecked(domain, r)).collect(),
            pivots,
        })
    }

    /// Row space of a matrix.
    pub fn row_space(m: &Matrix) -> Result<Self> {
        Subspace::span(m.domain, m.cols, &m.row_vectors())
    }

    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_dim
    }

    /// Canonical basis rows.
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.domain, self.basis.iter().map(|v| v.coords.clone()).collect(), self.ambient_dim)
            .expect("basis rows have ambient length")
    }

    /// `v` minus its projection onto the subspace along the pivot columns:
    /// zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = r.coords[p].clone();
            if !c.is_zero() {
                r.add_scaled(&-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(Vector::from_coords_unchecked(self.domain, self.pivots.iter().map(|&p| v.coords[p].clone()).collect()))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch { left: self.ambient_dim, right: other.ambient_dim });
        }
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: other.domain });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let vectors: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.domain, self.ambient_dim, &vectors)
    }

    /// Intersection via the kernel of `(a, b) -> a·U - b·V`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let r = self.rank();
        let s = other.rank();
        if r == 0 || s == 0 {
            return Ok(Subspace::zero(self.domain, self.ambient_dim));
        }
        let mut stacked: Vec<Vector> = self.basis.clone();
        stacked.extend(other.basis.iter().map(|v| -v));
        // columns of `relations` are the stacked rows, so its kernel holds the
        // coefficient vectors (a, b) with sum a_i u_i = sum b_j v_j
        let relations = Matrix::from_columns(self.domain, self.ambient_dim, &stacked)?;
        let ker = kernel(&relations)?;
        let vectors: Vec<Vector> = ker
            .basis
            .iter()
            .map(|coeffs| {
                let mut acc = Vector::zero(self.domain, self.ambient_dim);
                for (c, u) in coeffs.coords[..r].iter().zip(&self.basis) {
                    acc.add_scaled(c, u);
                }
                acc
            })
            .collect();
        Subspace::span(self.domain, self.ambient_dim, &vectors)
    }

    /// Deterministic complement spanned by the standard vectors at the
    /// non-pivot columns.
    pub fn complement(&self) -> Subspace {
        let vectors: Vec<Vector> = (0..self.ambient_dim)
            .filter(|c| !self.pivots.contains(c))
            .map(|c| Vector::unit(self.domain, self.ambient_dim, c))
            .collect();
        let pivots = (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect();
        Subspace { domain: self.domain, ambient_dim: self.ambient_dim, basis: vectors, pivots }
    }

    /// `u ∩ w = 0` and `u + w` is everything.
    pub fn is_complement_of(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok(self.rank() + other.rank() == self.ambient_dim && self.sum(other)?.is_full())
    }

    /// Image of the subspace under `f` (a `target_dim x ambient_dim` matrix).
    pub fn map(&self, f: &Matrix) -> Result<Subspace> {
        if f.cols() != self.ambient_dim {
            return Err(Error::ShapeMismatch(format!("map with {} columns on ambient dimension {}", f.cols(), self.ambient_dim)));
        }
        let images: Vec<Vector> = self.basis.iter().map(|v| f.apply(v)).collect();
        Subspace::span(self.domain, f.rows(), &images)
    }
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis.serialize(serializer)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{{")?;
        for (i, v) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Null space of `m`.
pub fn kernel(m: &Matrix) -> Result<Subspace> {
    require_field(m.domain)?;
    let mut rows: Vec<Vec<Scalar>> = (0..m.rows).map(|r| m.row(r).into_coords()).collect();
    let pivots = reduce_rows(&mut rows);
    let mut vectors = Vec::new();
    for free in (0..m.cols).filter(|c| !pivots.contains(c)) {
        let mut v = Vector::unit(m.domain, m.cols, free);
        for (row, &p) in rows.iter().zip(&pivots) {
            v.coords[p] = -&row[free];
        }
        vectors.push(v);
    }
    Subspace::span(m.domain, m.cols, &vectors)
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Result<Subspace> {
    require_field(m.domain)?;
    Subspace::span(m.domain, m.rows, &m.columns())
}

/// Incrementally maintained reduced echelon basis.
#[derive(Debug, Clone)]
pub struct Echelon {
    domain: CoeffDomain,
    width: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(domain: CoeffDomain, width: usize) -> Result<Self> {
        require_field(domain)?;
        Ok(Echelon { domain, width, rows: Vec::new(), pivots: Vec::new() })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r.coords[p].clone();
            if !c.is_zero() {
                r.add_scaled(&-c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        self.insert_row(v).is_some()
    }

    /// Adds `v` to the span and returns the new normalised row (reduced
    /// against the rows present before the call), if the rank grew.
    pub fn insert_row(&mut self, v: &Vector) -> Option<Vector> {
        debug_assert_eq!(v.len(), self.width);
        let mut r = self.reduce(v);
        let p = r.coords.iter().position(|c| !c.is_zero())?;
        let inv = r.coords[p].try_invert().expect("field");
        r = r.scale(&inv);
        for row in self.rows.iter_mut() {
            let c = row.coords[p].clone();
            if !c.is_zero() {
                row.add_scaled(&-c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r.clone());
        Some(r)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace { domain: self.domain, ambient_dim: self.width, basis: self.rows, pivots: self.pivots }
    }
}

/// Lazy enumeration of every subspace of `F_p^n`, each exactly once, ordered
/// by rank, then pivot set, then the free entries in base-p counting order.
pub struct SubspaceEnumerator {
    domain: CoeffDomain,
    n: usize,
    p: u64,
    rank: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u64>,
    done: bool,
}

/// Every subspace of `domain^ambient_dim`; the domain must be a prime field
/// with `p^n` within `budget`.
pub fn enumerate_subspaces(domain: CoeffDomain, ambient_dim: usize, budget: u64) -> Result<SubspaceEnumerator> {
    let p = match domain.kind() {
        crate::coefficients::DomainKind::PrimeField(p) => p,
        _ => return Err(Error::NonFieldDomain(domain)),
    };
    check_budget(p, ambient_dim, budget)?;
    let mut e = SubspaceEnumerator {
        domain,
        n: ambient_dim,
        p,
        rank: 0,
        pivots: Vec::new(),
        free: Vec::new(),
        digits: Vec::new(),
        done: false,
    };
    e.reset_free();
    Ok(e)
}

/// Fails with `BudgetExceeded` unless `base^exp <= budget`.
pub fn check_budget(base: u64, exp: usize, budget: u64) -> Result<u128> {
    let mut total: u128 = 1;
    for _ in 0..exp {
        total = total.saturating_mul(base as u128);
    }
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    Ok(total)
}

impl SubspaceEnumerator {
    fn reset_free(&mut self) {
        self.free.clear();
        for (row, &pc) in self.pivots.iter().enumerate() {
            for col in pc + 1..self.n {
                if !self.pivots.contains(&col) {
                    self.free.push((row, col));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        let mut basis = Vec::with_capacity(self.rank);
        for (row, &pc) in self.pivots.iter().enumerate() {
            let mut v = Vector::unit(self.domain, self.n, pc);
            for ((r, c), d) in self.free.iter().zip(&self.digits) {
                if *r == row {
                    v.coords[*c] = self.domain.residue(*d);
                }
            }
            basis.push(v);
        }
        Subspace { domain: self.domain, ambient_dim: self.n, basis, pivots: self.pivots.clone() }
    }

    fn advance_digits(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.p {
                return true;
            }
            *d = 0;
        }
        false
    }

    fn advance_pivots(&mut self) -> bool {
        // next combination of `rank` columns out of `n` in lexicographic order
        let k = self.rank;
        let n = self.n;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - k + i {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let out = self.current();
        if !self.advance_digits() {
            if self.advance_pivots() {
                self.reset_free();
            } else if self.rank < self.n {
                self.rank += 1;
                self.pivots = (0..self.rank).collect();
                self.reset_free();
            } else {
                self.done = true;
            }
        }
        Some(out)
    }
}
