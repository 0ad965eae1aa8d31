//! Fixture algebras, random generators and exhaustive enumerators used by
//! the test suites and the CLI.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Algebra;
use crate::coefficients::CoeffDomain;
use crate::error::{Error, Result};
use crate::linear::{check_budget, Matrix, Vector};

/// Two-dimensional associative algebra with `e1e1 = e1`, `e1e2 = e2` and all
/// other basis products zero.
pub fn a2(domain: CoeffDomain) -> Algebra {
    Algebra::from_fn("A2", domain, 2, |i, j| match (i, j) {
        (0, 0) => Vector::unit(domain, 2, 0),
        (0, 1) => Vector::unit(domain, 2, 1),
        _ => Vector::zero(domain, 2),
    })
}

/// `e1e1 = e2`, `e2e1 = e1`, everything else zero. Not pre-Lie.
pub fn twisted2(domain: CoeffDomain) -> Algebra {
    Algebra::from_fn("T2", domain, 2, |i, j| match (i, j) {
        (0, 0) => Vector::unit(domain, 2, 1),
        (1, 0) => Vector::unit(domain, 2, 0),
        _ => Vector::zero(domain, 2),
    })
}

pub fn random_algebra<R: Rng + ?Sized>(domain: CoeffDomain, dim: usize, rng: &mut R) -> Algebra {
    Algebra::from_fn(format!("rand{dim}"), domain, dim, |_, _| {
        Vector::new(domain, (0..dim).map(|_| domain.random(rng)).collect()).expect("homogeneous")
    })
}

/// Random algebra in which roughly half of the structure constants vanish.
pub fn random_sparse_algebra<R: Rng + ?Sized>(domain: CoeffDomain, dim: usize, rng: &mut R) -> Algebra {
    Algebra::from_fn(format!("rand{dim}"), domain, dim, |_, _| {
        let coords = (0..dim).map(|_| if rng.gen_bool(0.5) { domain.zero() } else { domain.random(rng) }).collect();
        Vector::new(domain, coords).expect("homogeneous")
    })
}

/// The algebra with the same product written in the basis given by the
/// columns of `p` (which must be invertible).
pub fn change_basis(a: &Algebra, p: &Matrix) -> Result<Algebra> {
    let inv = p.inverse()?.ok_or_else(|| Error::ShapeMismatch("change of basis matrix is singular".into()))?;
    let cols = p.columns();
    let n = a.dim();
    let out = Algebra::from_fn(a.name(), a.domain(), n, |i, j| {
        let prod = a.mul(&cols[i], &cols[j]).expect("dimensions agree");
        inv.mul_vec(&prod).expect("dimensions agree")
    });
    Ok(out)
}

pub fn random_invertible<R: Rng + ?Sized>(domain: CoeffDomain, n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| domain.random(rng)).collect()).collect();
        let m = Matrix::from_rows(domain, rows, n).expect("rectangular");
        if m.rank().expect("field") == n {
            return m;
        }
    }
}

/// Direct sum: block structure constants.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Algebra {
    let (m, n) = (a.dim(), b.dim());
    let domain = a.domain();
    Algebra::from_fn(format!("{}+{}", a.name(), b.name()), domain, m + n, |i, j| {
        if i < m && j < m {
            a.product(i, j).concat(&Vector::zero(domain, n))
        } else if i >= m && j >= m {
            Vector::zero(domain, m).concat(b.product(i - m, j - m))
        } else {
            Vector::zero(domain, m + n)
        }
    })
}

fn associative_block<R: Rng + ?Sized>(domain: CoeffDomain, dim: usize, rng: &mut R) -> Algebra {
    let unit = |i| Vector::unit(domain, dim, i);
    let zero = || Vector::zero(domain, dim);
    let choice = rng.gen_range(0..5);
    match (dim, choice) {
        (1, 0 | 1 | 2) => Algebra::from_fn("k", domain, 1, |_, _| unit(0)),
        (1, _) => Algebra::zero(domain, 1),
        (2, 0) => a2(domain),
        (2, 1) => a2(domain).opposite(),
        // k[x]/(x^2) with basis 1, x
        (2, 2) => Algebra::from_fn("dual", domain, 2, |i, j| if i + j <= 1 { unit(i + j) } else { zero() }),
        // e1e1 = e2
        (2, 3) => Algebra::from_fn("nil", domain, 2, |i, j| if i == 0 && j == 0 { unit(1) } else { zero() }),
        (2, _) => Algebra::from_fn("kxk", domain, 2, |i, j| if i == j { unit(i) } else { zero() }),
        // upper-triangular 2x2 matrices: basis E11, E12, E22
        (3, 0 | 1) => Algebra::from_fn("T2", domain, 3, |i, j| match (i, j) {
            (0, 0) => unit(0),
            (0, 1) => unit(1),
            (1, 2) => unit(1),
            (2, 2) => unit(2),
            _ => zero(),
        }),
        // x·k[x]/(x^{n+1}): e_i e_j = e_{i+j}
        (_, 2) => Algebra::from_fn("xk[x]", domain, dim, |i, j| if i + j + 1 < dim { unit(i + j + 1) } else { zero() }),
        // k[x]/(x^n) with basis 1, x, ..., x^{n-1}
        (_, 3) => Algebra::from_fn("k[x]", domain, dim, |i, j| if i + j < dim { unit(i + j) } else { zero() }),
        (4, _) => matrix_algebra2(domain),
        _ => {
            let first = rng.gen_range(1..dim);
            direct_sum(&associative_block(domain, first, rng), &associative_block(domain, dim - first, rng))
        }
    }
}

/// The full matrix algebra `M_2` on the matrix-unit basis `E11, E12, E21, E22`.
pub fn matrix_algebra2(domain: CoeffDomain) -> Algebra {
    // E_ab E_cd = δ_bc E_ad, index of E_ab is 2a + b
    Algebra::from_fn("M2", domain, 4, |i, j| {
        let (a, b) = (i / 2, i % 2);
        let (c, d) = (j / 2, j % 2);
        if b == c {
            Vector::unit(domain, 4, 2 * a + d)
        } else {
            Vector::zero(domain, 4)
        }
    })
}

/// A random associative algebra: a catalogue algebra (or direct sum of
/// catalogue algebras) seen through a random change of basis and scaled by a
/// random nonzero scalar.
pub fn random_associative<R: Rng + ?Sized>(domain: CoeffDomain, dim: usize, rng: &mut R) -> Algebra {
    let base = associative_block(domain, dim, rng);
    let p = random_invertible(domain, dim, rng);
    let moved = change_basis(&base, &p).expect("invertible");
    let s = loop {
        let s = domain.random(rng);
        if !s.is_zero() {
            break s;
        }
    };
    moved.scaled(&s).with_name(format!("assoc{dim}"))
}

/// Every algebra of dimension `dim` over a finite domain, in counting order
/// of the flattened structure-constant tensor.
pub fn all_algebras(domain: CoeffDomain, dim: usize, budget: u64) -> Result<impl Iterator<Item = Algebra>> {
    let n = domain.order().ok_or(Error::NonFieldDomain(domain))?;
    let total = check_budget(n, dim * dim * dim, budget)? as u64;
    Ok((0..total).map(move |mut code| {
        let mut digits = vec![0u64; dim * dim * dim];
        for d in digits.iter_mut().rev() {
            *d = code % n;
            code /= n;
        }
        let mut it = digits.into_iter();
        Algebra::from_fn(format!("alg{dim}"), domain, dim, |_, _| {
            let coords = (0..dim).map(|_| domain.residue(it.next().expect("digit"))).collect();
            Vector::new(domain, coords).expect("homogeneous")
        })
    }))
}

/// Every `rows x cols` matrix over a finite domain, in lexicographic order of
/// the row-major entries.
pub fn all_matrices(domain: CoeffDomain, rows: usize, cols: usize, budget: u64) -> Result<impl Iterator<Item = Matrix>> {
    let n = domain.order().ok_or(Error::NonFieldDomain(domain))?;
    let total = check_budget(n, rows * cols, budget)? as u64;
    Ok((0..total).map(move |mut code| {
        let mut digits = vec![0u64; rows * cols];
        for d in digits.iter_mut().rev() {
            *d = code % n;
            code /= n;
        }
        let entries: Vec<Vec<_>> = digits.chunks(cols.max(1)).map(|c| c.iter().map(|&v| domain.residue(v)).collect()).collect();
        let entries = if cols == 0 { vec![Vec::new(); rows] } else { entries };
        Matrix::from_rows(domain, entries, cols).expect("rectangular")
    }))
}

/// Picks a random element of a non-empty slice.
pub fn pick<'a, T, R: Rng + ?Sized>(items: &'a [T], rng: &mut R) -> &'a T {
    items.choose(rng).expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::is_associative;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_associative_algebras_are_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3, 5] {
            let d = CoeffDomain::prime_field(p).unwrap();
            for dim in 1..=4 {
                for _ in 0..5 {
                    let a = random_associative(d, dim, &mut rng);
                    assert!(is_associative(&a).holds, "{a}");
                }
            }
        }
        let q = CoeffDomain::rationals();
        for _ in 0..5 {
            assert!(is_associative(&random_associative(q, 3, &mut rng)).holds);
        }
    }

    #[test]
    fn exhaustive_counts() {
        let f2 = CoeffDomain::prime_field(2).unwrap();
        assert_eq!(all_algebras(f2, 2, 1 << 10).unwrap().count(), 256);
        assert_eq!(all_matrices(f2, 2, 2, 4096).unwrap().count(), 16);
        assert!(all_matrices(CoeffDomain::rationals(), 2, 2, 4096).is_err());
    }
}
