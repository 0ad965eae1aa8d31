#![allow(dead_code)]

use prealg_core::samples::random_algebra;
use prealg_core::{Algebra, CoeffDomain, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn q() -> CoeffDomain {
    CoeffDomain::rationals()
}

pub fn f(p: u64) -> CoeffDomain {
    CoeffDomain::prime_field(p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// ℚ, 𝔽₂, 𝔽₃, 𝔽₅.
pub fn fields() -> Vec<CoeffDomain> {
    vec![q(), f(2), f(3), f(5)]
}

pub fn seeded_algebra(seed: u64, domain: CoeffDomain, dim: usize) -> Algebra {
    random_algebra(domain, dim, &mut rng(seed))
}

pub fn seeded_matrix(seed: u64, domain: CoeffDomain, rows: usize, cols: usize) -> Matrix {
    let mut r = rng(seed);
    let entries = (0..rows).map(|_| (0..cols).map(|_| domain.random(&mut r)).collect()).collect();
    Matrix::from_rows(domain, entries, cols).unwrap()
}
