//! Decision procedures for the identity classes of algebras.
//!
//! All identities except the Jordan identity are multilinear, so they are
//! decided by evaluating the defect on every tuple of basis vectors. Tuples
//! are visited in lexicographic order; the first non-vanishing defect is the
//! reported witness.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::coefficients::DomainKind;
use crate::error::{Error, Result};
use crate::linear::{Vector, DEFAULT_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Associative,
    Commutative,
    Anticommutative,
    PreLie,
    LieAdmissible,
    AntiPreLie,
    PreJordan,
    JordanAdmissible,
}

impl Identity {
    pub const ALL: [Identity; 8] = [
        Identity::Associative,
        Identity::Commutative,
        Identity::Anticommutative,
        Identity::PreLie,
        Identity::LieAdmissible,
        Identity::AntiPreLie,
        Identity::PreJordan,
        Identity::JordanAdmissible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Associative => "associative",
            Identity::Commutative => "commutative",
            Identity::Anticommutative => "anticommutative",
            Identity::PreLie => "pre-lie",
            Identity::LieAdmissible => "lie-admissible",
            Identity::AntiPreLie => "anti-pre-lie",
            Identity::PreJordan => "pre-jordan",
            Identity::JordanAdmissible => "jordan-admissible",
        }
    }

    pub fn check(self, a: &Algebra, budget: u64) -> IdentityReport {
        match self {
            Identity::Associative => is_associative(a),
            Identity::Commutative => is_commutative(a),
            Identity::Anticommutative => is_anticommutative(a),
            Identity::PreLie => is_pre_lie(a),
            Identity::LieAdmissible => is_lie_admissible(a),
            Identity::AntiPreLie => is_anti_pre_lie(a),
            Identity::PreJordan => is_pre_jordan(a),
            Identity::JordanAdmissible => is_jordan_admissible(a, budget),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMethod {
    /// Multilinear defect on every basis tuple.
    BasisSweep,
    /// Every vector of a finite module (the Jordan identity).
    Exhaustive,
    /// Linearized identity on basis tuples plus the raw identity on basis
    /// pairs.
    Polarized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Basis indices of the arguments; empty when the arguments are general
    /// vectors.
    pub indices: Vec<usize>,
    pub arguments: Vec<Vector>,
    /// Which defining equation failed.
    pub clause: String,
    pub defect: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub holds: bool,
    pub method: CheckMethod,
    /// Names of the defining equations that failed.
    pub failed_clauses: Vec<String>,
    pub witness: Option<Witness>,
    /// Set when the verdict rests on polarization in characteristic 2 or 3,
    /// where it is not equivalent to the raw identity.
    pub caveat: Option<String>,
}

impl IdentityReport {
    fn from_clauses(identity: Identity, method: CheckMethod, results: Vec<(&str, Option<Witness>)>) -> Self {
        let failed_clauses: Vec<String> = results.iter().filter(|(_, w)| w.is_some()).map(|(n, _)| n.to_string()).collect();
        let witness = results.into_iter().find_map(|(_, w)| w);
        IdentityReport { identity, holds: witness.is_none(), method, failed_clauses, witness, caveat: None }
    }
}

/// Evaluates `defect` on every basis tuple of the given arity in
/// lexicographic order; returns the first nonzero one.
fn sweep(a: &Algebra, arity: usize, clause: &str, defect: impl Fn(&[Vector]) -> Vector) -> Option<Witness> {
    let n = a.dim();
    if n == 0 {
        return None;
    }
    let basis: Vec<Vector> = (0..n).map(|i| a.basis_vector(i)).collect();
    let mut idx = vec![0usize; arity];
    loop {
        let args: Vec<Vector> = idx.iter().map(|&i| basis[i].clone()).collect();
        let d = defect(&args);
        if !d.is_zero() {
            return Some(Witness { indices: idx.clone(), arguments: args, clause: clause.to_string(), defect: d });
        }
        let mut k = arity;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

fn single(identity: Identity, arity: usize, a: &Algebra, defect: impl Fn(&[Vector]) -> Vector) -> IdentityReport {
    let w = sweep(a, arity, identity.name(), defect);
    IdentityReport::from_clauses(identity, CheckMethod::BasisSweep, vec![(identity.name(), w)])
}

pub fn is_associative(a: &Algebra) -> IdentityReport {
    single(Identity::Associative, 3, a, |v| a.associator_unchecked(&v[0], &v[1], &v[2]))
}

pub fn is_commutative(a: &Algebra) -> IdentityReport {
    single(Identity::Commutative, 2, a, |v| a.bracket(&v[0], &v[1]))
}

/// `xy + yx = 0` and `xx = 0`; the second is not implied by the first in
/// characteristic 2.
pub fn is_anticommutative(a: &Algebra) -> IdentityReport {
    let sym = sweep(a, 2, "xy+yx", |v| a.circle(&v[0], &v[1]));
    let alt = sweep(a, 1, "xx", |v| a.mul_unchecked(&v[0], &v[0]));
    IdentityReport::from_clauses(Identity::Anticommutative, CheckMethod::BasisSweep, vec![("xy+yx", sym), ("xx", alt)])
}

/// `(x,y,z) = (y,x,z)` for the associator.
pub fn pre_lie_defect(a: &Algebra, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    &a.associator_unchecked(x, y, z) - &a.associator_unchecked(y, x, z)
}

pub fn is_pre_lie(a: &Algebra) -> IdentityReport {
    single(Identity::PreLie, 3, a, |v| pre_lie_defect(a, &v[0], &v[1], &v[2]))
}

/// Jacobi defect of the commutator: `[[x,y],z] + [[y,z],x] + [[z,x],y]`.
pub fn jacobi_defect(a: &Algebra, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let t1 = a.bracket(&a.bracket(x, y), z);
    let t2 = a.bracket(&a.bracket(y, z), x);
    let t3 = a.bracket(&a.bracket(z, x), y);
    &(&t1 + &t2) + &t3
}

pub fn is_lie_admissible(a: &Algebra) -> IdentityReport {
    single(Identity::LieAdmissible, 3, a, |v| jacobi_defect(a, &v[0], &v[1], &v[2]))
}

pub fn is_anti_pre_lie(a: &Algebra) -> IdentityReport {
    let m = |x: &Vector, y: &Vector| a.mul_unchecked(x, y);
    let first = sweep(a, 3, "3210", |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let lhs = &m(&m(x, y), z) + &m(x, &m(y, z));
        let rhs = &m(&m(y, x), z) + &m(y, &m(x, z));
        &lhs - &rhs
    });
    let second = sweep(a, 3, "3211", |v| {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let s = &m(&a.bracket(x, y), z) + &m(&a.bracket(y, z), x);
        &s + &m(&a.bracket(z, x), y)
    });
    IdentityReport::from_clauses(Identity::AntiPreLie, CheckMethod::BasisSweep, vec![("3210", first), ("3211", second)])
}

pub fn is_pre_jordan(a: &Algebra) -> IdentityReport {
    let m = |x: &Vector, y: &Vector| a.mul_unchecked(x, y);
    let o = |x: &Vector, y: &Vector| a.circle(x, y);
    // shared right-hand side z[(x∘y)u] + x[(y∘z)u] + y[(z∘x)u]
    let rhs = |x: &Vector, y: &Vector, z: &Vector, u: &Vector| {
        let s = &m(z, &m(&o(x, y), u)) + &m(x, &m(&o(y, z), u));
        &s + &m(y, &m(&o(z, x), u))
    };
    let first = sweep(a, 4, "first", |v| {
        let (x, y, z, u) = (&v[0], &v[1], &v[2], &v[3]);
        let lhs = &(&m(&o(x, y), &m(z, u)) + &m(&o(y, z), &m(x, u))) + &m(&o(z, x), &m(y, u));
        &lhs - &rhs(x, y, z, u)
    });
    let second = sweep(a, 4, "second", |v| {
        let (x, y, z, u) = (&v[0], &v[1], &v[2], &v[3]);
        let lhs = &(&m(x, &m(y, &m(z, u))) + &m(z, &m(y, &m(x, u)))) + &m(&o(&o(x, z), y), u);
        &lhs - &rhs(x, y, z, u)
    });
    IdentityReport::from_clauses(Identity::PreJordan, CheckMethod::BasisSweep, vec![("first", first), ("second", second)])
}

/// Jordan defect `(x∘y)∘(x∘x) − x∘(y∘(x∘x))` in the anticommutator algebra
/// `c`.
fn jordan_defect(c: &Algebra, x: &Vector, y: &Vector) -> Vector {
    let xx = c.mul_unchecked(x, x);
    &c.mul_unchecked(&c.mul_unchecked(x, y), &xx) - &c.mul_unchecked(x, &c.mul_unchecked(y, &xx))
}

/// Full linearization of the Jordan defect in its cubic argument.
fn jordan_polarized(c: &Algebra, x: [&Vector; 3], y: &Vector) -> Vector {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut acc = c.zero_vector();
    for p in PERMS {
        let (a, b, d) = (x[p[0]], x[p[1]], x[p[2]]);
        let bd = c.mul_unchecked(b, d);
        let t = &c.mul_unchecked(&c.mul_unchecked(a, y), &bd) - &c.mul_unchecked(a, &c.mul_unchecked(y, &bd));
        acc = &acc + &t;
    }
    acc
}

/// All vectors of a finite module in counting order.
pub(crate) fn all_vectors(a: &Algebra) -> impl Iterator<Item = Vector> + '_ {
    let q = a.domain().order().expect("finite domain");
    let n = a.dim();
    let total = (q as u128).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut coords = vec![a.domain().zero(); n];
        for c in coords.iter_mut().rev() {
            *c = a.domain().residue((code % q as u128) as u64);
            code /= q as u128;
        }
        Vector::new(a.domain(), coords).expect("homogeneous")
    })
}

/// Jordan-admissibility: `C(a)` satisfies the Jordan identity.
///
/// Over a finite domain whose module has at most `budget` elements the
/// identity is evaluated on every `x` (it is linear in `y`, so `y` ranges over
/// the basis). Otherwise the linearized identity is checked on basis tuples
/// together with the raw identity on basis pairs; in characteristic 2 or 3
/// that verdict carries a caveat.
pub fn is_jordan_admissible(a: &Algebra, budget: u64) -> IdentityReport {
    let c = a.anticommutator_algebra();
    let n = a.dim();
    let exhaustive = match a.domain().order() {
        Some(q) => (q as u128).checked_pow(n as u32).is_some_and(|t| t <= budget as u128),
        None => false,
    };
    if exhaustive {
        let basis: Vec<Vector> = (0..n).map(|i| a.basis_vector(i)).collect();
        for x in all_vectors(a) {
            for (j, y) in basis.iter().enumerate() {
                let d = jordan_defect(&c, &x, y);
                if !d.is_zero() {
                    let w = Witness { indices: Vec::new(), arguments: vec![x.clone(), y.clone()], clause: format!("jordan (y = e{})", j + 1), defect: d };
                    return IdentityReport::from_clauses(Identity::JordanAdmissible, CheckMethod::Exhaustive, vec![("jordan", Some(w))]);
                }
            }
        }
        return IdentityReport::from_clauses(Identity::JordanAdmissible, CheckMethod::Exhaustive, vec![("jordan", None)]);
    }

    let mut polarized = None;
    'outer: for i in 0..n {
        for j in i..n {
            for k in j..n {
                for l in 0..n {
                    let (x1, x2, x3, y) = (a.basis_vector(i), a.basis_vector(j), a.basis_vector(k), a.basis_vector(l));
                    let d = jordan_polarized(&c, [&x1, &x2, &x3], &y);
                    if !d.is_zero() {
                        polarized = Some(Witness { indices: vec![i, j, k, l], arguments: vec![x1, x2, x3, y], clause: "jordan-polarized".into(), defect: d });
                        break 'outer;
                    }
                }
            }
        }
    }
    let raw = sweep(a, 2, "jordan", |v| jordan_defect(&c, &v[0], &v[1]));
    let mut report = IdentityReport::from_clauses(
        Identity::JordanAdmissible,
        CheckMethod::Polarized,
        vec![("jordan-polarized", polarized), ("jordan", raw)],
    );
    let small_char = match a.domain().kind() {
        DomainKind::Rationals => false,
        DomainKind::PrimeField(p) => p <= 3,
        DomainKind::ResidueRing(m) => m % 2 == 0 || m % 3 == 0,
    };
    if small_char {
        report.caveat = Some(format!(
            "polarized check over {} (characteristic divisible by 2 or 3) is not equivalent to the raw identity",
            a.domain()
        ));
    }
    report
}

/// The full identity profile of an algebra.
pub fn classify(a: &Algebra) -> Vec<IdentityReport> {
    classify_with_budget(a, DEFAULT_BUDGET)
}

pub fn classify_with_budget(a: &Algebra, budget: u64) -> Vec<IdentityReport> {
    Identity::ALL.iter().map(|i| i.check(a, budget)).collect()
}
