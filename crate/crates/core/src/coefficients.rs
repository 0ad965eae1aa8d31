//! Exact scalar arithmetic over the supported coefficient domains.
//!
//! Three kinds of commutative coefficient domain are available: the rationals
//! (arbitrary precision), prime fields `F_p` and residue rings `Z/nZ`. A
//! [`Scalar`] always carries its domain and is kept in canonical form
//! (reduced fraction, least nonnegative residue), so equality of scalars is
//! representational equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus accepted for `F_p` and `Z/nZ`.
pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainKind {
    Rationals,
    PrimeField(u64),
    ResidueRing(u64),
}

/// An exact commutative coefficient domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffDomain {
    kind: DomainKind,
}

/// How the element 2 behaves in a domain; decides which decomposition
/// results apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwoProfile {
    /// 2 is a unit.
    TwoInvertible,
    /// 2 is a non-unit but not a zero divisor (e.g. the integers). None of the
    /// built-in domains has this profile.
    TwoTorsionFreeOnly,
    /// 2 = 0.
    CharacteristicTwo,
    /// 2 is a nonzero zero divisor.
    TwoTorsion,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl CoeffDomain {
    pub fn rationals() -> Self {
        CoeffDomain { kind: DomainKind::Rationals }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::InvalidDomain(format!("modulus {p} too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidDomain(format!("{p} is not prime")));
        }
        Ok(CoeffDomain { kind: DomainKind::PrimeField(p) })
    }

    pub fn residue_ring(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDomain(format!("residue ring modulus must be >= 2, got {n}")));
        }
        if n >= MAX_MODULUS {
            return Err(Error::InvalidDomain(format!("modulus {n} too large")));
        }
        Ok(CoeffDomain { kind: DomainKind::ResidueRing(n) })
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind {
            DomainKind::Rationals => 0,
            DomainKind::PrimeField(p) => p,
            DomainKind::ResidueRing(n) => n,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self.kind, DomainKind::ResidueRing(_))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            DomainKind::Rationals => None,
            DomainKind::PrimeField(n) | DomainKind::ResidueRing(n) => Some(n),
        }
    }

    fn modulus(&self) -> Option<u64> {
        self.order()
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self.modulus() {
            None => Scalar { domain: *self, repr: Repr::Rational(BigRational::from_integer(BigInt::from(v))) },
            Some(n) => Scalar { domain: *self, repr: Repr::Residue(v.rem_euclid(n as i64) as u64) },
        }
    }

    fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self.modulus() {
            None => Scalar { domain: *self, repr: Repr::Rational(BigRational::from_integer(v.clone())) },
            Some(n) => {
                let r = v.mod_floor(&BigInt::from(n));
                Scalar { domain: *self, repr: Repr::Residue(r.to_u64().expect("residue fits")) }
            }
        }
    }

    /// Every element of a finite domain in increasing residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let n = self.order()?;
        Some((0..n).map(|v| Scalar { domain: *self, repr: Repr::Residue(v) }).collect())
    }

    /// The residue with value `v` (reduced). Panics for the rationals.
    pub fn residue(&self, v: u64) -> Scalar {
        let n = self.modulus().expect("residue() on a finite domain");
        Scalar { domain: *self, repr: Repr::Residue(v % n) }
    }

    pub fn two_profile(&self) -> TwoProfile {
        match self.kind {
            DomainKind::Rationals => TwoProfile::TwoInvertible,
            DomainKind::PrimeField(2) | DomainKind::ResidueRing(2) => TwoProfile::CharacteristicTwo,
            DomainKind::PrimeField(_) => TwoProfile::TwoInvertible,
            DomainKind::ResidueRing(n) if n % 2 == 0 => TwoProfile::TwoTorsion,
            DomainKind::ResidueRing(_) => TwoProfile::TwoInvertible,
        }
    }

    /// Parses a scalar literal `"a"` or `"a/b"`. Over modular domains the
    /// denominator must be invertible.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Parse(format!("malformed scalar {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (text, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        match self.modulus() {
            None => Ok(Scalar { domain: *self, repr: Repr::Rational(BigRational::new(num, den)) }),
            Some(_) => {
                let n = self.from_bigint(&num);
                let d = self.from_bigint(&den);
                let inv = d
                    .try_invert()
                    .ok_or_else(|| Error::Parse(format!("denominator of {text:?} is not invertible in {self}")))?;
                Ok(&n * &inv)
            }
        }
    }

    /// A random scalar: uniform over finite domains, small fractions over the
    /// rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self.modulus() {
            Some(n) => Scalar { domain: *self, repr: Repr::Residue(rng.gen_range(0..n)) },
            None => {
                let num: i64 = rng.gen_range(-3..=3);
                let den: i64 = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(1..=3) };
                Scalar {
                    domain: *self,
                    repr: Repr::Rational(BigRational::new(BigInt::from(num), BigInt::from(den))),
                }
            }
        }
    }
}

impl fmt::Display for CoeffDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DomainKind::Rationals => write!(f, "Q"),
            DomainKind::PrimeField(p) => write!(f, "F{p}"),
            DomainKind::ResidueRing(n) => write!(f, "Z/{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
}

/// An element of a [`CoeffDomain`] in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    domain: CoeffDomain,
    repr: Repr,
}

impl Scalar {
    pub fn domain(&self) -> CoeffDomain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(v) => *v == 1,
        }
    }

    /// Residue value for modular domains.
    pub fn residue_value(&self) -> Option<u64> {
        match self.repr {
            Repr::Residue(v) => Some(v),
            Repr::Rational(_) => None,
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch { left: self.domain, right: other.domain });
        }
        Ok(())
    }

    fn modulus(&self) -> u64 {
        self.domain.modulus().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                Repr::Residue(((*a as u128 + *b as u128) % self.modulus() as u128) as u64)
            }
            _ => unreachable!("representation follows the domain"),
        };
        Ok(Scalar { domain: self.domain, repr })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                Repr::Residue(((*a as u128 * *b as u128) % self.modulus() as u128) as u64)
            }
            _ => unreachable!("representation follows the domain"),
        };
        Ok(Scalar { domain: self.domain, repr })
    }

    /// Multiplicative inverse, `None` when the scalar is not a unit.
    pub fn try_invert(&self) -> Option<Scalar> {
        match &self.repr {
            Repr::Rational(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar { domain: self.domain, repr: Repr::Rational(q.recip()) })
                }
            }
            Repr::Residue(v) => {
                let n = self.modulus() as i64;
                let e = (*v as i64).extended_gcd(&n);
                if e.gcd != 1 {
                    return None;
                }
                Some(Scalar { domain: self.domain, repr: Repr::Residue(e.x.rem_euclid(n) as u64) })
            }
        }
    }

    /// `2 * self`.
    pub fn double(&self) -> Scalar {
        self + self
    }

    /// Numeric comparison within one domain (residues by least nonnegative
    /// representative); used for deterministic orderings.
    pub fn cmp_value(&self, other: &Scalar) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue(a), Repr::Residue(b)) => a.cmp(b),
            (Repr::Rational(_), Repr::Residue(_)) => Ordering::Less,
            (Repr::Residue(_), Repr::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Residue(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let repr = match &self.repr {
            Repr::Rational(q) => Repr::Rational(-q),
            Repr::Residue(v) => {
                let n = self.modulus();
                Repr::Residue(if *v == 0 { 0 } else { n - v })
            }
        };
        Scalar { domain: self.domain, repr }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator forms panic on a domain mismatch; values built through the
// library are always homogeneous. Use the `checked_*` methods on untrusted
// input.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar domain mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
