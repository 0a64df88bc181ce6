//! Coefficient fields.
//!
//! All linear algebra is written against [`Field`], which carries the field
//! as a value so that prime fields can pick their modulus at runtime.

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Image of `a` in `ℤ/p`, when reduction mod `p` is defined.
    fn reduce_mod(&self, _a: &Self::Elem, _p: &PrimeField) -> Option<Residue> {
        None
    }

    /// `a - c * b`, the elimination step.
    fn sub_mul(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(a, &self.mul(c, b))
    }
}

/// The rational numbers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn reduce_mod(&self, a: &BigRational, p: &PrimeField) -> Option<Residue> {
        let den = p.from_bigint(a.denom());
        Some(p.mul(&p.from_bigint(a.numer()), &p.inv(&den)?))
    }
}

/// The prime field ℤ/p for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Element of a [`PrimeField`], always reduced into `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(pub u64);

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if !(2..(1 << 32)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = Residue;

    fn zero(&self) -> Residue {
        Residue(0)
    }
    fn one(&self) -> Residue {
        Residue(1)
    }
    fn from_i64(&self, v: i64) -> Residue {
        Residue(v.rem_euclid(self.p as i64) as u64)
    }
    fn from_bigint(&self, v: &BigInt) -> Residue {
        let r = v.mod_floor(&BigInt::from(self.p));
        Residue(r.abs().to_u64().unwrap_or(0))
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        Residue((a.0 + b.0) % self.p)
    }
    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        Residue((a.0 + self.p - b.0) % self.p)
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        Residue(a.0 * b.0 % self.p)
    }
    fn neg(&self, a: &Residue) -> Residue {
        Residue((self.p - a.0) % self.p)
    }
    fn inv(&self, a: &Residue) -> Option<Residue> {
        if a.0 == 0 {
            None
        } else {
            Some(Residue(self.pow(a.0, self.p - 2)))
        }
    }
    fn is_zero(&self, a: &Residue) -> bool {
        a.0 == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Runtime choice of coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Z/{p}"),
        }
    }
}
