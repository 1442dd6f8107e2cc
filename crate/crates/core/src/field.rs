//! Exact scalars: reduced fractions over Q and residues over F_p.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The ground field of an algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Prime field F_p. The modulus must be a prime below 2^32 so that
    /// residue products fit in a `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Residue { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::PrimeField(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// `num / den` reduced into the field. Fails when `den` vanishes in the field.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d.inv().ok_or_else(|| Error::InvalidScalar {
            text: format!("{num}/{den}"),
            reason: "zero denominator".into(),
        })?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// All field elements in residue order; `None` over Q.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(
                (0..*p)
                    .map(|value| Scalar::Residue { value, modulus: *p })
                    .collect(),
            ),
        }
    }

    pub fn zero_vec(&self, len: usize) -> Vec<Scalar> {
        vec![self.zero(); len]
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn basis_vec(&self, len: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec(len);
        v[i] = self.one();
        v
    }

    pub fn ensure_same(&self, other: &FieldSpec) -> Result<()> {
        if self != other {
            return Err(Error::FieldMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. Rationals are always kept reduced with a
/// positive denominator; residues always lie in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Residue value over F_p, `None` over Q.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(num_traits::pow(q.clone(), exp as usize)),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, exp as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Parse a coefficient: `"a"` or `"a/b"` over Q (sign on the numerator
    /// only), a decimal integer over F_p (reduced modulo p).
    pub fn parse(field: FieldSpec, text: &str) -> Result<Scalar> {
        let bad = |reason: &str| Error::InvalidScalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        match field {
            FieldSpec::Rationals => {
                let (num, den) = match t.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (t, None),
                };
                let num = parse_int(num).ok_or_else(|| bad("malformed numerator"))?;
                let den = match den {
                    Some(d) => {
                        if !d.chars().all(|c| c.is_ascii_digit()) || d.is_empty() {
                            return Err(bad("denominator must be unsigned decimal digits"));
                        }
                        let d = BigInt::from_str(d).map_err(|_| bad("malformed denominator"))?;
                        if d.is_zero() {
                            return Err(bad("zero denominator"));
                        }
                        d
                    }
                    None => BigInt::one(),
                };
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::PrimeField(p) => {
                let n = parse_int(t).ok_or_else(|| bad("residue must be a decimal integer"))?;
                let r = ((n % BigInt::from(p)) + BigInt::from(p)) % BigInt::from(p);
                let value = u64::try_from(r).map_err(|_| bad("residue overflow"))?;
                Ok(Scalar::Residue { value, modulus: p })
            }
        }
    }

    fn same_field(&self, other: &Scalar) {
        let ok = match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => true,
            (Scalar::Residue { modulus: a, .. }, Scalar::Residue { modulus: b, .. }) => a == b,
            _ => false,
        };
        assert!(ok, "mixed-field arithmetic: {} vs {}", self.field(), other.field());
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                let s = a + b;
                Scalar::Residue {
                    value: if s >= *modulus { s - modulus } else { s },
                    modulus: *modulus,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                Scalar::Residue {
                    value: if a >= b { a - b } else { a + modulus - b },
                    modulus: *modulus,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                Scalar::Residue {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => {
                self.same_field(rhs);
                unreachable!()
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Scalar::Rational(q) => Scalar::Rational(-q),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Residue { value, modulus }, Scalar::Residue { value: b, modulus: m2 })
                if modulus == m2 =>
            {
                let s = *value + b;
                *value = if s >= *modulus { s - *modulus } else { s };
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => {
                let _ = &*self + rhs;
            }
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// Vector helpers over exact scalars.
pub mod vector {
    use super::{FieldSpec, Scalar};

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(s: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
        v.iter().map(|x| s * x).collect()
    }

    pub fn neg(v: &[Scalar]) -> Vec<Scalar> {
        v.iter().map(|x| -x).collect()
    }

    /// `acc += s * v`
    pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
        if s.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a += &(s * x);
            }
        }
    }

    pub fn add_assign(acc: &mut [Scalar], v: &[Scalar]) {
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a += x;
            }
        }
    }

    pub fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
        let mut acc = field.zero();
        for (x, y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc += &(x * y);
            }
        }
        acc
    }

    pub fn from_i64(field: FieldSpec, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }
}
