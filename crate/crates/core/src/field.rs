//! Exact scalars: arbitrary-precision rationals and prime residue fields.
//!
//! A [`Scalar`] carries enough information to do arithmetic on its own
//! (residues remember their modulus), so vectors and tables never need a
//! separate field handle. Mixing scalars from different fields is a
//! programming error and panics.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{PactError, Result};

/// Largest admissible prime modulus (exclusive).
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// The prime field GF(p); rejects composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME {
            return Err(PactError::InvalidField(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(PactError::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p as u64,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u32,
                modulus: *p,
            },
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        let d = self.from_i64(den);
        let inv = d
            .inv()
            .ok_or_else(|| PactError::InvalidArgument(format!("denominator {den} is zero in {self}")))?;
        Ok(&self.from_i64(num) * &inv)
    }

    /// Parses `"3"`, `"-2"` or `"5/7"`.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || PactError::InvalidArgument(format!("cannot parse scalar {text:?}"));
        match self {
            Field::Rationals => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (text, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rational(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (text, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                let p_big = BigInt::from(*p);
                let reduce = |x: BigInt| -> i64 {
                    let r = ((x % &p_big) + &p_big) % &p_big;
                    i64::try_from(r).expect("residue below 2^31")
                };
                self.from_ratio(reduce(n), reduce(d)).map_err(|_| bad())
            }
        }
    }

    /// All elements of a finite field, in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p as i64).map(|v| self.from_i64(v)).collect()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn owns(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    /// Panics on division by zero.
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }

    fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
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

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue { value: ((*a as u64 + *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue { value: ((*a as u64 * *b as u64) % *p as u64) as u32, modulus: *p }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Renders `coeff * label` terms as `2*u - 1/3*v + w`; the zero vector prints as `0`.
pub fn format_combination(coeffs: &[Scalar], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, label) in coeffs.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let negative = c.is_negative_rational();
        let magnitude = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if magnitude.is_one() {
            out.push_str(label);
        } else {
            out.push_str(&format!("{magnitude}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
