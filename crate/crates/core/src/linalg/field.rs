//! Exact scalar fields: prime fields GF(p) and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// Default prime used when no field is requested explicitly.
pub const DEFAULT_PRIME: u32 = 32003;

/// A computable exact field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// GF(p) for a prime `p < 2^31`.
    Prime(u32),
    /// The rational numbers.
    Rationals,
}

impl Default for Field {
    fn default() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p), rejecting composites and moduli that do not fit the 31-bit representation.
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod { value: 0, p },
            Field::Rationals => Scalar::Rat(Box::new(BigRational::zero())),
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u32,
                p,
            },
            Field::Rationals => Scalar::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    /// The element `num / den`. Fails when `den` vanishes in the field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar, LinalgError> {
        if den.is_zero() {
            return Err(LinalgError::ZeroDenominator);
        }
        match self {
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let reduce = |x: &BigInt| -> u32 {
                    let r = ((x % &m) + &m) % &m;
                    u32::try_from(r).expect("residue fits in u32")
                };
                let d = Scalar::Mod { value: reduce(den), p };
                let inv = d.inv().ok_or(LinalgError::ZeroDenominator)?;
                Ok(Scalar::Mod { value: reduce(num), p }.mul(&inv))
            }
            Field::Rationals => Ok(Scalar::Rat(Box::new(BigRational::new(num.clone(), den.clone())))),
        }
    }

    /// Parses an integer `"n"` or a fraction `"n/d"`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::Parse(text.to_string());
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        self.from_ratio(&num, &den)
    }

    /// True when `s` is an element of this field.
    pub fn contains(self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Prime(p), Scalar::Mod { value, p: q }) => p == *q && *value < p,
            (Field::Rationals, Scalar::Rat(_)) => true,
            _ => false,
        }
    }
}

/// An element of a [`Field`]. Binary operations panic when the two operands
/// come from different fields; [`super::Matrix`] keeps its entries homogeneous.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { value: u32, p: u32 },
    Rat(Box<BigRational>),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Rat(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(a.as_ref() + b.as_ref())),
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { p - value },
                p: *p,
            },
            Scalar::Rat(a) => Scalar::Rat(Box::new(-a.as_ref())),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) if p == q => Scalar::Mod {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(Box::new(a.as_ref() * b.as_ref())),
            _ => panic!("scalar field mismatch"),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Mod { value, p } => {
                // Fermat: a^(p-2)
                let m = *p as u64;
                let mut base = *value as u64 % m;
                let mut exp = m - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Some(Scalar::Mod {
                    value: acc as u32,
                    p: *p,
                })
            }
            Scalar::Rat(a) => Some(Scalar::Rat(Box::new(a.recip()))),
        }
    }

    /// Numerator and denominator of the canonical representative. For GF(p)
    /// this is the residue in `0..p` over 1.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Mod { value, .. } => (BigInt::from(*value), BigInt::one()),
            Scalar::Rat(r) => (r.numer().clone(), r.denom().clone()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => {
                if r.is_negative() {
                    write!(f, "-{}/{}", -r.numer(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}
