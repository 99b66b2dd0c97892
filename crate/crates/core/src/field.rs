//! Coefficient fields: prime fields `F_p` and the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported prime characteristic. Products of two residues must fit in `u64`.
pub const MAX_CHARACTERISTIC: u64 = (1 << 31) - 1;

/// The base field, identified by its characteristic (0 means `Q`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Field {
    characteristic: u64,
}

impl Field {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (characteristic <= MAX_CHARACTERISTIC && is_prime(characteristic)) {
            Ok(Field { characteristic })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        Field { characteristic: 0 }
    }

    /// Panics if `p` is not an admissible prime; for literals in tests and fixtures.
    pub fn prime(p: u64) -> Self {
        Field::new(p).expect("characteristic must be 0 or a prime")
    }

    pub fn characteristic(self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(self) -> bool {
        self.characteristic == 0
    }

    /// True when the characteristic is positive and divides `n`.
    pub fn divides(self, n: i64) -> bool {
        self.characteristic != 0 && n.rem_euclid(self.characteristic as i64) == 0
    }

    pub fn zero(self) -> Coeff {
        self.from_i64(0)
    }

    pub fn one(self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coeff {
        match self.characteristic {
            0 => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            p => Coeff::Fp {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p as u32,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Coeff {
        match self.characteristic {
            0 => Coeff::Q(BigRational::from_integer(n.clone())),
            p => {
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                Coeff::Fp {
                    value: r.to_u32().expect("residue fits"),
                    modulus: p as u32,
                }
            }
        }
    }

    /// Image of the rational number `num/den`; `None` when `den` vanishes in the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Option<Coeff> {
        let d = self.from_i64(den).inv()?;
        Some(&self.from_i64(num) * &d)
    }

    /// Whether `c` is an element of this field.
    pub fn owns(self, c: &Coeff) -> bool {
        match c {
            Coeff::Fp { modulus, .. } => *modulus as u64 == self.characteristic,
            Coeff::Q(_) => self.characteristic == 0,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
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

/// A field element. Residues are kept in `[0, p)`, rationals in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Fp { value: u32, modulus: u32 },
    Q(BigRational),
}

impl Coeff {
    pub fn field(&self) -> Field {
        match self {
            Coeff::Fp { modulus, .. } => Field {
                characteristic: *modulus as u64,
            },
            Coeff::Q(_) => Field::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Fp { value, .. } => *value == 0,
            Coeff::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Fp { value, .. } => *value == 1,
            Coeff::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Fp { value, modulus } => Coeff::Fp {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Coeff::Q(q) => Coeff::Q(q.recip()),
        })
    }

    /// `self / other`; panics on division by zero.
    pub fn div(&self, other: &Coeff) -> Coeff {
        self * &other.inv().expect("division by zero coefficient")
    }

    /// Signed integer representative when the value is "small": residues map to
    /// `(-p/2, p/2]`, rationals must be integral.
    pub fn to_small_int(&self) -> Option<i64> {
        match self {
            Coeff::Fp { value, modulus } => {
                let (v, m) = (*value as i64, *modulus as i64);
                Some(if v > m / 2 { v - m } else { v })
            }
            Coeff::Q(q) => {
                if q.is_integer() {
                    q.to_integer().to_i64()
                } else {
                    None
                }
            }
        }
    }

    /// True for coefficients printed with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Fp { .. } => false,
            Coeff::Q(q) => q.is_negative(),
        }
    }

    fn assert_same(&self, other: &Coeff) {
        debug_assert_eq!(self.field(), other.field(), "coefficients from different fields");
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        self.assert_same(rhs);
        match (self, rhs) {
            (Coeff::Fp { value: a, modulus }, Coeff::Fp { value: b, .. }) => Coeff::Fp {
                value: ((*a as u64 + *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a + b),
            _ => panic!("coefficients from different fields"),
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        self.assert_same(rhs);
        match (self, rhs) {
            (Coeff::Fp { value: a, modulus }, Coeff::Fp { value: b, .. }) => Coeff::Fp {
                value: ((*a as u64 * *b as u64) % *modulus as u64) as u32,
                modulus: *modulus,
            },
            (Coeff::Q(a), Coeff::Q(b)) => Coeff::Q(a * b),
            _ => panic!("coefficients from different fields"),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Fp { value, modulus } => Coeff::Fp {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
            Coeff::Q(q) => Coeff::Q(-q),
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Fp { value, .. } => write!(f, "{value}"),
            Coeff::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}
