//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Every scalar carries its field tag. Arithmetic between scalars of
//! different fields is a programming error and panics; public matrix
//! operations check tags up front and report [`crate::Error::FieldMismatch`].

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::fmt;

/// The ground field: exact rationals or integers mod a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p, val: 0 },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { p, val: 1 % p },
        }
    }

    /// Embed a signed integer.
    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, val: r }
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator (guaranteed by `BigRational`); residues lie in
/// `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, val: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            _ => panic!("scalar field mismatch: {:?} vs {:?}", self.field(), other.field()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, val: a }, Scalar::Fp { p: q, val: b }) if p == q => Scalar::Fp {
                p: *p,
                val: ((*a as u128 * *b as u128) % *p as u128) as u64,
            },
            _ => panic!("scalar field mismatch: {:?} vs {:?}", self.field(), other.field()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { p, val } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Fp {
                    p: *p,
                    val: mod_inverse(*val, *p),
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

/// Inverse of `a` mod `p` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert!(old_r == 1, "{a} not invertible mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
