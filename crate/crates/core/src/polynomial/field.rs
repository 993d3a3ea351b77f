use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

/// A field element. Rationals are reduced fractions; `F_p` elements are
/// least nonnegative residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(BigRational),
    Mod(u32),
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<FieldSpec> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::Structural(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::zero()),
            FieldSpec::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::one()),
            FieldSpec::Prime(_) => Coeff::Mod(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Coeff::Mod(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rat(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let r = ((v % BigInt::from(*p)) + BigInt::from(*p)) % BigInt::from(*p);
                Coeff::Mod(r.to_u32().expect("residue below p"))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (FieldSpec::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            (FieldSpec::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *p as u64 - *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (FieldSpec::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (FieldSpec::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (FieldSpec::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Coeff) -> Option<Coeff> {
        if a.is_zero() {
            return None;
        }
        Some(match (self, a) {
            (FieldSpec::Rationals, Coeff::Rat(x)) => Coeff::Rat(x.recip()),
            (FieldSpec::Prime(p), Coeff::Mod(x)) => Coeff::Mod(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32),
            _ => panic!("coefficient does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    pub fn pow(&self, a: &Coeff, mut e: u64) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn contains(&self, a: &Coeff) -> bool {
        matches!(
            (self, a),
            (FieldSpec::Rationals, Coeff::Rat(_)) | (FieldSpec::Prime(_), Coeff::Mod(_))
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Mod(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_one(),
            Coeff::Mod(x) => *x == 1,
        }
    }

    /// True when the printed form would carry a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_negative(),
            Coeff::Mod(_) => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rat(x) => Some(x),
            Coeff::Mod(_) => None,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(x) => {
                if x.is_integer() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Coeff::Mod(x) => write!(f, "{x}"),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
