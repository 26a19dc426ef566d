use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

pub fn check_prime(p: u32) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::UnsupportedPrime(p))
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    (a * b) % p
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Reduces a signed integer into `0..p`.
pub(crate) fn reduce_i128(v: i128, p: u32) -> u32 {
    v.rem_euclid(p as i128) as u32
}

/// Element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeFieldElem {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElem {
    pub fn new(value: i64, p: u32) -> Result<Self> {
        check_prime(p)?;
        Ok(Self {
            value: value.rem_euclid(p as i64) as u32,
            modulus: p,
        })
    }

    pub(crate) fn from_raw(value: u32, p: u32) -> Self {
        Self { value, modulus: p }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_raw(inv_mod(self.value, self.modulus), self.modulus))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::from_raw(pow_mod(self.value, e, self.modulus), self.modulus)
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        Self::from_raw(add_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        Self::from_raw(sub_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus);
        Self::from_raw(mul_mod(self.value, rhs.value, self.modulus), self.modulus)
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_raw(neg_mod(self.value, self.modulus), self.modulus)
    }
}

impl Div for PrimeFieldElem {
    type Output = Self;
    /// Panics on division by zero; use [`PrimeFieldElem::inverse`] for a checked path.
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in F_p")
    }
}
