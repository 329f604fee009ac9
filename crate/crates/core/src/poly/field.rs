//! Coefficient fields: exact rationals and prime fields.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A field given as a context object; elements carry no field data.
pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Decimal text with an explicit sign.
    fn signed_text(&self, a: &Self::Elem) -> String;
    /// `"Q"` or `"Fp:<p>"`.
    fn name(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

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
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
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
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn signed_text(&self, a: &BigRational) -> String {
        if a.is_negative() {
            a.to_string()
        } else {
            format!("+{a}")
        }
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// `Z/pZ` for a prime `p < 2^31`, elements stored in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Returns `None` unless `p` is a prime below `2^31`.
    pub fn new(p: u32) -> Option<PrimeField> {
        if !(2..1 << 31).contains(&p) {
            return None;
        }
        let mut d = 2u64;
        while d * d <= p as u64 {
            if p as u64 % d == 0 {
                return None;
            }
            d += 1;
        }
        Some(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.p as u64 - *b as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a as u64, self.p as u64 - 2)
    }
    fn signed_text(&self, a: &u32) -> String {
        // Symmetric representative in (-p/2, p/2].
        let v = *a as i64;
        let p = self.p as i64;
        let s = if v > p / 2 { v - p } else { v };
        if s < 0 {
            s.to_string()
        } else {
            format!("+{s}")
        }
    }
    fn name(&self) -> String {
        format!("Fp:{}", self.p)
    }
}
