//! Scalar fields for coordinate models.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Num, One, Zero};

/// Exact field arithmetic: anything `Num + Neg` with value semantics.
///
/// Rank computations compare against zero exactly, so floating point types
/// satisfy the bound but only give meaningful ranks on exactly
/// representable inputs.
pub trait Field: Num + Neg<Output = Self> + Copy + fmt::Debug {}

impl<T> Field for T where T: Num + Neg<Output = T> + Copy + fmt::Debug {}

/// A field with finitely many elements that can be listed.
pub trait FiniteField: Field {
    fn order() -> usize;
    fn elements() -> Vec<Self>;
}

/// Integers modulo the prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf<const P: u8>(u8);

const fn is_prime(p: u8) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u8> Gf<P> {
    const CHECK: () = assert!(is_prime(P), "Gf<P> needs a prime modulus");

    pub const fn new(value: u8) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Gf(value % P)
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Gf::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in GF({P})");
        self.pow(P as u32 - 2)
    }
}

impl<const P: u8> fmt::Debug for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u8> fmt::Display for Gf<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u8> Add for Gf<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf(((self.0 as u16 + rhs.0 as u16) % P as u16) as u8)
    }
}

impl<const P: u8> Sub for Gf<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gf(((self.0 as u16 + P as u16 - rhs.0 as u16) % P as u16) as u8)
    }
}

impl<const P: u8> Mul for Gf<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf(((self.0 as u16 * rhs.0 as u16) % P as u16) as u8)
    }
}

impl<const P: u8> Div for Gf<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl<const P: u8> Rem for Gf<P> {
    type Output = Self;
    /// Division is exact in a field, so the remainder is always zero.
    fn rem(self, rhs: Self) -> Self {
        assert!(rhs.0 != 0, "remainder by zero in GF({P})");
        Gf(0)
    }
}

impl<const P: u8> Neg for Gf<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Gf((P - self.0) % P)
    }
}

impl<const P: u8> Zero for Gf<P> {
    fn zero() -> Self {
        Gf::new(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u8> One for Gf<P> {
    fn one() -> Self {
        Gf::new(1)
    }
}

impl<const P: u8> Num for Gf<P> {
    type FromStrRadixErr = std::num::ParseIntError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        u64::from_str_radix(s, radix).map(|v| Gf::new((v % P as u64) as u8))
    }
}

impl<const P: u8> FiniteField for Gf<P> {
    fn order() -> usize {
        P as usize
    }

    fn elements() -> Vec<Self> {
        (0..P).map(Gf::new).collect()
    }
}
