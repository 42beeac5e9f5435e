//! Pluggable real scalar.
//!
//! Everything acceptance-critical runs on `f64`. A few computations (the
//! partial-theta section constants `c_n`, whose consecutive values differ
//! by less than `1e-40`) need more digits; they are written against
//! [`Real`] and instantiated with [`Mp`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::FBig;

pub trait Real:
    Clone
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    /// Unit roundoff of the representation.
    fn unit_roundoff() -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn is_sign_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
}

/// Binary floating point with `BITS` bits of mantissa.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mp<const BITS: usize>(FBig);

/// The precision used for the section-constant certificates.
pub type Mp256 = Mp<256>;

impl<const BITS: usize> Mp<BITS> {
    fn wrap(x: FBig) -> Self {
        Mp(x.with_precision(BITS).value())
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let dec = self.0.to_decimal().value();
        let rounded = dec.with_precision(digits).value();
        rounded.to_string()
    }

    /// `self * 2^exp`, exact.
    pub fn ldexp(&self, exp: i32) -> Self {
        let scale = Self::from_f64(2.0).powi(exp);
        self.clone() * scale
    }
}

impl<const BITS: usize> fmt::Debug for Mp<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mp({})", self.to_decimal(24))
    }
}

impl<const BITS: usize> fmt::Display for Mp<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(BITS * 3 / 10))
    }
}

macro_rules! mp_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<const BITS: usize> $tr for Mp<BITS> {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                Mp::wrap(&self.0 $op &rhs.0)
            }
        }
    };
}

mp_binop!(Add, add, +);
mp_binop!(Sub, sub, -);
mp_binop!(Mul, mul, *);
mp_binop!(Div, div, /);

impl<const BITS: usize> Neg for Mp<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        Mp(-self.0)
    }
}

impl<const BITS: usize> Real for Mp<BITS> {
    fn from_f64(x: f64) -> Self {
        let v = FBig::try_from(x).expect("finite f64");
        Mp::wrap(v)
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn sqrt(&self) -> Self {
        Mp::wrap(self.0.sqrt())
    }
    fn abs(&self) -> Self {
        if self.is_sign_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn unit_roundoff() -> f64 {
        2f64.powi(-(BITS as i32))
    }
}
