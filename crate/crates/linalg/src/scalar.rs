use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

/// Signals that a fixed-width computation left the representable range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

pub type Checked<T> = Result<T, Overflow>;

/// An exact integer type usable as a matrix entry.
///
/// Algorithms are written once against this trait and run either on machine
/// words (fast, may report [`Overflow`]) or on [`BigInt`] (never overflows).
pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + 'static
{
    fn from_bigint(x: &BigInt) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;

    fn from_i64(x: i64) -> Self;

    fn is_unit(&self) -> bool {
        self.is_one() || (self.clone() + Self::one()).is_zero()
    }

    fn c_add(&self, other: &Self) -> Checked<Self> {
        self.checked_add(other).ok_or(Overflow)
    }

    fn c_sub(&self, other: &Self) -> Checked<Self> {
        self.checked_sub(other).ok_or(Overflow)
    }

    fn c_mul(&self, other: &Self) -> Checked<Self> {
        self.checked_mul(other).ok_or(Overflow)
    }

    fn c_neg(&self) -> Checked<Self> {
        Self::zero().c_sub(self)
    }

    fn c_abs(&self) -> Checked<Self> {
        if self.is_negative() {
            self.c_neg()
        } else {
            Ok(self.clone())
        }
    }

    /// Floor division, checked.
    fn c_div_floor(&self, other: &Self) -> Checked<Self> {
        if (other.clone() + Self::one()).is_zero() {
            return self.c_neg();
        }
        Ok(self.div_floor(other))
    }

    /// `self - q * other`, checked.
    fn c_sub_mul(&self, q: &Self, other: &Self) -> Checked<Self> {
        self.c_sub(&q.c_mul(other)?)
    }
}

impl Scalar for i64 {
    fn from_bigint(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }

    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_i64(x: i64) -> Self {
        x
    }
}

impl Scalar for BigInt {
    fn from_bigint(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }

    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }

    fn c_add(&self, other: &Self) -> Checked<Self> {
        Ok(self + other)
    }

    fn c_sub(&self, other: &Self) -> Checked<Self> {
        Ok(self - other)
    }

    fn c_mul(&self, other: &Self) -> Checked<Self> {
        Ok(self * other)
    }

    fn c_neg(&self) -> Checked<Self> {
        Ok(-self)
    }

    fn c_div_floor(&self, other: &Self) -> Checked<Self> {
        Ok(self.div_floor(other))
    }
}

/// Greatest common divisor with Bézout coefficients: `g = a*x + b*y`, `g >= 0`.
pub fn ext_gcd<T: Scalar>(a: &T, b: &T) -> Checked<(T, T, T)> {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (T::one(), T::zero());
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let q = r0.c_div_floor(&r1)?;
        let r2 = r0.c_sub_mul(&q, &r1)?;
        let s2 = s0.c_sub_mul(&q, &s1)?;
        let t2 = t0.c_sub_mul(&q, &t1)?;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        Ok((r0.c_neg()?, s0.c_neg()?, t0.c_neg()?))
    } else {
        Ok((r0, s0, t0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units() {
        assert!(1i64.is_unit());
        assert!((-1i64).is_unit());
        assert!(!2i64.is_unit());
        assert!(!0i64.is_unit());
        assert!(BigInt::from(-1).is_unit());
    }

    #[test]
    fn checked_ops_report_overflow() {
        assert_eq!(i64::MAX.c_add(&1), Err(Overflow));
        assert_eq!(i64::MIN.c_neg(), Err(Overflow));
        assert_eq!(i64::MIN.c_div_floor(&-1), Err(Overflow));
        assert_eq!(7i64.c_div_floor(&-2), Ok(-4));
    }

    #[test]
    fn bezout() {
        for a in -20i64..20 {
            for b in -20i64..20 {
                let (g, x, y) = ext_gcd(&a, &b).unwrap();
                assert_eq!(g, a.gcd(&b));
                assert_eq!(a * x + b * y, g);
            }
        }
    }
}
