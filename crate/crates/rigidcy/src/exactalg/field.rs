//! The scalar-field abstraction every exact routine in the crate is generic over.

use super::rat::{rat, Rat};
use num::{One, Signed, Zero};
use std::fmt;

/// An exact field of characteristic zero.
///
/// Methods take references because the implementors (big rationals, cyclotomic
/// numbers, rational functions) are heap-backed. `inv` returns `None` on zero;
/// everything else is total.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;
    /// Back to Q if the element is rational, `None` otherwise.
    fn to_rat(&self) -> Option<Rat>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
    fn from_int(n: i64) -> Self {
        Self::from_rat(&rat(n))
    }
    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// A unit u such that dividing the slice through by u puts it in canonical
    /// scale (integral coprime coefficients for rationals, monic leading entry
    /// for function fields). Must be nonzero; returns one on an all-zero slice.
    fn content_unit(coeffs: &[Self]) -> Self {
        coeffs
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .unwrap_or_else(Self::one)
    }
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(rat(1) / self)
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }

    // gcd of numerators over lcm of denominators, signed like the first nonzero
    // entry, so that dividing through leaves coprime integers with positive lead.
    fn content_unit(coeffs: &[Self]) -> Self {
        use num::bigint::BigInt;
        use num::Integer;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        let mut sign = BigInt::one();
        let mut seen = false;
        for c in coeffs {
            if Zero::is_zero(c) {
                continue;
            }
            if !seen {
                seen = true;
                if c.numer().is_negative() {
                    sign = -sign;
                }
            }
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if !seen {
            return rat(1);
        }
        Rat::new(sign * num_gcd, den_lcm)
    }
}
