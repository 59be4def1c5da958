//! Scalar abstraction and half-integer bookkeeping.
//!
//! Closed-form distribution values are polynomial in `q` with integer
//! exponents, so they can be evaluated in any numeric type that behaves like a
//! field of characteristic zero. Exact work uses [`crate::Exact`]; `f64` is
//! used for display and for sanity checks against the exact path.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Numeric type in which closed-form projector values can be evaluated.
pub trait Scalar: Num + Clone + Neg<Output = Self> + FromPrimitive + fmt::Debug + PartialEq {
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type represents small integers")
    }

    /// `base^exp` for a non-negative exponent.
    fn powu(base: &Self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * base.clone();
        }
        acc
    }

    /// `base^exp` for a signed exponent; `base` must be nonzero when `exp < 0`.
    fn powi(base: &Self, exp: i64) -> Self {
        if exp >= 0 {
            Self::powu(base, exp as u32)
        } else {
            Self::one() / Self::powu(base, (-exp) as u32)
        }
    }
}

impl<T> Scalar for T where T: Num + Clone + Neg<Output = T> + FromPrimitive + fmt::Debug + PartialEq {}

/// A number in `(1/2)ℤ`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if integral.
    pub fn to_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    /// Smallest integer strictly greater than `self`.
    pub fn next_int_above(self) -> i64 {
        self.0.div_euclid(2) + 1
    }

    /// Smallest element of `ℤ + 1/2` strictly greater than `self`.
    pub fn next_half_odd_above(self) -> HalfInt {
        let mut t = self.0 + 1;
        if t.rem_euclid(2) == 0 {
            t += 1;
        }
        HalfInt(t)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-2`, `1/2`, `7/2`, `3.5`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            match den {
                1 => Ok(HalfInt(2 * num)),
                2 => Ok(HalfInt(num)),
                _ => Err(bad()),
            }
        } else if let Some((int, frac)) = s.split_once('.') {
            let twice_frac = match frac {
                "0" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let neg = int.starts_with('-');
            let int: i64 = int.parse().map_err(|_| bad())?;
            Ok(HalfInt(2 * int + if neg { -twice_frac } else { twice_frac }))
        } else {
            let n: i64 = s.parse().map_err(|_| bad())?;
            Ok(HalfInt(2 * n))
        }
    }
}

/// Depth of a representation or Bernstein component: a non-negative half-integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Depth(u32);

impl Depth {
    pub const ZERO: Depth = Depth(0);

    pub const fn from_twice(twice: u32) -> Self {
        Depth(twice)
    }

    pub const fn integral(k: u32) -> Self {
        Depth(2 * k)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    pub const fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_half(self) -> HalfInt {
        HalfInt::from_twice(self.0 as i64)
    }

    /// `d⁺ = d + 1/2`.
    pub fn plus(self) -> Depth {
        Depth(self.0 + 1)
    }

    /// All depths `0, 1/2, ..., self` in increasing order.
    pub fn up_to(self) -> impl Iterator<Item = Depth> {
        (0..=self.0).map(Depth)
    }
}

impl TryFrom<HalfInt> for Depth {
    type Error = Error;
    fn try_from(h: HalfInt) -> Result<Depth, Error> {
        u32::try_from(h.twice())
            .map(Depth)
            .map_err(|_| Error::InvalidInput(format!("depth must be non-negative, got {h}")))
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_half().fmt(f)
    }
}

impl FromStr for Depth {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Depth::try_from(s.parse::<HalfInt>()?)
    }
}

/// A value `coeff · q^exp` with `exp ∈ (1/2)ℤ`, kept symbolic so that
/// half-integral powers of `q` stay exact.
#[derive(Clone, Debug, PartialEq)]
pub struct QPow<S> {
    pub coeff: S,
    pub exp: HalfInt,
}

impl<S: Scalar> QPow<S> {
    pub fn new(coeff: S, exp: HalfInt) -> Self {
        QPow { coeff, exp }
    }

    pub fn q_power(exp: HalfInt) -> Self {
        QPow { coeff: S::one(), exp }
    }

    /// Collapse to a plain scalar when the exponent is integral.
    pub fn collapse(&self, q: u64) -> Option<S> {
        let e = self.exp.to_int()?;
        let qs = S::from_u64(q)?;
        Some(self.coeff.clone() * S::powi(&qs, e))
    }

    pub fn mul(&self, other: &QPow<S>) -> QPow<S> {
        QPow { coeff: self.coeff.clone() * other.coeff.clone(), exp: self.exp + other.exp }
    }

    pub fn recip(&self) -> QPow<S> {
        QPow { coeff: S::one() / self.coeff.clone(), exp: -self.exp }
    }
}

impl QPow<BigRational> {
    /// Exact equality of `a·q^e` and `b·q^f` as real numbers.
    pub fn exact_eq(&self, other: &Self, q: u64) -> bool {
        if self.coeff.is_zero() || other.coeff.is_zero() {
            return self.coeff.is_zero() && other.coeff.is_zero();
        }
        let diff = self.exp - other.exp;
        if !diff.is_integral() {
            // q^{1/2} is irrational for prime q.
            return false;
        }
        let qs = BigRational::from_integer(BigInt::from(q));
        self.coeff.clone() * <BigRational as Scalar>::powi(&qs, diff.twice() / 2) == other.coeff
    }

    pub fn to_f64(&self, q: u64) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * (q as f64).powf(self.exp.to_f64())
    }
}

impl<S: fmt::Display> fmt::Display for QPow<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == HalfInt::ZERO {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}·q^({})", self.coeff, self.exp)
        }
    }
}

/// `value = num/den · q^exp` with `num` not divisible by `q` (the zero value
/// is `0/1 · q^0`). Used for table rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QNormalized {
    pub num: BigInt,
    pub den: BigInt,
    pub q_exponent: i64,
}

pub fn q_normalize(value: &BigRational, q: u64) -> QNormalized {
    if value.is_zero() {
        return QNormalized { num: BigInt::zero(), den: BigInt::one(), q_exponent: 0 };
    }
    let qb = BigInt::from(q);
    let mut num = value.numer().clone();
    let mut den = value.denom().clone();
    let mut e = 0i64;
    while (&num % &qb).is_zero() {
        num /= &qb;
        e += 1;
    }
    while (&den % &qb).is_zero() {
        den /= &qb;
        e -= 1;
    }
    QNormalized { num, den, q_exponent: e }
}

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PartialOrd<i64> for HalfInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&(2 * other))
    }
}

impl PartialEq<i64> for HalfInt {
    fn eq(&self, other: &i64) -> bool {
        self.0 == 2 * other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_int_parse_and_display() {
        for s in ["0", "1/2", "3", "7/2", "-1/2"] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt::from_int(2));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("-1".parse::<Depth>().is_err());
    }

    #[test]
    fn next_above() {
        assert_eq!(HalfInt::ZERO.next_int_above(), 1);
        assert_eq!(HalfInt::HALF.next_int_above(), 1);
        assert_eq!(HalfInt::ONE.next_int_above(), 2);
        assert_eq!(HalfInt::ZERO.next_half_odd_above(), HalfInt::HALF);
        assert_eq!(HalfInt::HALF.next_half_odd_above(), HalfInt::from_twice(3));
        assert_eq!(HalfInt::ONE.next_half_odd_above(), HalfInt::from_twice(3));
    }

    #[test]
    fn qpow_collapse_and_compare() {
        let a = QPow::new(rat(2), HalfInt::from_int(3));
        assert_eq!(a.collapse(3), Some(rat(54)));
        let half = QPow::<BigRational>::q_power(HalfInt::from_twice(-1));
        assert_eq!(half.collapse(3), None);
        let b = QPow::new(rat(54), HalfInt::ZERO);
        assert!(a.exact_eq(&b, 3));
        assert!(!half.exact_eq(&QPow::new(rat(1), HalfInt::ZERO), 3));
        assert!((half.to_f64(3) - 3f64.powf(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn normalize_rows() {
        let n = q_normalize(&rat(1080), 3);
        assert_eq!(n, QNormalized { num: BigInt::from(40), den: BigInt::one(), q_exponent: 3 });
        let n = q_normalize(&BigRational::new(BigInt::from(-2), BigInt::from(9)), 3);
        assert_eq!(n.q_exponent, -2);
        assert_eq!(n.num, BigInt::from(-2));
    }
}
