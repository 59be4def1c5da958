//! Arithmetic in the prime field `F_p` (p odd), its quadratic and additive
//! characters, and exact Gauss sums.

mod cyclotomic;

pub use cyclotomic::{cyclo_equals_integer, cyclo_is_zero, cyclotomic_poly, prime_power, CyclotomicSum};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

pub fn check_odd_prime(p: u64) -> Result<u64> {
    if p % 2 == 1 && is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotOddPrime(p))
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Legendre symbol `(a/p)` as -1, 0 or 1.
pub fn legendre(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Smallest non-square in `1..p`.
pub fn smallest_nonsquare(p: u64) -> u64 {
    (1..p).find(|&a| legendre(a as i64, p) == -1).expect("odd prime has a non-square")
}

/// An element of `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    value: u64,
    p: u64,
}

impl FqElem {
    pub fn new(value: i64, p: u64) -> Self {
        FqElem { value: value.rem_euclid(p as i64) as u64, p }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<FqElem> {
        inv_mod(self.value, self.p).map(|v| FqElem { value: v, p: self.p })
    }

    pub fn is_square(self) -> bool {
        legendre(self.value as i64, self.p) == 1
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(self, o: FqElem) -> FqElem {
        debug_assert_eq!(self.p, o.p);
        FqElem { value: (self.value + o.value) % self.p, p: self.p }
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(self, o: FqElem) -> FqElem {
        debug_assert_eq!(self.p, o.p);
        FqElem { value: (self.value + self.p - o.value) % self.p, p: self.p }
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, o: FqElem) -> FqElem {
        debug_assert_eq!(self.p, o.p);
        FqElem { value: (self.value * o.value) % self.p, p: self.p }
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem { value: (self.p - self.value) % self.p, p: self.p }
    }
}

/// The quadratic character `sgn` of `F_p^×`, extended by `sgn(0) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadChar {
    p: u64,
}

impl QuadChar {
    pub fn new(p: u64) -> Result<Self> {
        Ok(QuadChar { p: check_odd_prime(p)? })
    }

    pub fn sgn(&self, a: i64) -> i8 {
        legendre(a, self.p)
    }
}

/// The additive character `ψ(a) = ζ_p^a` of `F_p`. It is the reduction of a
/// character of `F` with conductor `℘`.
pub fn psi(p: u64, a: i64) -> CyclotomicSum {
    CyclotomicSum::root(p as usize, a)
}

/// `Σ_{a ∈ F_p} ψ(u a)`.
pub fn additive_char_sum(p: u64, u: i64) -> CyclotomicSum {
    let mut counts = vec![0i64; p as usize];
    for a in 0..p as i64 {
        counts[(u * a).rem_euclid(p as i64) as usize] += 1;
    }
    CyclotomicSum::from_counts(p as usize, &counts, BigRational::one())
}

/// `G(ψ_a, sgn) = Σ_{x ∈ F_p^×} sgn(x) ψ(a x)`.
pub fn gauss_sum_twisted(p: u64, a: i64) -> Result<CyclotomicSum> {
    let chi = QuadChar::new(p)?;
    let mut counts = vec![0i64; p as usize];
    for x in 1..p as i64 {
        counts[(a * x).rem_euclid(p as i64) as usize] += chi.sgn(x) as i64;
    }
    Ok(CyclotomicSum::from_counts(p as usize, &counts, BigRational::one()))
}

/// `G(ψ, sgn) = Σ_a sgn(a) ψ(a)`, exactly.
pub fn gauss_sum(p: u64) -> Result<CyclotomicSum> {
    gauss_sum_twisted(p, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_small() {
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(1, 3), 1);
        assert_eq!(legendre(4, 5), 1);
        assert_eq!(legendre(0, 7), 0);
        assert_eq!(smallest_nonsquare(3), 2);
        assert_eq!(smallest_nonsquare(7), 3);
        assert_eq!(smallest_nonsquare(17), 3);
    }

    #[test]
    fn quad_char_multiplicative() {
        for p in [3u64, 5, 7, 11, 13] {
            let chi = QuadChar::new(p).unwrap();
            for a in 0..p as i64 {
                assert_eq!(chi.sgn(a) == 0, a == 0);
                for b in 0..p as i64 {
                    assert_eq!(chi.sgn(a * b), chi.sgn(a) * chi.sgn(b));
                }
            }
        }
        assert!(QuadChar::new(2).is_err());
        assert!(QuadChar::new(9).is_err());
    }

    #[test]
    fn additive_orthogonality() {
        for p in [3u64, 5, 7, 11, 13, 17, 19] {
            assert!(additive_char_sum(p, 0).equals_integer(p as i64));
            for u in 1..p as i64 {
                assert!(additive_char_sum(p, u).is_zero());
            }
        }
    }

    #[test]
    fn gauss_sum_p3_is_zeta_minus_zeta_sq() {
        let g = gauss_sum(3).unwrap();
        let expected = psi(3, 1) - psi(3, 2);
        assert_eq!(g, expected);
        assert!((&g * &g).equals_integer(-3));
    }

    #[test]
    fn gauss_sum_p5_square() {
        let g = gauss_sum(5).unwrap();
        assert!((&g * &g).equals_integer(5));
    }

    #[test]
    fn gauss_square_is_signed_p() {
        for p in [3u64, 5, 7, 11, 13, 17, 19] {
            let g = gauss_sum(p).unwrap();
            let s = legendre(-1, p) as i64;
            assert!((&g * &g).equals_integer(s * p as i64), "p = {p}");
            assert!(!g.is_zero());
        }
    }

    #[test]
    fn twisted_gauss_sum() {
        for p in [3u64, 5, 7, 11, 13] {
            let g = gauss_sum(p).unwrap();
            for a in 1..p as i64 {
                let twisted = gauss_sum_twisted(p, a).unwrap();
                let expected = g.scaled(&BigRational::from_integer(legendre(a, p).into()));
                assert_eq!(twisted, expected, "p = {p}, a = {a}");
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 9), Some(5));
        assert_eq!(inv_mod(3, 9), None);
        let x = FqElem::new(-1, 7);
        assert_eq!(x.value(), 6);
        assert_eq!((x * x.inv().unwrap()).value(), 1);
        assert!(FqElem::new(0, 5).inv().is_none());
    }
}
