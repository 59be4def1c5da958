//! Exact sums of roots of unity.
//!
//! A [`CyclotomicSum`] of order `n` is `scale · Σ_j counts[j] ζ_n^j` with
//! `ζ_n = e^{2πi/n}`. Zero tests reduce the histogram polynomial modulo the
//! cyclotomic polynomial `Φ_n`; since `Φ_n` is monic with integer
//! coefficients the division stays in `ℤ[x]` and the test is exact.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: usize) -> Arc<Vec<i64>> {
    assert!(n > 0, "cyclotomic_poly: order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let poly = Arc::new(compute_cyclotomic(n));
    cache.lock().expect("cyclotomic cache poisoned").insert(n, Arc::clone(&poly));
    poly
}

fn compute_cyclotomic(n: usize) -> Vec<i64> {
    if let Some((p, m)) = prime_power(n) {
        // Φ_{p^m}(x) = Σ_{k<p} x^{k p^{m-1}}
        let step = n / p;
        let mut c = vec![0i64; (p - 1) * step + 1];
        for k in 0..p {
            c[k * step] = 1;
        }
        debug_assert!(m >= 1);
        return c;
    }
    // Φ_n = Π_{d | n} (x^d − 1)^{μ(n/d)}
    let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            poly = mul_x_d_minus_1(&poly, d);
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            poly = div_x_d_minus_1(&poly, d);
        }
    }
    poly
}

fn mul_x_d_minus_1(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

fn div_x_d_minus_1(p: &[i64], d: usize) -> Vec<i64> {
    // P = Q·(x^d − 1): Q[i] = P[i+d] + Q[i+d], top down.
    let deg_q = p.len() - 1 - d;
    let mut q = vec![0i64; deg_q + 1];
    for i in (0..=deg_q).rev() {
        let above = if i + d <= deg_q { q[i + d] } else { 0 };
        q[i] = p[i + d] + above;
    }
    debug_assert!(
        (0..d).all(|i| p[i] == -q.get(i).copied().unwrap_or(0)),
        "x^{d} - 1 does not divide the running product"
    );
    q
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            n /= f;
            if n % f == 0 {
                return 0;
            }
            result = -result;
        }
        f += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Some((p, m))` when `n = p^m` with `p` prime and `m ≥ 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut rest = n;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// `scale · Σ_j counts[j] ζ_order^j`.
#[derive(Clone, Debug)]
pub struct CyclotomicSum {
    order: usize,
    counts: Vec<BigInt>,
    scale: BigRational,
}

impl CyclotomicSum {
    pub fn zero(order: usize) -> Self {
        assert!(order > 0);
        CyclotomicSum { order, counts: vec![BigInt::zero(); order], scale: BigRational::one() }
    }

    /// The rational constant `r`, viewed in order `order`.
    pub fn constant(order: usize, r: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.counts[0] = BigInt::one();
        s.scale = r;
        s
    }

    /// `ζ_order^k`.
    pub fn root(order: usize, k: i64) -> Self {
        let mut s = Self::zero(order);
        s.counts[k.rem_euclid(order as i64) as usize] = BigInt::one();
        s
    }

    pub fn from_counts(order: usize, counts: &[i64], scale: BigRational) -> Self {
        assert_eq!(counts.len(), order, "histogram length must equal the order");
        CyclotomicSum { order, counts: counts.iter().map(|&c| BigInt::from(c)).collect(), scale }
    }

    pub fn from_big_counts(order: usize, counts: Vec<BigInt>, scale: BigRational) -> Self {
        assert_eq!(counts.len(), order, "histogram length must equal the order");
        CyclotomicSum { order, counts, scale }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    /// Same value, viewed as a sum of `new_order`-th roots of unity.
    pub fn lift(&self, new_order: usize) -> Self {
        assert!(new_order % self.order == 0, "cannot lift order {} to {new_order}", self.order);
        let step = new_order / self.order;
        let mut counts = vec![BigInt::zero(); new_order];
        for (j, c) in self.counts.iter().enumerate() {
            counts[j * step] = c.clone();
        }
        CyclotomicSum { order: new_order, counts, scale: self.scale.clone() }
    }

    fn common_order(a: &Self, b: &Self) -> (Self, Self) {
        if a.order == b.order {
            return (a.clone(), b.clone());
        }
        let n = a.order.lcm(&b.order);
        (a.lift(n), b.lift(n))
    }

    pub fn scaled(&self, r: &BigRational) -> Self {
        CyclotomicSum { order: self.order, counts: self.counts.clone(), scale: &self.scale * r }
    }

    /// Complex conjugate: `ζ^j ↦ ζ^{-j}`.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let mut counts = vec![BigInt::zero(); n];
        for (j, c) in self.counts.iter().enumerate() {
            counts[(n - j) % n] = c.clone();
        }
        CyclotomicSum { order: n, counts, scale: self.scale.clone() }
    }

    /// Remainder of the histogram polynomial modulo `Φ_order`, with the scale
    /// left aside.
    pub fn reduced_counts(&self) -> Vec<BigInt> {
        let phi = cyclotomic_poly(self.order);
        let deg = phi.len() - 1;
        let mut r = self.counts.clone();
        for j in (deg..r.len()).rev() {
            if r[j].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut r[j]);
            for (k, &pk) in phi.iter().enumerate().take(deg) {
                if pk != 0 {
                    r[j - deg + k] -= &c * pk;
                }
            }
        }
        r.truncate(deg.max(1));
        r
    }

    /// Exact test for the represented complex number being 0.
    pub fn is_zero(&self) -> bool {
        self.scale.is_zero() || self.reduced_counts().iter().all(Zero::is_zero)
    }

    /// Exact test `self == r`.
    pub fn equals_rational(&self, r: &BigRational) -> bool {
        (self.clone() - CyclotomicSum::constant(self.order, r.clone())).is_zero()
    }

    pub fn equals_integer(&self, n: i64) -> bool {
        self.equals_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational value, when the sum is rational.
    pub fn to_rational(&self) -> Option<BigRational> {
        let r = self.reduced_counts();
        if r.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::from_integer(r[0].clone()) * &self.scale)
        } else {
            None
        }
    }

    /// Floating evaluation; display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * j as f64 / n;
            re += c * t.cos();
            im += c * t.sin();
        }
        let s = self.scale.to_f64().unwrap_or(f64::NAN);
        (re * s, im * s)
    }

    /// Counts of `self` re-expressed over `target`, which must divide the
    /// current scale.
    fn with_scale(&self, target: &BigRational) -> Vec<BigInt> {
        let factor = &self.scale / target;
        debug_assert!(factor.is_integer(), "scale {} does not divide into {}", self.scale, target);
        let f = factor.to_integer();
        self.counts.iter().map(|c| c * &f).collect()
    }

    fn common_scale(a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_zero() {
            return b.abs();
        }
        if b.is_zero() {
            return a.abs();
        }
        let num = a.numer().gcd(b.numer());
        let den = a.denom().lcm(b.denom());
        BigRational::new(num, den)
    }
}

pub fn cyclo_is_zero(s: &CyclotomicSum) -> bool {
    s.is_zero()
}

pub fn cyclo_equals_integer(s: &CyclotomicSum, n: &BigRational) -> bool {
    s.equals_rational(n)
}

impl Add for CyclotomicSum {
    type Output = CyclotomicSum;
    fn add(self, rhs: CyclotomicSum) -> CyclotomicSum {
        let (a, b) = CyclotomicSum::common_order(&self, &rhs);
        if a.scale.is_zero() {
            return b;
        }
        if b.scale.is_zero() {
            return a;
        }
        let scale = CyclotomicSum::common_scale(&a.scale, &b.scale);
        let ca = a.with_scale(&scale);
        let cb = b.with_scale(&scale);
        let counts = ca.into_iter().zip(cb).map(|(x, y)| x + y).collect();
        CyclotomicSum { order: a.order, counts, scale }
    }
}

impl Neg for CyclotomicSum {
    type Output = CyclotomicSum;
    fn neg(mut self) -> CyclotomicSum {
        self.scale = -self.scale;
        self
    }
}

impl Sub for CyclotomicSum {
    type Output = CyclotomicSum;
    fn sub(self, rhs: CyclotomicSum) -> CyclotomicSum {
        self + (-rhs)
    }
}

impl Mul for &CyclotomicSum {
    type Output = CyclotomicSum;
    fn mul(self, rhs: &CyclotomicSum) -> CyclotomicSum {
        let (a, b) = CyclotomicSum::common_order(self, rhs);
        let n = a.order;
        let mut counts = vec![BigInt::zero(); n];
        for (i, x) in a.counts.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.counts.iter().enumerate() {
                if !y.is_zero() {
                    counts[(i + j) % n] += x * y;
                }
            }
        }
        CyclotomicSum { order: n, counts, scale: &a.scale * &b.scale }
    }
}

impl PartialEq for CyclotomicSum {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl std::iter::Sum for CyclotomicSum {
    fn sum<I: Iterator<Item = CyclotomicSum>>(iter: I) -> CyclotomicSum {
        iter.fold(CyclotomicSum::zero(1), |acc, x| acc + x)
    }
}

impl fmt::Display for CyclotomicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let terms: Vec<String> = self
            .counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| format!("{c}·ζ{}^{j}", self.order))
            .collect();
        write!(f, "({})·[{}]", self.scale, terms.join(" + "))
    }
}
