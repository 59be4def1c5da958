//! Truncated-lattice Fourier transforms on `sl(2, F)`.
//!
//! The principal-value transform `FT(1_{g_r})(Y) = lim_ℓ ∫_{T_ℓ} ψ(tr XY) 1_{g_r}(X) dX`
//! is evaluated exactly on the truncations `T_ℓ = {X : a, b, c ∈ ℘^{-ℓ}}`.
//! `X = [[a, b], [c, -a]]` is enumerated modulo `℘^s`, with coordinates
//! stored as integers `A = p^ℓ a mod p^{ℓ+s}`. Each point carries Haar weight
//! `p^{-3s}` (`meas(R_F) = 1` per coordinate). Membership in `g_r` is
//! `val(det X) ≥ 2r`, i.e. `A² + BC ≡ 0 mod p^{2ℓ+2r}`.
//!
//! `ψ` has conductor `℘`: `ψ(x) = ζ_{p^M}^{p^{M-1} x}` for `x ∈ ℘^{1-M}`.

mod kim;
mod stratified;

pub use kim::{kim_check, kim_suite, kim_vectors, KimReport, KimSuite};
pub use stratified::ft_antidiagonal;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::classes::{lie_class_of, RegSSClass, SquareClass};
use crate::error::{Error, Result};
use crate::qfield::{check_odd_prime, legendre, CyclotomicSum};
use crate::scalar::HalfInt;

/// Default cap on lattice points per evaluation.
pub const DEFAULT_POINT_BUDGET: u128 = 100_000_000;

/// Point budget: `BERNSTEIN_BUDGET` if set, else [`DEFAULT_POINT_BUDGET`].
pub fn point_budget() -> u128 {
    std::env::var("BERNSTEIN_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_POINT_BUDGET)
}

/// `(val_p(x), unit part of x mod p)` for nonzero `x` with `p`-power denominator.
pub fn padic_parts(x: &BigRational, p: u64) -> Option<(i64, u64)> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let mut v = 0i64;
    while (&num % &pb).is_zero() {
        num /= &pb;
        v += 1;
    }
    while (&den % &pb).is_zero() {
        den /= &pb;
        v -= 1;
    }
    let num_mod = num.mod_floor(&pb).to_u64().expect("reduced mod p");
    let den_mod = den.mod_floor(&pb).to_u64().expect("reduced mod p");
    let den_inv = crate::qfield::inv_mod(den_mod, p)?;
    Some((v, num_mod * den_inv % p))
}

/// `Y = [[A, B], [C, -A]]` with rational entries whose denominators are
/// powers of `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieTarget {
    p: u64,
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl LieTarget {
    pub fn new(p: u64, a: BigRational, b: BigRational, c: BigRational) -> Result<Self> {
        check_odd_prime(p)?;
        for x in [&a, &b, &c] {
            let mut den = x.denom().clone();
            let pb = BigInt::from(p);
            while (&den % &pb).is_zero() {
                den /= &pb;
            }
            if !den.is_one() {
                return Err(Error::InvalidInput(format!("entry {x} has a denominator prime to p = {p}")));
            }
        }
        Ok(LieTarget { p, a, b, c })
    }

    pub fn from_ints(p: u64, a: i64, b: i64, c: i64) -> Result<Self> {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        Self::new(p, r(a), r(b), r(c))
    }

    /// Anti-diagonal `[[0, B], [C, 0]]` with `B = b·p^{vb}`, `C = c·p^{vc}`.
    pub fn antidiagonal(p: u64, b: i64, vb: i32, c: i64, vc: i32) -> Result<Self> {
        let pw = |u: i64, e: i32| {
            BigRational::from_integer(BigInt::from(u)) * BigRational::from_integer(BigInt::from(p)).pow(e)
        };
        Self::new(p, BigRational::zero(), pw(b, vb), pw(c, vc))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> [&BigRational; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn is_antidiagonal(&self) -> bool {
        self.a.is_zero()
    }

    /// `max(-val)` over the nonzero entries; `None` for `Y = 0`.
    pub fn v(&self) -> Option<i64> {
        self.entries().iter().filter_map(|x| padic_parts(x, self.p)).map(|(v, _)| -v).max()
    }

    /// Exponent `D ≥ 0` with `p^D Y` integral.
    pub fn denominator_exponent(&self) -> u32 {
        self.v().unwrap_or(0).max(0) as u32
    }

    pub fn det(&self) -> BigRational {
        -(&self.a * &self.a) - &self.b * &self.c
    }

    pub fn is_regular(&self) -> bool {
        !self.det().is_zero()
    }

    /// `ϖ^k Y`.
    pub fn scaled(&self, k: i32) -> Self {
        let f = BigRational::from_integer(BigInt::from(self.p)).pow(k);
        LieTarget { p: self.p, a: &self.a * &f, b: &self.b * &f, c: &self.c * &f }
    }

    /// `g Y g^{-1}` for `g ∈ SL(2, ℤ)`.
    pub fn conjugated(&self, g: [[i64; 2]; 2]) -> Result<Self> {
        let [[w, x], [y, z]] = g;
        if w * z - x * y != 1 {
            return Err(Error::InvalidInput(format!("{g:?} is not in SL(2, Z)")));
        }
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        let m = [[self.a.clone(), self.b.clone()], [self.c.clone(), -self.a.clone()]];
        let gi = [[r(z), r(-x)], [r(-y), r(w)]];
        let gg = [[r(w), r(x)], [r(y), r(z)]];
        let mul = |p: &[[BigRational; 2]; 2], q: &[[BigRational; 2]; 2]| {
            let e = |i: usize, j: usize| &p[i][0] * &q[0][j] + &p[i][1] * &q[1][j];
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
        };
        let out = mul(&mul(&gg, &m), &gi);
        Self::new(self.p, out[0][0].clone(), out[0][1].clone(), out[1][0].clone())
    }

    /// Class of `exp(Y)` for topologically nilpotent regular `Y`.
    pub fn exp_class(&self) -> Result<RegSSClass> {
        let minus_det = -self.det();
        let (v, unit) = padic_parts(&minus_det, self.p)
            .ok_or_else(|| Error::InvalidInput("Y is not regular".into()))?;
        let square = if v % 2 != 0 {
            SquareClass::OddValuation
        } else if legendre(unit as i64, self.p) == 1 {
            SquareClass::SquareUnit
        } else {
            SquareClass::NonsquareUnit
        };
        lie_class_of(self.p, v, square)
    }

    /// Entries of `p^D Y` modulo `p^M`.
    fn integral_entries(&self, d: u32, modulus: u64) -> [u64; 3] {
        let scale = BigRational::from_integer(BigInt::from(self.p).pow(d));
        let m = BigInt::from(modulus);
        [&self.a, &self.b, &self.c].map(|x| {
            let y = x * &scale;
            debug_assert!(y.is_integer());
            y.to_integer().mod_floor(&m).to_u64().expect("reduced")
        })
    }
}

impl fmt::Display for LieTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, -&self.a)
    }
}

/// Parse `"a,b,c,d"` (row-major, `d = -a`) for a given `p`. Entries may be
/// integers, `n/m`, or `n/p^e`.
pub fn parse_target(p: u64, text: &str) -> Result<LieTarget> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!("Y needs four comma-separated entries, got {text:?}")));
    }
    let vals = parts.iter().map(|s| parse_entry(p, s)).collect::<Result<Vec<_>>>()?;
    if vals[3] != -vals[0].clone() {
        return Err(Error::InvalidInput(format!("Y = {text} is not traceless")));
    }
    LieTarget::new(p, vals[0].clone(), vals[1].clone(), vals[2].clone())
}

fn parse_entry(p: u64, s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad matrix entry {s:?}"));
    let int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| bad());
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = d.trim();
            let den = if let Some(e) = d.strip_prefix("p^") {
                let e: u32 = e.parse().map_err(|_| bad())?;
                BigInt::from(p).pow(e)
            } else {
                int(d)?
            };
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(int(n)?, den))
        }
    }
}

/// `{X ∈ sl(2, F) : entries in ℘^{-ℓ}}` modulo `℘^s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncatedLattice {
    pub p: u64,
    pub ell: u32,
    pub s: u32,
}

impl TruncatedLattice {
    /// Smallest `s` for which both `ψ(tr XY)` and the `g_r` indicator are
    /// constant on residual cosets: `s ≥ D + 1` and `s ≥ ℓ + 2r`.
    pub fn for_target(y: &LieTarget, ell: u32, r: HalfInt) -> Self {
        let need_det = ell as i64 + r.twice();
        let s = (y.denominator_exponent() as i64 + 1).max(need_det).max(0) as u32;
        TruncatedLattice { p: y.p, ell, s }
    }

    pub fn side(&self) -> u64 {
        self.p.pow(self.ell + self.s)
    }

    pub fn point_count(&self) -> u128 {
        (self.side() as u128).pow(3)
    }

    /// `p^{-3s}`.
    pub fn weight(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.p).pow(3 * self.s))
    }

    /// `X = [[A, B], [C, -A]] / p^ℓ` lies in `g_r`. Refuses when `s` is too
    /// small for the answer to be well defined.
    pub fn indicator_g_r(&self, x: (u64, u64, u64), r: HalfInt) -> Result<bool> {
        let need = self.ell as i64 + r.twice();
        if (self.s as i64) < need {
            return Err(Error::Precision(format!(
                "deciding g_{r} on T_{} needs s ≥ {need}, have s = {}",
                self.ell, self.s
            )));
        }
        let e = 2 * self.ell as i64 + r.twice();
        if e <= 0 {
            return Ok(true);
        }
        let m = (self.p as u128).pow(e as u32);
        let (a, b, c) = (x.0 as u128, x.1 as u128, x.2 as u128);
        Ok((a * a + b * c) % m == 0)
    }
}

/// Exact `∫_{T_ℓ} ψ(tr XY) 1_{g_r}(X) dX` by enumeration of `T_ℓ / ℘^s`.
/// `s` defaults to the smallest admissible value.
pub fn ft_brute(y: &LieTarget, ell: u32, r: HalfInt, s: Option<u32>, budget: u128) -> Result<CyclotomicSum> {
    let min = TruncatedLattice::for_target(y, ell, r);
    let lat = match s {
        Some(s) if s < min.s => {
            return Err(Error::Precision(format!("s = {s} is below the admissible minimum {}", min.s)))
        }
        Some(s) => TruncatedLattice { s, ..min },
        None => min,
    };
    if lat.point_count() > budget {
        return Err(Error::PointBudget { required: lat.point_count(), cap: budget });
    }
    let p = lat.p;
    let d = y.denominator_exponent();
    let order = p.pow(ell + d + 1);
    let side = lat.side();
    let [ya, yb, yc] = y.integral_entries(d, order);
    let e = 2 * ell as i64 + r.twice();
    let det_mod: u128 = if e <= 0 { 1 } else { (p as u128).pow(e as u32) };
    let om = order as u128;
    let hist = (0..side)
        .into_par_iter()
        .fold(
            || vec![0u64; order as usize],
            |mut h, a| {
                let a = a as u128;
                let a2 = a * a % det_mod;
                let pa = 2 * a * ya as u128 % om;
                for b in 0..side as u128 {
                    let base = (pa + b * yc as u128) % om;
                    let bm = b % det_mod;
                    for c in 0..side as u128 {
                        if (a2 + bm * (c % det_mod)) % det_mod == 0 {
                            h[((base + c * yb as u128) % om) as usize] += 1;
                        }
                    }
                }
                h
            },
        )
        .reduce(
            || vec![0u64; order as usize],
            |mut x, y| {
                for (u, v) in x.iter_mut().zip(y) {
                    *u += v;
                }
                x
            },
        );
    let counts = hist.into_iter().map(BigInt::from).collect();
    Ok(CyclotomicSum::from_big_counts(order as usize, counts, lat.weight()))
}

/// How to evaluate a truncated integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Enumerate lattice points.
    Brute,
    /// Integrate valuation shells in closed form (anti-diagonal `Y` only).
    Stratified,
    /// Stratified for anti-diagonal `Y`, enumeration otherwise.
    Auto,
}

/// `∫_{T_ℓ} ψ(tr XY) 1_{g_r}(X) dX`.
pub fn ft_truncated(y: &LieTarget, ell: u32, r: HalfInt, method: Method, budget: u128) -> Result<CyclotomicSum> {
    if !y.is_regular() {
        return Err(Error::InvalidInput(format!("Y = {y} is not regular")));
    }
    match method {
        Method::Brute => ft_brute(y, ell, r, None, budget),
        Method::Stratified => ft_antidiagonal(y, ell, r),
        Method::Auto if y.is_antidiagonal() => ft_antidiagonal(y, ell, r),
        Method::Auto => ft_brute(y, ell, r, None, budget),
    }
}

/// `∫_{T_ℓ} ψ(tr XY) 1_{g_0}(X) dX`.
pub fn ft_g0(y: &LieTarget, ell: u32, budget: u128) -> Result<CyclotomicSum> {
    ft_truncated(y, ell, HalfInt::ZERO, Method::Brute, budget)
}

/// `FT(1_{g_{-k}})(Y)` on `T_ℓ` via `X = ϖ^{-k} X'`: `p^{3k} ∫_{T_{ℓ-k}} ψ(tr X' ϖ^{-k}Y) 1_{g_0}(X') dX'`.
pub fn ft_g_minus_k(k: u32, y: &LieTarget, ell: u32, method: Method, budget: u128) -> Result<CyclotomicSum> {
    if ell < k {
        return Err(Error::InvalidInput(format!("T_{ell} is too small to contain ϖ^{{-{k}}} T_0")));
    }
    let inner = ft_truncated(&y.scaled(-(k as i32)), ell - k, HalfInt::ZERO, method, budget)?;
    let factor = BigRational::from_integer(BigInt::from(y.p).pow(3 * k));
    Ok(inner.scaled(&factor))
}

/// `FT(1_{g_{-k}})(Y)` on `T_ℓ` by direct enumeration of `g_{-k} ∩ T_ℓ`.
pub fn ft_g_minus_k_direct(k: u32, y: &LieTarget, ell: u32, method: Method, budget: u128) -> Result<CyclotomicSum> {
    ft_truncated(y, ell, -HalfInt::from_int(k as i64), method, budget)
}

/// Values of a truncation sweep and the level at which two consecutive
/// values first agree.
#[derive(Clone, Debug)]
pub struct Stabilization {
    pub values: Vec<(u32, CyclotomicSum)>,
    pub stable_at: Option<u32>,
}

impl Stabilization {
    pub fn value(&self) -> Option<&CyclotomicSum> {
        let at = self.stable_at?;
        self.values.iter().find(|(l, _)| *l == at).map(|(_, v)| v)
    }
}

/// Evaluate `f(ℓ)` for `ℓ = start..=ell_max` until two consecutive values agree.
pub fn stabilize<F>(start: u32, ell_max: u32, mut f: F) -> Result<Stabilization>
where
    F: FnMut(u32) -> Result<CyclotomicSum>,
{
    let mut values: Vec<(u32, CyclotomicSum)> = Vec::new();
    for ell in start..=ell_max {
        let v = f(ell)?;
        let stable = values.last().is_some_and(|(_, prev)| *prev == v);
        values.push((ell, v));
        if stable {
            return Ok(Stabilization { values, stable_at: Some(ell - 1) });
        }
    }
    Ok(Stabilization { values, stable_at: None })
}

/// `ft_g0` for `ℓ = 0..=ell_max`, stopping at stability.
pub fn ft_stabilize(y: &LieTarget, ell_max: u32, method: Method, budget: u128) -> Result<Stabilization> {
    stabilize(0, ell_max, |ell| ft_truncated(y, ell, HalfInt::ZERO, method, budget))
}

/// Rational value of an exact sum, if it is rational.
pub fn rational_value(s: &CyclotomicSum) -> Option<BigRational> {
    s.to_rational()
}

/// Anti-diagonal targets with `val(B) ∈ {-1, 0}`, `val(C) ∈ {val B, val B + 1}`,
/// `val(C) ≤ 0`, over all unit residues.
pub fn vanishing_targets(p: u64) -> Result<Vec<LieTarget>> {
    let mut out = Vec::new();
    for (vb, vc) in [(-1, -1), (-1, 0), (0, 0)] {
        for ub in 1..p as i64 {
            for uc in 1..p as i64 {
                out.push(LieTarget::antidiagonal(p, ub, vb, uc, vc)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    const BUDGET: u128 = 20_000_000;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn t(p: u64, a: i64, b: i64, c: i64) -> LieTarget {
        LieTarget::from_ints(p, a, b, c).unwrap()
    }

    #[test]
    fn indicator_examples() {
        let lat = TruncatedLattice { p: 3, ell: 1, s: 2 };
        // X = [[0,1],[1,0]] has A = 0, B = C = 3
        assert!(lat.indicator_g_r((0, 3, 3), HalfInt::ZERO).unwrap());
        assert!(!lat.indicator_g_r((0, 3, 3), HalfInt::HALF).unwrap());
        // [[0,1],[p,0]]
        assert!(lat.indicator_g_r((0, 3, 9), HalfInt::HALF).unwrap());
        // [[1/p, 0], [0, -1/p]]
        assert!(lat.indicator_g_r((1, 0, 0), -HalfInt::ONE).unwrap());
        assert!(!lat.indicator_g_r((1, 0, 0), HalfInt::ZERO).unwrap());
        assert!(matches!(lat.indicator_g_r((0, 3, 9), HalfInt::ONE), Err(Error::Precision(_))));
    }

    #[test]
    fn parsing() {
        let y = parse_target(3, "0,1/p^1,1,0").unwrap();
        assert_eq!(y.v(), Some(1));
        assert_eq!(y.entries()[1], &r(1, 3));
        assert!(parse_target(3, "1,0,0,1").is_err());
        assert!(parse_target(3, "0,1/2,1,0").is_err());
        assert_eq!(parse_target(5, "0,1,25,0").unwrap().v(), Some(0));
    }

    #[test]
    fn brute_reference_values() {
        let at = |y: &LieTarget, ell| ft_brute(y, ell, HalfInt::ZERO, None, BUDGET).unwrap();
        for ell in 0..=2 {
            assert!(at(&t(3, 0, 1, 1), ell).is_zero());
            assert!(at(&LieTarget::antidiagonal(3, 1, -1, 1, 0).unwrap(), ell).is_zero());
        }
        let y = t(3, 0, 1, 3);
        assert!(at(&y, 0).is_zero());
        assert!(at(&y, 1).equals_rational(&r(-1, 3)));
        assert!(at(&y, 2).equals_rational(&r(-1, 3)));
        let y = t(3, 0, 3, 3);
        assert!(at(&y, 0).equals_integer(1));
        assert!(at(&y, 1).equals_rational(&r(5, 3)));
        assert!(at(&y, 2).equals_rational(&r(5, 3)));
        let y = t(3, 0, 3, 9);
        assert!(at(&y, 0).equals_integer(1));
        assert!(at(&y, 1).equals_rational(&r(2, 3)));
        assert!(at(&y, 2).equals_rational(&r(-1, 3)));
    }

    #[test]
    fn residual_precision_is_irrelevant() {
        for y in [t(3, 0, 1, 3), t(3, 1, 1, 3), LieTarget::antidiagonal(3, 2, -1, 1, 0).unwrap()] {
            for ell in 0..=1 {
                let base = ft_brute(&y, ell, HalfInt::ZERO, None, BUDGET).unwrap();
                let s0 = TruncatedLattice::for_target(&y, ell, HalfInt::ZERO).s;
                let doubled = ft_brute(&y, ell, HalfInt::ZERO, Some(2 * s0.max(1)), BUDGET).unwrap();
                assert_eq!(base, doubled, "{y} ell={ell}");
            }
        }
        let y = t(3, 0, 1, 3);
        assert!(matches!(ft_brute(&y, 2, HalfInt::ZERO, Some(1), BUDGET), Err(Error::Precision(_))));
    }

    #[test]
    fn budget_refusal() {
        let y = t(3, 0, 1, 3);
        match ft_brute(&y, 2, HalfInt::ZERO, None, 1000) {
            Err(Error::PointBudget { required, cap }) => {
                assert_eq!(required, 3u128.pow(12));
                assert_eq!(cap, 1000);
            }
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn conjugation_invariance() {
        let gs = [[[1, 1], [0, 1]], [[2, 1], [1, 1]], [[1, 0], [3, 1]], [[0, -1], [1, 0]]];
        for y in [t(3, 0, 1, 3), t(3, 1, 1, 3), t(3, 0, 3, 9)] {
            for g in gs {
                let z = y.conjugated(g).unwrap();
                for ell in 0..=2 {
                    let a = ft_brute(&y, ell, HalfInt::ZERO, None, BUDGET).unwrap();
                    let b = ft_brute(&z, ell, HalfInt::ZERO, None, BUDGET).unwrap();
                    assert_eq!(a, b, "{y} vs {z} ell={ell}");
                }
            }
        }
    }

    #[test]
    fn scaling_two_paths() {
        for y in [t(3, 0, 1, 1), t(3, 0, 1, 3), t(3, 1, 1, 3)] {
            for ell in 1..=3 {
                let direct = ft_g_minus_k_direct(1, &y, ell, Method::Brute, BUDGET).unwrap();
                let scaled = ft_g_minus_k(1, &y, ell, Method::Brute, BUDGET).unwrap();
                assert_eq!(direct, scaled, "{y} ell={ell}");
            }
        }
    }

    #[test]
    fn k_zero_is_ft_g0() {
        let y = t(3, 0, 1, 3);
        for ell in 0..=2 {
            assert_eq!(ft_g_minus_k(0, &y, ell, Method::Brute, BUDGET).unwrap(), ft_g0(&y, ell, BUDGET).unwrap());
        }
    }

    #[test]
    fn stabilization() {
        let s = ft_stabilize(&t(3, 0, 1, 3), 3, Method::Brute, BUDGET).unwrap();
        assert_eq!(s.stable_at, Some(1));
        assert!(s.value().unwrap().equals_rational(&r(-1, 3)));
        let s = ft_stabilize(&t(3, 0, 3, 9), 2, Method::Brute, BUDGET).unwrap();
        assert_eq!(s.stable_at, None);
    }

    #[test]
    fn exp_classes() {
        assert_eq!(t(5, 0, 25, 25).exp_class().unwrap().to_string(), "split:+1:m=2");
        assert_eq!(t(5, 0, 25, 50).exp_class().unwrap().to_string(), "unram:+1:m=2");
        assert_eq!(t(5, 0, 25, 125).exp_class().unwrap().to_string(), "ram:+1:m=5/2");
        assert!(t(3, 0, 1, 3).exp_class().is_err());
        assert_eq!(t(5, 0, 1, 1).det(), rat(-1));
    }
}
