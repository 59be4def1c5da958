//! Characters of `R_F^×` factoring through `(ℤ/p^f)^×`, single principal
//! series projectors, and the brute-force character sums that rebuild the
//! principal series depth sums.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ps_depth_sum, ps_sgn, ps_unramified};
use crate::classes::{RegSSClass, TorusType};
use crate::error::{Error, Result};
use crate::qfield::{check_odd_prime, pow_mod, CyclotomicSum};
use crate::scalar::Depth;

/// Smallest generator of `(ℤ/p^f)^×` for every `f`: a primitive root mod `p`
/// that stays primitive mod `p²`.
pub fn primitive_root(p: u64) -> u64 {
    let order_p = p - 1;
    let prime_factors: Vec<u64> = (2..=order_p).filter(|&r| order_p % r == 0 && (2..r).all(|s| r % s != 0)).collect();
    (2..p)
        .find(|&g| {
            prime_factors.iter().all(|&r| pow_mod(g, order_p / r, p) != 1) && pow_mod(g, p - 1, p * p) != 1
        })
        .expect("odd primes have primitive roots")
}

/// The character `g^k ↦ ζ_n^{e k}` of `(ℤ/p^f)^×`, `n = p^{f-1}(p-1)`,
/// where `g` is [`primitive_root`].
#[derive(Clone, Debug)]
pub struct ResidueCharacter {
    p: u64,
    f: u32,
    e: u64,
    log: Vec<u64>,
}

impl ResidueCharacter {
    pub fn new(p: u64, f: u32, e: u64) -> Result<Self> {
        check_odd_prime(p)?;
        if f == 0 {
            return Err(Error::InvalidInput("conductor exponent must be ≥ 1".into()));
        }
        let modulus = p.pow(f);
        let n = modulus / p * (p - 1);
        let g = primitive_root(p);
        let mut log = vec![u64::MAX; modulus as usize];
        let mut x = 1u64;
        for k in 0..n {
            log[x as usize] = k;
            x = x * g % modulus;
        }
        Ok(ResidueCharacter { p, f, e: e % n, log })
    }

    /// All characters of `(ℤ/p^f)^×`.
    pub fn all(p: u64, f: u32) -> Result<Vec<Self>> {
        let first = Self::new(p, f, 0)?;
        Ok((0..first.order()).map(|e| ResidueCharacter { e, ..first.clone() }).collect())
    }

    /// `n = |(ℤ/p^f)^×|`, the order of the roots of unity involved.
    pub fn order(&self) -> u64 {
        self.p.pow(self.f - 1) * (self.p - 1)
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn exponent(&self) -> u64 {
        self.e
    }

    pub fn inverse(&self) -> Self {
        ResidueCharacter { e: (self.order() - self.e) % self.order(), ..self.clone() }
    }

    /// `k` with `χ(a) = ζ_n^k`.
    pub fn log_value(&self, a: u64) -> Result<u64> {
        let modulus = self.p.pow(self.f);
        let l = self.log[(a % modulus) as usize];
        if l == u64::MAX {
            return Err(Error::InvalidInput(format!("{a} is not a unit mod {modulus}")));
        }
        Ok(self.e * l % self.order())
    }

    pub fn value(&self, a: u64) -> Result<CyclotomicSum> {
        Ok(CyclotomicSum::root(self.order() as usize, self.log_value(a)? as i64))
    }

    /// The conductor is exactly `℘^f`.
    pub fn conductor_exact(&self) -> bool {
        if self.f == 1 {
            self.e != 0
        } else {
            // nontrivial on 1 + ℘^{f-1}, which is generated by g^{n/p}
            self.e % self.p != 0
        }
    }

    /// `χ ≠ χ^{-1}`.
    pub fn is_regular(&self) -> bool {
        (2 * self.e) % self.order() != 0
    }
}

/// `(q+1) q^d (χ(α) + χ(α)^{-1}) q^m` with `d = f - 1`, given `α mod p^f`.
pub fn ps_regular_value(chi: &ResidueCharacter, alpha: u64, m: u32) -> Result<CyclotomicSum> {
    let q = chi.p;
    let n = chi.order() as usize;
    let k = chi.log_value(alpha)? as i64;
    let scale = BigRational::from_integer(BigInt::from(q + 1) * BigInt::from(q).pow(chi.f - 1 + m));
    Ok((CyclotomicSum::root(n, k) + CyclotomicSum::root(n, -k)).scaled(&scale))
}

/// Projector of the principal series component attached to a regular `χ`.
/// Nonzero only on compact split classes; needs `α mod p^f` there.
pub fn ps_regular(chi: &ResidueCharacter, c: &RegSSClass) -> Result<CyclotomicSum> {
    if !chi.is_regular() || !chi.conductor_exact() {
        return Err(Error::InvalidInput(format!(
            "character with exponent {} mod {} is not regular of conductor p^{}",
            chi.e,
            chi.order(),
            chi.f
        )));
    }
    if c.torus() != TorusType::Split || !c.is_compact() {
        return Ok(CyclotomicSum::zero(chi.order() as usize));
    }
    let alpha = c.alpha_residue(chi.p, chi.f)?;
    let m = c.m().to_int().expect("split m is integral") as u32;
    ps_regular_value(chi, alpha, m)
}

/// One representative of each pair `{χ, χ^{-1}}` of regular characters with
/// conductor exactly `℘^f`.
pub fn regular_pairs(p: u64, f: u32) -> Result<Vec<ResidueCharacter>> {
    Ok(ResidueCharacter::all(p, f)?
        .into_iter()
        .filter(|chi| chi.conductor_exact() && chi.is_regular() && chi.e < chi.order() - chi.e)
        .collect())
}

fn sum_to_rational(total: CyclotomicSum, what: &str) -> Result<BigRational> {
    total.to_rational().ok_or_else(|| Error::NotRational(format!("{what}: {total}")))
}

/// Principal series depth sum at integral `d ≥ 1` rebuilt as the sum of
/// [`ps_regular`] over all regular pairs of conductor `℘^{d+1}`.
pub fn ps_depth_sum_oracle(p: u64, d: Depth, c: &RegSSClass) -> Result<BigRational> {
    if !d.is_integral() || d == Depth::ZERO {
        return Err(Error::InvalidInput(format!("oracle needs integral d ≥ 1, got {d}")));
    }
    let f = d.twice() / 2 + 1;
    let pairs = regular_pairs(p, f)?;
    let n = pairs.first().map_or(1, |c| c.order() as usize);
    let mut total = CyclotomicSum::zero(n);
    for chi in &pairs {
        total = total + ps_regular(chi, c)?;
    }
    sum_to_rational(total, &format!("PS depth-{d} oracle at {c}"))
}

/// Principal series depth sum at `d = 0` rebuilt from its components: the
/// unramified and quadratic ones, and the regular pairs of conductor `℘`.
pub fn ps_depth_zero_oracle(p: u64, c: &RegSSClass) -> Result<BigRational> {
    let mut total = CyclotomicSum::constant(
        (p - 1) as usize,
        ps_unramified::<BigRational>(p, c) + ps_sgn::<BigRational>(p, c)?,
    );
    for chi in regular_pairs(p, 1)? {
        total = total + ps_regular(&chi, c)?;
    }
    sum_to_rational(total, &format!("PS depth-0 oracle at {c}"))
}

/// Oracle and closed form agree, for the split class `c`.
pub fn ps_oracle_matches(p: u64, d: Depth, c: &RegSSClass) -> Result<(BigRational, BigRational)> {
    let oracle = if d == Depth::ZERO { ps_depth_zero_oracle(p, c)? } else { ps_depth_sum_oracle(p, d, c)? };
    let closed = ps_depth_sum::<BigRational>(p, d, c)?;
    Ok((oracle, closed))
}

/// Split classes exercised by the oracle at depth `d`: both signs,
/// `m = 1..=d+2`, each with every residue mod `p^{d+1}` that is compatible,
/// and strongly regular classes with every residue (none exist for `p = 3`).
pub fn oracle_split_classes(p: u64, d: Depth) -> Result<Vec<RegSSClass>> {
    use crate::classes::CentralSign;
    let f = d.twice() / 2 + 1;
    let modulus = p.pow(f);
    let mut out = Vec::new();
    for sign in [CentralSign::Plus, CentralSign::Minus] {
        for m in 1..=(f as i64 + 1) {
            let base = RegSSClass::int_m(TorusType::Split, sign, m)?;
            if m >= f as i64 {
                out.push(base);
                continue;
            }
            for v in 1..modulus {
                if let Ok(c) = base.with_residue(p, v, f) {
                    out.push(c);
                }
            }
        }
    }
    for v in 1..modulus {
        if let Ok(c) = RegSSClass::strongly_regular(TorusType::Split)?.with_residue(p, v, f) {
            out.push(c);
        }
    }
    Ok(out)
}

/// `Σ_{χ of conductor exactly ℘^f} χ(a)`, by orthogonality; used to cross-check
/// the oracle on its own.
pub fn exact_conductor_sum(p: u64, f: u32, a: u64) -> i64 {
    let phi = |k: u32| if k == 0 { 1 } else { (p.pow(k - 1) * (p - 1)) as i64 };
    let hit = |k: u32| k == 0 || (a % p.pow(k)) == 1 % p.pow(k);
    let full = if hit(f) { phi(f) } else { 0 };
    let lower = if hit(f - 1) { phi(f - 1) } else { 0 };
    full - lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        for p in [3u64, 5, 7, 11, 13, 29] {
            let g = primitive_root(p);
            let m = p * p;
            let n = p * (p - 1);
            assert!((1..n).all(|k| pow_mod(g, k, m) != 1));
        }
    }

    #[test]
    fn character_basics() {
        let chi = ResidueCharacter::new(5, 1, 1).unwrap();
        assert_eq!(chi.order(), 4);
        assert!(chi.is_regular() && chi.conductor_exact());
        // χ(2) = i, χ(4) = -1
        assert_eq!(chi.value(2).unwrap(), CyclotomicSum::root(4, 1));
        assert!(chi.value(4).unwrap().equals_integer(-1));
        let sgn = ResidueCharacter::new(5, 1, 2).unwrap();
        assert!(!sgn.is_regular());
        let all = ResidueCharacter::all(9, 1);
        assert!(all.is_err());
        let conductor9: Vec<_> = ResidueCharacter::all(3, 2).unwrap().into_iter().filter(|c| c.conductor_exact()).collect();
        assert_eq!(conductor9.len(), 4);
        assert_eq!(regular_pairs(3, 2).unwrap().len(), 2);
    }

    #[test]
    fn ps_regular_examples() {
        let chi = ResidueCharacter::new(5, 1, 1).unwrap();
        let sr2 = "split:sr:u=2".parse::<RegSSClass>().unwrap();
        assert!(ps_regular(&chi, &sr2).unwrap().is_zero());
        assert!(ps_regular_value(&chi, 4, 0).unwrap().equals_integer(-12));
        let ell = "unram:+1:m=2".parse::<RegSSClass>().unwrap();
        assert!(ps_regular(&chi, &ell).unwrap().is_zero());
        let missing = "split:sr".parse::<RegSSClass>().unwrap();
        assert!(matches!(ps_regular(&chi, &missing), Err(Error::MissingResidue { .. })));
    }

    #[test]
    fn oracle_examples_p3() {
        let d1 = Depth::integral(1);
        let at = |s: &str| ps_depth_sum_oracle(3, d1, &s.parse().unwrap()).unwrap();
        assert_eq!(at("split:+1:m=2"), rat(432));
        for v in [4u64, 7] {
            let c = "split:+1:m=1".parse::<RegSSClass>().unwrap().with_residue(3, v, 2).unwrap();
            assert_eq!(ps_depth_sum_oracle(3, d1, &c).unwrap(), rat(-72));
        }
        assert_eq!(at("split:-1:m=2"), rat(0));
        assert_eq!(at("unram:+1:m=2"), rat(0));
    }

    #[test]
    fn oracle_strongly_regular_vanishes() {
        let c = RegSSClass::strongly_regular(TorusType::Split).unwrap().with_residue(5, 7, 2).unwrap();
        assert_eq!(ps_depth_sum_oracle(5, Depth::integral(1), &c).unwrap(), rat(0));
    }

    #[test]
    fn conductor_sum_orthogonality() {
        for p in [3u64, 5, 7] {
            for f in 1..=3u32 {
                let modulus = p.pow(f);
                let chars: Vec<_> = ResidueCharacter::all(p, f).unwrap().into_iter().filter(|c| c.conductor_exact()).collect();
                for a in (1..modulus).filter(|a| a % p != 0) {
                    let n = chars[0].order() as usize;
                    let mut s = CyclotomicSum::zero(n);
                    for c in &chars {
                        s = s + c.value(a).unwrap();
                    }
                    assert!(s.equals_integer(exact_conductor_sum(p, f, a)), "p={p} f={f} a={a}");
                }
            }
        }
    }

    #[test]
    fn depth_zero_oracle_matches() {
        for p in [3u64, 5, 7, 11] {
            for c in crate::classes::class_grid(p, Depth::ZERO) {
                let (o, closed) = ps_oracle_matches(p, Depth::ZERO, &c).unwrap();
                assert_eq!(o, closed, "p={p} {c}");
            }
        }
    }
}
