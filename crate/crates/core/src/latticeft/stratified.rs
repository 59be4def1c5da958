//! Exact truncated transforms for anti-diagonal `Y = [[0, B], [C, 0]]`.
//!
//! `tr(XY) = bC + cB` does not involve `a`, so `a` is integrated out in closed
//! form: the measure of `{a ∈ ℘^{-ℓ} : val(a² + bc) ≥ R}` depends only on
//! `val(bc)` and the square class of `-bc`. The `b` and `c` integrals split
//! into valuation shells (further split by square class of the unit part)
//! plus a tail on which both the character and the `a`-measure are constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{padic_parts, LieTarget};
use crate::error::{Error, Result};
use crate::qfield::{legendre, CyclotomicSum};
use crate::scalar::HalfInt;

fn p_pow(p: u64, e: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p)).pow(e as i32)
}

/// `∫_{u ∈ R^×, (u/p) = ε} ψ(p^t y u) du` for a unit `y` with residue `uy`.
fn unit_shell(p: u64, t: i64, uy: u64, eps: i8) -> CyclotomicSum {
    let n = p as usize;
    if t >= 1 {
        return CyclotomicSum::constant(n, BigRational::new(BigInt::from(p - 1), BigInt::from(2 * p)));
    }
    if t < 0 {
        return CyclotomicSum::zero(n);
    }
    let mut counts = vec![0i64; n];
    for v in (1..p).filter(|&v| legendre(v as i64, p) == eps) {
        counts[(uy * v % p) as usize] += 1;
    }
    CyclotomicSum::from_counts(n, &counts, BigRational::new(BigInt::one(), BigInt::from(p)))
}

/// Shells `val x = β ∈ [-ℓ, top)` of `∫ ψ(x y) dx`, split by square class.
fn shells(p: u64, ell: u32, top: i64, y: (i64, u64)) -> Vec<(i64, i8, CyclotomicSum)> {
    let mut out = Vec::new();
    for beta in -(ell as i64)..top {
        for eps in [1i8, -1] {
            let s = unit_shell(p, beta + y.0, y.1, eps).scaled(&p_pow(p, -beta));
            out.push((beta, eps, s));
        }
    }
    out
}

/// `∫_{T_ℓ} ψ(tr XY) 1_{g_r}(X) dX` for anti-diagonal regular `Y`.
pub fn ft_antidiagonal(y: &LieTarget, ell: u32, r: HalfInt) -> Result<CyclotomicSum> {
    let p = y.p();
    let [a, b, c] = y.entries();
    if !a.is_zero() {
        return Err(Error::InvalidInput(format!("Y = {y} is not anti-diagonal")));
    }
    let not_regular = || Error::InvalidInput(format!("Y = {y} is not regular"));
    let yb = padic_parts(b, p).ok_or_else(not_regular)?;
    let yc = padic_parts(c, p).ok_or_else(not_regular)?;
    let n = p as usize;
    let l = ell as i64;
    let big_r = r.twice();

    // a-measure once val(bc) ≥ R
    let mu_const = p_pow(p, -((big_r + 1).div_euclid(2)).max(-l));
    let minus_one = legendre(-1, p);
    let mu = |w: i64, eps: i8| -> BigRational {
        if w >= big_r {
            mu_const.clone()
        } else if w % 2 != 0 || minus_one * eps != 1 {
            BigRational::zero()
        } else {
            p_pow(p, w / 2 - big_r) * BigRational::from_integer(2.into())
        }
    };

    // b pairs with C, c pairs with B
    let b_top = (1 - yc.0).max(big_r + l).max(-l);
    let c_top = (1 - yb.0).max(big_r + l).max(-l);
    let b_shells = shells(p, ell, b_top, yc);
    let c_shells = shells(p, ell, c_top, yb);

    let mut total = CyclotomicSum::zero(n);
    for (beta, eb, sb) in &b_shells {
        for (gamma, ec, sc) in &c_shells {
            let m = mu(beta + gamma, eb * ec);
            if !m.is_zero() {
                total = total + (sb * sc).scaled(&m);
            }
        }
    }
    // b in ℘^{b_top}, c anywhere in ℘^{-ℓ}
    let c_full = if yb.0 - l >= 1 { p_pow(p, l) } else { BigRational::zero() };
    total = total + CyclotomicSum::constant(n, p_pow(p, -b_top) * c_full * &mu_const);
    // b in its shells, c in ℘^{c_top}
    let b_sum: CyclotomicSum = b_shells.into_iter().fold(CyclotomicSum::zero(n), |acc, (_, _, s)| acc + s);
    total = total + b_sum.scaled(&(p_pow(p, -c_top) * &mu_const));
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latticeft::ft_brute;

    #[test]
    fn matches_enumeration() {
        let budget = 50_000_000;
        let mut targets = Vec::new();
        for (vb, vc) in [(-1, -1), (-1, 0), (0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (-1, 1)] {
            for (ub, uc) in [(1, 1), (1, 2), (2, 2)] {
                targets.push(LieTarget::antidiagonal(3, ub, vb, uc, vc).unwrap());
            }
        }
        for y in &targets {
            for r in [HalfInt::ZERO, HalfInt::HALF, -HalfInt::ONE] {
                for ell in 0..=2 {
                    let brute = match ft_brute(y, ell, r, None, budget) {
                        Ok(v) => v,
                        Err(Error::PointBudget { .. }) => continue,
                        Err(e) => panic!("{e}"),
                    };
                    let fast = ft_antidiagonal(y, ell, r).unwrap();
                    assert_eq!(brute, fast, "Y={y} r={r} ell={ell}: {brute} vs {fast}");
                }
            }
        }
    }

    #[test]
    fn matches_enumeration_p5() {
        for (vb, vc) in [(0, 0), (0, 1), (1, 1), (-1, 0)] {
            for (ub, uc) in [(1, 1), (1, 2), (3, 4)] {
                let y = LieTarget::antidiagonal(5, ub, vb, uc, vc).unwrap();
                for ell in 0..=1 {
                    let brute = ft_brute(&y, ell, HalfInt::ZERO, None, 50_000_000).unwrap();
                    assert_eq!(brute, ft_antidiagonal(&y, ell, HalfInt::ZERO).unwrap(), "Y={y} ell={ell}");
                }
            }
        }
    }
}
