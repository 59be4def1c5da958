//! Depth-zero supercuspidals: characters `Θ_i`, `Θ_i'` (`i = 1..q`) of the
//! representations induced from the cuspidal representations of
//! `SL(2, F_q)` through the two maximal compact subgroups `K`, `K'`, and the
//! rebuilt `e_0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ps_depth_sum;
use crate::classes::{CompactPart, RegSSClass, TorusType};
use crate::error::{Error, Result};
use crate::qfield::CyclotomicSum;
use crate::scalar::{rat, Depth};
use crate::sl2fq::{cuspidal_char, ClassLabel};

/// `Θ_i + Θ_i'` at a class: either one value per `i = 1..q`, or only their
/// total where the individual values are not needed.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaPairSum {
    PerIndex(Vec<BigRational>),
    Total(BigRational),
}

impl ThetaPairSum {
    pub fn total(&self) -> BigRational {
        match self {
            ThetaPairSum::PerIndex(v) => v.iter().fold(BigRational::zero(), |a, b| a + b),
            ThetaPairSum::Total(t) => t.clone(),
        }
    }
}

fn alternating(q: u64, value: BigRational) -> Vec<BigRational> {
    (1..=q).map(|i| if i % 2 == 0 { value.clone() } else { -value.clone() }).collect()
}

fn q_pow_m(q: u64, c: &RegSSClass) -> BigRational {
    BigRational::from_integer(BigInt::from(q).pow(c.m().to_int().expect("integral m") as u32))
}

/// Individual `Θ_i` where it does not depend on the extra sign data carried
/// by unramified classes.
pub fn theta_single(q: u64, c: &RegSSClass) -> Option<Vec<BigRational>> {
    match (c.torus(), c.compact_partition()) {
        (TorusType::Split, CompactPart::TopUnipotent) => Some(vec![q_pow_m(q, c) - rat(1); q as usize]),
        (TorusType::Ramified, CompactPart::TopUnipotent) => Some(vec![rat(-1); q as usize]),
        (TorusType::Ramified, CompactPart::MinusTopUnipotent) => Some(alternating(q, rat(-1))),
        _ => None,
    }
}

/// `Θ_i + Θ_i'` at a class, `i = 1..q`.
pub fn theta_cuspidal_padic(q: u64, c: &RegSSClass) -> Result<ThetaPairSum> {
    let zeros = || ThetaPairSum::PerIndex(vec![rat(0); q as usize]);
    Ok(match (c.torus(), c.compact_partition()) {
        (_, CompactPart::NonCompact) => zeros(),
        (TorusType::Split, CompactPart::TopUnipotent) => {
            ThetaPairSum::PerIndex(vec![rat(2) * (q_pow_m(q, c) - rat(1)); q as usize])
        }
        (TorusType::Split, CompactPart::MinusTopUnipotent) => {
            ThetaPairSum::PerIndex(alternating(q, rat(2) * (q_pow_m(q, c) - rat(1))))
        }
        (TorusType::Split, _) => zeros(),
        (_, CompactPart::TopUnipotent) => ThetaPairSum::PerIndex(vec![rat(-2); q as usize]),
        (_, CompactPart::MinusTopUnipotent) => ThetaPairSum::PerIndex(alternating(q, rat(-2))),
        (_, _) => {
            // unramified strongly regular: y reduces to an elliptic element of
            // SL(2, F_q), where the induced characters restrict to χ_i
            ThetaPairSum::Total(cuspidal_sum(q, 1)?)
        }
    })
}

/// `Σ_{i=1..q} χ_i(β^k)`, exactly.
pub fn cuspidal_sum(q: u64, k: u64) -> Result<BigRational> {
    let mut total = CyclotomicSum::zero((q + 1) as usize);
    for i in 1..=q {
        total = total + cuspidal_char(i, &ClassLabel::BetaPower(k), q)?;
    }
    total.to_rational().ok_or_else(|| Error::NotRational(format!("Σ_i χ_i(β^{k}) for q = {q}: {total}")))
}

/// `e_K + e_K' = (q-1)/2 · Σ_i (Θ_i + Θ_i')`.
pub fn e_cusp_zero(q: u64, c: &RegSSClass) -> Result<BigRational> {
    let weight = BigRational::new(BigInt::from(q - 1), BigInt::from(2));
    Ok(weight * theta_cuspidal_padic(q, c)?.total())
}

/// `e_0` rebuilt as the principal series depth-zero sum plus `e_K + e_K'`.
pub fn e0_rebuilt(q: u64, c: &RegSSClass) -> Result<BigRational> {
    Ok(ps_depth_sum::<BigRational>(q, Depth::ZERO, c)? + e_cusp_zero(q, c)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::class_grid;
    use crate::projectors::e0;

    fn cls(s: &str) -> RegSSClass {
        s.parse().unwrap()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta_single(3, &cls("split:+1:m=1")).unwrap()[0], rat(2));
        assert_eq!(theta_single(3, &cls("ram:+1:m=1/2")).unwrap()[1], rat(-1));
        let ram_minus = theta_single(3, &cls("ram:-1:m=3/2")).unwrap();
        assert_eq!(ram_minus, vec![rat(1), rat(-1), rat(1)]);
        // the pair sum at an unramified topologically unipotent class is -2
        let unram = theta_cuspidal_padic(5, &cls("unram:+1:m=1")).unwrap();
        assert_eq!(unram, ThetaPairSum::PerIndex(vec![rat(-2); 5]));
        assert_eq!(theta_cuspidal_padic(7, &cls("unram:sr")).unwrap(), ThetaPairSum::Total(rat(2)));
    }

    #[test]
    fn pair_total_at_every_regular_elliptic_power() {
        for q in [3u64, 5, 7, 11] {
            for k in (1..=q).filter(|&k| 2 * k != q + 1) {
                assert_eq!(cuspidal_sum(q, k).unwrap(), rat(2), "q={q} k={k}");
            }
        }
    }

    #[test]
    fn e0_rebuilds() {
        for q in [3u64, 5, 7, 11] {
            for c in class_grid(q, Depth::integral(2)) {
                assert_eq!(e0_rebuilt(q, &c).unwrap(), e0::<BigRational>(q, &c), "q={q} {c}");
            }
        }
    }
}
