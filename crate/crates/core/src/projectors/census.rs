//! Positive-depth supercuspidals: counts, formal degrees, multiplicities,
//! and the values `τ(y)` of the sums of inducing characters.

use num_rational::BigRational;
use serde::Serialize;

use crate::classes::{RegSSClass, TorusType};
use crate::error::{Error, Result};
use crate::scalar::{rat, Depth, HalfInt, QPow};
use crate::sl2fq::{elliptic_psi_sum, enumerate_elliptic, unit_pair_psi_sum};
use crate::Exact;

/// Supercuspidals of a given positive depth. Formal degrees are taken with
/// `meas(K) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusRecord {
    pub q: u64,
    pub depth: Depth,
    /// Distinct supercuspidals induced from one maximal compact family
    /// (integral depth only).
    pub per_family: Option<BigRational>,
    /// Number of families: `K` and `K'` at integral depth.
    pub families: u32,
    /// Distinct classes in one induced representation `c-Ind(φ_Ξ)`.
    pub per_induced: BigRational,
    /// Orbits of non-degenerate characters (half-integral depth only).
    pub orbits: Option<BigRational>,
    pub formal_degree: QPow<Exact>,
    pub multiplicity: QPow<Exact>,
}

impl CensusRecord {
    /// Total count at integral depth; the half-integral total is not known
    /// from orbit data alone.
    pub fn total(&self) -> Option<BigRational> {
        self.per_family.as_ref().map(|n| n * rat(self.families as i64))
    }
}

#[derive(Serialize)]
struct CensusRow {
    q: u64,
    depth: String,
    per_family: Option<String>,
    families: u32,
    total: Option<String>,
    per_induced: String,
    orbits: Option<String>,
    formal_degree: String,
    multiplicity: String,
}

impl Serialize for CensusRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CensusRow {
            q: self.q,
            depth: self.depth.to_string(),
            per_family: self.per_family.as_ref().map(|v| v.to_string()),
            families: self.families,
            total: self.total().map(|v| v.to_string()),
            per_induced: self.per_induced.to_string(),
            orbits: self.orbits.as_ref().map(|v| v.to_string()),
            formal_degree: self.formal_degree.to_string(),
            multiplicity: self.multiplicity.to_string(),
        }
        .serialize(s)
    }
}

fn qi(q: u64) -> BigRational {
    rat(q as i64)
}

pub fn supercuspidal_census(q: u64, d: Depth) -> Result<CensusRecord> {
    if d == Depth::ZERO {
        return Err(Error::InvalidInput(
            "depth zero supercuspidals come from the q cuspidal characters at each vertex".into(),
        ));
    }
    let q1 = qi(q) - rat(1);
    let qp1 = qi(q) + rat(1);
    let half = BigRational::new(1.into(), 2.into());
    if d.is_integral() {
        let k = (d.twice() / 2) as i64;
        let e = HalfInt::from_int(k - 1);
        let qpow = |c: BigRational| QPow::new(c, e).collapse(q).expect("integral exponent");
        Ok(CensusRecord {
            q,
            depth: d,
            per_family: Some(qpow(&q1 * &half * &qp1)),
            families: 2,
            per_induced: qpow(qp1.clone()),
            orbits: None,
            formal_degree: QPow::new(&q1 * qi(q), e),
            multiplicity: QPow::q_power(e),
        })
    } else {
        let e = d.as_half() - HalfInt::HALF;
        Ok(CensusRecord {
            q,
            depth: d,
            per_family: None,
            families: 1,
            per_induced: QPow::new(rat(2), e).collapse(q).expect("integral exponent"),
            orbits: Some(rat(2) * &q1),
            formal_degree: QPow::new(&qp1 * &q1 * &half, e),
            multiplicity: QPow::q_power(e),
        })
    }
}

/// `e^cusp_d` at an integral depth rebuilt as count × formal degree × the
/// common character value of the supercuspidals at `y`. Where the value
/// depends on the family, the sum over `K` and `K'` is used. `None` on the
/// unramified shell `m = d`, where the value is obtained from `τ` instead.
pub fn census_cusp_value(q: u64, d: Depth, c: &RegSSClass) -> Result<Option<BigRational>> {
    let rec = supercuspidal_census(q, d)?;
    if !d.is_integral() {
        return Err(Error::InvalidInput(format!("census_cusp_value needs integral d, got {d}")));
    }
    if !c.is_top_unipotent() {
        return Ok(Some(rat(0)));
    }
    let k = (d.twice() / 2) as i64;
    let qd = qi(q).pow(k as i32);
    let m2 = c.m().twice();
    let fd = rec.formal_degree.collapse(q).expect("integral exponent");
    let per_family = rec.per_family.clone().expect("integral depth");
    let total = rec.total().expect("integral depth");
    Ok(match c.torus() {
        TorusType::Split if m2 >= 2 * k + 2 => {
            let inv_norm = qi(q).pow((m2 / 2) as i32);
            Some(total * fd * (inv_norm - qd))
        }
        TorusType::Ramified if m2 >= 2 * k + 1 => Some(total * fd * -qd),
        TorusType::Unramified if m2 >= 2 * k + 2 => Some(per_family * fd * rat(-2) * qd),
        TorusType::Unramified if m2 == 2 * k => None,
        _ => Some(rat(0)),
    })
}

/// Which `τ(y)` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TauKind {
    UnramifiedIntegral,
    RamifiedHalfIntegral,
}

/// `τ(y)` at the unramified shell: the character sum `Σ_e ψ(tr(z e))` over
/// elliptic `e ∈ sl(2, F_q)`, evaluated for every elliptic `z` and required
/// to be the same for all of them.
pub fn tau_unramified(q: u64) -> Result<BigRational> {
    let mut value: Option<BigRational> = None;
    for z in enumerate_elliptic(q)? {
        let s = elliptic_psi_sum(&z)?
            .to_rational()
            .ok_or_else(|| Error::NotRational(format!("elliptic ψ-sum at {z:?}")))?;
        match &value {
            None => value = Some(s),
            Some(v) if *v != s => {
                return Err(Error::InvalidInput(format!("elliptic ψ-sum not constant: {v} vs {s}")))
            }
            _ => {}
        }
    }
    value.ok_or_else(|| Error::InvalidInput(format!("no elliptic elements for q = {q}")))
}

/// `τ(y)` at the ramified shell: `Σ_{a,b ∈ F_q^×} ψ(ua) ψ(vb)` for every pair of
/// units, required to be constant.
pub fn tau_ramified(q: u64) -> Result<BigRational> {
    let mut value = None;
    for u in 1..q as i64 {
        for v in 1..q as i64 {
            let s = unit_pair_psi_sum(q, u, v)?
                .to_rational()
                .ok_or_else(|| Error::NotRational(format!("unit pair sum ({u}, {v})")))?;
            if value.as_ref().is_some_and(|x| *x != s) {
                return Err(Error::InvalidInput("unit pair sum not constant".into()));
            }
            value = Some(s);
        }
    }
    value.ok_or_else(|| Error::InvalidInput(format!("q = {q} too small")))
}

pub fn tau_values(kind: TauKind, q: u64) -> Result<BigRational> {
    match kind {
        TauKind::UnramifiedIntegral => tau_unramified(q),
        TauKind::RamifiedHalfIntegral => tau_ramified(q),
    }
}

/// Shell values from `τ`: `[ZK : ZK_d]·τ` with `[ZK : ZK_d] = (q²-1) q q^{3(d-1)}`
/// at the unramified shell, `(q+1)[I : I_d]·τ` with `[I : I_d] = (q-1) q^{3(d-1/2)}`
/// at the ramified one.
pub fn shell_value_from_tau(q: u64, d: Depth) -> Result<BigRational> {
    let qb = qi(q);
    let q2m1 = &qb * &qb - rat(1);
    if d.is_integral() {
        let k = (d.twice() / 2) as i32;
        let index = q2m1 * &qb * qb.pow(3 * (k - 1));
        Ok(index * tau_unramified(q)?)
    } else {
        let e = (d.twice() / 2) as i32;
        let index = (&qb - rat(1)) * qb.pow(3 * e);
        Ok((&qb + rat(1)) * index * tau_ramified(q)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::class_grid;
    use crate::projectors::{cusp_d_integral, e_d_halfintegral};

    fn d(s: &str) -> Depth {
        s.parse().unwrap()
    }

    #[test]
    fn census_examples() {
        let r = supercuspidal_census(3, d("1")).unwrap();
        assert_eq!(r.per_family, Some(rat(4)));
        assert_eq!(r.total(), Some(rat(8)));
        assert_eq!(r.formal_degree.collapse(3), Some(rat(6)));
        assert_eq!(r.multiplicity.collapse(3), Some(rat(1)));
        let r = supercuspidal_census(3, d("2")).unwrap();
        assert_eq!(r.per_family, Some(rat(12)));
        assert_eq!(r.formal_degree.collapse(3), Some(rat(18)));
        let r = supercuspidal_census(3, d("1/2")).unwrap();
        assert_eq!(r.formal_degree.exp, HalfInt::ZERO);
        assert_eq!(r.formal_degree.collapse(3), Some(rat(4)));
        assert_eq!(r.total(), None);
        assert!(supercuspidal_census(3, Depth::ZERO).is_err());
    }

    #[test]
    fn census_rebuilds_table() {
        for q in [3u64, 5, 7] {
            for k in 1..=2 {
                let dd = Depth::integral(k);
                for c in class_grid(q, dd) {
                    let table: BigRational = cusp_d_integral(q, dd, &c).unwrap();
                    match census_cusp_value(q, dd, &c).unwrap() {
                        Some(v) => assert_eq!(v, table, "q={q} d={dd} {c}"),
                        None => assert_eq!(shell_value_from_tau(q, dd).unwrap(), table),
                    }
                }
            }
        }
    }

    #[test]
    fn ramified_shell_from_tau() {
        for q in [3u64, 5, 7] {
            for dd in ["1/2", "3/2", "5/2"] {
                let dd = d(dd);
                let c = RegSSClass::top_unipotent(TorusType::Ramified, dd.as_half()).unwrap();
                let table: BigRational = e_d_halfintegral(q, dd, &c).unwrap();
                assert_eq!(shell_value_from_tau(q, dd).unwrap(), table);
            }
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau_values(TauKind::UnramifiedIntegral, 3).unwrap(), rat(3));
        assert_eq!(tau_values(TauKind::RamifiedHalfIntegral, 5).unwrap(), rat(1));
        assert_eq!(tau_values(TauKind::RamifiedHalfIntegral, 7).unwrap(), rat(1));
    }
}
