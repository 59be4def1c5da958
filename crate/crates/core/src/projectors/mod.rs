//! Values of projectors, depth sums `e_d` and cumulative sums `σ_d` at
//! regular semisimple classes.
//!
//! Closed forms are generic over [`Scalar`]; they are polynomials in `q`
//! with integer exponents, so `BigRational` gives exact values and `f64` an
//! approximation. Every value is normalized by `meas(SL(2, R_F)) = 1` and
//! vanishes on non-compact classes.
//!
//! Closed forms are checked against independent constructions elsewhere in
//! this module: character sums ([`characters`]), depth-zero cuspidal data
//! ([`depth_zero`]), the supercuspidal census ([`census`]) and the depth
//! induction ([`induction`]).

pub mod census;
pub mod characters;
pub mod depth_zero;
pub mod induction;

pub use census::{
    census_cusp_value, shell_value_from_tau, supercuspidal_census, tau_ramified, tau_unramified, tau_values,
    CensusRecord, TauKind,
};
pub use characters::{
    oracle_split_classes, ps_depth_sum_oracle, ps_depth_zero_oracle, ps_oracle_matches, ps_regular, ps_regular_value,
    regular_pairs, ResidueCharacter,
};
pub use depth_zero::{e0_rebuilt, e_cusp_zero, theta_cuspidal_padic, ThetaPairSum};
pub use induction::{shell_classes, verify_homogeneity, verify_sigma_induction, InductionCase, InductionReport};

use crate::classes::{CentralSign, CompactPart, RegSSClass, TorusType};
use crate::error::{Error, Result};
use crate::qfield::legendre;
use crate::scalar::{Depth, Scalar};

fn qs<S: Scalar>(q: u64) -> S {
    S::from_u64(q).expect("q fits in every scalar type")
}

/// `q^e`.
fn qp<S: Scalar>(q: u64, e: i64) -> S {
    S::powi(&qs(q), e)
}

fn int<S: Scalar>(n: i64) -> S {
    S::from_int(n)
}

/// `q^m = 1/|α - α^{-1}|` for classes with integral `m`.
fn inv_norm<S: Scalar>(q: u64, c: &RegSSClass) -> S {
    qp(q, c.m().to_int().expect("integral m"))
}

/// `q² - 1`.
fn q2m1<S: Scalar>(q: u64) -> S {
    qs::<S>(q) * qs(q) - S::one()
}

/// `sgn(α)` for compact split classes.
fn sgn_alpha(q: u64, c: &RegSSClass) -> Result<i64> {
    Ok(match c.compact_partition() {
        CompactPart::TopUnipotent => 1,
        CompactPart::MinusTopUnipotent => legendre(-1, q) as i64,
        _ => legendre(c.alpha_residue(q, 1)? as i64, q) as i64,
    })
}

fn split_compact(c: &RegSSClass) -> bool {
    c.torus() == TorusType::Split && c.is_compact()
}

/// The principal series projector attached to the quadratic character:
/// `(q+1) sgn(α) / |α - α^{-1}|` on compact split classes.
pub fn ps_sgn<S: Scalar>(q: u64, c: &RegSSClass) -> Result<S> {
    if !split_compact(c) {
        return Ok(S::zero());
    }
    Ok((qs::<S>(q) + S::one()) * int(sgn_alpha(q, c)?) * inv_norm(q, c))
}

/// Iwahori-fixed (unramified) principal series: `2q/|α - α^{-1}| - (q-1)`
/// on compact split classes, `-(q-1)` on compact elliptic ones.
pub fn ps_unramified<S: Scalar>(q: u64, c: &RegSSClass) -> S {
    let qm1 = qs::<S>(q) - S::one();
    if !c.is_compact() {
        S::zero()
    } else if c.torus() == TorusType::Split {
        int::<S>(2) * qs(q) * inv_norm(q, c) - qm1
    } else {
        -qm1
    }
}

/// Sum of all principal series projectors of depth `d`.
pub fn ps_depth_sum<S: Scalar>(q: u64, d: Depth, c: &RegSSClass) -> Result<S> {
    if !d.is_integral() {
        return Err(Error::HalfIntegralPrincipalSeries(d.to_string()));
    }
    let d = (d.twice() / 2) as i64;
    let one = S::one();
    let qq = qs::<S>(q);
    if d == 0 {
        let qm1 = qq.clone() - one.clone();
        let case = match (c.torus(), c.compact_partition()) {
            (_, CompactPart::NonCompact) => return Ok(S::zero()),
            (TorusType::Split, CompactPart::TopUnipotent) => {
                (qq.clone() + int(2)) * inv_norm(q, c) - one
            }
            (TorusType::Split, CompactPart::MinusTopUnipotent) => inv_norm::<S>(q, c) - one,
            (TorusType::Split, _) => S::zero(),
            _ => -one,
        };
        return Ok(qm1 * case);
    }
    if c.torus() != TorusType::Split || !c.is_top_unipotent() {
        return Ok(S::zero());
    }
    let m = c.m().to_int().expect("split m is integral");
    let factor = (qq.clone() + one.clone()) * qp(q, d) * (qq.clone() - one.clone()) * qp(q, d - 1);
    let case = if m == d {
        -qp::<S>(q, d)
    } else if m > d {
        (qq - one) * qp(q, m)
    } else {
        S::zero()
    };
    Ok(factor * case)
}

/// `e_0`: `(q²-1)(2/|α - α^{-1}| - 1)` on split topologically unipotent
/// classes, `-(q²-1)` on elliptic ones, `0` elsewhere.
pub fn e0<S: Scalar>(q: u64, c: &RegSSClass) -> S {
    if !c.is_top_unipotent() {
        return S::zero();
    }
    let f = q2m1::<S>(q);
    match c.torus() {
        TorusType::Split => f * (int::<S>(2) * inv_norm(q, c) - S::one()),
        _ => -f,
    }
}

/// Supercuspidal part of `e_d` for integral `d ≥ 1`.
pub fn cusp_d_integral<S: Scalar>(q: u64, d: Depth, c: &RegSSClass) -> Result<S> {
    if !d.is_integral() || d == Depth::ZERO {
        return Err(Error::InvalidInput(format!("cusp_d_integral needs integral d ≥ 1, got {d}")));
    }
    if !c.is_top_unipotent() {
        return Ok(S::zero());
    }
    let d = (d.twice() / 2) as i64;
    let m2 = c.m().twice();
    let f = q2m1::<S>(q);
    let qq = qs::<S>(q);
    let qm1 = qq.clone() - S::one();
    let v = match c.torus() {
        TorusType::Split if m2 >= 2 * d + 2 => {
            qm1 * qq * qp(q, 2 * (d - 1)) * (inv_norm::<S>(q, c) - qp(q, d))
        }
        TorusType::Ramified if m2 >= 2 * d + 1 => -(qm1 * qq * qp(q, 2 * (d - 1)) * qp(q, d)),
        TorusType::Unramified if m2 == 2 * d => qp(q, 3 * d - 1),
        TorusType::Unramified if m2 >= 2 * d + 2 => -(qm1 * qp(q, 3 * d - 1)),
        _ => S::zero(),
    };
    Ok(f * v)
}

/// `e_d` for half-integral `d`; all such components are supercuspidal.
pub fn e_d_halfintegral<S: Scalar>(q: u64, d: Depth, c: &RegSSClass) -> Result<S> {
    if d.is_integral() {
        return Err(Error::InvalidInput(format!("e_d_halfintegral needs half-integral d, got {d}")));
    }
    if !c.is_top_unipotent() {
        return Ok(S::zero());
    }
    // e = d - 1/2
    let e = (d.twice() / 2) as i64;
    let d2 = d.twice() as i64;
    let m2 = c.m().twice();
    let f = q2m1::<S>(q);
    let qm1 = qs::<S>(q) - S::one();
    let deep = -(f.clone() * qp(q, 3 * e));
    let v = match c.torus() {
        TorusType::Split if m2 >= d2 + 1 => {
            int::<S>(2) * qm1 * qp(q, 2 * e) * inv_norm(q, c) - f.clone() * qp(q, 3 * e)
        }
        TorusType::Ramified if m2 == d2 => qp(q, 3 * e),
        TorusType::Ramified if m2 > d2 => deep,
        TorusType::Unramified if m2 >= d2 + 1 => deep,
        _ => S::zero(),
    };
    Ok(f * v)
}

/// `e_d`: sum of the projectors of all components of depth exactly `d`.
pub fn e_depth<S: Scalar>(q: u64, d: Depth, c: &RegSSClass) -> S {
    if d == Depth::ZERO {
        e0(q, c)
    } else if d.is_integral() {
        ps_depth_sum::<S>(q, d, c).expect("integral depth") + cusp_d_integral(q, d, c).expect("d ≥ 1")
    } else {
        e_d_halfintegral(q, d, c).expect("half-integral depth")
    }
}

/// `σ_d = Σ_{k ≤ d} e_k`, in closed form. Supported on `U^top_{d+}`.
pub fn sigma<S: Scalar>(q: u64, d: Depth, c: &RegSSClass) -> S {
    if !c.in_utop_domain(d) {
        return S::zero();
    }
    // q-power in front: 3k for integral k, 3k + 1/2 for half-integral k;
    // both are integers (3·twice + 1)/2 resp. 3·twice/2.
    let t = d.twice() as i64;
    let (lead, shift) = if d.is_integral() { (3 * t / 2, t / 2) } else { ((3 * t + 1) / 2, (t + 1) / 2) };
    let f = q2m1::<S>(q) * qp(q, lead);
    match c.torus() {
        TorusType::Split => {
            let m = c.m().to_int().expect("split m is integral");
            f * (int::<S>(2) * qp(q, m - shift) - S::one())
        }
        _ => -f,
    }
}

/// `-1` times a class: swaps the roles of `±1`.
pub fn negate(c: &RegSSClass) -> RegSSClass {
    match c.sign() {
        Some(s) => {
            let s = if s == CentralSign::Plus { CentralSign::Minus } else { CentralSign::Plus };
            RegSSClass::unipotent(c.torus(), s, c.m()).expect("same torus and m")
        }
        None => *c,
    }
}
