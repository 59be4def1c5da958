//! Comparison of `σ_d ∘ exp` with `FT(1_{g_{-d}})` on topologically nilpotent
//! regular elements.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{ft_g_minus_k, stabilize, LieTarget, Method};
use crate::error::{Error, Result};
use crate::projectors::sigma;
use crate::qfield::smallest_nonsquare;
use crate::scalar::Depth;

#[derive(Clone, Debug, Serialize)]
pub struct KimReport {
    pub p: u64,
    pub depth: String,
    pub y: String,
    pub class: String,
    /// Stabilized `FT(1_{g_{-d}})(Y)`; `None` if it did not stabilize or is irrational.
    pub ft: Option<String>,
    pub stable_at: Option<u32>,
    pub sigma: String,
    /// `σ_d(exp Y) / FT(1_{g_{-d}})(Y)` when both are nonzero.
    pub ratio: Option<String>,
    #[serde(skip)]
    ft_value: Option<BigRational>,
    #[serde(skip)]
    sigma_value: BigRational,
}

impl KimReport {
    pub fn ft_value(&self) -> Option<&BigRational> {
        self.ft_value.as_ref()
    }

    pub fn sigma_value(&self) -> &BigRational {
        &self.sigma_value
    }

    pub fn ratio_value(&self) -> Option<BigRational> {
        let ft = self.ft_value.as_ref()?;
        if ft.is_zero() || self.sigma_value.is_zero() {
            return None;
        }
        Some(&self.sigma_value / ft)
    }
}

/// One Kim comparison at integral depth `d`.
pub fn kim_check(d: Depth, y: &LieTarget, ell_max: u32, method: Method, budget: u128) -> Result<KimReport> {
    let k = match d.is_integral() {
        true => d.twice() / 2,
        false => return Err(Error::InvalidInput(format!("Kim comparison is implemented for integral depth, got {d}"))),
    };
    let p = y.p();
    let class = y.exp_class()?;
    let sigma_value: BigRational = sigma(p, d, &class);
    let st = stabilize(k, ell_max.max(k + 1), |ell| ft_g_minus_k(k, y, ell, method, budget))?;
    let ft_value = st.value().and_then(|v| v.to_rational());
    let mut rep = KimReport {
        p,
        depth: d.to_string(),
        y: y.to_string(),
        class: class.to_string(),
        ft: ft_value.as_ref().map(|v| v.to_string()),
        stable_at: st.stable_at,
        sigma: sigma_value.to_string(),
        ratio: None,
        ft_value,
        sigma_value,
    };
    rep.ratio = rep.ratio_value().map(|r| r.to_string());
    Ok(rep)
}

/// Test vectors at depth `d = k`: split, unramified and ramified classes in
/// `U^top_{d+}`, and the split and unramified shells `m = d`.
pub fn kim_vectors(p: u64, k: u32) -> Result<Vec<LieTarget>> {
    let e = smallest_nonsquare(p) as i64;
    let k = k as i32;
    Ok(vec![
        LieTarget::antidiagonal(p, 1, k + 1, 1, k + 1)?,
        LieTarget::antidiagonal(p, 1, k + 1, e, k + 1)?,
        LieTarget::antidiagonal(p, 1, k + 1, 1, k + 2)?,
        LieTarget::antidiagonal(p, 1, k, 1, k)?,
        LieTarget::antidiagonal(p, 1, k, e, k)?,
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct KimSuite {
    pub reports: Vec<KimReport>,
    /// Common ratio `σ_d / FT` over the vectors where both are nonzero.
    pub constant: Option<String>,
    pub pass: bool,
    pub detail: String,
}

/// Runs [`kim_check`] on every vector. Passes when every transform
/// stabilizes, vanishing agrees on both sides, and the nonzero ratios are
/// one common constant.
pub fn kim_suite(d: Depth, vectors: &[LieTarget], ell_max: u32, method: Method, budget: u128) -> Result<KimSuite> {
    let reports = vectors
        .iter()
        .map(|y| kim_check(d, y, ell_max, method, budget))
        .collect::<Result<Vec<_>>>()?;
    let mut constant: Option<BigRational> = None;
    let mut problems = Vec::new();
    for r in &reports {
        let Some(ft) = r.ft_value() else {
            problems.push(format!("{}: transform did not stabilize to a rational", r.y));
            continue;
        };
        if ft.is_zero() != r.sigma_value().is_zero() {
            problems.push(format!("{}: FT = {ft}, σ = {}", r.y, r.sigma));
            continue;
        }
        if let Some(ratio) = r.ratio_value() {
            match &constant {
                None => constant = Some(ratio),
                Some(c) if *c != ratio => problems.push(format!("{}: ratio {ratio} differs from {c}", r.y)),
                _ => {}
            }
        }
    }
    if constant.is_none() {
        problems.push("no vector with nonzero values".into());
    }
    let pass = problems.is_empty();
    let detail = if pass {
        format!("constant {}", constant.as_ref().expect("set"))
    } else {
        problems.join("; ")
    };
    Ok(KimSuite { reports, constant: constant.map(|c| c.to_string()), pass, detail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn p5_depth_one() {
        let vs = kim_vectors(5, 1).unwrap();
        let s = kim_suite(Depth::integral(1), &vs, 8, Method::Stratified, 0).unwrap();
        assert!(s.pass, "{}", s.detail);
        assert_eq!(s.reports[0].ft_value(), Some(&rat(225)));
        assert_eq!(s.reports[0].sigma_value(), &rat(27000));
        assert_eq!(s.reports[1].ft_value(), Some(&rat(-25)));
        assert_eq!(s.constant.as_deref(), Some("120"));
    }

    #[test]
    fn constant_is_group_order() {
        for (p, k) in [(3u64, 1u32), (7, 1), (5, 2)] {
            let vs = kim_vectors(p, k).unwrap();
            let s = kim_suite(Depth::integral(k), &vs, 10, Method::Stratified, 0).unwrap();
            assert!(s.pass, "p={p} k={k}: {}", s.detail);
            assert_eq!(s.constant, Some((p * (p * p - 1)).to_string()), "p={p} k={k}");
        }
    }

    #[test]
    fn half_integral_refused() {
        let y = LieTarget::antidiagonal(5, 1, 2, 1, 2).unwrap();
        assert!(kim_check("1/2".parse().unwrap(), &y, 4, Method::Stratified, 0).is_err());
    }
}
