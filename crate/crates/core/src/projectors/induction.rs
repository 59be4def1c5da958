//! The depth induction `σ_d = Σ_{k ≤ d} e_k`, support and shell
//! cancellations, and the homogeneity `σ_{d+1}(m+1) = q³ σ_d(m)`.

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{e_depth, sigma};
use crate::classes::RegSSClass;
use crate::scalar::{rat, Depth};

#[derive(Clone, Debug, Serialize)]
pub struct InductionCase {
    pub q: u64,
    pub class: RegSSClass,
    pub depth: String,
    /// Closed-form `σ_d`.
    pub expected: String,
    /// `Σ_{k ≤ d} e_k`, or `q³ σ_{d-1}` for homogeneity.
    pub got: String,
    /// The summands, for failure dumps.
    pub operands: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct InductionReport {
    pub cases: Vec<InductionCase>,
}

impl InductionReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&InductionCase> {
        self.cases.iter().find(|c| !c.pass)
    }

    pub fn find(&self, class: &str, depth: &str) -> Option<&InductionCase> {
        self.cases.iter().find(|c| c.class.to_string() == class && c.depth == depth)
    }
}

fn check(q: u64, class: RegSSClass, d: Depth, expected: BigRational, got: BigRational, operands: Vec<String>) -> InductionCase {
    InductionCase {
        q,
        class,
        depth: d.to_string(),
        pass: expected == got,
        expected: expected.to_string(),
        got: got.to_string(),
        operands,
    }
}

/// Check `σ_d = Σ_{k ≤ d} e_k` at every grid class and every `d ≤ d_max`.
/// Also checks that `σ_d` vanishes outside `U^top_{d+}`.
pub fn verify_sigma_induction(q: u64, d_max: Depth, grid: &[RegSSClass]) -> InductionReport {
    let cases = grid
        .par_iter()
        .flat_map_iter(|c| {
            let mut running = BigRational::zero();
            let mut operands = Vec::new();
            d_max
                .up_to()
                .map(|d| {
                    let e: BigRational = e_depth(q, d, c);
                    operands.push(format!("e_{d} = {e}"));
                    running += &e;
                    let s: BigRational = sigma(q, d, c);
                    let mut case = check(q, *c, d, s.clone(), running.clone(), operands.clone());
                    if !c.in_utop_domain(d) && !s.is_zero() {
                        case.pass = false;
                        case.operands.push("σ_d nonzero outside U^top_{d+}".into());
                    }
                    case
                })
                .collect::<Vec<_>>()
        })
        .collect();
    InductionReport { cases }
}

/// Check `σ_{d+1}` at depth `m+1` equals `q³ σ_d` at depth `m` for every
/// topologically unipotent grid class in the domain of `σ_d`.
pub fn verify_homogeneity(q: u64, d_max: Depth, grid: &[RegSSClass]) -> InductionReport {
    let q3 = rat((q * q * q) as i64);
    let mut cases = Vec::new();
    for c in grid.iter().filter(|c| c.is_top_unipotent()) {
        let shifted = c.deeper().expect("unipotent classes shift");
        for d in d_max.up_to() {
            if !c.in_utop_domain(d) {
                continue;
            }
            let up = Depth::from_twice(d.twice() + 2);
            let lhs: BigRational = sigma(q, up, &shifted);
            let base: BigRational = sigma(q, d, c);
            let rhs = &q3 * &base;
            let ops = vec![format!("σ_{up}({shifted}) = {lhs}"), format!("σ_{d}({c}) = {base}")];
            cases.push(check(q, *c, d, rhs, lhs, ops));
        }
    }
    InductionReport { cases }
}

/// The shells excluded from `U^top_{d+}` where `σ_{d-1/2} + e_d` cancels:
/// unramified `m = d` for integral `d`, ramified `m = d` for half-integral `d`.
pub fn shell_classes(d: Depth) -> Option<RegSSClass> {
    use crate::classes::TorusType;
    if d == Depth::ZERO {
        return None;
    }
    let torus = if d.is_integral() { TorusType::Unramified } else { TorusType::Ramified };
    RegSSClass::top_unipotent(torus, d.as_half()).ok()
}
