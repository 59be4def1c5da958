//! Regular semisimple conjugacy classes of `SL(2, F)` as seen by the
//! projector formulas: torus type, which of `±1` the eigenvalue is close to,
//! the depth `m` of that closeness, and optional residue data.
//!
//! A class is written canonically as a short string, e.g. `split:+1:m=2`,
//! `ram:-1:m=3/2`, `unram:sr`, `split:sr:u=2`, `split:nc`. Residue data is
//! appended as `:u=V` (modulo `p`) or `:u=V:f=F` (modulo `p^F`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfield::check_odd_prime;
use crate::scalar::{Depth, HalfInt, QPow, Scalar};

/// The base field, described by its residue characteristic. Haar measure is
/// normalized by `meas(SL(2, R_F)) = 1` throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicConfig {
    p: u64,
}

impl PAdicConfig {
    pub fn new(p: u64) -> Result<Self> {
        Ok(PAdicConfig { p: check_odd_prime(p)? })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue field size. Only prime residue fields are supported.
    pub fn q(&self) -> u64 {
        self.p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TorusType {
    Split,
    Unramified,
    Ramified,
}

impl TorusType {
    pub const ALL: [TorusType; 3] = [TorusType::Split, TorusType::Unramified, TorusType::Ramified];

    pub fn is_elliptic(self) -> bool {
        self != TorusType::Split
    }

    fn tag(self) -> &'static str {
        match self {
            TorusType::Split => "split",
            TorusType::Unramified => "unram",
            TorusType::Ramified => "ram",
        }
    }
}

/// `Plus` when `y` is close to `1`, `Minus` when `-y` is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CentralSign {
    Plus,
    Minus,
}

impl CentralSign {
    pub fn as_i64(self) -> i64 {
        match self {
            CentralSign::Plus => 1,
            CentralSign::Minus => -1,
        }
    }
}

/// Residue of the eigenvalue `α` modulo `p^f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    pub value: u64,
    pub f: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Unipotent(CentralSign, HalfInt),
    StronglyRegular,
    NonCompact,
}

impl Kind {
    fn rank(self) -> (u8, HalfInt) {
        match self {
            Kind::Unipotent(CentralSign::Plus, m) => (0, m),
            Kind::Unipotent(CentralSign::Minus, m) => (1, m),
            Kind::StronglyRegular => (2, HalfInt::ZERO),
            Kind::NonCompact => (3, HalfInt::ZERO),
        }
    }
}

/// Outcome of the partition of compact elements into topologically
/// unipotent, `-1` times topologically unipotent, and strongly regular ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CompactPart {
    TopUnipotent,
    MinusTopUnipotent,
    StronglyRegular,
    NonCompact,
}

/// A regular semisimple class of `SL(2, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegSSClass {
    torus: TorusType,
    kind: Kind,
    residue: Option<Residue>,
}

impl RegSSClass {
    /// A class with `val(1 - sign·α) = m > 0`.
    pub fn unipotent(torus: TorusType, sign: CentralSign, m: HalfInt) -> Result<Self> {
        let ok = match torus {
            TorusType::Split | TorusType::Unramified => m.is_integral() && m >= 1,
            TorusType::Ramified => !m.is_integral() && m > 0,
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "{} class cannot have m = {m}",
                torus.tag()
            )));
        }
        Ok(RegSSClass { torus, kind: Kind::Unipotent(sign, m), residue: None })
    }

    pub fn top_unipotent(torus: TorusType, m: HalfInt) -> Result<Self> {
        Self::unipotent(torus, CentralSign::Plus, m)
    }

    /// Shorthand for tests and grids: split or unramified with integral `m`.
    pub fn int_m(torus: TorusType, sign: CentralSign, m: i64) -> Result<Self> {
        Self::unipotent(torus, sign, HalfInt::from_int(m))
    }

    /// Eigenvalues not congruent modulo the prime. Ramified tori have none.
    pub fn strongly_regular(torus: TorusType) -> Result<Self> {
        if torus == TorusType::Ramified {
            return Err(Error::InvalidInput(
                "a ramified norm-one eigenvalue is always ≡ ±1, so ramified classes are never strongly regular"
                    .into(),
            ));
        }
        Ok(RegSSClass { torus, kind: Kind::StronglyRegular, residue: None })
    }

    /// Split class whose eigenvalues are not units.
    pub fn non_compact() -> Self {
        RegSSClass { torus: TorusType::Split, kind: Kind::NonCompact, residue: None }
    }

    /// Attach the residue of `α` modulo `p^f`, checking it against the class.
    pub fn with_residue(mut self, p: u64, value: u64, f: u32) -> Result<Self> {
        self.residue = Some(Residue { value, f });
        self.validate(p)?;
        Ok(self)
    }

    /// Consistency of residue data with `p`.
    pub fn validate(&self, p: u64) -> Result<()> {
        check_odd_prime(p)?;
        let Some(r) = self.residue else { return Ok(()) };
        let bad = |why: &str| Err(Error::InvalidInput(format!("{self}: {why}")));
        if self.torus != TorusType::Split {
            return bad("residue data is only meaningful for split classes");
        }
        if r.f == 0 {
            return bad("residue modulus exponent must be at least 1");
        }
        let modulus = p
            .checked_pow(r.f)
            .ok_or_else(|| Error::InvalidInput(format!("p^{} overflows", r.f)))?;
        if r.value >= modulus {
            return bad("residue not reduced");
        }
        if r.value % p == 0 {
            return bad("residue is not a unit");
        }
        match self.kind {
            Kind::NonCompact => bad("non-compact classes carry no residue"),
            Kind::StronglyRegular => {
                let a = r.value % p;
                if a == 1 || a == p - 1 {
                    bad("residue is ≡ ±1, not strongly regular")
                } else {
                    Ok(())
                }
            }
            Kind::Unipotent(sign, m) => {
                let m = m.to_int().expect("split m is integral");
                let target = sign.as_i64().rem_euclid(modulus as i64) as u64;
                let diff = (r.value + modulus - target) % modulus;
                let v = if diff == 0 { r.f as i64 } else { p_val(diff, p) as i64 };
                let ok = if m < r.f as i64 { v == m } else { v == r.f as i64 };
                if ok {
                    Ok(())
                } else {
                    bad("residue is inconsistent with m")
                }
            }
        }
    }

    pub fn torus(&self) -> TorusType {
        self.torus
    }

    pub fn sign(&self) -> Option<CentralSign> {
        match self.kind {
            Kind::Unipotent(s, _) => Some(s),
            _ => None,
        }
    }

    /// `val(1 - sign·α)`; zero for strongly regular and non-compact classes.
    pub fn m(&self) -> HalfInt {
        match self.kind {
            Kind::Unipotent(_, m) => m,
            _ => HalfInt::ZERO,
        }
    }

    pub fn residue(&self) -> Option<Residue> {
        self.residue
    }

    pub fn is_compact(&self) -> bool {
        self.kind != Kind::NonCompact
    }

    pub fn is_strongly_regular(&self) -> bool {
        self.kind == Kind::StronglyRegular
    }

    pub fn compact_partition(&self) -> CompactPart {
        match self.kind {
            Kind::Unipotent(CentralSign::Plus, _) => CompactPart::TopUnipotent,
            Kind::Unipotent(CentralSign::Minus, _) => CompactPart::MinusTopUnipotent,
            Kind::StronglyRegular => CompactPart::StronglyRegular,
            Kind::NonCompact => CompactPart::NonCompact,
        }
    }

    pub fn is_top_unipotent(&self) -> bool {
        self.compact_partition() == CompactPart::TopUnipotent
    }

    /// `|α - α^{-1}|` as a power of `q`: `q^{-m}` near `±1`, `1` when
    /// strongly regular.
    pub fn norm_alpha_diff<S: Scalar>(&self) -> Result<QPow<S>> {
        match self.kind {
            Kind::NonCompact => Err(Error::InvalidInput(format!(
                "{self}: |α - α^-1| is only tabulated on compact classes"
            ))),
            _ => Ok(QPow::q_power(-self.m())),
        }
    }

    /// Membership in `U^top_{d+}`.
    pub fn in_utop_domain(&self, d: Depth) -> bool {
        let Kind::Unipotent(CentralSign::Plus, m) = self.kind else { return false };
        let d = d.as_half();
        match self.torus {
            TorusType::Split | TorusType::Unramified => m >= d.next_int_above(),
            TorusType::Ramified => m >= d.next_half_odd_above(),
        }
    }

    /// `α mod p^f`. Derived from the class when `α ≡ ±1 mod p^f` is forced,
    /// otherwise read from the residue data.
    pub fn alpha_residue(&self, p: u64, f: u32) -> Result<u64> {
        if self.torus != TorusType::Split || !self.is_compact() {
            return Err(Error::InvalidInput(format!("{self}: α is not a unit of F")));
        }
        let modulus = p.pow(f);
        if let Kind::Unipotent(sign, m) = self.kind {
            if m >= f as i64 {
                return Ok(sign.as_i64().rem_euclid(modulus as i64) as u64);
            }
        }
        match self.residue {
            Some(r) if r.f >= f => Ok(r.value % modulus),
            _ => Err(Error::MissingResidue { class: self.to_string(), needed: f }),
        }
    }

    /// Same class with residue data dropped.
    pub fn without_residue(&self) -> Self {
        RegSSClass { residue: None, ..*self }
    }

    /// Same class shifted one step deeper, `m ↦ m + 1`.
    pub fn deeper(&self) -> Option<Self> {
        match self.kind {
            Kind::Unipotent(s, m) => Some(RegSSClass {
                torus: self.torus,
                kind: Kind::Unipotent(s, m + HalfInt::ONE),
                residue: None,
            }),
            _ => None,
        }
    }

    fn sort_key(&self) -> (TorusType, (u8, HalfInt), Option<Residue>) {
        (self.torus, self.kind.rank(), self.residue)
    }
}

impl PartialOrd for RegSSClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RegSSClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

fn p_val(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

impl fmt::Display for RegSSClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.torus.tag())?;
        match self.kind {
            Kind::Unipotent(CentralSign::Plus, m) => write!(f, ":+1:m={m}")?,
            Kind::Unipotent(CentralSign::Minus, m) => write!(f, ":-1:m={m}")?,
            Kind::StronglyRegular => write!(f, ":sr")?,
            Kind::NonCompact => write!(f, ":nc")?,
        }
        if let Some(r) = self.residue {
            write!(f, ":u={}", r.value)?;
            if r.f > 1 {
                write!(f, ":f={}", r.f)?;
            }
        }
        Ok(())
    }
}

impl FromStr for RegSSClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("class {s:?}: {why}"));
        let mut parts = s.trim().split(':');
        let torus = match parts.next() {
            Some("split") => TorusType::Split,
            Some("unram") => TorusType::Unramified,
            Some("ram") => TorusType::Ramified,
            _ => return Err(bad("expected split, unram or ram")),
        };
        let mut class = match parts.next() {
            Some("sr") => RegSSClass::strongly_regular(torus)?,
            Some("nc") if torus == TorusType::Split => RegSSClass::non_compact(),
            Some(sign @ ("+1" | "-1")) => {
                let sign = if sign == "+1" { CentralSign::Plus } else { CentralSign::Minus };
                let m = parts
                    .next()
                    .and_then(|t| t.strip_prefix("m="))
                    .ok_or_else(|| bad("missing m="))?;
                RegSSClass::unipotent(torus, sign, m.parse()?)?
            }
            _ => return Err(bad("expected +1, -1, sr or nc")),
        };
        let mut value = None;
        let mut f = 1;
        for t in parts {
            if let Some(v) = t.strip_prefix("u=") {
                value = Some(v.parse::<u64>().map_err(|_| bad("bad u="))?);
            } else if let Some(v) = t.strip_prefix("f=") {
                f = v.parse::<u32>().map_err(|_| bad("bad f="))?;
            } else {
                return Err(bad("unexpected field"));
            }
        }
        if let Some(value) = value {
            class.residue = Some(Residue { value, f });
        }
        Ok(class)
    }
}

impl Serialize for RegSSClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RegSSClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Square class of `-det Y` for a regular `Y ∈ sl(2, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareClass {
    SquareUnit,
    NonsquareUnit,
    OddValuation,
}

/// Class of `exp(Y)` for regular topologically nilpotent `Y`, with
/// eigenvalues `±λ`, `val(λ) = val(det Y)/2`.
///
/// `exp` is only used where it converges on `g_m`, i.e. `m > 1/(p-1)`.
pub fn lie_class_of(p: u64, det_valuation: i64, square: SquareClass) -> Result<RegSSClass> {
    check_odd_prime(p)?;
    let m = HalfInt::from_twice(det_valuation);
    let odd = det_valuation % 2 != 0;
    if odd != (square == SquareClass::OddValuation) {
        return Err(Error::InvalidInput(format!(
            "square class {square:?} is incompatible with val(det) = {det_valuation}"
        )));
    }
    // val λ > 1/(p-1)  ⟺  2·val λ·(p-1) > 2
    if m.twice() * (p as i64 - 1) <= 2 {
        return Err(Error::Convergence(format!(
            "exp does not converge at depth {m} for p = {p}"
        )));
    }
    let torus = match square {
        SquareClass::SquareUnit => TorusType::Split,
        SquareClass::NonsquareUnit => TorusType::Unramified,
        SquareClass::OddValuation => TorusType::Ramified,
    };
    RegSSClass::top_unipotent(torus, m)
}

/// Classes used by the verification suites: both signs of every torus type
/// for `m` up to `d_max + 3` (`d_max + 5/2` for ramified), plus strongly
/// regular and non-compact sentinels. Sorted canonically.
pub fn class_grid(q: u64, d_max: Depth) -> Vec<RegSSClass> {
    let top = d_max.as_half() + HalfInt::from_int(3);
    let mut out = Vec::new();
    for sign in [CentralSign::Plus, CentralSign::Minus] {
        for torus in [TorusType::Split, TorusType::Unramified] {
            let mut m = HalfInt::ONE;
            while m <= top {
                out.push(RegSSClass::unipotent(torus, sign, m).expect("valid grid point"));
                m = m + HalfInt::ONE;
            }
        }
        let mut m = HalfInt::HALF;
        while m <= top - HalfInt::HALF {
            out.push(RegSSClass::unipotent(TorusType::Ramified, sign, m).expect("valid grid point"));
            m = m + HalfInt::ONE;
        }
    }
    out.push(RegSSClass::strongly_regular(TorusType::Unramified).expect("unramified sr"));
    if q >= 5 {
        // F_3^× = {±1} leaves no room for a split strongly regular class.
        out.push(
            RegSSClass::strongly_regular(TorusType::Split)
                .and_then(|c| c.with_residue(q, 2, 1))
                .expect("2 ≢ ±1 mod q"),
        );
    }
    out.push(RegSSClass::non_compact());
    out.sort();
    out
}
