//! `SL(2, F_q)` and `sl(2, F_q)` by brute force, for odd primes `q`.
//!
//! Everything here is finite and enumerated outright: conjugacy classes,
//! adjoint orbits of elliptic elements, the cuspidal part of the character
//! table, and the additive character sums attached to elliptic cosets.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qfield::{check_odd_prime, inv_mod, legendre, smallest_nonsquare, CyclotomicSum, FqElem};

pub const CONJUGACY_CAP: u64 = 13;
pub const ELLIPTIC_CAP: u64 = 19;

/// A 2×2 matrix over `F_p`, entries stored reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2q {
    p: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl Mat2q {
    pub fn new(p: u64, a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| x.rem_euclid(p as i64) as u64;
        Mat2q { p, a: r(a), b: r(b), c: r(c), d: r(d) }
    }

    pub fn identity(p: u64) -> Self {
        Mat2q::new(p, 1, 0, 0, 1)
    }

    /// Trace-zero matrix `[[a, b], [c, -a]]`.
    pub fn lie(p: u64, a: i64, b: i64, c: i64) -> Self {
        Mat2q::new(p, a, b, c, -a)
    }

    pub fn entries(&self) -> [FqElem; 4] {
        let f = |x: u64| FqElem::new(x as i64, self.p);
        [f(self.a), f(self.b), f(self.c), f(self.d)]
    }

    pub fn raw(&self) -> (u64, u64, u64, u64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn det(&self) -> u64 {
        let p = self.p;
        (self.a * self.d % p + p - self.b * self.c % p) % p
    }

    pub fn trace(&self) -> u64 {
        (self.a + self.d) % self.p
    }

    pub fn mul(&self, o: &Mat2q) -> Mat2q {
        let p = self.p;
        Mat2q {
            p,
            a: (self.a * o.a + self.b * o.c) % p,
            b: (self.a * o.b + self.b * o.d) % p,
            c: (self.c * o.a + self.d * o.c) % p,
            d: (self.c * o.b + self.d * o.d) % p,
        }
    }

    pub fn neg(&self) -> Mat2q {
        let p = self.p;
        Mat2q { p, a: (p - self.a) % p, b: (p - self.b) % p, c: (p - self.c) % p, d: (p - self.d) % p }
    }

    pub fn inverse(&self) -> Option<Mat2q> {
        let p = self.p;
        let di = inv_mod(self.det(), p)?;
        Some(Mat2q {
            p,
            a: self.d * di % p,
            b: (p - self.b) % p * di % p,
            c: (p - self.c) % p * di % p,
            d: self.a * di % p,
        })
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Mat2q) -> Mat2q {
        g.mul(self).mul(&g.inverse().expect("conjugating matrix is invertible"))
    }

    pub fn pow(&self, mut n: u64) -> Mat2q {
        let mut acc = Mat2q::identity(self.p);
        let mut base = *self;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Multiplicative order in `GL(2, F_p)`.
    pub fn order(&self) -> u64 {
        let id = Mat2q::identity(self.p);
        let mut x = *self;
        let mut n = 1;
        while x != id {
            x = x.mul(self);
            n += 1;
        }
        n
    }
}

/// All of `SL(2, F_p)`, in lexicographic order of `(a, b, c, d)`.
pub fn enumerate_sl2(p: u64) -> Vec<Mat2q> {
    let mut out = Vec::with_capacity((p * (p * p - 1)) as usize);
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = Mat2q { p, a, b, c, d };
                    if m.det() == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LieType {
    Zero,
    Nilpotent,
    SplitRegular,
    Elliptic,
}

/// Type of a trace-zero matrix, read off from the square class of `-det`.
pub fn classify_lie(x: &Mat2q) -> Result<LieType> {
    if x.trace() != 0 {
        return Err(Error::InvalidInput(format!("{x:?} is not trace-zero")));
    }
    let p = x.p;
    let minus_det = ((p - x.det()) % p) as i64;
    Ok(match (x.raw() == (0, 0, 0, 0), legendre(minus_det, p)) {
        (true, _) => LieType::Zero,
        (false, 0) => LieType::Nilpotent,
        (false, 1) => LieType::SplitRegular,
        _ => LieType::Elliptic,
    })
}

/// Every elliptic element of `sl(2, F_q)`.
pub fn enumerate_elliptic(q: u64) -> Result<Vec<Mat2q>> {
    check_odd_prime(q)?;
    if q > ELLIPTIC_CAP {
        return Err(Error::QAboveBudget { q, cap: ELLIPTIC_CAP });
    }
    let mut out = Vec::new();
    for a in 0..q as i64 {
        for b in 0..q as i64 {
            for c in 0..q as i64 {
                let x = Mat2q::lie(q, a, b, c);
                if classify_lie(&x)? == LieType::Elliptic {
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

/// Partition of the elliptic set into `Ad(SL(2, F_q))`-orbits, each sorted,
/// orbits ordered by their least element.
pub fn elliptic_orbits(q: u64) -> Result<Vec<Vec<Mat2q>>> {
    if q > CONJUGACY_CAP {
        return Err(Error::QAboveBudget { q, cap: CONJUGACY_CAP });
    }
    let elliptic = enumerate_elliptic(q)?;
    let group = enumerate_sl2(q);
    Ok(orbits_of(&elliptic, &group))
}

fn orbits_of(set: &[Mat2q], group: &[Mat2q]) -> Vec<Vec<Mat2q>> {
    let mut seen: HashSet<Mat2q> = HashSet::new();
    let mut orbits = Vec::new();
    for x in set {
        if seen.contains(x) {
            continue;
        }
        let mut orbit: Vec<Mat2q> = group
            .iter()
            .map(|g| x.conjugate_by(g))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        orbit.sort();
        seen.extend(orbit.iter().copied());
        orbits.push(orbit);
    }
    orbits.sort();
    orbits
}

/// `{ Ad([[a, b], [0, 1]]) [[0, 1], [u, 0]] : u non-square, a ≠ 0 }`.
pub fn parametrized_elliptic(q: u64) -> Result<HashSet<Mat2q>> {
    check_odd_prime(q)?;
    let mut out = HashSet::new();
    for u in 1..q as i64 {
        if legendre(u, q) != -1 {
            continue;
        }
        let rep = Mat2q::lie(q, 0, 1, u);
        for a in 1..q as i64 {
            for b in 0..q as i64 {
                out.insert(rep.conjugate_by(&Mat2q::new(q, a, b, 0, 1)));
            }
        }
    }
    Ok(out)
}

/// `Σ_{e elliptic} ψ(trace(z e))` with `ψ(x) = ζ_q^x`.
pub fn elliptic_psi_sum(z: &Mat2q) -> Result<CyclotomicSum> {
    if classify_lie(z)? != LieType::Elliptic {
        return Err(Error::InvalidInput(format!("{z:?} is not elliptic")));
    }
    let q = z.p;
    let mut counts = vec![0i64; q as usize];
    for e in enumerate_elliptic(q)? {
        counts[z.mul(&e).trace() as usize] += 1;
    }
    Ok(CyclotomicSum::from_counts(q as usize, &counts, BigRational::one()))
}

/// Class labels used by the cuspidal character table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassLabel {
    Id,
    MinusId,
    /// `β^k` for the chosen generator `β` of the order-`(q+1)` torus.
    BetaPower(u64),
    U1,
    UEps,
    MinusU1,
    MinusUEps,
    /// `diag(t, t⁻¹)`.
    Split(u64),
    Other,
}

/// `χ_i` at a labelled class, exactly, as a sum of `(q+1)`-th roots of unity.
pub fn cuspidal_char(i: u64, label: &ClassLabel, q: u64) -> Result<CyclotomicSum> {
    check_odd_prime(q)?;
    if i == 0 || i > q {
        return Err(Error::InvalidInput(format!("cuspidal index {i} outside 1..={q}")));
    }
    let n = (q + 1) as usize;
    let sign = |e: u64| if e % 2 == 0 { 1i64 } else { -1 };
    let int = |v: i64| CyclotomicSum::constant(n, BigRational::from_integer(BigInt::from(v)));
    Ok(match label {
        ClassLabel::Id => int(q as i64 - 1),
        ClassLabel::MinusId => int(sign(i) * (q as i64 - 1)),
        ClassLabel::BetaPower(k) => {
            let e = (i * k) as i64;
            -(CyclotomicSum::root(n, e) + CyclotomicSum::root(n, -e))
        }
        ClassLabel::U1 | ClassLabel::UEps => int(-1),
        ClassLabel::MinusU1 | ClassLabel::MinusUEps => int(sign(i + 1)),
        ClassLabel::Split(_) | ClassLabel::Other => CyclotomicSum::zero(n),
    })
}

/// Data fixing the labels of the cuspidal character table.
#[derive(Clone, Debug)]
pub struct CuspidalTable {
    pub q: u64,
    pub beta: Mat2q,
    pub epsilon: u64,
}

impl CuspidalTable {
    /// `β` is the first element of `SL(2, F_q)` (lexicographic order) with
    /// order `q+1` and irreducible characteristic polynomial.
    pub fn new(q: u64) -> Result<Self> {
        check_odd_prime(q)?;
        let beta = enumerate_sl2(q)
            .into_iter()
            .find(|m| {
                let t = m.trace() as i64;
                legendre(t * t - 4, q) == -1 && m.order() == q + 1
            })
            .expect("SL(2, F_q) contains an elliptic element of order q+1");
        Ok(CuspidalTable { q, beta, epsilon: smallest_nonsquare(q) })
    }

    pub fn zeta_order(&self) -> u64 {
        self.q + 1
    }

    pub fn value(&self, i: u64, label: &ClassLabel) -> Result<CyclotomicSum> {
        cuspidal_char(i, label, self.q)
    }

    /// Representatives of every labelled class, in table order.
    pub fn labelled_representatives(&self) -> Vec<(ClassLabel, Mat2q)> {
        let q = self.q;
        let e = self.epsilon as i64;
        let mut reps = vec![
            (ClassLabel::Id, Mat2q::identity(q)),
            (ClassLabel::MinusId, Mat2q::identity(q).neg()),
            (ClassLabel::U1, Mat2q::new(q, 1, 1, 0, 1)),
            (ClassLabel::UEps, Mat2q::new(q, 1, e, 0, 1)),
            (ClassLabel::MinusU1, Mat2q::new(q, 1, 1, 0, 1).neg()),
            (ClassLabel::MinusUEps, Mat2q::new(q, 1, e, 0, 1).neg()),
        ];
        for k in 1..=q {
            if k != (q + 1) / 2 {
                reps.push((ClassLabel::BetaPower(k), self.beta.pow(k)));
            }
        }
        for t in 2..q - 1 {
            let ti = inv_mod(t, q).expect("nonzero");
            reps.push((ClassLabel::Split(t), Mat2q::new(q, t as i64, 0, 0, ti as i64)));
        }
        reps
    }
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: Mat2q,
    pub size: u64,
    pub label: ClassLabel,
}

/// Brute-force conjugacy classes of `SL(2, F_q)`, labelled for the cuspidal
/// table. Refuses `q` above [`CONJUGACY_CAP`].
pub fn conjugacy_classes(q: u64) -> Result<Vec<ConjClass>> {
    check_odd_prime(q)?;
    if q > CONJUGACY_CAP {
        return Err(Error::QAboveBudget { q, cap: CONJUGACY_CAP });
    }
    let group = enumerate_sl2(q);
    let table = CuspidalTable::new(q)?;
    let orbits = orbits_of(&group, &group);
    let mut index: HashMap<Mat2q, usize> = HashMap::new();
    for (k, orbit) in orbits.iter().enumerate() {
        for x in orbit {
            index.insert(*x, k);
        }
    }
    let mut labels: Vec<Option<ClassLabel>> = vec![None; orbits.len()];
    for (label, rep) in table.labelled_representatives() {
        let k = index[&rep];
        if labels[k].is_none() {
            labels[k] = Some(label);
        }
    }
    Ok(orbits
        .into_iter()
        .zip(labels)
        .map(|(orbit, label)| ConjClass {
            representative: orbit[0],
            size: orbit.len() as u64,
            label: label.unwrap_or(ClassLabel::Other),
        })
        .collect())
}

/// `⟨χ_i, χ_j⟩ = |G|⁻¹ Σ_C |C| χ_i(C) conj(χ_j(C))`, exactly.
pub fn char_inner_product_on(classes: &[ConjClass], i: u64, j: u64, q: u64) -> Result<BigRational> {
    let order: u64 = classes.iter().map(|c| c.size).sum();
    let mut total = CyclotomicSum::zero((q + 1) as usize);
    for class in classes {
        let xi = cuspidal_char(i, &class.label, q)?;
        let xj = cuspidal_char(j, &class.label, q)?;
        total = total + (&xi * &xj.conj()).scaled(&BigRational::from_integer(class.size.into()));
    }
    let total = total.scaled(&BigRational::new(BigInt::one(), BigInt::from(order)));
    total.to_rational().ok_or_else(|| Error::NotRational(format!("<χ_{i}, χ_{j}> for q = {q}: {total}")))
}

pub fn char_inner_product(i: u64, j: u64, q: u64) -> Result<BigRational> {
    let classes = conjugacy_classes(q)?;
    char_inner_product_on(&classes, i, j, q)
}

/// `Σ_{a, b ∈ F_q^×} ψ(u a) ψ(v b)`.
pub fn unit_pair_psi_sum(q: u64, u: i64, v: i64) -> Result<CyclotomicSum> {
    check_odd_prime(q)?;
    if u.rem_euclid(q as i64) == 0 || v.rem_euclid(q as i64) == 0 {
        return Err(Error::InvalidInput(format!("u = {u}, v = {v} must be units mod {q}")));
    }
    let mut counts = vec![0i64; q as usize];
    for a in 1..q as i64 {
        for b in 1..q as i64 {
            counts[(u * a + v * b).rem_euclid(q as i64) as usize] += 1;
        }
    }
    Ok(CyclotomicSum::from_counts(q as usize, &counts, BigRational::one()))
}

/// `true` when the two matrices lie in the same `Ad(SL(2, F_q))`-orbit.
pub fn same_orbit(x: &Mat2q, y: &Mat2q) -> bool {
    enumerate_sl2(x.p).iter().any(|g| x.conjugate_by(g) == *y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn classify_examples() {
        assert_eq!(classify_lie(&Mat2q::lie(3, 0, 1, -1)).unwrap(), LieType::Elliptic);
        assert_eq!(classify_lie(&Mat2q::lie(3, 0, 1, 1)).unwrap(), LieType::SplitRegular);
        assert_eq!(classify_lie(&Mat2q::lie(3, 0, 0, 0)).unwrap(), LieType::Zero);
        assert_eq!(classify_lie(&Mat2q::lie(5, 0, 1, 0)).unwrap(), LieType::Nilpotent);
        assert!(classify_lie(&Mat2q::new(3, 1, 0, 0, 1)).is_err());
    }

    #[test]
    fn elliptic_counts() {
        for (q, total) in [(3u64, 6usize), (5, 40), (7, 126)] {
            assert_eq!(enumerate_elliptic(q).unwrap().len(), total);
        }
        assert_eq!(enumerate_elliptic(19).unwrap().len(), 9 * 18 * 19);
        assert!(matches!(enumerate_elliptic(23), Err(Error::QAboveBudget { .. })));
    }

    #[test]
    fn elliptic_orbit_structure() {
        for (q, orbits, size) in [(3u64, 1usize, 6usize), (5, 2, 20), (7, 3, 42)] {
            let o = elliptic_orbits(q).unwrap();
            assert_eq!(o.len(), orbits, "q = {q}");
            assert!(o.iter().all(|x| x.len() == size));
        }
    }

    #[test]
    fn parametrization_matches_enumeration() {
        for q in [3u64, 5, 7] {
            let all: HashSet<Mat2q> = enumerate_elliptic(q).unwrap().into_iter().collect();
            assert_eq!(parametrized_elliptic(q).unwrap(), all, "q = {q}");
        }
    }

    #[test]
    fn gauss_lemma_small() {
        assert!(elliptic_psi_sum(&Mat2q::lie(3, 0, 1, 2)).unwrap().equals_integer(3));
        for z in enumerate_elliptic(7).unwrap() {
            assert!(elliptic_psi_sum(&z).unwrap().equals_integer(7));
        }
        assert!(elliptic_psi_sum(&Mat2q::lie(3, 0, 1, 1)).is_err());
    }

    #[test]
    fn gauss_lemma_independent_of_z() {
        for q in [3u64, 5, 7] {
            let values: Vec<CyclotomicSum> =
                enumerate_elliptic(q).unwrap().iter().map(|z| elliptic_psi_sum(z).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]));
        }
    }

    #[test]
    fn table_values() {
        assert!(cuspidal_char(2, &ClassLabel::MinusId, 5).unwrap().equals_integer(4));
        assert!(cuspidal_char(1, &ClassLabel::U1, 7).unwrap().equals_integer(-1));
        assert!(cuspidal_char(1, &ClassLabel::BetaPower(1), 3).unwrap().equals_integer(0));
        assert!(cuspidal_char(0, &ClassLabel::Id, 5).is_err());
        assert!(cuspidal_char(6, &ClassLabel::Id, 5).is_err());
    }

    #[test]
    fn beta_generates_torus() {
        for q in [3u64, 5, 7, 11, 13] {
            let t = CuspidalTable::new(q).unwrap();
            assert_eq!(t.beta.order(), q + 1);
            assert_eq!(t.beta.det(), 1);
        }
    }

    #[test]
    fn class_partition() {
        let c3 = conjugacy_classes(3).unwrap();
        assert_eq!(c3.len(), 7);
        assert_eq!(c3.iter().map(|c| c.size).sum::<u64>(), 24);
        for q in [5u64, 7, 11, 13] {
            let c = conjugacy_classes(q).unwrap();
            assert_eq!(c.iter().map(|c| c.size).sum::<u64>(), q * (q - 1) * (q + 1));
            assert_eq!(c.len() as u64, q + 4);
            assert!(c.iter().all(|c| c.label != ClassLabel::Other));
        }
        assert!(matches!(conjugacy_classes(17), Err(Error::QAboveBudget { .. })));
    }

    #[test]
    fn chi_symmetry() {
        for q in [3u64, 5, 7, 11, 13] {
            let t = CuspidalTable::new(q).unwrap();
            for (label, _) in t.labelled_representatives() {
                for i in 1..=q {
                    assert_eq!(t.value(i, &label).unwrap(), t.value(q + 1 - i, &label).unwrap());
                }
            }
        }
    }

    #[test]
    fn inner_products_q5() {
        assert_eq!(char_inner_product(1, 1, 5).unwrap(), rat(1));
        assert_eq!(char_inner_product(3, 3, 5).unwrap(), rat(2));
        assert_eq!(char_inner_product(1, 2, 5).unwrap(), rat(0));
        assert_eq!(char_inner_product(1, 5, 5).unwrap(), rat(1));
    }

    #[test]
    fn ramified_lemma() {
        for q in [3u64, 5, 7, 11, 13] {
            for u in 1..q as i64 {
                for v in 1..q as i64 {
                    assert!(unit_pair_psi_sum(q, u, v).unwrap().equals_integer(1));
                }
            }
        }
    }
}
