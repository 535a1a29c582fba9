//! Rank-one free boson: the vertex operator algebra `M(1)`, its order-two
//! automorphism `alpha -> -alpha`, and the twisted Fock module built on
//! half-odd-integer modes.
//!
//! Partition parts are stored in units of `1/den` where `den` is 1 on the
//! untwisted sector and 2 on the twisted one, so `a[-3/2]` is the part 3.

mod engine;
mod twisted;
mod untwisted;

pub use engine::FieldEngine;
pub use twisted::{delta_coefficients, TwistedFock};
pub use untwisted::{untwisted_mode, AdjointModule, Heisenberg};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use smallvec::SmallVec;

use crate::error::VoaError;
use crate::formal::{Coeff, FracExp};
use crate::scalars::{CycScalar, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    Untwisted,
    Twisted,
}

impl Sector {
    /// Mode denominator.
    pub fn den(self) -> i64 {
        match self {
            Sector::Untwisted => 1,
            Sector::Twisted => 2,
        }
    }

    /// Whether `units` is an admissible part.
    pub fn admits(self, units: i64) -> bool {
        units > 0 && (self == Sector::Untwisted || units % 2 == 1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Sector::Untwisted => "untwisted",
            Sector::Twisted => "twisted",
        }
    }
}

/// Parts in descending order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(SmallVec<[u16; 8]>);

impl Partition {
    pub fn empty() -> Self {
        Partition(SmallVec::new())
    }

    pub fn new(parts: &[u16]) -> Self {
        let mut v: SmallVec<[u16; 8]> = parts.iter().copied().collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        assert!(v.iter().all(|&p| p > 0), "zero part");
        Partition(v)
    }

    pub fn parts(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of parts, in units.
    pub fn units(&self) -> i64 {
        self.0.iter().map(|&p| p as i64).sum()
    }

    pub fn multiplicity(&self, part: u16) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    pub fn with_part(&self, part: u16) -> Self {
        let mut v = self.0.clone();
        let pos = v.iter().position(|&p| p < part).unwrap_or(v.len());
        v.insert(pos, part);
        Partition(v)
    }

    pub fn without_part(&self, part: u16) -> Option<Self> {
        let pos = self.0.iter().position(|&p| p == part)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    /// Splits off the largest part.
    pub fn split_first(&self) -> Option<(u16, Partition)> {
        let (&first, rest) = self.0.split_first()?;
        Some((first, Partition(rest.iter().copied().collect())))
    }

    /// Distinct parts, descending.
    pub fn distinct(&self) -> impl Iterator<Item = u16> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(i, p)| *i == 0 || self.0[i - 1] != **p)
            .map(|(_, &p)| p)
    }

    /// All partitions of `units` whose parts are admissible in `sector`.
    pub fn all(units: i64, sector: Sector) -> Vec<Partition> {
        fn rec(rem: i64, max: i64, sector: Sector, cur: &mut SmallVec<[u16; 8]>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                if sector.admits(p) {
                    cur.push(p as u16);
                    rec(rem - p, p, sector, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        if units >= 0 {
            rec(units, units, sector, &mut SmallVec::new(), &mut out);
        }
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A finite combination of partition monomials applied to the vacuum of a
/// sector. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PbwVector {
    sector: Sector,
    terms: BTreeMap<Partition, CycScalar>,
}

impl PbwVector {
    pub fn zero(sector: Sector) -> Self {
        PbwVector {
            sector,
            terms: BTreeMap::new(),
        }
    }

    pub fn vacuum() -> Self {
        Self::basis(Sector::Untwisted, Partition::empty())
    }

    pub fn twisted_vacuum() -> Self {
        Self::basis(Sector::Twisted, Partition::empty())
    }

    pub fn basis(sector: Sector, p: Partition) -> Self {
        let mut v = Self::zero(sector);
        v.terms.insert(p, CycScalar::one());
        v
    }

    /// `a[-p1/den]...a[-pk/den]` applied to the sector vacuum.
    pub fn monomial(sector: Sector, parts: &[u16]) -> Self {
        assert!(parts.iter().all(|&p| sector.admits(p as i64)), "inadmissible part");
        Self::basis(sector, Partition::new(parts))
    }

    /// The conformal vector `(1/2) a[-1]^2 |0>`.
    pub fn conformal() -> Self {
        let mut v = Self::monomial(Sector::Untwisted, &[1, 1]);
        v.scale(&CycScalar::new_rational(1, 2));
        v
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &CycScalar)> {
        self.terms.iter()
    }

    /// Number of nonzero terms; emptiness is [`Self::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> Option<&CycScalar> {
        self.terms.get(p)
    }

    pub fn add_term(&mut self, p: Partition, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(slot) => {
                *slot = &*slot + &c;
                if slot.is_zero() {
                    self.terms.remove(&p);
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &PbwVector, c: &CycScalar) {
        debug_assert_eq!(self.sector, other.sector);
        if c.is_zero() {
            return;
        }
        for (p, d) in other.terms.iter() {
            self.add_term(p.clone(), d * c);
        }
    }

    pub fn sub(&self, other: &PbwVector) -> PbwVector {
        let mut out = self.clone();
        out.add_scaled(other, &CycScalar::from_int(-1));
        out
    }

    /// Weight of a basis monomial: the sum of its modes' magnitudes.
    pub fn part_weight(&self, p: &Partition) -> FracExp {
        FracExp::new(p.units(), self.sector.den())
    }

    /// The common weight of all terms (depth above the vacuum on the
    /// twisted sector); `None` for zero or inhomogeneous vectors.
    pub fn weight(&self) -> Option<FracExp> {
        let mut it = self.terms.keys().map(|p| self.part_weight(p));
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    pub fn max_weight(&self) -> Option<FracExp> {
        self.terms.keys().map(|p| self.part_weight(p)).max()
    }

    /// Homogeneous components keyed by weight.
    pub fn components(&self) -> BTreeMap<FracExp, PbwVector> {
        let mut out: BTreeMap<FracExp, PbwVector> = BTreeMap::new();
        for (p, c) in self.terms.iter() {
            out.entry(self.part_weight(p))
                .or_insert_with(|| PbwVector::zero(self.sector))
                .add_term(p.clone(), c.clone());
        }
        out
    }

    /// Applies `f` to every basis monomial and sums with the coefficients.
    pub fn linear_map(&self, sector: Sector, mut f: impl FnMut(&Partition) -> PbwVector) -> PbwVector {
        let mut out = PbwVector::zero(sector);
        for (p, c) in self.terms.iter() {
            out.add_scaled(&f(p), c);
        }
        out
    }

    fn map_keys(&self, mut f: impl FnMut(&Partition) -> Partition) -> PbwVector {
        let mut out = PbwVector::zero(self.sector);
        for (p, c) in self.terms.iter() {
            out.add_term(f(p), c.clone());
        }
        out
    }
}

impl Coeff for PbwVector {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn accumulate(&mut self, other: &Self) {
        self.add_scaled(other, &CycScalar::one());
    }
    fn scale(&mut self, c: &CycScalar) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v = &*v * c;
        }
    }
}

fn write_mode(f: &mut fmt::Formatter<'_>, units: u16, den: i64) -> fmt::Result {
    if den == 1 {
        write!(f, "a[-{units}]")
    } else {
        write!(f, "a[-{}]", FracExp::new(units as i64, den))
    }
}

/// Writes a basis monomial such as `a[-2]a[-1]|0>` or `a[-1/2]|t>`.
pub fn write_basis(f: &mut fmt::Formatter<'_>, sector: Sector, p: &Partition) -> fmt::Result {
    for &part in p.parts() {
        write_mode(f, part, sector.den())?;
    }
    f.write_str(match sector {
        Sector::Untwisted => "|0>",
        Sector::Twisted => "|t>",
    })
}

impl fmt::Display for PbwVector {
    /// Terms `c * a[-n]...|0>` joined by ` + `, or ` - ` before a negative
    /// rational coefficient; unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.as_rational() {
                Some(q) if q.is_negative() => (true, CycScalar::from(-q.clone())),
                _ => (false, c.clone()),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                if mag.as_rational().is_some() {
                    write!(f, "{mag} * ")?;
                } else {
                    write!(f, "({mag}) * ")?;
                }
            }
            write_basis(f, self.sector, p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PbwVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_mode(m: FracExp, sector: Sector) -> Result<(), VoaError> {
    let ok = match sector {
        Sector::Untwisted => m.is_integer(),
        Sector::Twisted => m.den() == 2,
    };
    if ok {
        Ok(())
    } else {
        Err(VoaError::SectorMismatch {
            expected: match sector {
                Sector::Untwisted => "integer-mode",
                Sector::Twisted => "half-integer-mode",
            },
        })
    }
}

/// `alpha(m) s` with `[alpha(m), alpha(n)] = m delta_{m+n,0}` and
/// `alpha(0) = 0` on the untwisted sector.
pub fn alpha_mode(m: FracExp, s: &PbwVector) -> Result<PbwVector, VoaError> {
    check_mode(m, s.sector)?;
    Ok(alpha_unchecked(m, s))
}

pub(crate) fn alpha_unchecked(m: FracExp, s: &PbwVector) -> PbwVector {
    let den = s.sector.den();
    let units = m.mul_int(den).as_int().expect("mode off the sector lattice");
    if units < 0 {
        let part = (-units) as u16;
        return s.map_keys(|p| p.with_part(part));
    }
    let mut out = PbwVector::zero(s.sector);
    if units == 0 {
        return out;
    }
    let part = units as u16;
    let mq = m.to_rational();
    for (p, c) in s.terms.iter() {
        let k = p.multiplicity(part);
        if k > 0 {
            let f = &mq * &Rational::from_int(k as i64);
            out.add_term(p.without_part(part).unwrap(), c * &CycScalar::from(f));
        }
    }
    out
}

/// `sigma`: multiplies a monomial of length `l` by `(-1)^l`.
pub fn sigma_apply(s: &PbwVector) -> Result<PbwVector, VoaError> {
    if s.sector != Sector::Untwisted {
        return Err(VoaError::SectorMismatch { expected: "untwisted" });
    }
    let mut out = PbwVector::zero(Sector::Untwisted);
    for (p, c) in s.terms.iter() {
        let c = if p.len() % 2 == 1 { -c } else { c.clone() };
        out.add_term(p.clone(), c);
    }
    Ok(out)
}

/// The `sigma`-eigenspace projection onto `V^j`, `j` in {0, 1}.
pub fn sigma_project(s: &PbwVector, j: u32) -> PbwVector {
    let mut out = PbwVector::zero(s.sector);
    for (p, c) in s.terms.iter() {
        if p.len() % 2 == j as usize % 2 {
            out.add_term(p.clone(), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn q(n: i64, d: i64) -> FracExp {
        FracExp::new(n, d)
    }

    #[test]
    fn alpha_examples() {
        let a1 = PbwVector::monomial(Sector::Untwisted, &[1]);
        assert_eq!(alpha_mode(FracExp::int(1), &a1).unwrap(), PbwVector::vacuum());
        assert!(alpha_mode(FracExp::ZERO, &PbwVector::vacuum()).unwrap().is_zero());
        let t = PbwVector::monomial(Sector::Twisted, &[1, 1]);
        assert_eq!(
            alpha_mode(q(1, 2), &t).unwrap(),
            PbwVector::monomial(Sector::Twisted, &[1])
        );
        assert!(alpha_mode(q(1, 2), &a1).is_err());
        assert!(alpha_mode(FracExp::int(1), &t).is_err());
    }

    #[test]
    fn sigma_examples() {
        let a1 = PbwVector::monomial(Sector::Untwisted, &[1]);
        assert_eq!(sigma_apply(&a1).unwrap(), a1.sub(&a1).sub(&a1));
        let w = PbwVector::conformal();
        assert_eq!(sigma_apply(&w).unwrap(), w);
        assert_eq!(sigma_apply(&PbwVector::vacuum()).unwrap(), PbwVector::vacuum());
        assert!(sigma_apply(&PbwVector::twisted_vacuum()).is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|n| Partition::all(n, Sector::Untwisted).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15]);
        // partitions of 2d into odd parts, d = 0, 1/2, ..., 2
        let odd: Vec<usize> = (0..=4).map(|n| Partition::all(n, Sector::Twisted).len()).collect();
        assert_eq!(odd, [1, 1, 1, 2, 2]);
    }

    #[test]
    fn display() {
        let mut v = PbwVector::monomial(Sector::Untwisted, &[1, 2]);
        v.add_term(Partition::empty(), CycScalar::new_rational(-1, 3));
        assert_eq!(format!("{v}"), "-1/3 * |0> + a[-2]a[-1]|0>");
        let t = PbwVector::monomial(Sector::Twisted, &[1, 3]);
        assert_eq!(format!("{t}"), "a[-3/2]a[-1/2]|t>");
        assert_eq!(format!("{}", PbwVector::conformal()), "1/2 * a[-1]a[-1]|0>");
    }
}
