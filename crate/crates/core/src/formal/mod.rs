//! Multivariate formal series over (1/N)Z exponents.
//!
//! Distributions such as the formal delta function are never materialised.
//! Everything is expressed through coefficient extraction against series that
//! are truncated from below, so every extracted coefficient is a finite sum.

mod binom;
mod delta;
mod subst;

pub use binom::{binom_expand, binom_int, binom_q, Sign};
pub use delta::{delta_coeff, DeltaKind, LowerTruncSeries};
pub use subst::{
    divergence_guard, naive_power, rescale, rescale_fractional, subst_power_x_dominant, subst_x0_dominant,
    subst_x_dominant, ZSeries,
};

use alloc::collections::BTreeMap;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use smallvec::SmallVec;

use crate::scalars::{CycScalar, Rational};

/// An exponent in (1/N)Z, kept in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FracExp {
    num: i64,
    den: i64,
}

impl FracExp {
    pub const ZERO: FracExp = FracExp { num: 0, den: 1 };
    pub const ONE: FracExp = FracExp { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero exponent denominator");
        let (mut n, mut d) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        FracExp { num: n, den: d }
    }

    pub const fn int(n: i64) -> Self {
        FracExp { num: n, den: 1 }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    /// `Some(n)` when the exponent is the integer n.
    pub fn as_int(self) -> Option<i64> {
        (self.den == 1).then_some(self.num)
    }

    /// Whether the exponent lies in (1/n)Z.
    pub fn fits_denominator(self, n: i64) -> bool {
        n % self.den == 0
    }

    pub fn floor(self) -> i64 {
        Integer::div_floor(&self.num, &self.den)
    }

    pub fn ceil(self) -> i64 {
        -Integer::div_floor(&-self.num, &self.den)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.num, self.den)
    }

    pub fn mul_int(self, k: i64) -> Self {
        FracExp::new(self.num * k, self.den)
    }

    pub fn div_int(self, k: i64) -> Self {
        FracExp::new(self.num, self.den * k)
    }
}

impl Add for FracExp {
    type Output = FracExp;
    fn add(self, o: FracExp) -> FracExp {
        if self.den == o.den {
            FracExp::new(self.num + o.num, self.den)
        } else {
            FracExp::new(self.num * o.den + o.num * self.den, self.den * o.den)
        }
    }
}

impl Sub for FracExp {
    type Output = FracExp;
    fn sub(self, o: FracExp) -> FracExp {
        self + (-o)
    }
}

impl Neg for FracExp {
    type Output = FracExp;
    fn neg(self) -> FracExp {
        FracExp {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for FracExp {
    type Output = FracExp;
    fn mul(self, o: FracExp) -> FracExp {
        FracExp::new(self.num * o.num, self.den * o.den)
    }
}

impl From<i64> for FracExp {
    fn from(n: i64) -> Self {
        FracExp::int(n)
    }
}

impl PartialOrd for FracExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FracExp {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num as i128 * o.den as i128).cmp(&(o.num as i128 * self.den as i128))
    }
}

impl fmt::Display for FracExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for FracExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The formal variables in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    X,
    X0,
    X1,
    X2,
    Z,
    Z0,
}

impl VarId {
    pub const ALL: [VarId; 6] = [VarId::X, VarId::X0, VarId::X1, VarId::X2, VarId::Z, VarId::Z0];

    pub fn name(self) -> &'static str {
        match self {
            VarId::X => "x",
            VarId::X0 => "x0",
            VarId::X1 => "x1",
            VarId::X2 => "x2",
            VarId::Z => "z",
            VarId::Z0 => "z0",
        }
    }

    pub fn from_name(s: &str) -> Option<VarId> {
        VarId::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Anything that can sit in a coefficient slot: scalars, Fock vectors.
pub trait Coeff: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn accumulate(&mut self, other: &Self);
    fn scale(&mut self, c: &CycScalar);

    fn scaled(&self, c: &CycScalar) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }
}

impl Coeff for CycScalar {
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn scale(&mut self, c: &CycScalar) {
        *self = &*self * c;
    }
}

pub type Monomial = SmallVec<[FracExp; 3]>;

/// A finitely supported map from exponent tuples to coefficients.
#[derive(Clone, PartialEq)]
pub struct LaurentVec<C> {
    vars: SmallVec<[VarId; 3]>,
    terms: BTreeMap<Monomial, C>,
}

/// Scalar-valued Laurent polynomial.
pub type ScalarSeries = LaurentVec<CycScalar>;

impl<C: Coeff> LaurentVec<C> {
    pub fn new(vars: &[VarId]) -> Self {
        LaurentVec {
            vars: vars.iter().copied().collect(),
            terms: BTreeMap::new(),
        }
    }

    /// A single term `c * prod vars^exps`.
    pub fn monomial(vars: &[VarId], exps: &[FracExp], c: C) -> Self {
        let mut out = Self::new(vars);
        out.add_term(exps, c);
        out
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn var_index(&self, v: VarId) -> Option<usize> {
        self.vars.iter().position(|&w| w == v)
    }

    /// Number of nonzero terms; emptiness is [`Self::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, C)> {
        self.terms.into_iter()
    }

    pub fn get(&self, exps: &[FracExp]) -> Option<&C> {
        self.terms.get(exps)
    }

    pub fn add_term(&mut self, exps: &[FracExp], c: C) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(exps) {
            Some(slot) => {
                slot.accumulate(&c);
                if slot.is_zero() {
                    self.terms.remove(exps);
                }
            }
            None => {
                self.terms.insert(exps.iter().copied().collect(), c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable lists differ");
        for (m, c) in other.terms.iter() {
            self.add_term(m, c.clone());
        }
    }

    pub fn scale(&mut self, c: &CycScalar) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            v.scale(c);
        }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(&[FracExp]) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }

    /// Drops terms whose exponent in variable slot `idx` exceeds `max`.
    pub fn truncate_above(&mut self, idx: usize, max: FracExp) {
        self.terms.retain(|m, _| m[idx] <= max);
    }

    /// Multiplies by a scalar series in the same variables.
    pub fn mul_scalar(&self, s: &ScalarSeries) -> Self {
        assert_eq!(self.vars, s.vars, "variable lists differ");
        let mut out = Self::new(&self.vars);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in s.terms.iter() {
                let m: Monomial = m1.iter().zip(m2.iter()).map(|(a, b)| *a + *b).collect();
                out.add_term(&m, c1.scaled(c2));
            }
        }
        out
    }

    /// Multiplies every term by `prod vars^shift`.
    pub fn shift(&self, shift: &[FracExp]) -> Self {
        let mut out = Self::new(&self.vars);
        for (m, c) in self.terms.iter() {
            let m: Monomial = m.iter().zip(shift.iter()).map(|(a, b)| *a + *b).collect();
            out.terms.insert(m, c.clone());
        }
        out
    }

    /// Lowest exponent appearing in slot `idx`.
    pub fn min_exponent(&self, idx: usize) -> Option<FracExp> {
        self.terms.keys().map(|m| m[idx]).min()
    }

    pub fn max_exponent(&self, idx: usize) -> Option<FracExp> {
        self.terms.keys().map(|m| m[idx]).max()
    }

    pub fn map<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> LaurentVec<D> {
        let mut out = LaurentVec::new(&self.vars);
        for (m, c) in self.terms.iter() {
            out.add_term(m, f(c));
        }
        out
    }
}

impl ScalarSeries {
    pub fn one(vars: &[VarId]) -> Self {
        let zeros: Monomial = vars.iter().map(|_| FracExp::ZERO).collect();
        Self::monomial(vars, &zeros, CycScalar::one())
    }

    pub fn mul(&self, other: &ScalarSeries) -> ScalarSeries {
        self.mul_scalar(other)
    }
}

impl<C: Coeff + fmt::Display> fmt::Display for LaurentVec<C> {
    /// `coef*x^(p/q)*x0^(r/s)` terms joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            write_monomial(f, &self.vars, m, true)?;
        }
        Ok(())
    }
}

/// Writes `x^(p/q)*x0^(r/s)`, omitting zero exponents. With `lead_star`, each
/// factor is preceded by `*`.
pub fn write_monomial(f: &mut dyn fmt::Write, vars: &[VarId], exps: &[FracExp], lead_star: bool) -> fmt::Result {
    let mut first = !lead_star;
    for (v, e) in vars.iter().zip(exps.iter()) {
        if *e == FracExp::ZERO {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if *e == FracExp::ONE {
            write!(f, "{v}")?;
        } else if e.is_integer() && e.num() > 0 {
            write!(f, "{v}^{e}")?;
        } else {
            write!(f, "{v}^({e})")?;
        }
    }
    Ok(())
}

impl<C: Coeff + fmt::Debug> fmt::Debug for LaurentVec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m.as_slice(), c)))
            .finish()
    }
}

/// Finite verification surface: exponent ranges per variable plus an optional
/// cap on the weight of the coefficient vectors being compared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: FracExp,
    pub hi: FracExp,
    pub overrides: SmallVec<[(VarId, FracExp, FracExp); 3]>,
    pub max_weight: Option<FracExp>,
}

impl Default for Window {
    fn default() -> Self {
        Window::uniform(-6, 6).with_max_weight(FracExp::int(6))
    }
}

impl Window {
    pub fn uniform(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty window");
        Window {
            lo: FracExp::int(lo),
            hi: FracExp::int(hi),
            overrides: SmallVec::new(),
            max_weight: None,
        }
    }

    pub fn with_max_weight(mut self, w: FracExp) -> Self {
        self.max_weight = Some(w);
        self
    }

    pub fn with_range(mut self, v: VarId, lo: FracExp, hi: FracExp) -> Self {
        assert!(lo <= hi, "empty window range");
        self.overrides.retain(|(w, _, _)| *w != v);
        self.overrides.push((v, lo, hi));
        self
    }

    pub fn range(&self, v: VarId) -> (FracExp, FracExp) {
        self.overrides
            .iter()
            .find(|(w, _, _)| *w == v)
            .map(|&(_, lo, hi)| (lo, hi))
            .unwrap_or((self.lo, self.hi))
    }

    pub fn contains(&self, v: VarId, e: FracExp) -> bool {
        let (lo, hi) = self.range(v);
        lo <= e && e <= hi
    }

    pub fn weight_ok(&self, w: FracExp) -> bool {
        w >= FracExp::ZERO && self.max_weight.is_none_or(|m| w <= m)
    }

    /// Exponents in (1/den)Z inside the range of `v`, ascending.
    pub fn points(&self, v: VarId, den: i64) -> impl Iterator<Item = FracExp> {
        let (lo, hi) = self.range(v);
        let a = lo.mul_int(den).ceil();
        let b = hi.mul_int(den).floor();
        (a..=b).map(move |k| FracExp::new(k, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec::Vec;

    #[test]
    fn fracexp_arith() {
        let a = FracExp::new(1, 2);
        let b = FracExp::new(2, 3);
        assert_eq!(a + b, FracExp::new(7, 6));
        assert_eq!(FracExp::new(4, -8), FracExp::new(-1, 2));
        assert!(FracExp::new(-1, 2) < FracExp::ZERO);
        assert_eq!(FracExp::new(-3, 2).floor(), -2);
        assert_eq!(FracExp::new(-3, 2).ceil(), -1);
    }

    #[test]
    fn window_points() {
        let w = Window::uniform(-1, 1);
        let pts: Vec<_> = w.points(VarId::X, 2).collect();
        assert_eq!(pts.len(), 5);
        assert_eq!(pts[0], FracExp::int(-1));
        assert_eq!(pts[1], FracExp::new(-1, 2));
    }

    #[test]
    fn laurent_drops_zeros() {
        let mut s = ScalarSeries::new(&[VarId::X]);
        s.add_term(&[FracExp::ONE], CycScalar::from_int(2));
        s.add_term(&[FracExp::ONE], CycScalar::from_int(-2));
        assert!(s.is_zero());
    }

    #[test]
    fn monomial_format() {
        let mut out = alloc::string::String::new();
        write_monomial(
            &mut out,
            &[VarId::X, VarId::X0],
            &[FracExp::new(-1, 2), FracExp::int(2)],
            false,
        )
        .unwrap();
        assert_eq!(out, "x^(-1/2)*x0^2");
        assert_eq!(format!("{}", FracExp::new(3, 4)), "3/4");
    }
}
