//! Exact scalars: rationals with a machine-word fast path, and elements of the
//! cyclotomic field Q(w_N) stored as residues modulo the N-th cyclotomic
//! polynomial.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::ScalarError;

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64, i64),
    Big(BigInt, BigInt),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (mut n, mut d) = (num, den);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if !g.is_one() {
            n /= &g;
            d /= &g;
        }
        match (n.to_i64(), d.to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(n, d)),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(n, _) => n.clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(_, d) => d.clone(),
        }
    }

    /// Numerator and denominator when both fit in an `i64`.
    pub fn to_small(&self) -> Option<(i64, i64)> {
        match self.0 {
            Repr::Small(n, d) => Some((n, d)),
            Repr::Big(..) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(_, d) => d.is_one(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(n, _) => n.is_negative(),
        }
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Repr::Big(n, d) => Self::from_bigints(d.clone(), n.clone()),
        })
    }

    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            return self.recip().expect("negative power of zero").pow(-exp);
        }
        let mut base = self.clone();
        let mut acc = Rational::one();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        (self.numer(), self.denom())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    Rational::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                        (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                            Some(s) => Rational::from_i128(s, z),
                            None => big_add(self, rhs),
                        },
                        _ => big_add(self, rhs),
                    }
                }
            }
            _ => big_add(self, rhs),
        }
    }
}

fn big_add(a: &Rational, b: &Rational) -> Rational {
    let (an, ad) = a.big_parts();
    let (bn, bd) = b.big_parts();
    Rational::from_bigints(an * &bd + bn * &ad, ad * bd)
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &'a Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                let (an, ad) = self.big_parts();
                let (bn, bd) = rhs.big_parts();
                Rational::from_bigints(an * bn, ad * bd)
            }
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Rational::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(n, d) => Rational::from_bigints(-n.clone(), d.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &'a Rational) -> Rational {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Rational) -> Rational {
        self * &rhs.recip().expect("rational division by zero")
    }
}

macro_rules! owned_binops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Div for $t {
            type Output = $t;
            fn div(self, rhs: $t) -> $t {
                &self / &rhs
            }
        }
        impl AddAssign<&$t> for $t {
            fn add_assign(&mut self, rhs: &$t) {
                *self = &*self + rhs;
            }
        }
        impl SubAssign<&$t> for $t {
            fn sub_assign(&mut self, rhs: &$t) {
                *self = &*self - rhs;
            }
        }
        impl MulAssign<&$t> for $t {
            fn mul_assign(&mut self, rhs: &$t) {
                *self = &*self * rhs;
            }
        }
    };
}

owned_binops!(Rational);

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => {
                let (an, ad) = self.big_parts();
                let (bn, bd) = other.big_parts();
                (an * bd).cmp(&(bn * ad))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(n, d) if d.is_one() => write!(f, "{n}"),
            Repr::Big(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

static CYCLOTOMIC: spin::RwLock<BTreeMap<u32, Arc<[i64]>>> = spin::RwLock::new(BTreeMap::new());

/// Coefficients (low to high) of the monic N-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<[i64]> {
    assert!(n >= 1);
    if let Some(p) = CYCLOTOMIC.read().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num: Vec<i64> = vec![0; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = poly_exact_div(&num, &div);
        }
    }
    let p: Arc<[i64]> = num.into();
    CYCLOTOMIC.write().insert(n, p.clone());
    p
}

fn poly_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    debug_assert_eq!(lead, 1);
    let qlen = num.len() - dd;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

// ---------------------------------------------------------------------------
// Cyclotomic field elements

/// An element of Q(w_N), w_N = exp(2 pi i / N), as a polynomial in `w` of
/// degree below phi(N).
#[derive(Clone)]
pub struct CycScalar {
    order: u32,
    coeffs: SmallVec<[Rational; 1]>,
}

impl CycScalar {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coeffs = SmallVec::new();
        coeffs.push(q);
        CycScalar { order: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn new_rational(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num, den))
    }

    /// Builds `sum_i coeffs[i] w_N^i`, reducing modulo Phi_N.
    pub fn from_poly(order: u32, coeffs: &[Rational]) -> Self {
        assert!(order >= 1);
        if order <= 2 {
            // w_1 = 1, w_2 = -1
            let mut s = Rational::zero();
            for (i, c) in coeffs.iter().enumerate() {
                if order == 2 && i % 2 == 1 {
                    s -= c;
                } else {
                    s += c;
                }
            }
            return Self::from_rational(s);
        }
        let mut v: Vec<Rational> = coeffs.to_vec();
        reduce_mod_cyclotomic(order, &mut v);
        CycScalar {
            order,
            coeffs: v.into_iter().collect(),
        }
    }

    /// The order N of the ambient field Q(w_N) this value is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis 1, w, ..., w^{phi(N)-1}.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the value in Q(w_M); requires N | M.
    pub fn embed(&self, target: u32) -> Self {
        let target = if target == 2 { 1 } else { target };
        if target == self.order {
            return self.clone();
        }
        if self.order == 1 {
            let mut coeffs: SmallVec<[Rational; 1]> = SmallVec::new();
            coeffs.push(self.coeffs[0].clone());
            for _ in 1..totient(target) {
                coeffs.push(Rational::zero());
            }
            return CycScalar { order: target, coeffs };
        }
        assert!(
            target % self.order == 0,
            "cannot embed Q(w_{}) into Q(w_{})",
            self.order,
            target
        );
        let step = (target / self.order) as usize;
        let mut poly = vec![Rational::zero(); step * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(target, &poly)
    }

    fn common(a: &Self, b: &Self) -> (u32, Self, Self) {
        if a.order == b.order {
            return (a.order, a.clone(), b.clone());
        }
        let m = lcm(a.order, b.order);
        (m, a.embed(m), b.embed(m))
    }

    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()?));
        }
        // Extended Euclid in Q[w] against Phi_N.
        let phi: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| Rational::from_int(c))
            .collect();
        let a: Vec<Rational> = self.coeffs.to_vec();
        let inv = poly_inverse_mod(&a, &phi);
        Ok(Self::from_poly(self.order, &inv))
    }

    pub fn pow(&self, exp: i64) -> Self {
        if exp < 0 {
            return self.inverse().expect("negative power of zero").pow(-exp);
        }
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplies in place by a rational.
    pub fn scale_rational(&mut self, q: &Rational) {
        for c in self.coeffs.iter_mut() {
            *c = &*c * q;
        }
    }
}

fn reduce_mod_cyclotomic(order: u32, v: &mut Vec<Rational>) {
    let phi = cyclotomic_polynomial(order);
    let d = phi.len() - 1;
    while v.len() > d {
        let top = v.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let base = v.len() - d;
        for (i, &pi) in phi[..d].iter().enumerate() {
            if pi != 0 {
                let t = &top * &Rational::from_int(pi);
                v[base + i] -= &t;
            }
        }
    }
    v.resize(d, Rational::zero());
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = b[db].recip().expect("zero divisor polynomial");
    if r.len() < b.len() {
        return (vec![Rational::zero()], r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &lead_inv;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                let t = &c * bi;
                r[k + i] -= &t;
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += &t;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m`.
fn poly_inverse_mod(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rational::zero()], vec![Rational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant.
    let c = r0[0].recip().expect("not invertible");
    s0.iter().map(|x| x * &c).collect()
}

/// w_N^j in reduced form.
pub fn cyc_root(n: u32, j: i64) -> CycScalar {
    assert!(n >= 1);
    let e = j.rem_euclid(n as i64) as usize;
    if n <= 2 {
        return CycScalar::from_int(if e == 0 { 1 } else { -1 });
    }
    let mut poly = vec![Rational::zero(); e + 1];
    poly[e] = Rational::one();
    CycScalar::from_poly(n, &poly)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &'a CycScalar) -> CycScalar {
        if self.order == rhs.order {
            return CycScalar {
                order: self.order,
                coeffs: self.coeffs.iter().zip(rhs.coeffs.iter()).map(|(a, b)| a + b).collect(),
            };
        }
        let (_, a, b) = CycScalar::common(self, rhs);
        &a + &b
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &'a CycScalar) -> CycScalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &'a CycScalar) -> CycScalar {
        if self.order == 1 {
            let mut out = rhs.clone();
            out.scale_rational(&self.coeffs[0]);
            return out;
        }
        if rhs.order == 1 {
            let mut out = self.clone();
            out.scale_rational(&rhs.coeffs[0]);
            return out;
        }
        if self.order != rhs.order {
            let (_, a, b) = CycScalar::common(self, rhs);
            return &a * &b;
        }
        let prod = poly_mul(&self.coeffs, &rhs.coeffs);
        CycScalar::from_poly(self.order, &prod)
    }
}

impl<'a> Div<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a CycScalar) -> CycScalar {
        self * &rhs.inverse().expect("cyclotomic division by zero")
    }
}

owned_binops!(CycScalar);

/// Checked division.
pub fn cyc_div(a: &CycScalar, b: &CycScalar) -> Result<CycScalar, ScalarError> {
    Ok(a * &b.inverse()?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(a: &CycScalar, b: &CycScalar, op: ArithOp) -> Result<CycScalar, ScalarError> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => cyc_div(a, b)?,
    })
}

impl From<Rational> for CycScalar {
    fn from(q: Rational) -> Self {
        CycScalar::from_rational(q)
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        CycScalar::from_int(n)
    }
}

impl fmt::Display for CycScalar {
    /// Descending powers of `w`, e.g. `1/2*w^2 - 1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match i {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if i == 1 {
                        f.write_str("w")?;
                    } else {
                        write!(f, "w^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [Q(w_{})]", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_reduces() {
        let q = Rational::new(6, -4);
        assert_eq!(q, Rational::new(-3, 2));
        assert_eq!(alloc::format!("{q}"), "-3/2");
        let s = &Rational::new(1, 2) + &Rational::new(1, 3);
        assert_eq!(s, Rational::new(5, 6));
    }

    #[test]
    fn rational_overflow_promotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(sq.to_small().is_none());
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(back.to_small().is_some());
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(&*cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_polynomial(3), &[1, 1, 1]);
        assert_eq!(&*cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_polynomial(6), &[1, -1, 1]);
        assert_eq!(&*cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_examples() {
        assert_eq!(cyc_root(2, 1), CycScalar::from_int(-1));
        assert_eq!(cyc_root(4, 2), CycScalar::from_int(-1));
        assert_eq!(&cyc_root(3, 1) + &cyc_root(3, 2), CycScalar::from_int(-1));
        assert!(cyc_root(7, 0).is_one());
        assert!(cyc_root(7, 14).is_one());
    }

    #[test]
    fn arith_examples() {
        let w2 = cyc_root(2, 1);
        assert!(cyc_arith(&w2, &w2, ArithOp::Mul).unwrap().is_one());
        let w4 = cyc_root(4, 1);
        assert_eq!(cyc_arith(&w4, &w4, ArithOp::Mul).unwrap(), CycScalar::from_int(-1));
        let s = cyc_arith(
            &CycScalar::new_rational(1, 2),
            &CycScalar::new_rational(1, 3),
            ArithOp::Add,
        )
        .unwrap();
        assert_eq!(s, CycScalar::new_rational(5, 6));
        assert_eq!(
            cyc_arith(&w4, &CycScalar::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn mixed_orders_embed() {
        // w_4^2 = w_2 = -1, w_12^4 = w_3
        assert_eq!(cyc_root(4, 2), cyc_root(2, 1));
        assert_eq!(cyc_root(12, 4), cyc_root(3, 1));
        let s = &cyc_root(3, 1) + &cyc_root(4, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(&s - &cyc_root(4, 1), cyc_root(3, 1));
    }

    #[test]
    fn inverse_round_trip() {
        let a = &cyc_root(5, 1) + &CycScalar::new_rational(3, 7);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn display_descending() {
        let p = CycScalar::from_poly(5, &[Rational::new(-1, 3), Rational::zero(), Rational::new(1, 2)]);
        assert_eq!(alloc::format!("{p}"), "1/2*w^2 - 1/3");
        assert_eq!(alloc::format!("{}", cyc_root(3, 1)), "w");
        assert_eq!(alloc::format!("{}", cyc_root(3, 2)), "-w - 1");
    }
}
