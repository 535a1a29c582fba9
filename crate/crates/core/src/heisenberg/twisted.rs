use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use spin::RwLock;

use crate::formal::{binom_q, FracExp, ScalarSeries, VarId};
use crate::scalars::{CycScalar, Rational};
use crate::voa::{RepTag, VertexRep};

use super::{alpha_unchecked, FieldEngine, Partition, PbwVector, Sector};

/// `c_mn` with `sum c_mn y^m z^n = -log(((1+y)^(1/2) + (1+z)^(1/2)) / 2)`,
/// all `m + n <= degree`, zero entries omitted.
pub fn delta_coefficients(degree: i64) -> BTreeMap<(i64, i64), Rational> {
    let vars = [VarId::Z, VarId::Z0];
    let within = |m: &[FracExp]| m[0] + m[1] <= FracExp::int(degree);
    // t = ((1+y)^(1/2) - 1)/2 + ((1+z)^(1/2) - 1)/2
    let mut t = ScalarSeries::new(&vars);
    let half = Rational::new(1, 2);
    for i in 1..=degree {
        let c = CycScalar::from(&binom_q(&half, i as u64) * &half);
        t.add_term(&[FracExp::int(i), FracExp::ZERO], c.clone());
        t.add_term(&[FracExp::ZERO, FracExp::int(i)], c);
    }
    // -log(1 + t) = sum_k (-1)^k t^k / k; t has no constant term
    let mut acc = ScalarSeries::new(&vars);
    let mut t_pow = ScalarSeries::one(&vars);
    for k in 1..=degree {
        t_pow = t_pow.mul(&t);
        t_pow.retain(within);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let mut term = t_pow.clone();
        term.scale(&CycScalar::new_rational(sign, k));
        acc.add_assign(&term);
    }
    let mut out = BTreeMap::new();
    for (m, c) in acc.terms() {
        let key = (m[0].as_int().unwrap(), m[1].as_int().unwrap());
        out.insert(key, c.as_rational().expect("rational series").clone());
    }
    out
}

struct Table {
    degree: i64,
    c: BTreeMap<(i64, i64), Rational>,
}

type Corrected = Arc<Vec<(i64, PbwVector)>>;

/// The twisted Fock space of `M(1)` for `sigma = -1`, with
/// `Y_W(u, x) = W(e^{D_x} u, x)` and `D_x = sum c_mn x^{-m-n} a(m) a(n)`.
pub struct TwistedFock {
    engine: FieldEngine,
    table: RwLock<Table>,
    corrected: RwLock<BTreeMap<Partition, Corrected>>,
    memo: RwLock<BTreeMap<(Partition, FracExp, Partition), Arc<PbwVector>>>,
    vacuum_weight: Rational,
}

impl Default for TwistedFock {
    fn default() -> Self {
        Self::new()
    }
}

impl TwistedFock {
    pub fn new() -> Self {
        let mut rep = TwistedFock {
            engine: FieldEngine::new(Sector::Twisted),
            table: RwLock::new(Table {
                degree: 0,
                c: BTreeMap::new(),
            }),
            corrected: RwLock::new(BTreeMap::new()),
            memo: RwLock::new(BTreeMap::new()),
            vacuum_weight: Rational::zero(),
        };
        let w0 = PbwVector::twisted_vacuum();
        let l0 = rep.virasoro(0, &w0);
        rep.vacuum_weight = match l0.coeff(&Partition::empty()) {
            Some(c) => c.as_rational().expect("rational eigenvalue").clone(),
            None => Rational::zero(),
        };
        rep
    }

    /// `L^W(0)` eigenvalue of the twisted vacuum.
    pub fn vacuum_weight(&self) -> &Rational {
        &self.vacuum_weight
    }

    /// `L^W(n) w`, read off from `Y_W(omega, x) = sum L^W(n) x^{-n-2}`.
    pub fn virasoro(&self, n: i64, w: &PbwVector) -> PbwVector {
        self.coeff(&PbwVector::conformal(), FracExp::int(-n - 2), w)
    }

    fn ensure_degree(&self, d: i64) {
        if self.table.read().degree >= d {
            return;
        }
        let mut t = self.table.write();
        if t.degree < d {
            let target = d.max(2 * t.degree).max(4);
            t.c = delta_coefficients(target);
            t.degree = target;
        }
    }

    /// `c_mn`.
    pub fn delta_coefficient(&self, m: i64, n: i64) -> Rational {
        self.ensure_degree(m + n);
        self.table.read().c.get(&(m, n)).cloned().unwrap_or_else(Rational::zero)
    }

    /// `D_x v` for `v` homogeneous of weight `h`, grouped by the power `x^{-d}`.
    fn apply_delta(&self, v: &PbwVector, h: i64, out: &mut BTreeMap<i64, PbwVector>, shift: i64, scale: &CycScalar) {
        self.ensure_degree(h);
        let table = self.table.read();
        for (&(m, n), c) in table.c.iter() {
            if m < 1 || n < 1 || m + n > h {
                continue;
            }
            let t = alpha_unchecked(FracExp::int(m), &alpha_unchecked(FracExp::int(n), v));
            if t.is_zero() {
                continue;
            }
            let f = scale * &CycScalar::from(c.clone());
            out.entry(shift + m + n)
                .or_insert_with(|| PbwVector::zero(Sector::Untwisted))
                .add_scaled(&t, &f);
        }
    }

    /// `e^{D_x} u` as pairs `(d, u_d)` meaning `x^{-d} u_d`.
    pub fn corrected(&self, u: &Partition) -> Corrected {
        if let Some(v) = self.corrected.read().get(u) {
            return v.clone();
        }
        let mut total: BTreeMap<i64, PbwVector> = BTreeMap::new();
        let mut term: BTreeMap<i64, PbwVector> = BTreeMap::new();
        let base = PbwVector::basis(Sector::Untwisted, u.clone());
        term.insert(0, base.clone());
        total.insert(0, base);
        let h = u.units();
        let mut k = 1;
        while !term.is_empty() {
            let mut next = BTreeMap::new();
            let inv = CycScalar::new_rational(1, k);
            for (&d, v) in term.iter() {
                self.apply_delta(v, h - d, &mut next, d, &inv);
            }
            next.retain(|_, v: &mut PbwVector| !v.is_zero());
            for (&d, v) in next.iter() {
                total
                    .entry(d)
                    .or_insert_with(|| PbwVector::zero(Sector::Untwisted))
                    .add_scaled(v, &CycScalar::one());
            }
            term = next;
            k += 1;
        }
        let v: Corrected = Arc::new(total.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.corrected.write().entry(u.clone()).or_insert(v).clone()
    }

    fn basis_coeff(&self, u: &Partition, e: FracExp, w: &Partition) -> Arc<PbwVector> {
        let key = (u.clone(), e, w.clone());
        if let Some(v) = self.memo.read().get(&key) {
            return v.clone();
        }
        let mut out = PbwVector::zero(Sector::Twisted);
        let wb = PbwVector::basis(Sector::Twisted, w.clone());
        for (d, ud) in self.corrected(u).iter() {
            out.add_scaled(&self.engine.apply(ud, e + FracExp::int(*d), &wb), &CycScalar::one());
        }
        let v = Arc::new(out);
        self.memo.write().entry(key).or_insert(v).clone()
    }
}

impl VertexRep for TwistedFock {
    fn tag(&self) -> RepTag {
        RepTag::Twisted
    }

    fn label(&self) -> String {
        "twisted Fock M(1)(sigma)".into()
    }

    fn order(&self) -> u32 {
        2
    }

    fn denominator(&self) -> u32 {
        2
    }

    fn target_sector(&self) -> Sector {
        Sector::Twisted
    }

    fn coeff(&self, u: &PbwVector, e: FracExp, w: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero(Sector::Twisted);
        if !e.fits_denominator(2) {
            return out;
        }
        for (pu, cu) in u.terms() {
            for (pw, cw) in w.terms() {
                let v = self.basis_coeff(pu, e, pw);
                if !v.is_zero() {
                    out.add_scaled(&v, &(cu * cw));
                }
            }
        }
        out
    }

    fn shift_slope(&self) -> FracExp {
        FracExp::ONE
    }
}
