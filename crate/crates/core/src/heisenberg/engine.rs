use alloc::collections::BTreeMap;
use alloc::sync::Arc;

use spin::RwLock;

use crate::formal::{binom_q, FracExp};
use crate::scalars::CycScalar;

use super::{alpha_unchecked, Partition, PbwVector, Sector};

type Key = (Partition, FracExp, Partition);

/// Coefficients of the normal-ordered product
/// `:prod_i (1/(n_i - 1)!) d^{n_i - 1} alpha(x):` acting on a Fock space,
/// where `alpha(x) = sum_m alpha(m) x^{-m-1}` runs over the modes of `sector`.
///
/// On the untwisted sector this is `Y(u, x)`; on the twisted sector it is the
/// uncorrected product `W(u, x)`.
pub struct FieldEngine {
    sector: Sector,
    memo: RwLock<BTreeMap<Key, Arc<PbwVector>>>,
}

impl FieldEngine {
    pub fn new(sector: Sector) -> Self {
        FieldEngine {
            sector,
            memo: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// Coefficient of `x^e` for the field of the untwisted monomial `u` applied
    /// to the basis vector `w` of this engine's sector.
    pub fn coeff(&self, u: &Partition, e: FracExp, w: &Partition) -> Arc<PbwVector> {
        let key = (u.clone(), e, w.clone());
        if let Some(v) = self.memo.read().get(&key) {
            return v.clone();
        }
        let v = Arc::new(self.compute(u, e, w));
        self.memo.write().entry(key).or_insert(v).clone()
    }

    /// `x^e` coefficient lands on weight `wt u + depth w + e`.
    fn compute(&self, u: &Partition, e: FracExp, w: &Partition) -> PbwVector {
        let den = self.sector.den();
        let zero = PbwVector::zero(self.sector);
        let depth_w = FracExp::new(w.units(), den);
        let wt_u = FracExp::int(u.units());
        let out_weight = wt_u + depth_w + e;
        if out_weight < FracExp::ZERO || !out_weight.fits_denominator(den) {
            return zero;
        }
        // Each mode shifts the depth by an odd multiple of 1/2 on the twisted sector.
        if self.sector == Sector::Twisted && (wt_u + e - FracExp::new(u.len() as i64, 2)).den() != 1 {
            return zero;
        }
        let Some((n, rest)) = u.split_first() else {
            return if e == FracExp::ZERO {
                PbwVector::basis(self.sector, w.clone())
            } else {
                zero
            };
        };
        let n = n as i64;
        let wt_rest = FracExp::int(rest.units());
        let mut out = zero;
        // creation part: alpha(m), m < 0, left of the remaining product
        let m_min = -(wt_rest + depth_w) - e - FracExp::int(n);
        let t_max = (-m_min).mul_int(den).floor();
        for t in 1..=t_max {
            if !self.sector.admits(t) {
                continue;
            }
            let m = FracExp::new(-t, den);
            let b = binom_q(&(-m - FracExp::ONE).to_rational(), (n - 1) as u64);
            if b.is_zero() {
                continue;
            }
            let inner = self.coeff(&rest, e + m + FracExp::int(n), w);
            if inner.is_zero() {
                continue;
            }
            out.add_scaled(&alpha_unchecked(m, &inner), &CycScalar::from(b));
        }
        // annihilation part: alpha(m), m > 0, acting on w first
        for part in w.distinct() {
            let m = FracExp::new(part as i64, den);
            let b = binom_q(&(-m - FracExp::ONE).to_rational(), (n - 1) as u64);
            let k = w.multiplicity(part) as i64;
            let c = &CycScalar::from(&b * &m.to_rational()) * &CycScalar::from_int(k);
            let w2 = w.without_part(part).unwrap();
            let inner = self.coeff(&rest, e + m + FracExp::int(n), &w2);
            out.add_scaled(&inner, &c);
        }
        out
    }

    /// Linear extension in both arguments.
    pub fn apply(&self, u: &PbwVector, e: FracExp, w: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero(self.sector);
        for (pu, cu) in u.terms() {
            for (pw, cw) in w.terms() {
                let v = self.coeff(pu, e, pw);
                if !v.is_zero() {
                    out.add_scaled(&v, &(cu * cw));
                }
            }
        }
        out
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }
}
