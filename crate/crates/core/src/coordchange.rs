//! Change of coordinate `x = z^N`: the coefficients `a_n`, the operators
//! `Delta_N(x)`, `Delta_N(x)^{-1}` and `Phi(x) = Delta_N(x^N)^{-1}`, and the
//! identities they satisfy against vertex operators.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use spin::RwLock;

use crate::error::{FormalError, VoaError};
use crate::formal::{
    binom_expand, naive_power, subst_power_x_dominant, Coeff, FracExp, LaurentVec, ScalarSeries, Sign, VarId, Window,
};
use crate::heisenberg::{Partition, PbwVector};
use crate::scalars::{CycScalar, Rational};
use crate::voa::{CheckReport, Voa, Witness};

const X: VarId = VarId::X;
const X0: VarId = VarId::X0;

/// A series in `x` with vector coefficients.
pub type VecSeries = LaurentVec<PbwVector>;

/// `a_1, ..., a_M` for a given `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    pub n: u32,
    pub a: Vec<Rational>,
}

impl CoeffTable {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `a_k`, one-based.
    pub fn get(&self, k: usize) -> &Rational {
        &self.a[k - 1]
    }
}

/// Truncated power series `sum c_i x^i`, `i < len`.
type Poly = Vec<Rational>;

/// `-sum a_n x^{n+1} d/dx` applied to `p`, truncated.
fn apply_d(a: &[Rational], p: &Poly) -> Poly {
    let len = p.len();
    let mut out = vec![Rational::zero(); len];
    for (i, c) in p.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let deriv = c * &Rational::from_int(i as i64);
        for (n, an) in a.iter().enumerate() {
            let deg = i - 1 + n + 2;
            if deg >= len {
                break;
            }
            out[deg] = &out[deg] - &(&deriv * an);
        }
    }
    out
}

/// `exp(-sum a_n x^{n+1} d/dx) x` through `x^{len-1}`.
fn exp_flow(a: &[Rational], len: usize) -> Poly {
    let mut term = vec![Rational::zero(); len];
    if len > 1 {
        term[1] = Rational::one();
    }
    let mut total = term.clone();
    for k in 1..len {
        term = apply_d(a, &term);
        let inv = Rational::new(1, k as i64);
        for t in term.iter_mut() {
            *t = &*t * &inv;
        }
        if term.iter().all(Rational::is_zero) {
            break;
        }
        for (s, t) in total.iter_mut().zip(term.iter()) {
            *s = &*s + t;
        }
    }
    total
}

/// `((1 + x)^N - 1)/N` through `x^{len-1}`.
fn target_poly(n: u32, len: usize) -> Poly {
    let mut out = vec![Rational::zero(); len];
    let inv = Rational::new(1, n as i64);
    for (i, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = &crate::formal::binom_int(n as i64, i as u64) * &inv;
    }
    out
}

/// Solves for `a_1..a_M` order by order: the `x^{n+1}` coefficient of the
/// flow is `-a_n` plus terms in `a_1..a_{n-1}`.
pub fn solve_a_coeffs(n: u32, m: usize) -> CoeffTable {
    assert!(n >= 1 && m >= 1);
    let len = m + 2;
    let target = target_poly(n, len);
    let mut a: Vec<Rational> = Vec::with_capacity(m);
    for k in 1..=m {
        let mut trial = a.clone();
        trial.push(Rational::zero());
        let c = exp_flow(&trial, k + 2)[k + 1].clone();
        a.push(&c - &target[k + 1]);
    }
    CoeffTable { n, a }
}

/// Coefficients of `exp(-sum a_n x^{n+1} d/dx) x - ((1+x)^N - 1)/N` through
/// `x^{M+1}`.
pub fn a_coeff_residual(table: &CoeffTable) -> Vec<Rational> {
    let len = table.order() + 2;
    let flow = exp_flow(&table.a, len);
    let target = target_poly(table.n, len);
    flow.iter().zip(target.iter()).map(|(f, t)| f - t).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordKind {
    DeltaN,
    DeltaNInverse,
    Phi,
}

/// Deliberate corruption of `Phi(x)`, used to exercise failing checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    None,
    /// `(N x^{N-1})^{L(0)}` becomes `((N+1) x^{N-1})^{L(0)}`.
    PhiScale,
}

type Memo = RwLock<BTreeMap<(CoordKind, Partition), Arc<VecSeries>>>;

/// The coordinate-change operators for one `N`, acting on a vertex operator
/// algebra. Results on basis vectors are memoised.
pub struct CoordChange<V: ?Sized> {
    n: u32,
    voa: Arc<V>,
    table: RwLock<CoeffTable>,
    memo: Memo,
    fault: Fault,
}

impl<V: Voa + ?Sized> CoordChange<V> {
    pub fn new(voa: Arc<V>, n: u32) -> Self {
        Self::with_fault(voa, n, Fault::None)
    }

    pub fn with_fault(voa: Arc<V>, n: u32, fault: Fault) -> Self {
        CoordChange {
            n,
            voa,
            table: RwLock::new(solve_a_coeffs(n, 8)),
            memo: RwLock::new(BTreeMap::new()),
            fault,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn voa(&self) -> &Arc<V> {
        &self.voa
    }

    pub fn fault(&self) -> Fault {
        self.fault
    }

    /// `a_k`, extending the table on demand.
    pub fn a(&self, k: usize) -> Rational {
        if self.table.read().order() < k {
            let mut t = self.table.write();
            if t.order() < k {
                *t = solve_a_coeffs(self.n, k.max(2 * t.order()));
            }
        }
        self.table.read().get(k).clone()
    }

    /// `exp(sign * sum a_n x^{-n/den} L(n)) u` for `u` of weight `h`; finite
    /// because each `L(n)`, `n >= 1`, lowers the weight by `n`.
    fn exp_virasoro(&self, u: &PbwVector, h: i64, sign: i64, den: i64) -> VecSeries {
        let mut total = VecSeries::new(&[X]);
        total.add_term(&[FracExp::ZERO], u.clone());
        let mut term = total.clone();
        let mut k = 1;
        while !term.is_zero() {
            let mut next = VecSeries::new(&[X]);
            let inv = CycScalar::new_rational(sign, k);
            for (m, v) in term.terms() {
                let wt = h + m[0].mul_int(den).as_int().expect("exponent on the 1/den lattice");
                for n in 1..=wt {
                    let l = self.voa.virasoro(n, v);
                    if l.is_zero() {
                        continue;
                    }
                    let c = &CycScalar::from(self.a(n as usize)) * &inv;
                    next.add_term(&[m[0] - FracExp::new(n, den)], l.scaled(&c));
                }
            }
            for (m, v) in next.terms() {
                total.add_term(m, v.clone());
            }
            term = next;
            k += 1;
        }
        total
    }

    /// Multiplies each weight-`h'` component of every coefficient by
    /// `scale(h') x^{shift(h')}`.
    fn diagonal(
        &self,
        s: &VecSeries,
        mut scale: impl FnMut(i64) -> CycScalar,
        mut shift: impl FnMut(i64) -> FracExp,
    ) -> VecSeries {
        let mut out = VecSeries::new(&[X]);
        for (m, v) in s.terms() {
            for (w, comp) in v.components() {
                let h = w.as_int().expect("integral weight");
                out.add_term(&[m[0] + shift(h)], comp.scaled(&scale(h)));
            }
        }
        out
    }

    fn n_pow(&self, h: i64) -> CycScalar {
        CycScalar::from(Rational::from_int(self.n as i64).pow(h))
    }

    fn compute(&self, kind: CoordKind, u: &PbwVector, h: i64) -> Result<VecSeries, VoaError> {
        let n = self.n as i64;
        let nq = FracExp::int(n);
        match kind {
            CoordKind::DeltaN => {
                // exp(sum a_n x^{-n/N} L(n)) N^{-L(0)} x^{(1/N - 1) L(0)}
                let mut out = self.exp_virasoro(u, h, 1, n);
                out = out.shift(&[(FracExp::new(1, n) - FracExp::ONE).mul_int(h)]);
                out.scale(&self.n_pow(-h));
                Ok(out)
            }
            CoordKind::DeltaNInverse => {
                let e = self.exp_virasoro(u, h, -1, n);
                Ok(self.diagonal(
                    &e,
                    |k| self.n_pow(k),
                    |k| (FracExp::ONE - FracExp::new(1, n)).mul_int(k),
                ))
            }
            CoordKind::Phi => {
                let e = self.exp_virasoro(u, h, -1, 1);
                let base = match self.fault {
                    Fault::None => n,
                    Fault::PhiScale => n + 1,
                };
                let out = self.diagonal(
                    &e,
                    |k| CycScalar::from(Rational::from_int(base).pow(k)),
                    |k| (nq - FracExp::ONE).mul_int(k),
                );
                for (m, _) in out.terms() {
                    if !m[0].is_integer() {
                        return Err(VoaError::FractionalLeak(m[0]));
                    }
                }
                Ok(out)
            }
        }
    }

    fn basis_apply(&self, kind: CoordKind, p: &Partition, sample: &PbwVector) -> Result<Arc<VecSeries>, VoaError> {
        let key = (kind, p.clone());
        if let Some(v) = self.memo.read().get(&key) {
            return Ok(v.clone());
        }
        let b = PbwVector::basis(sample.sector(), p.clone());
        let h = self.voa.weight(&b).ok_or(VoaError::NotHomogeneous)?;
        let v = Arc::new(self.compute(kind, &b, h)?);
        Ok(self.memo.write().entry(key).or_insert(v).clone())
    }

    /// Applies `kind` to a homogeneous vector.
    pub fn apply(&self, kind: CoordKind, u: &PbwVector) -> Result<VecSeries, VoaError> {
        let mut out = VecSeries::new(&[X]);
        if u.is_zero() {
            return Ok(out);
        }
        if u.weight().is_none() {
            return Err(VoaError::NotHomogeneous);
        }
        for (p, c) in u.terms() {
            let s = self.basis_apply(kind, p, u)?;
            for (m, v) in s.terms() {
                out.add_term(m, v.scaled(c));
            }
        }
        Ok(out)
    }

    /// Applies `kind` to any vector, one weight component at a time.
    pub fn apply_any(&self, kind: CoordKind, u: &PbwVector) -> Result<VecSeries, VoaError> {
        let mut out = VecSeries::new(&[X]);
        for (_, c) in u.components() {
            out.add_assign(&self.apply(kind, &c)?);
        }
        Ok(out)
    }

    /// Applies `kind` to every coefficient of a series and multiplies out.
    pub fn apply_series(&self, kind: CoordKind, s: &VecSeries) -> Result<VecSeries, VoaError> {
        let mut out = VecSeries::new(&[X]);
        for (m, v) in s.terms() {
            let t = self.apply_any(kind, v)?;
            out.add_assign(&t.shift(&[m[0]]));
        }
        Ok(out)
    }
}

/// `delta_apply`: `Delta_N(x) u` or `Delta_N(x)^{-1} u`, exponents in `(1/N)Z`.
pub fn delta_apply<V: Voa + ?Sized>(cc: &CoordChange<V>, u: &PbwVector, inverse: bool) -> Result<VecSeries, VoaError> {
    let kind = if inverse {
        CoordKind::DeltaNInverse
    } else {
        CoordKind::DeltaN
    };
    cc.apply(kind, u)
}

/// `Phi(x) u`, integer exponents only.
pub fn phi_apply<V: Voa + ?Sized>(cc: &CoordChange<V>, u: &PbwVector) -> Result<VecSeries, VoaError> {
    cc.apply(CoordKind::Phi, u)
}

/// `x -> x^{1/N}` (or any rational power) on exponents.
pub fn dilate(s: &VecSeries, factor: FracExp) -> VecSeries {
    let mut out = VecSeries::new(s.vars());
    for (m, v) in s.terms() {
        let mm: Vec<FracExp> = m.iter().map(|e| *e * factor).collect();
        out.add_term(&mm, v.clone());
    }
    out
}

/// Multiplies each weight-`h` component by `alpha^{k h}`.
fn alpha_l0(s: &VecSeries, alpha: &CycScalar, k: i64) -> VecSeries {
    let mut out = VecSeries::new(s.vars());
    for (m, v) in s.terms() {
        for (w, comp) in v.components() {
            let h = w.as_int().expect("integral weight");
            out.add_term(m, comp.scaled(&alpha.pow(k * h)));
        }
    }
    out
}

/// `x^{m/den} -> alpha^m x^{m/den}`.
fn rescale_root(s: &VecSeries, alpha: &CycScalar, den: i64) -> VecSeries {
    let mut out = VecSeries::new(s.vars());
    for (m, v) in s.terms() {
        let k = m[0].mul_int(den).as_int().expect("exponent on the 1/den lattice");
        out.add_term(m, v.scaled(&alpha.pow(k)));
    }
    out
}

fn first_difference(lhs: &VecSeries, rhs: &VecSeries) -> Option<Witness> {
    let mut diff = lhs.clone();
    for (m, v) in rhs.terms() {
        diff.add_term(m, v.scaled(&CycScalar::from_int(-1)));
    }
    let (m, _) = diff.terms().next()?;
    let show = |s: &VecSeries| {
        s.get(m)
            .map(alloc::string::ToString::to_string)
            .unwrap_or_else(|| "0".into())
    };
    Some(Witness {
        at: lhs.vars().iter().copied().zip(m.iter().copied()).collect(),
        lhs: show(lhs),
        rhs: show(rhs),
    })
}

/// Both conjugation laws for `alpha` invertible:
/// `Phi(x) alpha^{-L(0)} u = alpha^{-N L(0)} Phi(alpha x) u` and
/// `alpha^{L(0)} Delta_N(x) u = lim_{x^{1/N} -> alpha x^{1/N}} Delta_N(x) alpha^{N L(0)} u`.
pub fn check_leasy<V: Voa + ?Sized>(
    cc: &CoordChange<V>,
    u: &PbwVector,
    alpha: &CycScalar,
    window: &Window,
) -> Result<CheckReport, VoaError> {
    let n = cc.n() as i64;
    let report = CheckReport::new("leasy")
        .param("N", n)
        .param("alpha", alpha)
        .param("u", u)
        .param("window", alloc::format!("[{},{}]", window.lo, window.hi));
    let in_window = |s: &VecSeries| {
        let mut s = s.clone();
        s.retain(|m| window.contains(X, m[0]));
        s
    };
    let Ok(ainv) = alpha.inverse() else {
        return Ok(report.inconclusive("alpha is not invertible"));
    };
    let lhs = cc.apply_any(CoordKind::Phi, &alpha_l0_vec(u, &ainv))?;
    let rhs = alpha_l0(&rescale_root(&cc.apply_any(CoordKind::Phi, u)?, alpha, 1), &ainv, n);
    if let Some(w) = first_difference(&in_window(&lhs), &in_window(&rhs)) {
        return Ok(report.param("display", "phi").fail(w));
    }
    let lhs = alpha_l0(&cc.apply_any(CoordKind::DeltaN, u)?, alpha, 1);
    let scaled = alpha_l0_vec_pow(u, alpha, n);
    let rhs = rescale_root(&cc.apply_any(CoordKind::DeltaN, &scaled)?, alpha, n);
    if let Some(w) = first_difference(&in_window(&lhs), &in_window(&rhs)) {
        return Ok(report.param("display", "delta").fail(w));
    }
    Ok(report.pass(None))
}

fn alpha_l0_vec(u: &PbwVector, alpha: &CycScalar) -> PbwVector {
    alpha_l0_vec_pow(u, alpha, 1)
}

/// `alpha^{k L(0)} u`.
fn alpha_l0_vec_pow(u: &PbwVector, alpha: &CycScalar, k: i64) -> PbwVector {
    let mut out = PbwVector::zero(u.sector());
    for (w, c) in u.components() {
        let h = w.as_int().expect("integral weight");
        out.add_scaled(&c, &alpha.pow(k * h));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BdmIdentity {
    /// `Delta_N(x) Y(u,x0) Delta_N(x)^{-1} = Y(Delta_N(x+x0) u, (x+x0)^{1/N} - x^{1/N})`.
    Conjugation,
    /// `Phi(x) Y(u,x0) = Y(Phi(x+x0) u, (x+x0)^N - x^N) Phi(x)`.
    PhiIntertwining,
}

impl BdmIdentity {
    pub fn name(self) -> &'static str {
        match self {
            BdmIdentity::Conjugation => "dilation_conjugation",
            BdmIdentity::PhiIntertwining => "phi_intertwining",
        }
    }
}

/// How powers of `(x+x0)^alpha - x^alpha` are expanded on the right side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expansion {
    /// `x^{n(alpha-1)} x0^n (alpha + x0 f)^n`, valid for every integer `n`.
    Convention,
    /// Binomial expansion in `z` first, then `z = (x+x0)^alpha`; diverges
    /// for negative powers.
    BinomialFirst,
}

fn z_power(alpha: FracExp, n: i64, order: i64, how: Expansion) -> Result<ScalarSeries, FormalError> {
    match how {
        Expansion::Convention => subst_power_x_dominant(alpha, n, order, X, X0),
        Expansion::BinomialFirst => naive_power(alpha, n, order, X, X0),
    }
}

/// Both sides of the chosen identity applied to `v`, through `x0^x0_order`.
pub fn bdm_sides<V: Voa + ?Sized>(
    cc: &CoordChange<V>,
    identity: BdmIdentity,
    u: &PbwVector,
    v: &PbwVector,
    x0_order: i64,
    how: Expansion,
) -> Result<(VecSeries, VecSeries), VoaError> {
    let voa = cc.voa().clone();
    let n = cc.n() as i64;
    let (outer, inner, alpha) = match identity {
        BdmIdentity::Conjugation => (CoordKind::DeltaN, CoordKind::DeltaNInverse, FracExp::new(1, n)),
        BdmIdentity::PhiIntertwining => (CoordKind::Phi, CoordKind::Phi, FracExp::int(n)),
    };
    let vars = [X, X0];
    let hu = voa.weight(u).ok_or(VoaError::NotHomogeneous)?;
    // left side: outer(x) Y(u, x0) [inner(x) v or v]
    let pre = match identity {
        BdmIdentity::Conjugation => cc.apply_any(inner, v)?,
        BdmIdentity::PhiIntertwining => VecSeries::monomial(&[X], &[FracExp::ZERO], v.clone()),
    };
    let mut lhs = VecSeries::new(&vars);
    for (m, vf) in pre.terms() {
        for (hv, vc) in vf.components() {
            let hv = hv.as_int().unwrap();
            for p in -voa.mode_bound(hu, hv)..=x0_order {
                let y = voa.mode(u, -p - 1, &vc);
                if y.is_zero() {
                    continue;
                }
                for (e, c) in cc.apply_any(outer, &y)?.terms() {
                    lhs.add_term(&[m[0] + e[0], FracExp::int(p)], c.clone());
                }
            }
        }
    }
    // right side: Y(outer(x+x0) u, z) [outer(x) v or v], z = (x+x0)^alpha - x^alpha
    let post = match identity {
        BdmIdentity::Conjugation => VecSeries::monomial(&[X], &[FracExp::ZERO], v.clone()),
        BdmIdentity::PhiIntertwining => cc.apply_any(CoordKind::Phi, v)?,
    };
    let mut rhs = VecSeries::new(&vars);
    let ou = cc.apply(outer, u)?;
    for (me, ue) in ou.terms() {
        let he = voa.weight(ue).ok_or(VoaError::NotHomogeneous)?;
        for (mf, vf) in post.terms() {
            for (hf, vc) in vf.components() {
                let bound = voa.mode_bound(he, hf.as_int().unwrap());
                for m in -x0_order - 1..bound {
                    let y = voa.mode(ue, m, &vc);
                    if y.is_zero() {
                        continue;
                    }
                    let zn = -m - 1;
                    let z = z_power(alpha, zn, x0_order, how)?;
                    let shift = binom_expand(Sign::Plus, me[0], (x0_order - zn.min(0)).max(0) as u64, X, X0);
                    let mut s = z.mul(&shift);
                    s.truncate_above(1, FracExp::int(x0_order));
                    for (mono, c) in s.terms() {
                        rhs.add_term(&[mono[0] + mf[0], mono[1]], y.scaled(c));
                    }
                }
            }
        }
    }
    lhs.truncate_above(1, FracExp::int(x0_order));
    Ok((lhs, rhs))
}

/// Coefficientwise comparison of one identity through `x0^x0_order`.
pub fn check_bdm<V: Voa + ?Sized>(
    cc: &CoordChange<V>,
    identity: BdmIdentity,
    u: &PbwVector,
    v: &PbwVector,
    window: &Window,
    x0_order: i64,
    how: Expansion,
) -> Result<CheckReport, VoaError> {
    let report = CheckReport::new(identity.name())
        .param("N", cc.n())
        .param("u", u)
        .param("v", v)
        .param("x0_order", x0_order)
        .param("window", alloc::format!("[{},{}]", window.lo, window.hi));
    let mut lhs = VecSeries::new(&[X, X0]);
    let mut rhs = VecSeries::new(&[X, X0]);
    for (_, uc) in u.components() {
        let (l, r) = bdm_sides(cc, identity, &uc, v, x0_order, how)?;
        lhs.add_assign(&l);
        rhs.add_assign(&r);
    }
    let keep = |m: &[FracExp]| window.contains(X, m[0]);
    lhs.retain(keep);
    rhs.retain(keep);
    Ok(match first_difference(&lhs, &rhs) {
        Some(w) => report.fail(w),
        None => report.pass(None),
    })
}
