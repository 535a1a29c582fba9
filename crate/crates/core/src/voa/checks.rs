use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::formal::{
    binom_int, binom_q, delta_coeff, Coeff, DeltaKind, FracExp, LaurentVec, LowerTruncSeries, VarId, Window,
};
use crate::heisenberg::PbwVector;
use crate::scalars::{cyc_root, CycScalar};

use super::{CheckReport, RepTag, VertexRep, Voa, Witness};

const X: VarId = VarId::X;
const X0: VarId = VarId::X0;
const X1: VarId = VarId::X1;
const X2: VarId = VarId::X2;

fn window_label(w: &Window) -> String {
    let mut s = format!("[{},{}]", w.lo, w.hi);
    for (v, lo, hi) in w.overrides.iter() {
        s.push_str(&format!(" {v}:[{lo},{hi}]"));
    }
    if let Some(m) = w.max_weight {
        s.push_str(&format!(" wt<={m}"));
    }
    s
}

fn base_report<R: VertexRep + ?Sized>(identity: &str, rep: &R, window: &Window) -> CheckReport {
    CheckReport::new(identity)
        .param("rep", rep.label())
        .param("N", rep.order())
        .param("window", window_label(window))
}

fn show(v: &Option<PbwVector>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "0".into(),
    }
}

fn witness(at: &[(VarId, FracExp)], lhs: &Option<PbwVector>, rhs: &Option<PbwVector>) -> Witness {
    Witness {
        at: at.to_vec(),
        lhs: show(lhs),
        rhs: show(rhs),
    }
}

fn nonzero(v: PbwVector) -> Option<PbwVector> {
    (!v.is_zero()).then_some(v)
}

fn sub(a: Option<PbwVector>, b: Option<PbwVector>) -> Option<PbwVector> {
    match (a, b) {
        (a, None) => a,
        (None, Some(b)) => nonzero(b.sub(&b).sub(&b)),
        (Some(a), Some(b)) => nonzero(a.sub(&b)),
    }
}

fn same(a: &Option<PbwVector>, b: &Option<PbwVector>) -> bool {
    sub(a.clone(), b.clone()).is_none()
}

/// Splits a vector into weight-homogeneous components; zero gives none.
fn weight_parts(v: &PbwVector) -> Vec<(FracExp, PbwVector)> {
    v.components().into_iter().collect()
}

/// Runs `check` on every combination of homogeneous components and keeps the
/// first non-passing report, otherwise the pass with the largest `k`.
fn merge(reports: Vec<CheckReport>, base: CheckReport) -> CheckReport {
    let mut best: Option<CheckReport> = None;
    for r in reports {
        if !r.passed() {
            return r;
        }
        best = match best {
            Some(b) if b.k >= r.k => Some(b),
            _ => Some(r),
        };
    }
    best.unwrap_or_else(|| base.pass(Some(0)))
}

/// `Y_W(u, x) w` on the window in the variable `x`.
pub fn vertex_series<R: VertexRep + ?Sized>(
    rep: &R,
    u: &PbwVector,
    w: &PbwVector,
    window: &Window,
) -> LaurentVec<PbwVector> {
    let mut out = LaurentVec::new(&[X]);
    for e in window.points(X, rep.denominator() as i64) {
        out.add_term(&[e], rep.coeff(u, e, w));
    }
    out
}

/// `Y_W(1, x) w = w` on the window, for every `w` in `ws`.
pub fn check_vacuum<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    ws: &[PbwVector],
    window: &Window,
) -> CheckReport {
    let report = base_report("vacuum", rep, window).param("w_count", ws.len());
    let one = voa.vacuum();
    for w in ws {
        for e in window.points(X, rep.denominator() as i64) {
            let lhs = nonzero(rep.coeff(&one, e, w));
            let rhs = (e == FracExp::ZERO).then(|| w.clone()).filter(|w| !w.is_zero());
            if !same(&lhs, &rhs) {
                return report.param("w", w).fail(witness(&[(X, e)], &lhs, &rhs));
            }
        }
    }
    report.pass(None)
}

/// Coefficient tables of `Y_W(u,x1) Y_W(v,x2) w` and `Y_W(v,x2) Y_W(u,x1) w`.
struct Products<'a, R: ?Sized> {
    rep: &'a R,
    u: &'a PbwVector,
    v: &'a PbwVector,
    w: &'a PbwVector,
    yu: BTreeMap<FracExp, PbwVector>,
    yv: BTreeMap<FracExp, PbwVector>,
    f: BTreeMap<(FracExp, FracExp), Option<PbwVector>>,
    g: BTreeMap<(FracExp, FracExp), Option<PbwVector>>,
}

impl<'a, R: VertexRep + ?Sized> Products<'a, R> {
    fn new(rep: &'a R, u: &'a PbwVector, v: &'a PbwVector, w: &'a PbwVector) -> Self {
        Products {
            rep,
            u,
            v,
            w,
            yu: BTreeMap::new(),
            yv: BTreeMap::new(),
            f: BTreeMap::new(),
            g: BTreeMap::new(),
        }
    }

    fn f(&mut self, a: FracExp, b: FracExp) -> Option<PbwVector> {
        if let Some(x) = self.f.get(&(a, b)) {
            return x.clone();
        }
        let (rep, v, w) = (self.rep, self.v, self.w);
        let inner = self.yv.entry(b).or_insert_with(|| rep.coeff(v, b, w));
        let r = if inner.is_zero() {
            None
        } else {
            nonzero(rep.coeff(self.u, a, inner))
        };
        self.f.insert((a, b), r.clone());
        r
    }

    fn g(&mut self, a: FracExp, b: FracExp) -> Option<PbwVector> {
        if let Some(x) = self.g.get(&(a, b)) {
            return x.clone();
        }
        let (rep, u, w) = (self.rep, self.u, self.w);
        let inner = self.yu.entry(a).or_insert_with(|| rep.coeff(u, a, w));
        let r = if inner.is_zero() {
            None
        } else {
            nonzero(rep.coeff(self.v, b, inner))
        };
        self.g.insert((a, b), r.clone());
        r
    }

    fn commutator(&mut self, a: FracExp, b: FracExp) -> Option<PbwVector> {
        let f = self.f(a, b);
        let g = self.g(a, b);
        sub(f, g)
    }
}

/// `Y_W(Y(u, x0) v, x2) w` with `u` optionally replaced by `sigma^r u`.
struct Iterates<'a, R: ?Sized, V: ?Sized> {
    rep: &'a R,
    voa: &'a V,
    u: PbwVector,
    v: &'a PbwVector,
    w: &'a PbwVector,
    modes: BTreeMap<i64, PbwVector>,
    h: BTreeMap<(i64, FracExp), Option<PbwVector>>,
}

impl<'a, R: VertexRep + ?Sized, V: Voa + ?Sized> Iterates<'a, R, V> {
    fn new(rep: &'a R, voa: &'a V, u: PbwVector, v: &'a PbwVector, w: &'a PbwVector) -> Self {
        Iterates {
            rep,
            voa,
            u,
            v,
            w,
            modes: BTreeMap::new(),
            h: BTreeMap::new(),
        }
    }

    fn h(&mut self, p: FracExp, b: FracExp) -> Option<PbwVector> {
        let p = p.as_int()?;
        if let Some(x) = self.h.get(&(p, b)) {
            return x.clone();
        }
        let (voa, u, v) = (self.voa, &self.u, self.v);
        let inner = self.modes.entry(p).or_insert_with(|| voa.mode(u, -p - 1, v));
        let r = if inner.is_zero() {
            None
        } else {
            nonzero(self.rep.coeff(inner, b, self.w))
        };
        self.h.insert((p, b), r.clone());
        r
    }
}

struct Homog {
    u: PbwVector,
    hu: FracExp,
    v: PbwVector,
    hv: FracExp,
    w: PbwVector,
    dw: FracExp,
}

fn homogeneous_triples<R: VertexRep + ?Sized>(rep: &R, u: &PbwVector, v: &PbwVector, w: &PbwVector) -> Vec<Homog> {
    let mut out = Vec::new();
    for (hu, uc) in weight_parts(u) {
        for (hv, vc) in weight_parts(v) {
            for (_, wc) in weight_parts(w) {
                let dw = rep.target_depth(&wc).expect("homogeneous target");
                out.push(Homog {
                    u: uc.clone(),
                    hu,
                    v: vc.clone(),
                    hv,
                    w: wc,
                    dw,
                });
            }
        }
    }
    out
}

fn pair_params(r: CheckReport, u: &PbwVector, v: &PbwVector, w: &PbwVector) -> CheckReport {
    r.param("u", u).param("v", v).param("w", w)
}

/// Smallest `k <= kmax` with `(x1 - x2)^k [Y_W(u,x1), Y_W(v,x2)] w = 0` on
/// the window.
pub fn check_weak_commutativity<R: VertexRep + ?Sized>(
    rep: &R,
    u: &PbwVector,
    v: &PbwVector,
    w: &PbwVector,
    kmax: i64,
    window: &Window,
) -> CheckReport {
    let base = pair_params(base_report("weak_commutativity", rep, window), u, v, w).param("kmax", kmax);
    let reports = homogeneous_triples(rep, u, v, w)
        .into_iter()
        .map(|t| weak_comm_homog(rep, &t, kmax, window, base.clone()))
        .collect();
    merge(reports, base)
}

fn weak_comm_homog<R: VertexRep + ?Sized>(
    rep: &R,
    t: &Homog,
    kmax: i64,
    window: &Window,
    base: CheckReport,
) -> CheckReport {
    let den = rep.denominator() as i64;
    let s = rep.shift_slope();
    let mut prod = Products::new(rep, &t.u, &t.v, &t.w);
    let mut last = None;
    for k in 0..=kmax {
        let mut bad = None;
        'scan: for a in window.points(X1, den) {
            for b in window.points(X2, den) {
                let out = t.dw + s * (a + b - FracExp::int(k) + t.hu + t.hv);
                if !window.weight_ok(out) {
                    continue;
                }
                let mut acc: Option<PbwVector> = None;
                for i in 0..=k {
                    let Some(mut c) = prod.commutator(a - FracExp::int(k - i), b - FracExp::int(i)) else {
                        continue;
                    };
                    let mut coef = binom_int(k, i as u64);
                    if i % 2 == 1 {
                        coef = -coef;
                    }
                    c.scale(&coef.into());
                    match acc.as_mut() {
                        Some(x) => x.accumulate(&c),
                        None => acc = Some(c),
                    }
                }
                let acc = acc.and_then(nonzero);
                if acc.is_some() {
                    bad = Some(witness(&[(X1, a), (X2, b)], &acc, &None));
                    break 'scan;
                }
            }
        }
        match bad {
            None => return base.pass(Some(k)),
            Some(w) => last = Some(w),
        }
    }
    base.fail(last.expect("kmax >= 0"))
}

/// Splits into components homogeneous in weight and in the `sigma`-grading.
fn eigen_parts<R: VertexRep + ?Sized, V: Voa + ?Sized>(rep: &R, voa: &V, u: &PbwVector) -> Vec<(PbwVector, u32)> {
    let n = if rep.order() == 1 { 1 } else { voa.order() };
    let mut out = Vec::new();
    for (_, c) in weight_parts(u) {
        for j in 0..n {
            let p = if n == 1 { c.clone() } else { voa.project(&c, j) };
            if !p.is_zero() {
                out.push((p, j));
            }
        }
    }
    out
}

/// Smallest `l <= lmax` with
/// `(x0+x2)^{l-j/N} Y_W(u,x0+x2) Y_W(v,x2) w = (x2+x0)^{l-j/N} Y_W(Y(u,x0)v,x2) w`
/// on the window, for `u` in `V^j`.
pub fn check_weak_associativity_twisted<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    u: &PbwVector,
    v: &PbwVector,
    w: &PbwVector,
    lmax: i64,
    window: &Window,
) -> CheckReport {
    let base = pair_params(base_report("weak_associativity", rep, window), u, v, w).param("lmax", lmax);
    if !matches!(rep.structure(), RepTag::Twisted | RepTag::Untwisted) {
        return base.inconclusive("representation is not twisted");
    }
    let mut reports = Vec::new();
    for (uc, j) in eigen_parts(rep, voa, u) {
        for t in homogeneous_triples(rep, &uc, v, w) {
            reports.push(weak_assoc_homog(rep, voa, &t, j, lmax, window, base.clone()));
        }
    }
    merge(reports, base)
}

fn weak_assoc_homog<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    t: &Homog,
    j: u32,
    lmax: i64,
    window: &Window,
    base: CheckReport,
) -> CheckReport {
    let den = rep.denominator() as i64;
    let n = rep.order() as i64;
    let s = rep.shift_slope();
    let lb_v = rep.lowest_exponent(t.hv, t.dw);
    let lb_x0 = -voa.mode_bound(t.hu.as_int().unwrap(), t.hv.as_int().unwrap());
    let mut prod = Products::new(rep, &t.u, &t.v, &t.w);
    let mut it = Iterates::new(rep, voa, t.u.clone(), &t.v, &t.w);
    let mut last = None;
    for l in 0..=lmax {
        let lam = FracExp::int(l) - FracExp::new(j as i64, n);
        let mut bad = None;
        'scan: for p0 in window.points(X0, 1) {
            for b in window.points(X2, den) {
                let out = t.dw + s * (p0 - lam + b + t.hu + t.hv);
                if !window.weight_ok(out) {
                    continue;
                }
                let mut lhs: Option<PbwVector> = None;
                let top = (b - lb_v).floor();
                for i in 0..=top.max(-1) {
                    let c = binom_int(p0.as_int().unwrap() + i, i as u64);
                    let Some(mut f) = prod.f(p0 + FracExp::int(i) - lam, b - FracExp::int(i)) else {
                        continue;
                    };
                    f.scale(&c.into());
                    match lhs.as_mut() {
                        Some(x) => x.accumulate(&f),
                        None => lhs = Some(f),
                    }
                }
                let mut rhs: Option<PbwVector> = None;
                let top = (p0 - FracExp::int(lb_x0)).floor();
                for i in 0..=top.max(-1) {
                    let c = binom_q(&lam.to_rational(), i as u64);
                    let Some(mut h) = it.h(p0 - FracExp::int(i), b - lam + FracExp::int(i)) else {
                        continue;
                    };
                    h.scale(&c.into());
                    match rhs.as_mut() {
                        Some(x) => x.accumulate(&h),
                        None => rhs = Some(h),
                    }
                }
                let lhs = lhs.and_then(nonzero);
                let rhs = rhs.and_then(nonzero);
                if !same(&lhs, &rhs) {
                    bad = Some(witness(&[(X0, p0), (X2, b)], &lhs, &rhs));
                    break 'scan;
                }
            }
        }
        match bad {
            None => return base.pass(Some(l)),
            Some(w) => last = Some(w),
        }
    }
    base.fail(last.expect("lmax >= 0"))
}

fn add_opt(acc: &mut Option<PbwVector>, t: Option<PbwVector>, c: &CycScalar) {
    let Some(mut t) = t else { return };
    t.scale(c);
    match acc.as_mut() {
        Some(a) => a.accumulate(&t),
        None => *acc = Some(t),
    }
}

/// Coefficient of `x0^p x1^a x2^b` in the left side of a Jacobi-type identity:
/// the two delta products of `[Y_W(u,x1), Y_W(v,x2)] w`.
fn jacobi_lhs<R: VertexRep + ?Sized>(
    prod: &mut Products<'_, R>,
    lb_u: FracExp,
    lb_v: FracExp,
    target: [FracExp; 3],
) -> Option<PbwVector> {
    let mut fwd = LowerTruncSeries::new([None, Some(lb_v)], |a, b| prod.f(a, b));
    let f: Option<PbwVector> = delta_coeff(DeltaKind::Forward, &mut fwd, target).expect("bounded");
    let mut bwd = LowerTruncSeries::new([Some(lb_u), None], |a, b| prod.g(a, b));
    let g: Option<PbwVector> = delta_coeff(DeltaKind::Backward, &mut bwd, target).expect("bounded");
    sub(f, g)
}

/// Exact coefficientwise comparison of the twisted Jacobi identity on the
/// window, with right side
/// `(1/N) sum_r x1^-1 delta(w_N^r ((x2+x0)/x1)^(1/N)) Y_W(Y(sigma^r u, x0) v, x2) w`.
pub fn check_twisted_jacobi<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    u: &PbwVector,
    v: &PbwVector,
    w: &PbwVector,
    window: &Window,
) -> CheckReport {
    let base = pair_params(base_report("twisted_jacobi", rep, window), u, v, w);
    if !matches!(rep.structure(), RepTag::Twisted | RepTag::Untwisted) {
        return base.inconclusive("representation is not twisted");
    }
    let reports = homogeneous_triples(rep, u, v, w)
        .into_iter()
        .map(|t| twisted_jacobi_homog(rep, voa, &t, window, base.clone()))
        .collect();
    merge(reports, base)
}

fn twisted_jacobi_homog<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    t: &Homog,
    window: &Window,
    base: CheckReport,
) -> CheckReport {
    let den = rep.denominator() as i64;
    let n = rep.order() as i64;
    let s = rep.shift_slope();
    let lb_u = rep.lowest_exponent(t.hu, t.dw);
    let lb_v = rep.lowest_exponent(t.hv, t.dw);
    let lb_x0 = FracExp::int(-voa.mode_bound(t.hu.as_int().unwrap(), t.hv.as_int().unwrap()));
    let mut prod = Products::new(rep, &t.u, &t.v, &t.w);
    let mut sheets: Vec<Iterates<'_, R, V>> = Vec::new();
    let mut su = t.u.clone();
    for _ in 0..n {
        sheets.push(Iterates::new(rep, voa, su.clone(), &t.v, &t.w));
        su = voa.sigma(&su);
    }
    let inv_n = CycScalar::new_rational(1, n);
    for p in window.points(X0, 1) {
        for a in window.points(X1, den) {
            for b in window.points(X2, den) {
                let out = t.dw + s * (a + b + p + FracExp::ONE + t.hu + t.hv);
                if !window.weight_ok(out) {
                    continue;
                }
                let target = [p, a, b];
                let lhs = jacobi_lhs(&mut prod, lb_u, lb_v, target);
                let mut rhs: Option<PbwVector> = None;
                for (r, sheet) in sheets.iter_mut().enumerate() {
                    let mut src = LowerTruncSeries::new([Some(lb_x0), None], |x, y| sheet.h(x, y));
                    let kind = DeltaKind::RootSheet { r: r as i64, n };
                    let term: Option<PbwVector> = delta_coeff(kind, &mut src, target).expect("bounded");
                    add_opt(&mut rhs, term, &inv_n);
                }
                let rhs = rhs.and_then(nonzero);
                if !same(&lhs, &rhs) {
                    return base.fail(witness(&[(X0, p), (X1, a), (X2, b)], &lhs, &rhs));
                }
            }
        }
    }
    base.pass(None)
}

/// Smallest `k <= kmax` for which the quasi Jacobi identity with
/// `p(x1, x2) = (x1^N - x2^N)^k` holds on the window, the `x0` range
/// extended upward by `N k`.
pub fn check_quasi_jacobi<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    u: &PbwVector,
    v: &PbwVector,
    w: &PbwVector,
    kmax: i64,
    window: &Window,
) -> CheckReport {
    let base = pair_params(base_report("quasi_jacobi", rep, window), u, v, w).param("kmax", kmax);
    if !matches!(rep.structure(), RepTag::Quasi | RepTag::Untwisted) || rep.denominator() != 1 {
        return base.inconclusive("representation is not quasi");
    }
    let reports = homogeneous_triples(rep, u, v, w)
        .into_iter()
        .map(|t| quasi_jacobi_homog(rep, voa, &t, kmax, window, base.clone()))
        .collect();
    merge(reports, base)
}

fn quasi_jacobi_homog<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    t: &Homog,
    kmax: i64,
    window: &Window,
    base: CheckReport,
) -> CheckReport {
    let n = rep.order() as i64;
    let s = rep.shift_slope();
    let lb_u = rep.lowest_exponent(t.hu, t.dw);
    let lb_v = rep.lowest_exponent(t.hv, t.dw);
    let lb_x0 = FracExp::int(-voa.mode_bound(t.hu.as_int().unwrap(), t.hv.as_int().unwrap()));
    let mut prod = Products::new(rep, &t.u, &t.v, &t.w);
    let mut it = Iterates::new(rep, voa, t.u.clone(), &t.v, &t.w);
    let mut memo: BTreeMap<[FracExp; 3], Option<PbwVector>> = BTreeMap::new();
    let mut raw = |target: [FracExp; 3]| -> Option<PbwVector> {
        if let Some(d) = memo.get(&target) {
            return d.clone();
        }
        let lhs = jacobi_lhs(&mut prod, lb_u, lb_v, target);
        let mut src = LowerTruncSeries::new([Some(lb_x0), None], |x, y| it.h(x, y));
        let rhs: Option<PbwVector> = delta_coeff(DeltaKind::Associator, &mut src, target).expect("bounded");
        let d = sub(lhs, rhs);
        memo.insert(target, d.clone());
        d
    };
    // `p(x1, x2)` times the defect, at `x0^p x1^a x2^b`.
    let mut times_p = |k: i64, [p, a, b]: [FracExp; 3]| -> Option<PbwVector> {
        let mut acc: Option<PbwVector> = None;
        for i in 0..=k {
            let mut c = binom_int(k, i as u64);
            if i % 2 == 1 {
                c = -c;
            }
            let r = raw([p, a - FracExp::int(n * (k - i)), b - FracExp::int(n * i)]);
            add_opt(&mut acc, r, &c.into());
        }
        acc.and_then(nonzero)
    };
    let in_window = |k: i64, p: FracExp, a: FracExp, b: FracExp| {
        window.weight_ok(t.dw + s * (a + b - FracExp::int(n * k) + p + FracExp::ONE + t.hu + t.hv))
    };
    // On the delta support `p` has `x0`-degree `N k`; the `x0` scan extends by that much.
    let (lo0, hi0) = window.range(X0);
    let mut last = None;
    for k in 0..=kmax {
        let mut bad = None;
        let top = hi0.floor() + n * k;
        'scan: for p in lo0.ceil()..=top {
            let p = FracExp::int(p);
            for a in window.points(X1, 1) {
                for b in window.points(X2, 1) {
                    if !in_window(k, p, a, b) {
                        continue;
                    }
                    let acc = times_p(k, [p, a, b]);
                    if acc.is_some() {
                        bad = Some(witness(&[(X0, p), (X1, a), (X2, b)], &acc, &None));
                        break 'scan;
                    }
                }
            }
        }
        match bad {
            None => return base.pass(Some(k)),
            Some(w) => last = Some(w),
        }
    }
    base.fail(last.expect("kmax >= 0"))
}

/// `Y_W(phi(g)^{-L(0)} g u, x) = Y_W(u, phi(g) x)` with `g = sigma^g_power`
/// and `phi(g) = w_N^g_power`, for every `w` in `ws`.
pub fn check_equivariance<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    u: &PbwVector,
    g_power: u32,
    ws: &[PbwVector],
    window: &Window,
) -> CheckReport {
    let n = rep.order();
    let base = base_report("equivariance", rep, window)
        .param("u", u)
        .param("g", g_power)
        .param("w_count", ws.len());
    if rep.denominator() != 1 {
        return base.inconclusive("fractional exponents");
    }
    let s = rep.shift_slope();
    let mut gu_all = u.clone();
    for _ in 0..g_power {
        gu_all = voa.sigma(&gu_all);
    }
    for (h, uc) in weight_parts(u) {
        let h_int = h.as_int().expect("integral weight");
        let gu = weight_parts(&gu_all)
            .into_iter()
            .find(|(hh, _)| *hh == h)
            .map(|(_, v)| v)
            .unwrap_or_else(|| PbwVector::zero(u.sector()));
        let phi_h = cyc_root(n, -(g_power as i64) * h_int);
        for w in ws {
            let dw = rep.target_depth(w).expect("homogeneous target");
            for e in window.points(X, 1) {
                if !window.weight_ok(dw + s * (e + h)) {
                    continue;
                }
                let mut lhs = rep.coeff(&gu, e, w);
                lhs.scale(&phi_h);
                let mut rhs = rep.coeff(&uc, e, w);
                rhs.scale(&cyc_root(n, g_power as i64 * e.as_int().unwrap()));
                let (lhs, rhs) = (nonzero(lhs), nonzero(rhs));
                if !same(&lhs, &rhs) {
                    return base.param("w", w).fail(witness(&[(X, e)], &lhs, &rhs));
                }
            }
        }
    }
    base.pass(None)
}

/// `Y_W(sigma u, x)` equals the limit `x^{1/N} -> w_N x^{1/N}` of `Y_W(u, x)`,
/// and `Y_W(u, x) w` lies in `x^{j/N} W((x))` for `u` in `V^j`.
pub fn check_sigma_limit<R: VertexRep + ?Sized, V: Voa + ?Sized>(
    rep: &R,
    voa: &V,
    u: &PbwVector,
    ws: &[PbwVector],
    window: &Window,
) -> CheckReport {
    let n = rep.order() as i64;
    let base = base_report("sigma_limit", rep, window)
        .param("u", u)
        .param("w_count", ws.len());
    if !matches!(rep.structure(), RepTag::Twisted | RepTag::Untwisted) {
        return base.inconclusive("representation is not twisted");
    }
    let s = rep.shift_slope();
    let su = if n == 1 { u.clone() } else { voa.sigma(u) };
    let root = cyc_root(n as u32, 1);
    for w in ws {
        let dw = rep.target_depth(w).expect("homogeneous target");
        for e in window.points(X, n) {
            let m = e.mul_int(n).as_int().unwrap();
            let lhs = nonzero(rep.coeff(&su, e, w));
            let mut r = rep.coeff(u, e, w);
            r.scale(&root.pow(m));
            let rhs = nonzero(r);
            if !same(&lhs, &rhs) {
                return base.param("w", w).fail(witness(&[(X, e)], &lhs, &rhs));
            }
        }
        for (uc, j) in eigen_parts(rep, voa, u) {
            let h = uc.weight().unwrap();
            for e in window.points(X, n) {
                if (e - FracExp::new(j as i64, n)).is_integer() || !window.weight_ok(dw + s * (e + h)) {
                    continue;
                }
                let stray = nonzero(rep.coeff(&uc, e, w));
                if stray.is_some() {
                    return base
                        .param("w", w)
                        .param("support", format!("x^({j}/{n}) Z"))
                        .fail(witness(&[(X, e)], &stray, &None));
                }
            }
        }
    }
    base.pass(None)
}
