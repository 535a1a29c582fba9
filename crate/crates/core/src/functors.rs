//! Transforms between twisted modules and quasi modules:
//! `Y~_W(u, x) = Y_W(Phi(x) u, x^N)` and `Y^_W(u, x) = Y_W(Delta_N(x) u, x^{1/N})`,
//! with suites verifying the structure each output should carry.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use spin::RwLock;

use crate::coordchange::{CoordChange, CoordKind};
use crate::error::VoaError;
use crate::formal::{FracExp, VarId, Window};
use crate::heisenberg::{Partition, PbwVector, Sector};
use crate::voa::{
    check_equivariance, check_quasi_jacobi, check_sigma_limit, check_twisted_jacobi, check_vacuum,
    check_weak_associativity_twisted, check_weak_commutativity, CheckReport, RepTag, VertexRep, Voa, Witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    TwistedToQuasi,
    QuasiToTwisted,
    ModuleToQuasi,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::TwistedToQuasi => "TwistedToQuasi",
            Direction::QuasiToTwisted => "QuasiToTwisted",
            Direction::ModuleToQuasi => "ModuleToQuasi",
        }
    }
}

pub struct TransformSpec {
    pub direction: Direction,
    pub source: Arc<dyn VertexRep>,
    pub coord: Arc<CoordChange<dyn Voa>>,
}

type Key = (Partition, FracExp, Partition);

/// A representation whose coefficients are computed lazily from a source.
pub struct DerivedRep {
    direction: Direction,
    source: Arc<dyn VertexRep>,
    coord: Arc<CoordChange<dyn Voa>>,
    memo: RwLock<BTreeMap<Key, Arc<PbwVector>>>,
}

/// Builds the derived representation; the source must carry the structure
/// the direction starts from, for the same `N`.
pub fn transform(spec: TransformSpec) -> Result<Arc<DerivedRep>, VoaError> {
    let n = spec.coord.n();
    let src = &spec.source;
    match spec.direction {
        Direction::TwistedToQuasi => {
            if src.structure() != RepTag::Twisted || src.order() != n {
                return Err(VoaError::IncompatibleSource(
                    "TwistedToQuasi needs a twisted source of the same order",
                ));
            }
        }
        Direction::QuasiToTwisted => {
            if src.structure() != RepTag::Quasi || src.order() != n || src.denominator() != 1 {
                return Err(VoaError::IncompatibleSource(
                    "QuasiToTwisted needs a quasi source of the same order",
                ));
            }
        }
        Direction::ModuleToQuasi => {
            if src.structure() != RepTag::Untwisted || src.denominator() != 1 {
                return Err(VoaError::IncompatibleSource("ModuleToQuasi needs an untwisted module"));
            }
        }
    }
    Ok(Arc::new(DerivedRep {
        direction: spec.direction,
        source: spec.source,
        coord: spec.coord,
        memo: RwLock::new(BTreeMap::new()),
    }))
}

impl DerivedRep {
    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn source(&self) -> &Arc<dyn VertexRep> {
        &self.source
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }

    fn basis_coeff(&self, u: &Partition, e: FracExp, w: &PbwVector) -> Arc<PbwVector> {
        let pw = w.terms().next().expect("basis vector").0.clone();
        let key = (u.clone(), e, pw);
        if let Some(v) = self.memo.read().get(&key) {
            return v.clone();
        }
        let n = self.coord.n() as i64;
        let ub = PbwVector::basis(Sector::Untwisted, u.clone());
        let (kind, to_source): (CoordKind, &dyn Fn(FracExp) -> FracExp) = match self.direction {
            Direction::TwistedToQuasi | Direction::ModuleToQuasi => (CoordKind::Phi, &|d| d.div_int(n)),
            Direction::QuasiToTwisted => (CoordKind::DeltaN, &|d| d.mul_int(n)),
        };
        let series = self.coord.apply(kind, &ub).expect("basis vectors are homogeneous");
        let mut out = PbwVector::zero(self.source.target_sector());
        for (m, uf) in series.terms() {
            let c = self.source.coeff(uf, to_source(e - m[0]), w);
            if !c.is_zero() {
                out.add_scaled(&c, &crate::scalars::CycScalar::one());
            }
        }
        let v = Arc::new(out);
        self.memo.write().entry(key).or_insert(v).clone()
    }
}

impl VertexRep for DerivedRep {
    fn tag(&self) -> RepTag {
        RepTag::Derived
    }

    fn structure(&self) -> RepTag {
        match self.direction {
            Direction::TwistedToQuasi | Direction::ModuleToQuasi => RepTag::Quasi,
            Direction::QuasiToTwisted => RepTag::Twisted,
        }
    }

    fn label(&self) -> String {
        format!(
            "{}(N={}, {})",
            self.direction.name(),
            self.coord.n(),
            self.source.label()
        )
    }

    fn order(&self) -> u32 {
        self.coord.n()
    }

    fn denominator(&self) -> u32 {
        match self.direction {
            Direction::TwistedToQuasi | Direction::ModuleToQuasi => 1,
            Direction::QuasiToTwisted => self.source.denominator() * self.coord.n(),
        }
    }

    fn target_sector(&self) -> Sector {
        self.source.target_sector()
    }

    fn coeff(&self, u: &PbwVector, e: FracExp, w: &PbwVector) -> PbwVector {
        let mut out = PbwVector::zero(self.target_sector());
        for (pu, cu) in u.terms() {
            for (pw, cw) in w.terms() {
                let wb = PbwVector::basis(w.sector(), pw.clone());
                let v = self.basis_coeff(pu, e, &wb);
                if !v.is_zero() {
                    out.add_scaled(&v, &(cu * cw));
                }
            }
        }
        out
    }

    fn shift_slope(&self) -> FracExp {
        let n = self.coord.n() as i64;
        match self.direction {
            Direction::TwistedToQuasi | Direction::ModuleToQuasi => self.source.shift_slope().div_int(n),
            Direction::QuasiToTwisted => self.source.shift_slope().mul_int(n),
        }
    }

    fn target_depth(&self, w: &PbwVector) -> Option<FracExp> {
        self.source.target_depth(w)
    }
}

/// Target vectors up to the window's weight cap, depth 2 when uncapped.
fn target_basis(rep: &dyn VertexRep, window: &Window) -> Vec<PbwVector> {
    rep.target_basis_up_to(window.max_weight.unwrap_or(FracExp::int(2)))
}

/// One independent check, ready to run on any thread.
pub type CheckTask = Box<dyn Fn() -> CheckReport + Send + Sync>;

/// Vacuum, equivariance for every power of `sigma`, and quasi Jacobi for all
/// basis pairs up to `weight_cap` against every target vector in the window.
/// Equivariance reports are informational when `equivariance_informational`.
pub fn quasi_structure_tasks(
    rep: Arc<dyn VertexRep>,
    voa: Arc<dyn Voa>,
    weight_cap: i64,
    window: &Window,
    kmax: i64,
    equivariance_informational: bool,
) -> Vec<CheckTask> {
    let ws = Arc::new(target_basis(&*rep, window));
    let basis = voa.basis_up_to(weight_cap);
    let mut out: Vec<CheckTask> = Vec::new();
    {
        let (rep, voa, ws, window) = (rep.clone(), voa.clone(), ws.clone(), window.clone());
        out.push(Box::new(move || check_vacuum(&*rep, &*voa, &ws, &window)));
    }
    for u in &basis {
        for g in 0..rep.order() {
            let (rep, voa, ws, window, u) = (rep.clone(), voa.clone(), ws.clone(), window.clone(), u.clone());
            out.push(Box::new(move || {
                let r = check_equivariance(&*rep, &*voa, &u, g, &ws, &window);
                if equivariance_informational {
                    r.informational()
                } else {
                    r
                }
            }));
        }
    }
    for u in &basis {
        for v in &basis {
            for w in ws.iter() {
                let (rep, voa, window) = (rep.clone(), voa.clone(), window.clone());
                let (u, v, w) = (u.clone(), v.clone(), w.clone());
                out.push(Box::new(move || {
                    check_quasi_jacobi(&*rep, &*voa, &u, &v, &w, kmax, &window)
                }));
            }
        }
    }
    out
}

/// Vacuum, the `sigma`-limit and fractional support, weak commutativity, weak
/// associativity and the twisted Jacobi identity.
pub fn twisted_structure_tasks(
    rep: Arc<dyn VertexRep>,
    voa: Arc<dyn Voa>,
    weight_cap: i64,
    window: &Window,
    kmax: i64,
    lmax: i64,
) -> Vec<CheckTask> {
    let ws = Arc::new(target_basis(&*rep, window));
    let basis = voa.basis_up_to(weight_cap);
    let mut out: Vec<CheckTask> = Vec::new();
    {
        let (rep, voa, ws, window) = (rep.clone(), voa.clone(), ws.clone(), window.clone());
        out.push(Box::new(move || check_vacuum(&*rep, &*voa, &ws, &window)));
    }
    for u in &basis {
        let (rep, voa, ws, window, u) = (rep.clone(), voa.clone(), ws.clone(), window.clone(), u.clone());
        out.push(Box::new(move || check_sigma_limit(&*rep, &*voa, &u, &ws, &window)));
    }
    for u in &basis {
        for v in &basis {
            for w in ws.iter() {
                let ctx = Arc::new((
                    rep.clone(),
                    voa.clone(),
                    window.clone(),
                    u.clone(),
                    v.clone(),
                    w.clone(),
                ));
                let c = ctx.clone();
                out.push(Box::new(move || {
                    let (rep, _, window, u, v, w) = &*c;
                    check_weak_commutativity(&**rep, u, v, w, kmax, window)
                }));
                let c = ctx.clone();
                out.push(Box::new(move || {
                    let (rep, voa, window, u, v, w) = &*c;
                    check_weak_associativity_twisted(&**rep, &**voa, u, v, w, lmax, window)
                }));
                out.push(Box::new(move || {
                    let (rep, voa, window, u, v, w) = &*ctx;
                    check_twisted_jacobi(&**rep, &**voa, u, v, w, window)
                }));
            }
        }
    }
    out
}

/// Runs [`quasi_structure_tasks`] in order.
pub fn verify_quasi_structure(
    rep: Arc<dyn VertexRep>,
    voa: Arc<dyn Voa>,
    weight_cap: i64,
    window: &Window,
    kmax: i64,
    equivariance_informational: bool,
) -> Vec<CheckReport> {
    quasi_structure_tasks(rep, voa, weight_cap, window, kmax, equivariance_informational)
        .iter()
        .map(|t| t())
        .collect()
}

/// Runs [`twisted_structure_tasks`] in order.
pub fn verify_twisted_structure(
    rep: Arc<dyn VertexRep>,
    voa: Arc<dyn Voa>,
    weight_cap: i64,
    window: &Window,
    kmax: i64,
    lmax: i64,
) -> Vec<CheckReport> {
    twisted_structure_tasks(rep, voa, weight_cap, window, kmax, lmax)
        .iter()
        .map(|t| t())
        .collect()
}

/// Compares `QuasiToTwisted(TwistedToQuasi(source))` with `source` on every
/// basis `u` up to `weight_cap`, every window target vector and exponent.
pub fn roundtrip_check(
    source: Arc<dyn VertexRep>,
    coord: Arc<CoordChange<dyn Voa>>,
    weight_cap: i64,
    window: &Window,
) -> Result<CheckReport, VoaError> {
    let report = CheckReport::new("roundtrip")
        .param("rep", source.label())
        .param("N", coord.n())
        .param("weight_cap", weight_cap)
        .param("window", format!("[{},{}]", window.lo, window.hi));
    let quasi = transform(TransformSpec {
        direction: Direction::TwistedToQuasi,
        source: source.clone(),
        coord: coord.clone(),
    })?;
    let back = transform(TransformSpec {
        direction: Direction::QuasiToTwisted,
        source: quasi,
        coord: coord.clone(),
    })?;
    if back.denominator() != source.denominator() {
        return Ok(report.fail(Witness {
            at: Vec::new(),
            lhs: format!("denominator {}", back.denominator()),
            rhs: format!("denominator {}", source.denominator()),
        }));
    }
    let ws = target_basis(&*source, window);
    for u in coord.voa().basis_up_to(weight_cap) {
        for w in &ws {
            for e in window.points(VarId::X, source.denominator() as i64) {
                let lhs = back.coeff(&u, e, w);
                let rhs = source.coeff(&u, e, w);
                if lhs != rhs {
                    return Ok(report.param("u", &u).param("w", w).fail(Witness {
                        at: alloc::vec![(VarId::X, e)],
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    }));
                }
            }
        }
    }
    Ok(report.pass(None))
}
