use std::sync::Arc;

use voacal_core::coordchange::{CoordChange, Fault};
use voacal_core::error::VoaError;
use voacal_core::formal::{FracExp, Window};
use voacal_core::functors::{
    roundtrip_check, transform, verify_quasi_structure, verify_twisted_structure, Direction, TransformSpec,
};
use voacal_core::heisenberg::{AdjointModule, Heisenberg, PbwVector, Sector, TwistedFock};
use voacal_core::scalars::CycScalar;
use voacal_core::voa::{CheckReport, Status, VertexRep, Voa};

type Coord = Arc<CoordChange<dyn Voa>>;

fn setup(fault: Fault) -> (Arc<dyn Voa>, Arc<dyn VertexRep>, Coord) {
    let voa = Arc::new(Heisenberg::new());
    let fock: Arc<dyn VertexRep> = Arc::new(TwistedFock::new());
    let voa: Arc<dyn Voa> = voa;
    let cc: Coord = Arc::new(CoordChange::with_fault(voa.clone(), 2, fault));
    (voa, fock, cc)
}

type Rep = Arc<dyn VertexRep>;

fn quasi(fault: Fault) -> (Arc<dyn Voa>, Rep, Rep, Coord) {
    let (voa, fock, cc) = setup(fault);
    let q = transform(TransformSpec {
        direction: Direction::TwistedToQuasi,
        source: fock.clone(),
        coord: cc.clone(),
    })
    .unwrap();
    (voa, fock, q, cc)
}

fn assert_all_pass(reports: &[CheckReport]) {
    for r in reports {
        assert!(!r.is_failure(), "{r}");
    }
}

#[test]
fn generator_field_is_rescaled_twisted_field() {
    let (_, fock, q, _) = quasi(Fault::None);
    let a1 = PbwVector::monomial(Sector::Untwisted, &[1]);
    for w in fock.target_basis_up_to(FracExp::int(2)) {
        for k in -6..=6 {
            let got = q.coeff(&a1, FracExp::int(k), &w);
            let mut expect = PbwVector::zero(Sector::Twisted);
            expect.add_scaled(&fock.coeff(&a1, FracExp::new(k - 1, 2), &w), &CycScalar::from_int(2));
            assert_eq!(got, expect);
        }
        assert!(q.coeff(&a1, FracExp::new(1, 2), &w).is_zero());
    }
}

#[test]
fn vacuum_acts_as_identity() {
    let (voa, _, q, _) = quasi(Fault::None);
    let one = voa.vacuum();
    for w in q.target_basis_up_to(FracExp::int(2)) {
        assert_eq!(q.coeff(&one, FracExp::ZERO, &w), w);
        assert!(q.coeff(&one, FracExp::int(-1), &w).is_zero());
    }
}

#[test]
fn incompatible_sources_are_rejected() {
    let (voa, fock, cc) = setup(Fault::None);
    let bad = transform(TransformSpec {
        direction: Direction::QuasiToTwisted,
        source: fock,
        coord: cc.clone(),
    });
    assert!(matches!(bad, Err(VoaError::IncompatibleSource(_))));
    let adj: Arc<dyn VertexRep> = Arc::new(AdjointModule::new(Arc::new(Heisenberg::new())));
    let bad = transform(TransformSpec {
        direction: Direction::TwistedToQuasi,
        source: adj,
        coord: cc,
    });
    assert!(matches!(bad, Err(VoaError::IncompatibleSource(_))));
    drop(voa);
}

#[test]
fn roundtrip_recovers_source() {
    let (_, fock, cc) = setup(Fault::None);
    let window = Window::uniform(-6, 6).with_max_weight(FracExp::int(2));
    let r = roundtrip_check(fock, cc, 3, &window).unwrap();
    assert_eq!(r.status, Status::Pass, "{r}");
}

#[test]
fn roundtrip_detects_corrupted_phi() {
    let (_, fock, cc) = setup(Fault::PhiScale);
    let window = Window::uniform(-4, 4).with_max_weight(FracExp::int(1));
    let r = roundtrip_check(fock, cc, 1, &window).unwrap();
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn twisted_to_quasi_small_caps() {
    let (voa, _, q, _) = quasi(Fault::None);
    let window = Window::uniform(-4, 4).with_max_weight(FracExp::int(1));
    let reports = verify_quasi_structure(q.clone(), voa.clone(), 2, &window, 4, false);
    assert_all_pass(&reports);
    assert!(reports.iter().any(|r| r.identity == "quasi_jacobi" && r.passed()));
}

#[test]
fn corrupted_phi_fails_quasi_structure() {
    let (voa, _, q, _) = quasi(Fault::PhiScale);
    let window = Window::uniform(-4, 4).with_max_weight(FracExp::int(1));
    let reports = verify_quasi_structure(q.clone(), voa.clone(), 1, &window, 4, false);
    assert!(reports.iter().any(CheckReport::is_failure));
}

#[test]
fn quasi_to_twisted_small_caps() {
    let (voa, _, q, cc) = quasi(Fault::None);
    let t = transform(TransformSpec {
        direction: Direction::QuasiToTwisted,
        source: q,
        coord: cc,
    })
    .unwrap();
    assert_eq!(t.denominator(), 2);
    let window = Window::uniform(-4, 4).with_max_weight(FracExp::int(1));
    assert_all_pass(&verify_twisted_structure(t.clone(), voa.clone(), 2, &window, 8, 8));
}

#[test]
fn adjoint_module_to_quasi() {
    let voa = Arc::new(Heisenberg::new());
    let adj: Arc<dyn VertexRep> = Arc::new(AdjointModule::new(voa.clone()));
    let voa: Arc<dyn Voa> = voa;
    let cc = Arc::new(CoordChange::new(voa.clone(), 2));
    let q = transform(TransformSpec {
        direction: Direction::ModuleToQuasi,
        source: adj,
        coord: cc,
    })
    .unwrap();
    let window = Window::uniform(-4, 4).with_max_weight(FracExp::int(1));
    let reports = verify_quasi_structure(q.clone(), voa.clone(), 1, &window, 4, true);
    for r in &reports {
        if r.identity == "equivariance" {
            assert!(r.informational);
        } else {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }
}
