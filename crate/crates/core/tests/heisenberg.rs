use voacal_core::formal::{binom_q, FracExp, Window};
use voacal_core::heisenberg::{
    alpha_mode, delta_coefficients, untwisted_mode, AdjointModule, Heisenberg, Partition, PbwVector, Sector,
    TwistedFock,
};
use voacal_core::scalars::{CycScalar, Rational};
use voacal_core::voa::{
    check_sigma_limit, check_twisted_jacobi, check_vacuum, check_weak_associativity_twisted, check_weak_commutativity,
    Status, VertexRep, Voa,
};

use std::sync::Arc;

fn u(parts: &[u16]) -> PbwVector {
    PbwVector::monomial(Sector::Untwisted, parts)
}

fn t(parts: &[u16]) -> PbwVector {
    PbwVector::monomial(Sector::Twisted, parts)
}

fn scaled(v: &PbwVector, n: i64, d: i64) -> PbwVector {
    let mut out = PbwVector::zero(v.sector());
    out.add_scaled(v, &CycScalar::new_rational(n, d));
    out
}

/// Brute-force normal-ordered product: sums over all mode tuples, applying
/// annihilators to `w` first and creators afterwards.
fn normal_ordered(parts: &[u16], e: FracExp, w: &PbwVector) -> PbwVector {
    let den = w.sector().den();
    let depth = w.max_weight().unwrap_or(FracExp::ZERO);
    let wt: i64 = parts.iter().map(|&p| p as i64).sum();
    // annihilators are capped by the depth of w, creators by the output weight
    let e_abs = if e < FracExp::ZERO { -e } else { e };
    let bound = (depth + FracExp::int(wt) + e_abs).mul_int(den).floor() + 1;
    let modes: Vec<FracExp> = (-bound..=bound)
        .filter(|&t| t != 0 && w.sector().admits(t.abs()))
        .map(|t| FracExp::new(t, den))
        .collect();
    let mut out = PbwVector::zero(w.sector());
    let mut tuple = vec![FracExp::ZERO; parts.len()];
    fn rec(
        i: usize,
        parts: &[u16],
        modes: &[FracExp],
        tuple: &mut Vec<FracExp>,
        e: FracExp,
        w: &PbwVector,
        out: &mut PbwVector,
    ) {
        if i == parts.len() {
            let total: FracExp = tuple
                .iter()
                .zip(parts)
                .fold(FracExp::ZERO, |acc, (m, &n)| acc - *m - FracExp::int(n as i64));
            if total != e {
                return;
            }
            let mut coef = Rational::one();
            for (m, &n) in tuple.iter().zip(parts) {
                coef = &coef * &binom_q(&(-*m - FracExp::ONE).to_rational(), n as u64 - 1);
            }
            if coef.is_zero() {
                return;
            }
            let mut v = w.clone();
            for m in tuple.iter().filter(|m| **m > FracExp::ZERO) {
                v = alpha_mode(*m, &v).unwrap();
            }
            for m in tuple.iter().filter(|m| **m < FracExp::ZERO) {
                v = alpha_mode(*m, &v).unwrap();
            }
            out.add_scaled(&v, &CycScalar::from(coef));
            return;
        }
        for &m in modes {
            tuple[i] = m;
            rec(i + 1, parts, modes, tuple, e, w, out);
        }
    }
    rec(0, parts, &modes, &mut tuple, e, w, &mut out);
    out
}

#[test]
fn mode_examples() {
    let voa = Heisenberg::new();
    let a1 = u(&[1]);
    assert_eq!(untwisted_mode(&voa, &a1, 1, &a1), PbwVector::vacuum());
    for k in -4..4 {
        let v = u(&[2, 1]);
        let expect = if k == -1 {
            v.clone()
        } else {
            PbwVector::zero(Sector::Untwisted)
        };
        assert_eq!(untwisted_mode(&voa, &PbwVector::vacuum(), k, &v), expect);
    }
    let v = u(&[1, 2]);
    assert_eq!(untwisted_mode(&voa, &PbwVector::conformal(), 1, &v), scaled(&v, 3, 1));
}

#[test]
fn modes_match_brute_force_normal_ordering() {
    let voa = Heisenberg::new();
    let us: Vec<Partition> = (0..=3).flat_map(|n| Partition::all(n, Sector::Untwisted)).collect();
    let vs: Vec<Partition> = (0..=2).flat_map(|n| Partition::all(n, Sector::Untwisted)).collect();
    for pu in &us {
        for pv in &vs {
            let wt = pu.units() + pv.units();
            for e in -wt..=2 {
                let v = PbwVector::basis(Sector::Untwisted, pv.clone());
                let fast = voa.field_coeff(&PbwVector::basis(Sector::Untwisted, pu.clone()), FracExp::int(e), &v);
                let slow = normal_ordered(pu.parts(), FracExp::int(e), &v);
                assert_eq!(fast, slow, "u {pu:?} v {pv:?} e {e}");
            }
        }
    }
}

#[test]
fn virasoro_examples() {
    let voa = Heisenberg::new();
    assert!(voa.virasoro(1, &u(&[1])).is_zero());
    let v = u(&[2, 1]);
    assert_eq!(voa.virasoro(0, &v), scaled(&v, 3, 1));
    assert!(voa.virasoro(-1, &PbwVector::vacuum()).is_zero());
    // L(2) omega = (c/2) 1 with c = 1
    assert_eq!(
        voa.virasoro(2, &PbwVector::conformal()),
        scaled(&PbwVector::vacuum(), 1, 2)
    );
}

#[test]
fn virasoro_relations_with_unit_central_charge() {
    let voa = Heisenberg::new();
    for v in voa.basis_up_to(4) {
        for m in -3i64..=3 {
            for n in -3i64..=3 {
                let lhs = voa
                    .virasoro(m, &voa.virasoro(n, &v))
                    .sub(&voa.virasoro(n, &voa.virasoro(m, &v)));
                let mut rhs = scaled(&voa.virasoro(m + n, &v), m - n, 1);
                if m + n == 0 {
                    rhs.add_scaled(&v, &CycScalar::new_rational(m * m * m - m, 12));
                }
                assert_eq!(lhs, rhs, "m {m} n {n} v {v}");
            }
        }
    }
}

#[test]
fn sigma_is_an_automorphism() {
    let voa = Heisenberg::new();
    let basis = voa.basis_up_to(3);
    for a in &basis {
        for b in &basis {
            for k in -4..6 {
                let lhs = voa.sigma(&voa.mode(a, k, b));
                let rhs = voa.mode(&voa.sigma(a), k, &voa.sigma(b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn delta_coefficient_c11_from_closed_form() {
    // d^2/dy dz of -log((sqrt(1+y)+sqrt(1+z))/2) is
    // 1 / (4 sqrt(1+y) sqrt(1+z) (sqrt(1+y)+sqrt(1+z))^2), which is 1/16 at 0.
    let oracle = &Rational::new(1, 4) / &Rational::from_int(4);
    let c = delta_coefficients(4);
    assert_eq!(c[&(1, 1)], oracle);
    for (&(m, n), v) in c.iter() {
        assert_eq!(c.get(&(n, m)), Some(v), "symmetry");
    }
    // z = 0 slice: -log((1 + sqrt(1+y))/2) = -y/4 + 3y^2/32 + ...
    assert_eq!(c[&(1, 0)], Rational::new(-1, 4));
    assert_eq!(c[&(2, 0)], Rational::new(3, 32));
}

#[test]
fn twisted_vacuum_weight_is_one_sixteenth() {
    let tw = TwistedFock::new();
    assert_eq!(tw.vacuum_weight(), &(&Rational::new(1, 4) / &Rational::from_int(4)));
    let omega = PbwVector::conformal();
    let corrected = tw.corrected(&Partition::new(&[1, 1]));
    // e^{D} omega = omega + (1/16) x^-2 1
    let by_d: Vec<(i64, PbwVector)> = corrected.iter().cloned().collect();
    assert_eq!(by_d.len(), 2);
    assert_eq!(scaled(&by_d[0].1, 1, 2), omega);
    assert_eq!(by_d[1].0, 2);
    assert_eq!(scaled(&by_d[1].1, 1, 2), scaled(&PbwVector::vacuum(), 1, 16));
}

#[test]
fn twisted_generator_is_the_twisted_field() {
    let tw = TwistedFock::new();
    let a1 = u(&[1]);
    for w in tw.target_basis_up_to(FracExp::int(2)) {
        for k in -12..=12 {
            let e = FracExp::new(k, 2);
            let got = tw.coeff(&a1, e, &w);
            let want = if e.is_integer() {
                PbwVector::zero(Sector::Twisted)
            } else {
                alpha_mode(-e - FracExp::ONE, &w).unwrap()
            };
            assert_eq!(got, want, "e {e} w {w}");
        }
    }
}

#[test]
fn twisted_virasoro_relations() {
    let tw = TwistedFock::new();
    for w in tw.target_basis_up_to(FracExp::new(5, 2)) {
        for m in -2i64..=2 {
            for n in -2i64..=2 {
                let lhs = tw
                    .virasoro(m, &tw.virasoro(n, &w))
                    .sub(&tw.virasoro(n, &tw.virasoro(m, &w)));
                let mut rhs = scaled(&tw.virasoro(m + n, &w), m - n, 1);
                if m + n == 0 {
                    rhs.add_scaled(&w, &CycScalar::new_rational(m * m * m - m, 12));
                }
                assert_eq!(lhs, rhs, "m {m} n {n} w {w}");
            }
        }
        // L(0) = 1/16 + depth
        let d = w.weight().unwrap();
        let want = &Rational::new(1, 16) + &d.to_rational();
        let mut expect = PbwVector::zero(Sector::Twisted);
        expect.add_scaled(&w, &CycScalar::from(want));
        assert_eq!(tw.virasoro(0, &w), expect);
    }
}

#[test]
fn twisted_mode_half_integer_action() {
    let w = t(&[1, 1]);
    assert_eq!(alpha_mode(FracExp::new(1, 2), &w).unwrap(), t(&[1]));
}

#[test]
fn weak_commutativity_orders() {
    let voa = Arc::new(Heisenberg::new());
    let adj = AdjointModule::new(voa.clone());
    let win = Window::default();
    let a1 = u(&[1]);
    for w in voa.basis_up_to(2) {
        let r = check_weak_commutativity(&adj, &PbwVector::vacuum(), &PbwVector::vacuum(), &w, 8, &win);
        assert_eq!(r.k, Some(0));
        let r = check_weak_commutativity(&adj, &a1, &a1, &w, 8, &win);
        assert_eq!((r.status, r.k), (Status::Pass, Some(2)), "{r}");
        let r = check_weak_commutativity(&adj, &a1, &PbwVector::conformal(), &w, 8, &win);
        assert_eq!((r.status, r.k), (Status::Pass, Some(2)), "{r}");
    }
}

#[test]
fn untwisted_jacobi_on_small_weights() {
    let voa = Arc::new(Heisenberg::new());
    let adj = AdjointModule::new(voa.clone());
    let win = Window::uniform(-4, 4).with_max_weight(FracExp::int(4));
    let basis = voa.basis_up_to(2);
    for a in &basis {
        for b in &basis {
            for w in voa.basis_up_to(1) {
                let r = check_twisted_jacobi(&adj, voa.as_ref(), a, b, &w, &win);
                assert_eq!(r.status, Status::Pass, "{r}");
            }
        }
    }
}

#[test]
fn twisted_fock_identities_on_generators() {
    let voa = Heisenberg::new();
    let tw = TwistedFock::new();
    let win = Window::default();
    let a1 = u(&[1]);
    let w0 = PbwVector::twisted_vacuum();
    let ws = tw.target_basis_up_to(FracExp::int(2));
    assert_eq!(ws.len(), 7);
    assert!(check_vacuum(&tw, &voa, &ws, &win).passed());
    let r = check_twisted_jacobi(&tw, &voa, &a1, &a1, &w0, &win);
    assert!(r.passed(), "{r}");
    let r = check_weak_commutativity(&tw, &a1, &a1, &w0, 8, &win);
    assert_eq!(r.k, Some(2), "{r}");
    let r = check_weak_associativity_twisted(&tw, &voa, &a1, &PbwVector::vacuum(), &w0, 8, &win);
    assert!(r.passed(), "{r}");
    let r = check_weak_associativity_twisted(&tw, &voa, &a1, &a1, &w0, 3, &win);
    assert!(r.passed(), "{r}");
    for h in 0..=3 {
        for v in voa.basis(h) {
            let r = check_sigma_limit(&tw, &voa, &v, &ws, &win);
            assert!(r.passed(), "{r}");
        }
    }
    let r = check_twisted_jacobi(&tw, &voa, &PbwVector::conformal(), &u(&[2, 1]), &t(&[1]), &win);
    assert!(r.passed(), "{r}");
}
