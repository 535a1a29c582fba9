use crate::error::FormalError;
use crate::scalars::{cyc_root, CycScalar};

use super::{binom_q, Coeff, FracExp};

/// The delta-function expressions appearing in Jacobi-type identities.
///
/// Targets are always written as exponents of `(x0, x1, x2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaKind {
    /// `x0^-1 delta((x1 - x2)/x0)` against `A(x1, x2)`.
    Forward,
    /// `x0^-1 delta((x2 - x1)/(-x0))` against `A(x1, x2)`.
    Backward,
    /// `x2^-1 delta((x1 - x0)/x2)` against `A(x0, x2)`.
    Associator,
    /// `x1^-1 delta((x2 + x0)/x1) ((x2 + x0)/x1)^(-j/n)` against `A(x0, x2)`.
    TwistedAssociator { j: i64, n: i64 },
    /// `x1^-1 delta(w_n^r ((x2 + x0)/x1)^(1/n))` against `A(x0, x2)`.
    RootSheet { r: i64, n: i64 },
}

/// A two-variable series given coefficientwise, with lower truncation bounds
/// per variable slot where they are known.
pub struct LowerTruncSeries<F> {
    pub lower: [Option<FracExp>; 2],
    pub coeff: F,
}

impl<F> LowerTruncSeries<F> {
    pub fn new(lower: [Option<FracExp>; 2], coeff: F) -> Self {
        LowerTruncSeries { lower, coeff }
    }
}

fn bound(lower: &[Option<FracExp>; 2], slot: usize) -> Result<FracExp, FormalError> {
    lower[slot].ok_or(FormalError::NotTruncated(slot))
}

fn accumulate<C: Coeff>(acc: &mut Option<C>, term: Option<C>, c: &CycScalar) {
    let Some(mut t) = term else { return };
    if c.is_zero() {
        return;
    }
    t.scale(c);
    match acc {
        Some(a) => a.accumulate(&t),
        None => *acc = Some(t),
    }
}

/// Coefficient of `x0^p x1^a x2^b` in `(delta expression) * A`.
///
/// The inner sum is cut off using the lower truncation bound of `A` in the
/// variable the binomial expansion runs over.
pub fn delta_coeff<C, F>(
    kind: DeltaKind,
    a: &mut LowerTruncSeries<F>,
    target: [FracExp; 3],
) -> Result<Option<C>, FormalError>
where
    C: Coeff,
    F: FnMut(FracExp, FracExp) -> Option<C>,
{
    let [p, e1, e2] = target;
    let mut acc: Option<C> = None;
    match kind {
        DeltaKind::Forward => {
            let lb = bound(&a.lower, 1)?;
            let Some(p) = p.as_int() else { return Ok(None) };
            let n = -p - 1;
            let top = (e2 - lb).floor();
            for i in 0..=top.max(-1) {
                let mut c = binom_q(&n.into(), i as u64);
                if i % 2 == 1 {
                    c = -c;
                }
                let t = (a.coeff)(e1 - FracExp::int(n - i), e2 - FracExp::int(i));
                accumulate(&mut acc, t, &c.into());
            }
        }
        DeltaKind::Backward => {
            let lb = bound(&a.lower, 0)?;
            let Some(p) = p.as_int() else { return Ok(None) };
            let n = -p - 1;
            let top = (e1 - lb).floor();
            for i in 0..=top.max(-1) {
                let mut c = binom_q(&n.into(), i as u64);
                if (n + i) % 2 != 0 {
                    c = -c;
                }
                let t = (a.coeff)(e1 - FracExp::int(i), e2 - FracExp::int(n - i));
                accumulate(&mut acc, t, &c.into());
            }
        }
        DeltaKind::Associator => {
            let lb = bound(&a.lower, 0)?;
            let Some(e1) = e1.as_int() else { return Ok(None) };
            let top = (p - lb).floor();
            for i in 0..=top.max(-1) {
                let mut c = binom_q(&(e1 + i).into(), i as u64);
                if i % 2 == 1 {
                    c = -c;
                }
                let t = (a.coeff)(p - FracExp::int(i), e2 + FracExp::int(e1 + i + 1));
                accumulate(&mut acc, t, &c.into());
            }
        }
        DeltaKind::TwistedAssociator { j, n } => {
            let lb = bound(&a.lower, 0)?;
            if !(e1 - FracExp::new(j, n)).is_integer() {
                return Ok(None);
            }
            let s = -e1 - FracExp::ONE;
            let top = (p - lb).floor();
            for i in 0..=top.max(-1) {
                let c = binom_q(&s.to_rational(), i as u64);
                let t = (a.coeff)(p - FracExp::int(i), e2 - s + FracExp::int(i));
                accumulate(&mut acc, t, &c.into());
            }
        }
        DeltaKind::RootSheet { r, n } => {
            let lb = bound(&a.lower, 0)?;
            let m = (e1 + FracExp::ONE).mul_int(-n);
            let Some(m) = m.as_int() else { return Ok(None) };
            let phase = cyc_root(n as u32, r * m);
            let s = -e1 - FracExp::ONE;
            let top = (p - lb).floor();
            for i in 0..=top.max(-1) {
                let c = binom_q(&s.to_rational(), i as u64);
                let t = (a.coeff)(p - FracExp::int(i), e2 - s + FracExp::int(i));
                accumulate(&mut acc, t, &(&CycScalar::from(c) * &phase));
            }
        }
    }
    Ok(acc.filter(|c| !c.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{binom_expand, ScalarSeries, Sign, VarId};

    fn unit(e1: FracExp, e2: FracExp) -> Option<CycScalar> {
        (e1 == FracExp::ZERO && e2 == FracExp::ZERO).then(CycScalar::one)
    }

    fn ex(p: i64, a: i64, b: i64) -> [FracExp; 3] {
        [FracExp::int(p), FracExp::int(a), FracExp::int(b)]
    }

    fn coeff(kind: DeltaKind, t: [FracExp; 3]) -> CycScalar {
        let mut a = LowerTruncSeries::new([Some(FracExp::ZERO); 2], unit);
        delta_coeff(kind, &mut a, t).unwrap().unwrap_or_else(CycScalar::zero)
    }

    #[test]
    fn examples() {
        assert!(coeff(DeltaKind::Forward, ex(-1, 0, 0)).is_one());
        assert!(coeff(DeltaKind::Forward, ex(-2, 1, 0)).is_one());
        // n = 2 term of sum_n x2^{-n-1} (x1 - x0)^n sits at x2^{-3}
        assert_eq!(coeff(DeltaKind::Associator, ex(1, 1, -3)), CycScalar::from_int(-2));
        assert!(coeff(DeltaKind::Associator, ex(1, 1, -2)).is_zero());
    }

    #[test]
    fn untruncated_source_is_rejected() {
        let mut a = LowerTruncSeries::new([Some(FracExp::ZERO), None], unit);
        let r: Result<Option<CycScalar>, _> = delta_coeff(DeltaKind::Forward, &mut a, ex(-1, 0, 0));
        assert_eq!(r, Err(FormalError::NotTruncated(1)));
    }

    /// Brute force: materialise sum_{n in [-r, r]} x0^{-n-1} (x1 -+ x2)^n with
    /// each binomial truncated at order m, times a monomial source.
    fn brute(kind: DeltaKind, src: (i64, i64), r: i64, m: u64) -> ScalarSeries {
        let vars = [VarId::X0, VarId::X1, VarId::X2];
        let mut out = ScalarSeries::new(&vars);
        for n in -r..=r {
            let (first, second, sign, sgn_total) = match kind {
                DeltaKind::Forward => (VarId::X1, VarId::X2, Sign::Minus, 1),
                DeltaKind::Backward => (VarId::X2, VarId::X1, Sign::Minus, if n % 2 == 0 { 1 } else { -1 }),
                DeltaKind::Associator => (VarId::X1, VarId::X0, Sign::Minus, 1),
                _ => unreachable!(),
            };
            let b = binom_expand(sign, FracExp::int(n), m, first, second);
            for (mono, c) in b.terms() {
                let mut e = [FracExp::ZERO; 3];
                let idx = |v: VarId| vars.iter().position(|&w| w == v).unwrap();
                e[idx(first)] = mono[0];
                e[idx(second)] = mono[1];
                match kind {
                    DeltaKind::Associator => e[2] = e[2] + FracExp::int(-n - 1),
                    _ => e[0] = e[0] + FracExp::int(-n - 1),
                }
                // monomial source in the kind's two variables
                match kind {
                    DeltaKind::Associator => {
                        e[0] = e[0] + FracExp::int(src.0);
                        e[2] = e[2] + FracExp::int(src.1);
                    }
                    _ => {
                        e[1] = e[1] + FracExp::int(src.0);
                        e[2] = e[2] + FracExp::int(src.1);
                    }
                }
                let c = c * &CycScalar::from_int(sgn_total);
                out.add_term(&e, c);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_on_window() {
        for kind in [DeltaKind::Forward, DeltaKind::Backward, DeltaKind::Associator] {
            for src in [(0, 0), (1, -1), (-2, 3)] {
                let table = brute(kind, src, 12, 12);
                let mut a = LowerTruncSeries::new(
                    [Some(FracExp::int(src.0)), Some(FracExp::int(src.1))],
                    |e1: FracExp, e2: FracExp| {
                        (e1 == FracExp::int(src.0) && e2 == FracExp::int(src.1)).then(CycScalar::one)
                    },
                );
                for p in -3..=3 {
                    for x1 in -3..=3 {
                        for x2 in -3..=3 {
                            let got = delta_coeff(kind, &mut a, ex(p, x1, x2))
                                .unwrap()
                                .unwrap_or_else(CycScalar::zero);
                            let want = table.get(&ex(p, x1, x2)).cloned().unwrap_or_else(CycScalar::zero);
                            assert_eq!(got, want, "{kind:?} src {src:?} at {p} {x1} {x2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn two_term_identity_for_x2_monomials() {
        // x0^-1 d((x1-x2)/x0) A - x0^-1 d((x2-x1)/-x0) A = x2^-1 d((x1-x0)/x2) A
        // for A = x2^t, which is a function of (x1, x2) and of (x0, x2) alike.
        for t in -2..=2 {
            let src12 =
                move |e1: FracExp, e2: FracExp| (e1 == FracExp::ZERO && e2 == FracExp::int(t)).then(CycScalar::one);
            let mut a12 = LowerTruncSeries::new([Some(FracExp::ZERO), Some(FracExp::int(t))], src12);
            let mut a02 = LowerTruncSeries::new([Some(FracExp::ZERO), Some(FracExp::int(t))], src12);
            for p in -4..=4 {
                for x1 in -4..=4 {
                    for x2 in -4..=4 {
                        let z = CycScalar::zero;
                        let f = delta_coeff(DeltaKind::Forward, &mut a12, ex(p, x1, x2))
                            .unwrap()
                            .unwrap_or_else(z);
                        let b = delta_coeff(DeltaKind::Backward, &mut a12, ex(p, x1, x2))
                            .unwrap()
                            .unwrap_or_else(z);
                        let r = delta_coeff(DeltaKind::Associator, &mut a02, ex(p, x1, x2))
                            .unwrap()
                            .unwrap_or_else(z);
                        assert_eq!(&f - &b, r);
                    }
                }
            }
        }
    }

    #[test]
    fn twisted_associator_untwisted_case() {
        // j = 0, N = 1: x1^-1 d((x2+x0)/x1) equals x2^-1 d((x1-x0)/x2) on sources
        // depending on x2 only.
        let src = |e1: FracExp, e2: FracExp| (e1 == FracExp::ZERO && e2 == FracExp::int(1)).then(CycScalar::one);
        let mut a = LowerTruncSeries::new([Some(FracExp::ZERO), Some(FracExp::int(1))], src);
        let mut b = LowerTruncSeries::new([Some(FracExp::ZERO), Some(FracExp::int(1))], src);
        for p in 0..=3 {
            for x1 in -3..=3 {
                for x2 in -3..=3 {
                    let t = ex(p, x1, x2);
                    let u: Option<CycScalar> =
                        delta_coeff(DeltaKind::TwistedAssociator { j: 0, n: 1 }, &mut a, t).unwrap();
                    let v: Option<CycScalar> = delta_coeff(DeltaKind::Associator, &mut b, t).unwrap();
                    assert_eq!(u, v, "{p} {x1} {x2}");
                }
            }
        }
    }
}
