//! The two substitution conventions for `z`:
//!
//! * `z = (x + x0)^alpha - x^alpha` with `x >> x0`: every power `z^n`, negative
//!   ones included, is expanded as `x^{n(alpha-1)} x0^n (alpha + x0 f)^n`.
//! * `z^alpha` with `z = x0^k + x q(x0, x)` and `x0 >> x`.
//!
//! Expanding `(z - x^alpha)^n` binomially in `z` first and only then setting
//! `z = (x + x0)^alpha` diverges for negative `n`; [`naive_power`] refuses it.

use alloc::collections::BTreeMap;

use crate::error::FormalError;
use crate::scalars::{CycScalar, Rational};

use super::{binom_int, binom_q, Coeff, FracExp, LaurentVec, ScalarSeries, VarId};

/// `sum_n z^n c_n` with each `c_n` a series in a single variable `x`.
pub type ZSeries<C> = BTreeMap<i64, LaurentVec<C>>;

/// `x0 f = sum_{i>=2} binom(alpha, i) x^{1-i} x0^{i-1}`, truncated at `x0^max`.
fn x0_f(alpha: &Rational, max: i64, x: VarId, x0: VarId) -> ScalarSeries {
    let mut g = ScalarSeries::new(&[x, x0]);
    for i in 2..=max + 1 {
        let c = binom_q(alpha, i as u64);
        g.add_term(&[FracExp::int(1 - i), FracExp::int(i - 1)], CycScalar::from_rational(c));
    }
    g
}

/// `((x + x0)^alpha - x^alpha)^n` under `x >> x0`, through `x0^x0_order`.
/// Variables of the result: `[x, x0]`.
pub fn subst_power_x_dominant(
    alpha: FracExp,
    n: i64,
    x0_order: i64,
    x: VarId,
    x0: VarId,
) -> Result<ScalarSeries, FormalError> {
    if alpha == FracExp::ZERO {
        return Err(FormalError::ZeroExponent(alpha));
    }
    let vars = [x, x0];
    let mut out = ScalarSeries::new(&vars);
    // Relative order needed inside the bracket.
    let rel = x0_order - n;
    if rel < 0 {
        return Ok(out);
    }
    let a = alpha.to_rational();
    let g = x0_f(&a, rel, x, x0);
    let mut g_pow = ScalarSeries::one(&vars);
    for i in 0..=rel {
        let c = &binom_int(n, i as u64) * &a.pow(n - i);
        if !c.is_zero() {
            let mut t = g_pow.clone();
            t.scale(&CycScalar::from_rational(c));
            out.add_assign(&t);
        }
        g_pow = g_pow.mul(&g);
        g_pow.truncate_above(1, FracExp::int(rel));
    }
    out = out.shift(&[(alpha - FracExp::ONE).mul_int(n), FracExp::int(n)]);
    out.truncate_above(1, FracExp::int(x0_order));
    Ok(out)
}

/// Substitutes `z = (x + x0)^alpha - x^alpha` (`x >> x0`) into `s`.
///
/// `s` must carry every power `z^n` with `n <= x0_order`; powers above that
/// cannot reach the truncation order. The coefficients of `s` live in the
/// single variable `x`; the result lives in `[x, x0]`.
pub fn subst_x_dominant<C: Coeff>(
    s: &ZSeries<C>,
    alpha: FracExp,
    x0_order: i64,
    x: VarId,
    x0: VarId,
) -> Result<LaurentVec<C>, FormalError> {
    let mut out = LaurentVec::new(&[x, x0]);
    for (&n, c) in s.range(..=x0_order) {
        let zpow = subst_power_x_dominant(alpha, n, x0_order, x, x0)?;
        for (m1, coeff) in c.terms() {
            for (m2, sc) in zpow.terms() {
                out.add_term(&[m1[0] + m2[0], m2[1]], coeff.scaled(sc));
            }
        }
    }
    Ok(out)
}

/// Expands `z^alpha` at `z = p(x0, x)` under `x0 >> x`, through `x^x_order`.
///
/// `p` (variables `[x0, x]`) must be a polynomial whose `x`-free part is the
/// single monomial `x0^k`, `k >= 1`.
pub fn subst_x0_dominant(alpha: FracExp, p: &ScalarSeries, x_order: i64) -> Result<ScalarSeries, FormalError> {
    let vars: [VarId; 2] = [p.vars()[0], p.vars()[1]];
    let mut k = None;
    let mut rest = ScalarSeries::new(&vars);
    for (m, c) in p.terms() {
        let (Some(e0), Some(e1)) = (m[0].as_int(), m[1].as_int()) else {
            return Err(FormalError::MalformedBase);
        };
        if e0 < 0 || e1 < 0 {
            return Err(FormalError::MalformedBase);
        }
        if e1 == 0 {
            if k.is_some() || !c.is_one() || e0 < 1 {
                return Err(FormalError::MalformedBase);
            }
            k = Some(e0);
        } else {
            rest.add_term(m, c.clone());
        }
    }
    let k = k.ok_or(FormalError::MalformedBase)?;
    let a = alpha.to_rational();
    let mut out = ScalarSeries::new(&vars);
    let mut y_pow = ScalarSeries::one(&vars);
    for i in 0..=x_order.max(-1) {
        let c = binom_q(&a, i as u64);
        if !c.is_zero() {
            let mut t = y_pow.shift(&[(alpha - FracExp::int(i)).mul_int(k), FracExp::ZERO]);
            t.scale(&CycScalar::from_rational(c));
            out.add_assign(&t);
        }
        y_pow = y_pow.mul(&rest);
        y_pow.truncate_above(1, FracExp::int(x_order));
    }
    out.truncate_above(1, FracExp::int(x_order));
    Ok(out)
}

/// Rejects the binomial-first expansion of `(z - x^alpha)^n|_{z=(x+x0)^alpha}`
/// whenever some coefficient would collect infinitely many contributions.
///
/// For `n < 0` every `binom(n, i)` is nonzero, so the `x^{n alpha} x0^0`
/// coefficient receives a term from each `i`.
pub fn divergence_guard(alpha: FracExp, n: i64) -> Result<(), FormalError> {
    if n < 0 {
        Err(FormalError::DivergentSubstitution { alpha, n })
    } else {
        Ok(())
    }
}

/// `sum_i sum_j (-1)^i binom(n, i) binom((n-i) alpha, j) x^{n alpha - j} x0^j`,
/// defined only when the sum over `i` is finite.
pub fn naive_power(alpha: FracExp, n: i64, x0_order: i64, x: VarId, x0: VarId) -> Result<ScalarSeries, FormalError> {
    divergence_guard(alpha, n)?;
    let mut out = ScalarSeries::new(&[x, x0]);
    for i in 0..=n {
        let outer = binom_int(n, i as u64);
        let top = alpha.mul_int(n - i).to_rational();
        for j in 0..=x0_order.max(-1) {
            let mut c = &outer * &binom_q(&top, j as u64);
            if i % 2 == 1 {
                c = -c;
            }
            out.add_term(
                &[alpha.mul_int(n) - FracExp::int(j), FracExp::int(j)],
                CycScalar::from_rational(c),
            );
        }
    }
    Ok(out)
}

fn rescale_by<C: Coeff>(s: &LaurentVec<C>, var: VarId, alpha: &CycScalar, den: i64) -> LaurentVec<C> {
    let idx = s.var_index(var).expect("variable not present");
    let mut out = LaurentVec::new(s.vars());
    for (m, c) in s.terms() {
        let e = m[idx].mul_int(den);
        let k = e.as_int().expect("exponent outside (1/N)Z");
        out.add_term(m, c.scaled(&alpha.pow(k)));
    }
    out
}

/// The formal limit `var^{1/N} -> alpha var^{1/N}` for an N-th root of unity:
/// the coefficient at exponent m/N picks up `alpha^m`.
pub fn rescale_fractional<C: Coeff>(
    s: &LaurentVec<C>,
    var: VarId,
    alpha: &CycScalar,
    n: u32,
) -> Result<LaurentVec<C>, FormalError> {
    if !alpha.pow(n as i64).is_one() {
        return Err(FormalError::NotARoot(n));
    }
    Ok(rescale_by(s, var, alpha, n as i64))
}

/// `var -> alpha var` on a series with integral exponents in `var`.
pub fn rescale<C: Coeff>(s: &LaurentVec<C>, var: VarId, alpha: &CycScalar) -> LaurentVec<C> {
    rescale_by(s, var, alpha, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::{binom_expand, Sign};
    use crate::scalars::cyc_root;

    const X: VarId = VarId::X;
    const X0: VarId = VarId::X0;

    fn q(n: i64, d: i64) -> FracExp {
        FracExp::new(n, d)
    }

    fn rat(n: i64, d: i64) -> CycScalar {
        CycScalar::new_rational(n, d)
    }

    #[test]
    fn first_power_of_square_root_shift() {
        let s = subst_power_x_dominant(q(1, 2), 1, 2, X, X0).unwrap();
        let mut want = ScalarSeries::new(&[X, X0]);
        want.add_term(&[q(-1, 2), FracExp::int(1)], rat(1, 2));
        want.add_term(&[q(-3, 2), FracExp::int(2)], rat(-1, 8));
        assert_eq!(s, want);
    }

    #[test]
    fn zero_alpha_rejected() {
        assert!(subst_power_x_dominant(FracExp::ZERO, 1, 2, X, X0).is_err());
    }

    /// (x^alpha + z0)^h as a z0-series truncated at z0^order.
    fn shifted_power(alpha: FracExp, h: FracExp, order: i64) -> ZSeries<CycScalar> {
        let mut s = ZSeries::new();
        for i in 0..=order {
            let c = binom_q(&h.to_rational(), i as u64);
            let e = alpha * (h - FracExp::int(i));
            s.insert(i, ScalarSeries::monomial(&[X], &[e], CycScalar::from_rational(c)));
        }
        s
    }

    #[test]
    fn square_of_root_recovers_sum() {
        let s = shifted_power(q(1, 2), FracExp::int(2), 6);
        let out = subst_x_dominant(&s, q(1, 2), 6, X, X0).unwrap();
        let want = binom_expand(Sign::Plus, FracExp::int(1), 6, X, X0);
        assert_eq!(out, want);
    }

    #[test]
    fn power_composition_matches_direct() {
        for (alpha, h) in [
            (q(1, 3), FracExp::int(2)),
            (q(2, 3), q(3, 2)),
            (q(1, 2), FracExp::int(-1)),
        ] {
            let s = shifted_power(alpha, h, 6);
            let out = subst_x_dominant(&s, alpha, 6, X, X0).unwrap();
            let want = binom_expand(Sign::Plus, alpha * h, 6, X, X0);
            assert_eq!(out, want, "alpha {alpha} h {h}");
        }
    }

    #[test]
    fn powers_invert_each_other() {
        for den in 1..=4 {
            for num in -4..=4 {
                if num == 0 {
                    continue;
                }
                let alpha = q(num, den);
                for n in 1..=3 {
                    let t = 5;
                    let a = subst_power_x_dominant(alpha, n, t + n, X, X0).unwrap();
                    let b = subst_power_x_dominant(alpha, -n, t - n, X, X0).unwrap();
                    let mut prod = a.mul(&b);
                    prod.truncate_above(1, FracExp::int(t));
                    assert_eq!(prod, ScalarSeries::one(&[X, X0]), "alpha {alpha} n {n}");
                }
            }
        }
    }

    #[test]
    fn engines_agree_on_polynomials() {
        for alpha in [FracExp::int(1), FracExp::int(2), FracExp::int(3)] {
            for n in 0..=3 {
                let a = subst_power_x_dominant(alpha, n, 8, X, X0).unwrap();
                let b = naive_power(alpha, n, 8, X, X0).unwrap();
                assert_eq!(a, b, "alpha {alpha} n {n}");
            }
        }
        // Fractional alpha, nonnegative n: still a finite sum over i.
        let a = subst_power_x_dominant(q(1, 2), 2, 6, X, X0).unwrap();
        let b = naive_power(q(1, 2), 2, 6, X, X0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn negative_naive_power_diverges() {
        assert_eq!(
            naive_power(FracExp::int(1), -1, 4, X, X0),
            Err(FormalError::DivergentSubstitution {
                alpha: FracExp::int(1),
                n: -1
            })
        );
        assert!(naive_power(q(1, 2), -2, 4, X, X0).is_err());
        assert!(naive_power(FracExp::int(1), 2, 4, X, X0).is_ok());
    }

    #[test]
    fn x0_dominant_standard_binomial() {
        let mut p = ScalarSeries::new(&[X0, X]);
        p.add_term(&[FracExp::int(1), FracExp::ZERO], CycScalar::one());
        p.add_term(&[FracExp::ZERO, FracExp::int(1)], CycScalar::one());
        for alpha in [q(1, 2), q(-2, 3), FracExp::int(3)] {
            let out = subst_x0_dominant(alpha, &p, 7).unwrap();
            assert_eq!(out, binom_expand(Sign::Plus, alpha, 7, X0, X));
        }
    }

    fn x0_plus_x_pow(n: i64) -> ScalarSeries {
        binom_expand(Sign::Plus, FracExp::int(n), n as u64, X0, X)
    }

    #[test]
    fn x0_dominant_rejects_bad_base() {
        let p = ScalarSeries::monomial(&[X0, X], &[FracExp::ZERO, FracExp::int(1)], CycScalar::one());
        assert_eq!(subst_x0_dominant(q(1, 2), &p, 3), Err(FormalError::MalformedBase));
        let mut p2 = x0_plus_x_pow(2);
        p2.scale(&CycScalar::from_int(2));
        assert_eq!(subst_x0_dominant(q(1, 2), &p2, 3), Err(FormalError::MalformedBase));
    }

    #[test]
    fn shifted_base_recovers_power() {
        // (z0 + x^N)^alpha at z0 = (x0 + x)^N - x^N is (x0 + x)^{N alpha}
        for (n, alpha) in [(2, q(1, 2)), (3, q(2, 3)), (2, q(3, 2))] {
            let mut z0 = x0_plus_x_pow(n);
            z0.add_term(&[FracExp::ZERO, FracExp::int(n)], CycScalar::from_int(-1));
            // shift law: sum_j binom(alpha, j) z0^{alpha - j} (x^N)^j
            let mut lhs = ScalarSeries::new(&[X0, X]);
            for j in 0..=8 {
                let mut t = subst_x0_dominant(alpha - FracExp::int(j), &z0, 8).unwrap();
                t = t.shift(&[FracExp::ZERO, FracExp::int(n * j)]);
                t.scale(&CycScalar::from_rational(binom_q(&alpha.to_rational(), j as u64)));
                lhs.add_assign(&t);
            }
            lhs.truncate_above(1, FracExp::int(8));
            let direct = subst_x0_dominant(alpha, &x0_plus_x_pow(n), 8).unwrap();
            assert_eq!(lhs, direct);
            assert_eq!(direct, binom_expand(Sign::Plus, alpha.mul_int(n), 8, X0, X));
        }
    }

    #[test]
    fn rescale_examples() {
        let s = ScalarSeries::monomial(&[X], &[q(1, 2)], CycScalar::one());
        let r = rescale_fractional(&s, X, &CycScalar::from_int(-1), 2).unwrap();
        assert_eq!(r, ScalarSeries::monomial(&[X], &[q(1, 2)], CycScalar::from_int(-1)));

        let s = ScalarSeries::monomial(&[X], &[FracExp::int(1)], CycScalar::one());
        assert_eq!(rescale_fractional(&s, X, &CycScalar::from_int(-1), 2).unwrap(), s);

        let c = rat(3, 5);
        let s = ScalarSeries::monomial(&[X], &[q(3, 4)], c.clone());
        let w4 = cyc_root(4, 1);
        let r = rescale_fractional(&s, X, &w4, 4).unwrap();
        assert_eq!(r, ScalarSeries::monomial(&[X], &[q(3, 4)], &w4.pow(3) * &c));

        assert_eq!(
            rescale_fractional(&s, X, &CycScalar::from_int(2), 4),
            Err(FormalError::NotARoot(4))
        );
    }

    #[test]
    fn rescale_n_times_is_identity() {
        for n in 1..=6u32 {
            let mut s = ScalarSeries::new(&[X]);
            for k in -7..=7 {
                s.add_term(&[q(k, n as i64)], rat(k + 11, 3));
            }
            let w = cyc_root(n, 1);
            let mut r = s.clone();
            for _ in 0..n {
                r = rescale_fractional(&r, X, &w, n).unwrap();
            }
            assert_eq!(r, s);
        }
    }
}
