use crate::scalars::{CycScalar, Rational};

use super::{FracExp, ScalarSeries, VarId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Generalised binomial coefficient alpha (alpha-1) ... (alpha-i+1) / i!.
pub fn binom_q(alpha: &Rational, i: u64) -> Rational {
    let mut acc = Rational::one();
    for t in 0..i {
        let factor = alpha - &Rational::from_int(t as i64);
        if factor.is_zero() {
            return Rational::zero();
        }
        acc = &(&acc * &factor) / &Rational::from_int(t as i64 + 1);
    }
    acc
}

/// Binomial coefficient with an integer (possibly negative) top entry.
pub fn binom_int(n: i64, i: u64) -> Rational {
    binom_q(&Rational::from_int(n), i)
}

/// (va +- vb)^alpha expanded in nonnegative powers of `vb`, up to vb^order.
pub fn binom_expand(sign: Sign, alpha: FracExp, order: u64, va: VarId, vb: VarId) -> ScalarSeries {
    let a = alpha.to_rational();
    let mut out = ScalarSeries::new(&[va, vb]);
    for i in 0..=order {
        let mut c = binom_q(&a, i);
        if sign == Sign::Minus && i % 2 == 1 {
            c = -c;
        }
        out.add_term(
            &[alpha - FracExp::int(i as i64), FracExp::int(i as i64)],
            CycScalar::from_rational(c),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(s: &ScalarSeries, a: FracExp, b: i64) -> Rational {
        s.get(&[a, FracExp::int(b)])
            .map(|c| c.as_rational().unwrap().clone())
            .unwrap_or_else(Rational::zero)
    }

    #[test]
    fn polynomial_case_terminates() {
        let s = binom_expand(Sign::Minus, FracExp::int(1), 5, VarId::X1, VarId::X2);
        assert_eq!(s.len(), 2);
        assert_eq!(term(&s, FracExp::int(1), 0), Rational::one());
        assert_eq!(term(&s, FracExp::int(0), 1), Rational::from_int(-1));
    }

    #[test]
    fn inverse_expansion() {
        let s = binom_expand(Sign::Minus, FracExp::int(-1), 2, VarId::X1, VarId::X2);
        assert_eq!(s.len(), 3);
        for i in 0..3 {
            assert_eq!(term(&s, FracExp::int(-1 - i), i), Rational::one());
        }
    }

    #[test]
    fn square_root_expansion() {
        // binom(1/2, i) by the falling factorial: 1, 1/2, (1/2)(-1/2)/2 = -1/8
        let s = binom_expand(Sign::Plus, FracExp::new(1, 2), 2, VarId::X1, VarId::X2);
        assert_eq!(term(&s, FracExp::new(1, 2), 0), Rational::one());
        assert_eq!(term(&s, FracExp::new(-1, 2), 1), Rational::new(1, 2));
        assert_eq!(term(&s, FracExp::new(-3, 2), 2), Rational::new(-1, 8));
    }

    #[test]
    fn integer_binomials_match_pascal() {
        for n in 0..10i64 {
            for i in 0..=(n as u64 + 2) {
                let mut pascal = 1i64;
                for t in 0..i as i64 {
                    pascal = pascal * (n - t) / (t + 1);
                }
                assert_eq!(binom_int(n, i), Rational::from_int(pascal));
            }
        }
        // binom(-1, i) = (-1)^i
        assert_eq!(binom_int(-1, 3), Rational::from_int(-1));
        assert_eq!(binom_int(-2, 2), Rational::from_int(3));
    }
}
