//! Text formats for scalars, Fock vectors and series.
//!
//! Vectors read like `1/2 * a[-1]a[-1]|0> - a[-2]|0>` or `a[-3/2]a[-1/2]|t>`;
//! cyclotomic coefficients go in parentheses, `(1/2*w^2 - 1/3) * |0>`.
//! Series print as `2*x * a[-1]|0>`.

use std::fmt::Write as _;

use voacal_core::formal::{write_monomial, FracExp, LaurentVec};
use voacal_core::heisenberg::{Partition, PbwVector, Sector};
use voacal_core::scalars::{CycScalar, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(0, char::len_utf8);
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn uint(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let digits: &str = {
            let r = self.rest();
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            &r[..end]
        };
        if digits.is_empty() {
            return self.err("expected a number");
        }
        let v = digits.parse::<i64>().or_else(|_| self.err("number out of range"))?;
        self.pos += digits.len();
        Ok(v)
    }

    /// `n` or `n/d`, unsigned.
    fn urational(&mut self) -> Result<Rational, ParseError> {
        let n = self.uint()?;
        if self.rest().starts_with('/') {
            self.pos += 1;
            let d = self.uint()?;
            if d == 0 {
                return self.err("zero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_int(n))
        }
    }
}

/// `-3/4`, `5`, `+1/2`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let mut c = Cursor::new(s);
    let neg = if c.eat("-") {
        true
    } else {
        c.eat("+");
        false
    };
    let q = c.urational()?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(if neg { -q } else { q })
}

fn cyc_expr(c: &mut Cursor<'_>, order: u32) -> Result<CycScalar, ParseError> {
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut first = true;
    loop {
        let neg = if c.eat("-") {
            true
        } else if c.eat("+") || first {
            false
        } else {
            break;
        };
        first = false;
        let mut coef = Rational::one();
        let mut power = 0usize;
        let mut any = false;
        if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            coef = c.urational()?;
            any = true;
            if !c.eat("*") {
                if c.peek() == Some('w') {
                    return c.err("expected `*` before `w`");
                }
                push_power(&mut coeffs, 0, if neg { -coef } else { coef });
                continue;
            }
        }
        if c.eat("w") {
            any = true;
            power = 1;
            if c.eat("^") {
                power = c.uint()? as usize;
            }
        }
        if !any {
            return c.err("expected a term");
        }
        push_power(&mut coeffs, power, if neg { -coef } else { coef });
    }
    Ok(CycScalar::from_poly(order, &coeffs))
}

fn push_power(coeffs: &mut Vec<Rational>, power: usize, c: Rational) {
    if coeffs.len() <= power {
        coeffs.resize(power + 1, Rational::zero());
    }
    coeffs[power] = &coeffs[power] + &c;
}

/// Polynomials in `w = w_N` with rational coefficients, e.g. `1/2*w^2 - 1/3`.
pub fn parse_cyc(s: &str, order: u32) -> Result<CycScalar, ParseError> {
    let mut c = Cursor::new(s);
    let v = cyc_expr(&mut c, order)?;
    if !c.at_end() {
        return c.err("trailing input");
    }
    Ok(v)
}

/// Parses a Fock vector; the sector follows from the kets, `|0>` or `|t>`.
/// Parenthesised coefficients are read in `Q(w_order)`.
pub fn parse_vector(s: &str, order: u32) -> Result<PbwVector, ParseError> {
    let mut c = Cursor::new(s);
    let mut out: Option<PbwVector> = None;
    let mut first = true;
    loop {
        let neg = if c.eat("-") {
            true
        } else if c.eat("+") || first {
            false
        } else {
            break;
        };
        first = false;
        let mut coef = CycScalar::one();
        if c.eat("(") {
            coef = cyc_expr(&mut c, order)?;
            c.expect(")")?;
            c.eat("*");
        } else if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            coef = CycScalar::from(c.urational()?);
            c.eat("*");
        }
        if neg {
            coef = -coef;
        }
        let (sector, p) = basis(&mut c)?;
        let v = out.get_or_insert_with(|| PbwVector::zero(sector));
        if v.sector() != sector {
            return c.err("mixed sectors");
        }
        v.add_term(p, coef);
    }
    if !c.at_end() {
        return c.err("trailing input");
    }
    match out {
        Some(v) => Ok(v),
        None => c.err("empty vector"),
    }
}

fn basis(c: &mut Cursor<'_>) -> Result<(Sector, Partition), ParseError> {
    let mut modes: Vec<FracExp> = Vec::new();
    while c.eat("a[") {
        c.expect("-")?;
        let m = c.urational()?;
        let (n, d) = m.to_small().expect("small rational");
        if !(d == 1 || d == 2) {
            return c.err("mode index must be integral or half-integral");
        }
        modes.push(FracExp::new(n, d));
        c.expect("]")?;
    }
    let sector = if c.eat("|0>") {
        Sector::Untwisted
    } else if c.eat("|t>") {
        Sector::Twisted
    } else {
        return c.err("expected `|0>` or `|t>`");
    };
    let den = sector.den();
    let mut parts = Vec::with_capacity(modes.len());
    for m in modes {
        let units = m.mul_int(den).as_int().filter(|&u| u > 0 && sector.admits(u));
        match units.and_then(|u| u16::try_from(u).ok()) {
            Some(u) => parts.push(u),
            None => return c.err(format!("mode a[-{m}] does not act on {}", sector.name())),
        }
    }
    Ok((sector, Partition::new(&parts)))
}

/// One line per series, terms in ascending monomial order, e.g.
/// `1/8*x^(-1) * a[-1]a[-1]|0> + 1/32*x^(-2) * |0>`.
pub fn format_series(s: &LaurentVec<PbwVector>) -> String {
    let mut out = String::new();
    for (mono, v) in s.terms() {
        for (p, c) in v.terms() {
            let (neg, mag) = match c.as_rational() {
                Some(q) if q.is_negative() => (true, CycScalar::from(-q.clone())),
                _ => (false, c.clone()),
            };
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            let mut prefix = String::new();
            if !mag.is_one() {
                match mag.as_rational() {
                    Some(q) => write!(prefix, "{q}").unwrap(),
                    None => write!(prefix, "({mag})").unwrap(),
                }
            }
            let lead = !prefix.is_empty();
            write_monomial(&mut prefix, s.vars(), mono, lead).unwrap();
            if !prefix.is_empty() {
                out.push_str(&prefix);
                out.push_str(" * ");
            }
            out.push_str(&PbwVector::basis(v.sector(), p.clone()).to_string());
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses `N` from `"2"` and a window from `"-4:4"`.
pub fn parse_range(s: &str) -> Result<(i64, i64), ParseError> {
    let (a, b) = s.split_once(':').ok_or(ParseError {
        pos: 0,
        msg: "expected `lo:hi`".into(),
    })?;
    let lo = a.trim().parse::<i64>().map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })?;
    let hi = b.trim().parse::<i64>().map_err(|e| ParseError {
        pos: a.len() + 1,
        msg: e.to_string(),
    })?;
    if lo > hi {
        return Err(ParseError {
            pos: 0,
            msg: "empty window".into(),
        });
    }
    Ok((lo, hi))
}
