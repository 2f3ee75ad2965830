//! Parser for the canonical expression text format.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! atom     := integer | variable | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! variable := 'u' | 'v' | 'w' | 's' | 't' | 'y' | 'z'
//! ```
//!
//! `w` is the diagonal shorthand `u·v`. Fractions like `3/2` need no special
//! lexing: they parse as a division of integer constants. Fractional
//! exponents apply to single variables (or `w`) only; integer exponents
//! apply to any parenthesized expression. Multiplication is always explicit
//! (`2*w`, never `2w`).

use super::laurent::{LaurentPoly, Var};
use super::ratexpr::RatExpr;
use super::{ExactError, Rational};
use num_traits::One;

/// Parses the canonical text format into a rational expression.
pub fn parse_ratexpr(text: &str) -> Result<RatExpr<Rational>, ExactError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

/// An atom together with its monomial shape when it has one, so fractional
/// exponents can act on the exponent vector.
struct Atom {
    value: RatExpr<Rational>,
    monomial: Option<Vec<(Var, Rational)>>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ExactError {
        ExactError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ExactError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<RatExpr<Rational>, ExactError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatExpr<Rational>, ExactError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let rhs = self.unary()?;
                acc = acc.div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatExpr<Rational>, ExactError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatExpr<Rational>, ExactError> {
        let atom = self.atom()?;
        if !self.eat(b'^') {
            return Ok(atom.value);
        }
        let e = self.exponent()?;
        if e.is_integer() {
            let k: i64 = num_traits::ToPrimitive::to_i64(e.numer())
                .ok_or_else(|| self.err("exponent out of range"))?;
            return atom.value.powi(k);
        }
        match atom.monomial {
            Some(exps) => {
                let scaled: Vec<(Var, Rational)> =
                    exps.into_iter().map(|(v, r)| (v, r * e.clone())).collect();
                Ok(RatExpr::from_poly(LaurentPoly::term(
                    Rational::one(),
                    &scaled,
                )))
            }
            None => Err(self.err("fractional exponents require a single variable base")),
        }
    }

    fn atom(&mut self) -> Result<Atom, ExactError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Atom {
                    value: RatExpr::constant(&Rational::from_integer(n.into())),
                    monomial: None,
                })
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(Atom {
                    value: e,
                    monomial: None,
                })
            }
            Some(c) if c == b'w' => {
                self.pos += 1;
                Ok(Atom {
                    value: RatExpr::from_poly(LaurentPoly::w_pow(&Rational::one())),
                    monomial: Some(vec![
                        (Var::U, Rational::one()),
                        (Var::V, Rational::one()),
                    ]),
                })
            }
            Some(c) => match Var::from_name(c as char) {
                Some(v) => {
                    self.pos += 1;
                    Ok(Atom {
                        value: RatExpr::from_poly(LaurentPoly::var(v)),
                        monomial: Some(vec![(v, Rational::one())]),
                    })
                }
                None => Err(self.err(&format!("unexpected character '{}'", c as char))),
            },
            None => Err(self.err("unexpected end of input")),
        }
    }

    /// Exponent: `k`, `-k`, `(p)`, `(-p)`, `(p/q)`, `(-p/q)`.
    fn exponent(&mut self) -> Result<Rational, ExactError> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let p = self.integer()?;
            let q = if self.eat(b'/') { self.integer()? } else { 1 };
            self.expect(b')')?;
            if q == 0 {
                return Err(self.err("zero exponent denominator"));
            }
            let mut r = Rational::new(p.into(), q.into());
            if neg {
                r = -r;
            }
            return Ok(r);
        }
        let neg = self.eat(b'-');
        let p = self.integer()?;
        let r = Rational::from_integer(p.into());
        Ok(if neg { -r } else { r })
    }

    fn integer(&mut self) -> Result<i64, ExactError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("number out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn round_trip(text: &str) {
        let e = parse_ratexpr(text).unwrap();
        let rendered = e.to_string();
        let again = parse_ratexpr(&rendered).unwrap();
        assert_eq!(e, again, "round trip failed for {}", text);
        assert_eq!(rendered, again.to_string());
    }

    #[test]
    fn parses_canonical_fraction() {
        let e = parse_ratexpr("(w^2 - 1)/(w^(1/3) - 1)").unwrap();
        let direct = RatExpr::new(
            LaurentPoly::w_pow(&rat_int(2)) - LaurentPoly::one_poly(),
            LaurentPoly::w_pow(&rat(1, 3)) - LaurentPoly::one_poly(),
        )
        .unwrap();
        assert_eq!(e, direct);
        // The denominator divides the numerator on the 1/3 grid, so the
        // canonical form is the telescoped polynomial.
        assert_eq!(
            e.to_string(),
            "w^(5/3) + w^(4/3) + w + w^(2/3) + w^(1/3) + 1"
        );
    }

    #[test]
    fn w_is_the_diagonal() {
        let e = parse_ratexpr("w - u*v").unwrap();
        assert!(e.is_zero_expr());
    }

    #[test]
    fn rational_coefficients_via_division() {
        let e = parse_ratexpr("3/2*w + 1/2").unwrap();
        assert_eq!(e.to_string(), "3/2*w + 1/2");
    }

    #[test]
    fn fractional_powers_of_w() {
        let e = parse_ratexpr("w^(1/2) + 1").unwrap();
        assert_eq!(e.to_string(), "w^(1/2) + 1");
        assert!(parse_ratexpr("(w + 1)^(1/2)").is_err());
    }

    #[test]
    fn negative_exponents() {
        round_trip("w^(-2) + w^(-1)");
        let a = parse_ratexpr("w^-2").unwrap();
        let b = parse_ratexpr("w^(-2)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn round_trips() {
        round_trip("(w^2 - 1)/(w^(1/3) - 1)");
        round_trip("u + v");
        round_trip("1 - 3*u - 3*v + w");
        round_trip("(-2*w^2)/(w^2 + 2*w + 1)");
        round_trip("y^(1/2) - y^(-1/2)");
        round_trip("5");
        round_trip("0");
        round_trip("-1/2");
    }

    #[test]
    fn reports_positions() {
        match parse_ratexpr("w + $") {
            Err(ExactError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("expected parse error, got {:?}", other),
        }
    }

    #[test]
    fn division_by_zero_expression() {
        assert!(matches!(
            parse_ratexpr("1/(w - w)"),
            Err(ExactError::DivisionByZero)
        ));
    }
}
