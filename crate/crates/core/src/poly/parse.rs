//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' nat)?
//! base   := nat | var | '(' expr ')'
//! ```
//!
//! `/` only accepts a nonzero constant on its right, which is how rational
//! coefficients are written back out by `Display`.

use num_traits::Num;

use super::{PolyError, Polynomial, Scalar, VarSet};

pub fn parse_poly<C: Scalar>(text: &str, vars: &VarSet) -> Result<Polynomial<C>, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn syntax(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr<C: Scalar>(&mut self) -> Result<Polynomial<C>, PolyError> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<C: Scalar>(&mut self) -> Result<Polynomial<C>, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d: Polynomial<C> = self.factor()?;
                    let c = d.constant_value().ok_or(PolyError::NonConstantDivisor { pos: at })?;
                    if c.is_zero() {
                        return Err(PolyError::DivisionByZero);
                    }
                    acc = acc.scale(&(C::one() / c));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor<C: Scalar>(&mut self) -> Result<Polynomial<C>, PolyError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(PolyError::NegativeExponent { pos: self.pos });
            }
            let digits = self.digits().ok_or_else(|| self.syntax("expected exponent"))?;
            let e: u32 = digits.parse().map_err(|_| PolyError::ExponentOverflow)?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn base<C: Scalar>(&mut self) -> Result<Polynomial<C>, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits().expect("at least one digit");
                let n = C::Int::from_str_radix(&digits, 10).map_err(|_| self.syntax("bad integer literal"))?;
                Ok(Polynomial::constant(self.vars, C::from_int(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                Polynomial::var_named(self.vars, &name)
                    .ok_or(PolyError::UnknownVariable { name, pos: start })
            }
            Some(c) => Err(self.syntax(format!("unexpected `{}`", c as char))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    fn vars() -> VarSet {
        VarSet::new(["x", "y", "z"]).unwrap()
    }

    fn parse(s: &str) -> Result<Poly, PolyError> {
        parse_poly(s, &vars())
    }

    #[test]
    fn parses_the_hpt_quadric() {
        let f = parse("x^2+y^2+z^2-2*(x*y+x*z+y*z)").unwrap();
        assert_eq!(f.to_string(), "x^2-2*x*y-2*x*z+y^2-2*y*z+z^2");
        assert_eq!(f.num_terms(), 6);
    }

    #[test]
    fn zero_is_the_empty_map() {
        let z = parse("0").unwrap();
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert_eq!(z.to_string(), "0");
    }

    #[test]
    fn leading_unary_minus_and_whitespace() {
        assert_eq!(parse(" - x + 2 * y ").unwrap(), parse("2*y-x").unwrap());
        assert_eq!(parse("-(x-y)^2").unwrap(), parse("-x^2+2*x*y-y^2").unwrap());
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse("x+"), Err(PolyError::Syntax { pos: 2, msg: "unexpected end of input".into() }));
        assert_eq!(parse("x+w"), Err(PolyError::UnknownVariable { name: "w".into(), pos: 2 }));
        assert_eq!(parse("x^-1"), Err(PolyError::NegativeExponent { pos: 2 }));
        assert!(matches!(parse("(x+y"), Err(PolyError::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x y"), Err(PolyError::Syntax { pos: 2, .. })));
        assert_eq!(parse("x/y"), Err(PolyError::NonConstantDivisor { pos: 2 }));
        assert_eq!(parse("x/0"), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn rational_literals_round_trip() {
        let p = parse("3/4*x^2-1/6*y+5").unwrap();
        assert_eq!(parse(&p.to_string()).unwrap(), p);
    }
}
