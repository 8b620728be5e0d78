//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := base ("^" uint)?
//! base     := rational | ident | "(" expr ")" | "-" base
//! rational := uint ("/" uint)?
//! ident    := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Multiplication is always explicit (`x*y`, never `xy`), so
//! multi-character variable names stay unambiguous. Every error carries
//! the byte offset it was detected at.

use crate::poly::{Integer, Polynomial, Rational};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { offset: usize, name: String },
    #[error("exponent {value} exceeds the maximum of 64 at byte {offset}")]
    ExponentOverflow { offset: usize, value: u64 },
}

/// Parse `text` over the ordered variable list `vars`; the position of a
/// name in `vars` is its coordinate index.
pub fn parse_polynomial(text: &str, vars: &[impl AsRef<str>]) -> Result<Polynomial, ParseError> {
    let names: Vec<&str> = vars.iter().map(|v| v.as_ref()).collect();
    let mut p = Parser { input: text.as_bytes(), pos: 0, vars: &names };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.try_add(&rhs).expect("parser keeps one arity");
                }
                b'-' => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.try_sub(&rhs).expect("parser keeps one arity");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.try_mul(&rhs).expect("parser keeps one arity");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.uint()?;
            if e > 64 {
                return Err(ParseError::ExponentOverflow { offset: at, value: e });
            }
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.base()?.neg())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let q = self.rational()?;
                Ok(Polynomial::constant(self.vars.len(), q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let name = self.ident();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::variable(self.vars.len(), i)
                        .expect("position is within arity")),
                    None => Err(ParseError::UnknownVariable { offset: at, name }),
                }
            }
            _ => Err(self.err("expected a number, variable, `(` or `-`")),
        }
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.input.len()
            && (self.input[self.pos].is_ascii_alphanumeric() || self.input[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.input[start..self.pos]).into_owned()
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.big_uint()?;
        if let Some(b'/') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den = self.big_uint()?;
            if den == Integer::from(0u32) {
                return Err(ParseError::Syntax {
                    offset: at,
                    message: "denominator must be nonzero".to_string(),
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn big_uint(&mut self) -> Result<Integer, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<Integer>().expect("digits parse as integer"))
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer exponent"));
        }
        let text = std::str::from_utf8(&self.input[start..self.pos]).expect("ascii digits");
        text.parse::<u64>().map_err(|_| ParseError::Syntax {
            offset: start,
            message: "exponent does not fit in 64 bits".to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, Monomial};

    fn vars4() -> Vec<String> {
        ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_quartic_potential() {
        let p = parse_polynomial("x1*x2^2 + (x3 - x2*x4)^2", &vars4()).unwrap();
        // x1*x2^2 + x3^2 - 2*x2*x3*x4 + x2^2*x4^2
        assert_eq!(p.num_terms(), 4);
        let m = Monomial::new(vec![1, 2, 0, 0]);
        assert_eq!(p.terms().find(|(mm, _)| **mm == m).map(|(_, c)| c.clone()), Some(rat(1, 1)));
        let m = Monomial::new(vec![0, 1, 1, 1]);
        assert_eq!(p.terms().find(|(mm, _)| **mm == m).map(|(_, c)| c.clone()), Some(rat(-2, 1)));
    }

    #[test]
    fn parses_zero() {
        let p = parse_polynomial("0", &vars4()).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn parses_rational_coefficient() {
        let p = parse_polynomial("3/2*x1^2", &vars4()).unwrap();
        assert_eq!(p.leading_coefficient(), rat(3, 2));
    }

    #[test]
    fn double_negation_and_parens() {
        let p = parse_polynomial("-(-x1) - x1", &vars4()).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn rejects_unknown_variable() {
        let e = parse_polynomial("x1 + q", &vars4()).unwrap_err();
        assert_eq!(e, ParseError::UnknownVariable { offset: 5, name: "q".to_string() });
    }

    #[test]
    fn rejects_exponent_overflow() {
        let e = parse_polynomial("x1^65", &vars4()).unwrap_err();
        assert_eq!(e, ParseError::ExponentOverflow { offset: 3, value: 65 });
    }

    #[test]
    fn rejects_juxtaposition() {
        assert!(parse_polynomial("x1 x2", &vars4()).is_err());
    }

    #[test]
    fn rejects_trailing_operator() {
        assert!(parse_polynomial("x1 +", &vars4()).is_err());
    }

    #[test]
    fn error_carries_offset() {
        let e = parse_polynomial("x1 + )", &vars4()).unwrap_err();
        match e {
            ParseError::Syntax { offset, .. } => assert_eq!(offset, 5),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn roundtrip_display_parse() {
        let vars = vars4();
        let p = parse_polynomial("x1*x2^2 + (x3 - x2*x4)^2 - 7/3", &vars).unwrap();
        let printed = p.display(&vars).to_string();
        let reparsed = parse_polynomial(&printed, &vars).unwrap();
        assert_eq!(p, reparsed);
    }
}
