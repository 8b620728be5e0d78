//! Deterministic printing in the same grammar the parser accepts, so
//! `parse(print(p)) == p` always holds.

use super::{Polynomial, Rational, RationalFunction};
use num::{One, Signed};
use std::fmt;

/// Borrowed view pairing a polynomial with variable names for printing.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a [String],
}

impl Polynomial {
    /// Render with the given variable names (descending grevlex order).
    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        assert_eq!(vars.len(), self.arity(), "variable names must match arity");
        PolyDisplay { poly: self, vars }
    }

    /// Convenience: render with `x1..xn` names.
    pub fn to_text(&self) -> String {
        let vars: Vec<String> = (1..=self.arity()).map(|i| format!("x{i}")).collect();
        self.display(&vars).to_string()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms().rev().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let mut wrote_factor = false;
            // In the grammar a leading "-" binds tighter than "^", so a
            // negative head term keeps its coefficient explicit: "-1*x^2"
            // round-trips where "-x^2" would reparse as (-x)^2.
            let force_coeff = idx == 0 && neg && !m.is_unit();
            if !abs.is_one() || m.is_unit() || force_coeff {
                write_rational(f, &abs)?;
                wrote_factor = true;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

/// Borrowed view pairing a rational function with variable names.
pub struct RatFuncDisplay<'a> {
    func: &'a RationalFunction,
    vars: &'a [String],
}

impl RationalFunction {
    pub fn display<'a>(&'a self, vars: &'a [String]) -> RatFuncDisplay<'a> {
        RatFuncDisplay { func: self, vars }
    }
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.func.as_polynomial() {
            Some(p) => write!(f, "{}", p.display(self.vars)),
            None => write!(
                f,
                "({})/({})",
                self.func.numerator().display(self.vars),
                self.func.denominator().display(self.vars)
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::parse::parse_polynomial;

    #[test]
    fn prints_descending_with_signs() {
        let vars: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        let p = parse_polynomial("y - x^2 + 3", &vars).unwrap();
        assert_eq!(p.display(&vars).to_string(), "-1*x^2 + y + 3");
    }

    #[test]
    fn prints_rational_coefficients() {
        let vars: Vec<String> = ["x"].iter().map(|s| s.to_string()).collect();
        let p = parse_polynomial("3/2*x^2 - 1/3", &vars).unwrap();
        assert_eq!(p.display(&vars).to_string(), "3/2*x^2 - 1/3");
    }

    #[test]
    fn zero_prints_as_zero() {
        let vars: Vec<String> = ["x"].iter().map(|s| s.to_string()).collect();
        let p = parse_polynomial("x - x", &vars).unwrap();
        assert_eq!(p.display(&vars).to_string(), "0");
    }
}
