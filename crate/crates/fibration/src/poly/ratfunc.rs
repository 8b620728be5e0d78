//! Rational functions: quotients of polynomials kept in reduced form.

use super::gcd::{exact_div, gcd, rational_content};
use super::{PolyError, Polynomial, Rational};

/// A quotient `num/den` with `gcd(num, den) = 1` after normalization and
/// `den` scaled to coprime integer coefficients with positive grevlex
/// leading coefficient. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if num.arity() != den.arity() {
            return Err(PolyError::ArityMismatch(num.arity(), den.arity()));
        }
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Polynomial::one(den.arity()) };
        }
        let g = gcd(&num, &den).expect("den nonzero");
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                exact_div(&num, &g).expect("gcd divides"),
                exact_div(&den, &g).expect("gcd divides"),
            )
        };
        // Canonical scale: denominator primitive with positive leading
        // coefficient; the numerator absorbs the factor.
        let mut c = rational_content(&den);
        if den.leading_sign() < 0 {
            c = -c;
        }
        let inv = c.recip();
        den = den.scale(&inv);
        num = num.scale(&inv);
        RationalFunction { num, den }
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let den = Polynomial::one(p.arity());
        RationalFunction { num: p, den }
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(arity))
    }

    pub fn one(arity: usize) -> Self {
        Self::from_polynomial(Polynomial::one(arity))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `None` when the value is a genuine fraction.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        let num = self
            .num
            .try_mul(&other.den)?
            .try_add(&other.num.try_mul(&self.den)?)?;
        let den = self.den.try_mul(&other.den)?;
        Ok(Self::reduced(num, den))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        let num = self.num.try_mul(&other.num)?;
        let den = self.den.try_mul(&other.den)?;
        Ok(Self::reduced(num, den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let num = self.num.try_mul(&other.den)?;
        let den = self.den.try_mul(&other.num)?;
        Ok(Self::reduced(num, den))
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Evaluate at a point where the denominator does not vanish.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Option<Rational>, PolyError> {
        let d = self.den.evaluate(point)?;
        if num::Zero::is_zero(&d) {
            return Ok(None);
        }
        let n = self.num.evaluate(point)?;
        Ok(Some(n / d))
    }
}
