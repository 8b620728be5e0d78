//! Exact sparse multivariate polynomial and rational-function arithmetic
//! over arbitrary-precision rationals.
//!
//! Polynomials are stored as sparse term maps keyed by exponent vectors,
//! ordered by graded reverse lexicographic order. All coefficients are
//! exact `BigRational`s; there is no floating point anywhere in this
//! module, so zero-testing is a decidable structural check.

mod display;
mod gcd;
mod ratfunc;
pub mod unipoly;

pub use display::PolyDisplay;
pub use gcd::{content, exact_div, gcd, gcd_list, normalize_primitive, rational_content};
pub use ratfunc::RationalFunction;

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use thiserror::Error;

/// Arbitrary-precision rational, the coefficient field for everything.
///
/// `BigRational` keeps `gcd(|numerator|, denominator) = 1` and
/// `denominator > 0` as internal invariants, with zero stored as `0/1`.
pub type Rational = BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Shorthand for an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("wrong number of arguments: expected {expected}, got {got}")]
    ArgumentCount { expected: usize, got: usize },
    #[error("gcd(0, 0) is undefined")]
    GcdBothZero,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
}

/// Exponent vector of a single monomial. Length equals the ambient
/// dimension; the total degree is the sum of the entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The constant monomial of the given arity.
    pub fn unit(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    /// The monomial `x_i`.
    pub fn variable(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Monomial(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; caller must ensure `self` divides `other`.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * e).collect())
    }
}

/// Graded reverse lexicographic order: higher total degree wins; on equal
/// degree the monomial with the smaller exponent at the rightmost point of
/// difference is the larger one.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.arity(), other.arity());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// Invariants: no stored coefficient is zero, every key has length equal
/// to `arity`, and iteration order is graded reverse lexicographic, so
/// printing and hashing are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, value: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Monomial::unit(arity), value);
        }
        Polynomial { arity, terms }
    }

    /// The polynomial `x_i`.
    pub fn variable(arity: usize, i: usize) -> Result<Self, PolyError> {
        if i >= arity {
            return Err(PolyError::IndexOutOfRange { index: i, arity });
        }
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(arity, i), Rational::one());
        Ok(Polynomial { arity, terms })
    }

    pub fn from_terms<I>(arity: usize, iter: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(arity);
        for (m, c) in iter {
            assert_eq!(m.arity(), arity, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value() == Rational::one()
    }

    /// Value of the constant term (zero if absent).
    pub fn constant_value(&self) -> Rational {
        self.terms
            .get(&Monomial::unit(self.arity))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    /// Degree in the single variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0)
    }

    /// Leading (grevlex-greatest) monomial and coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch(self.arity, other.arity));
        }
        let mut out = Polynomial::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        for _ in 0..e {
            acc = acc.try_mul(self).expect("arity is preserved");
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial, PolyError> {
        if i >= self.arity {
            return Err(PolyError::IndexOutOfRange { index: i, arity: self.arity });
        }
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.arity {
            return Err(PolyError::ArgumentCount { expected: self.arity, got: point.len() });
        }
        // Cache powers of each coordinate up to its maximal exponent.
        let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(self.arity);
        for (i, x) in point.iter().enumerate() {
            let max = self.degree_in(i);
            let mut row = Vec::with_capacity(max as usize + 1);
            row.push(Rational::one());
            for _ in 0..max {
                let last = row.last().unwrap() * x;
                row.push(last);
            }
            powers.push(row);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute a polynomial for each variable. The arguments must share
    /// a common arity, which becomes the arity of the result.
    pub fn compose(&self, args: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if args.len() != self.arity {
            return Err(PolyError::ArgumentCount { expected: self.arity, got: args.len() });
        }
        let out_arity = match args.first() {
            Some(a) => a.arity(),
            None => 0,
        };
        for a in args {
            if a.arity() != out_arity {
                return Err(PolyError::ArityMismatch(out_arity, a.arity()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(self.arity);
        for (i, a) in args.iter().enumerate() {
            let max = self.degree_in(i);
            let mut row = Vec::with_capacity(max as usize + 1);
            row.push(Polynomial::one(out_arity));
            for _ in 0..max {
                let last = row.last().unwrap().try_mul(a)?;
                row.push(last);
            }
            powers.push(row);
        }
        let mut acc = Polynomial::zero(out_arity);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(out_arity, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.try_mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }

    /// Substitute a rational function for each variable; the result is
    /// normalized (common factors cleared).
    pub fn substitute(&self, args: &[RationalFunction]) -> Result<RationalFunction, PolyError> {
        if args.len() != self.arity {
            return Err(PolyError::ArgumentCount { expected: self.arity, got: args.len() });
        }
        let out_arity = match args.first() {
            Some(a) => a.arity(),
            None => 0,
        };
        let mut powers: Vec<Vec<RationalFunction>> = Vec::with_capacity(self.arity);
        for (i, a) in args.iter().enumerate() {
            let max = self.degree_in(i);
            let mut row = Vec::with_capacity(max as usize + 1);
            row.push(RationalFunction::one(out_arity));
            for _ in 0..max {
                let last = row.last().unwrap().mul(a)?;
                row.push(last);
            }
            powers.push(row);
        }
        let mut acc = RationalFunction::zero(out_arity);
        for (m, c) in &self.terms {
            let mut term = RationalFunction::from_polynomial(Polynomial::constant(out_arity, c.clone()));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Append `extra` fresh variables, keeping existing exponents.
    pub fn extend_arity(&self, extra: usize) -> Polynomial {
        let arity = self.arity + extra;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.extend(std::iter::repeat_n(0, extra));
                (Monomial::new(e), c.clone())
            })
            .collect();
        Polynomial { arity, terms }
    }

    /// Componentwise minimum of all exponent vectors: the largest monomial
    /// dividing every term. Unit for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.exponents().to_vec(),
            None => return Monomial::unit(self.arity),
        };
        let mins = it.fold(first, |mut acc, m| {
            for (a, b) in acc.iter_mut().zip(m.exponents()) {
                *a = (*a).min(*b);
            }
            acc
        });
        Monomial::new(mins)
    }

    /// Divide by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(mm, c)| (mm.quotient(m), c.clone())).collect(),
        }
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.arity];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`,
    /// index = power of `var`. Coefficients keep the full arity but do not
    /// involve `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![Polynomial::zero(self.arity); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponents()[var] as usize;
            let mut rest = m.exponents().to_vec();
            rest[var] = 0;
            coeffs[e].add_term(Monomial::new(rest), c.clone());
        }
        coeffs
    }

    /// Rebuild from univariate-in-`var` coefficients.
    pub fn from_coefficients_in(arity: usize, var: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(arity);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, coeff) in &c.terms {
                let mut exps = m.exponents().to_vec();
                exps[var] += e as u32;
                out.add_term(Monomial::new(exps), coeff.clone());
            }
        }
        out
    }

    /// Sign of the leading (grevlex) coefficient: -1, 0, or 1.
    pub fn leading_sign(&self) -> i8 {
        match self.leading_term() {
            None => 0,
            Some((_, c)) => {
                if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$try(rhs).expect("polynomial arity mismatch")
            }
        }
        impl std::ops::$trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$try(&rhs).expect("polynomial arity mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
