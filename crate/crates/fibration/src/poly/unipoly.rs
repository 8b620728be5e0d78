//! Dense univariate polynomials over the rationals: the workhorse for
//! line restrictions, coprimality pre-checks, and rational root
//! extraction in the zero-set sampler.

use super::{Polynomial, Rational};
use num::{BigInt, Integer as NumInteger, One, Signed, Zero};

/// Coefficients in ascending degree order, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    /// Reinterpret an arity-1 `Polynomial` densely.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        assert_eq!(p.arity(), 1, "univariate view needs arity 1");
        let deg = p.total_degree().map(|d| d as usize);
        let mut coeffs = vec![Rational::zero(); deg.map(|d| d + 1).unwrap_or(0)];
        for (m, c) in p.terms() {
            coeffs[m.exponents()[0] as usize] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Lowest power of the variable dividing the polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn monic(&self) -> UniPoly {
        match self.coeffs.last() {
            None => UniPoly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lc;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let adj = c * &factor;
                rem[k + i] -= adj;
            }
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        UniPoly::new(rem)
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Divide out a known root once; panics if `r` is not a root.
    fn deflate(&self, r: &Rational) -> UniPoly {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] + &carry * r;
            out[i - 1] = carry.clone();
        }
        debug_assert!((&self.coeffs[0] + &carry * r).is_zero(), "deflate: not a root");
        UniPoly::new(out)
    }

    /// All rational roots that can be certified exactly, plus the degree
    /// of the factor left unexplained (accounting for irrational or
    /// complex roots, and for roots beyond the divisor search bound).
    ///
    /// Roots of the square-free part are searched; a root is reported once
    /// regardless of multiplicity. Degrees one and two are solved exactly,
    /// so the only incompleteness is for degree >= 3 factors with large
    /// coefficient divisors.
    pub fn rational_roots(&self) -> (Vec<Rational>, usize) {
        let mut p = match self.degree() {
            None | Some(0) => return (Vec::new(), 0),
            _ => self.clone(),
        };
        // Square-free part: p / gcd(p, p').
        let g = p.gcd(&p.derivative());
        if g.degree().unwrap_or(0) > 0 {
            p = p.exact_quotient(&g);
        }
        let mut roots = Vec::new();
        // Zero roots first.
        if p.coeffs[0].is_zero() {
            roots.push(Rational::zero());
            let v = p.valuation().unwrap();
            p = UniPoly::new(p.coeffs[v..].to_vec());
        }
        loop {
            match p.degree() {
                None | Some(0) => return (roots, 0),
                Some(1) => {
                    roots.push(-&p.coeffs[0] / &p.coeffs[1]);
                    return (roots, 0);
                }
                Some(2) => {
                    let before = roots.len();
                    let (c, b, a) = (&p.coeffs[0], &p.coeffs[1], &p.coeffs[2]);
                    let disc = b * b - Rational::from_integer(BigInt::from(4)) * a * c;
                    if let Some(s) = rational_sqrt(&disc) {
                        let two_a = Rational::from_integer(BigInt::from(2)) * a;
                        roots.push((-b + &s) / &two_a);
                        if !s.is_zero() {
                            roots.push((-b - &s) / &two_a);
                        }
                    }
                    let unchecked = if roots.len() > before { 0 } else { 2 };
                    return (roots, unchecked);
                }
                Some(d) => {
                    match p.find_root_by_divisors() {
                        Some(r) => {
                            p = p.deflate(&r);
                            roots.push(r);
                        }
                        None => return (roots, d),
                    }
                }
            }
        }
    }

    fn exact_quotient(&self, divisor: &UniPoly) -> UniPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lc;
            quot[k] = factor.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let adj = c * &factor;
                rem[k + i] -= adj;
            }
            while rem.last().map(|c| c.is_zero()).unwrap_or(false) {
                rem.pop();
            }
        }
        debug_assert!(rem.is_empty(), "exact_quotient: remainder nonzero");
        UniPoly::new(quot)
    }

    /// Rational-root-theorem search with a bounded divisor enumeration.
    fn find_root_by_divisors(&self) -> Option<Rational> {
        // Clear to coprime integers.
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| c.numer() * (&den_lcm / c.denom())).collect();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        debug_assert!(!a0.is_zero());
        let ps = bounded_divisors(&a0, 100_000);
        let qs = bounded_divisors(&an, 100_000);
        for p in &ps {
            for q in &qs {
                for sign in [1i64, -1] {
                    let cand = Rational::new(p * BigInt::from(sign), q.clone());
                    if self.eval(&cand).is_zero() {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let sn = x.numer().sqrt();
    let sd = x.denom().sqrt();
    if &(&sn * &sn) == x.numer() && &(&sd * &sd) == x.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// All positive divisors found by trial division up to `bound` trials;
/// `None`-like truncation is signalled by simply returning fewer divisors,
/// which makes the root search incomplete but never incorrect.
fn bounded_divisors(n: &BigInt, bound: u64) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    if n.is_zero() {
        return divs;
    }
    let mut d = BigInt::from(2u32);
    let mut remaining = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut trials = 0u64;
    while (&d * &d) <= remaining && trials < bound {
        if (&remaining % &d).is_zero() {
            let mut mult = 0;
            while (&remaining % &d).is_zero() {
                remaining /= &d;
                mult += 1;
            }
            primes.push((d.clone(), mult));
        }
        d += 1;
        trials += 1;
    }
    if remaining > BigInt::one() {
        if trials >= bound {
            // Unfactored residue too large: report only what we have.
        } else {
            primes.push((remaining.clone(), 1));
        }
    }
    for (p, mult) in primes {
        let prior = divs.clone();
        let mut power = BigInt::one();
        for _ in 0..mult {
            power *= &p;
            for b in &prior {
                divs.push(b * &power);
            }
        }
    }
    divs.sort();
    divs.dedup();
    divs
}
