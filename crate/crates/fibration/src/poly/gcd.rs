//! Multivariate polynomial gcd over the rationals.
//!
//! Strategy: strip the monomial and rational content, run a sound
//! evaluation pre-check for the dominant coprime case (restrict both
//! inputs to a random degree-preserving line and take a univariate gcd),
//! and otherwise reduce recursively to a univariate subresultant
//! pseudo-remainder sequence in the top occurring variable.

use super::unipoly::UniPoly;
use super::{Monomial, PolyError, Polynomial, Rational};
use num::{BigInt, Integer as NumInteger, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Exact division: returns `a / b` when `b` divides `a` exactly,
/// `None` otherwise.
pub fn exact_div(a: &Polynomial, b: &Polynomial) -> Option<Polynomial> {
    assert_eq!(a.arity(), b.arity(), "polynomial arity mismatch");
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Polynomial::zero(a.arity()));
    }
    let (bm, bc) = b.leading_term().expect("nonzero");
    let bm = bm.clone();
    let bc = bc.clone();
    let mut rem = a.clone();
    let mut quot = Polynomial::zero(a.arity());
    while !rem.is_zero() {
        let (rm, rc) = rem.leading_term().expect("nonzero");
        if !bm.divides(rm) {
            return None;
        }
        let qm = rm.quotient(&bm);
        let qc = rc / &bc;
        let t = Polynomial::from_terms(a.arity(), [(qm.clone(), qc.clone())]);
        quot = quot.try_add(&t).expect("same arity");
        rem = rem.try_sub(&b.mul_monomial(&qm, &qc)).expect("same arity");
    }
    Some(quot)
}

/// The positive rational `c` such that `p / c` has coprime integer
/// coefficients. Zero polynomial gives 1.
pub fn rational_content(p: &Polynomial) -> Rational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in p.terms() {
        num_gcd = num_gcd.gcd(&c.numer().abs());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(num_gcd, den_lcm)
}

/// Scale to coprime integer coefficients with positive grevlex leading
/// coefficient. The zero polynomial stays zero.
pub fn normalize_primitive(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = rational_content(p);
    if p.leading_sign() < 0 {
        c = -c;
    }
    p.scale(&c.recip())
}

/// Gcd of the coefficient list of `p` viewed in variable `var`
/// (the content of `p` with respect to `var`).
fn content_in(p: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    let coeffs = p.coefficients_in(var);
    gcd_list(coeffs.iter().filter(|c| !c.is_zero()))
}

/// Gcd of all polynomials in the iterator (ignoring zeros).
/// Returns zero when the iterator has no nonzero entries.
pub fn gcd_list<'a, I>(polys: I) -> Result<Polynomial, PolyError>
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut acc: Option<Polynomial> = None;
    for p in polys {
        acc = Some(match acc {
            None => normalize_primitive(p),
            Some(g) => {
                if g.is_one() {
                    return Ok(g);
                }
                gcd(&g, p)?
            }
        });
    }
    acc.ok_or(PolyError::GcdBothZero)
}

/// Alias for the content of a polynomial list; the gcd of the entries.
pub fn content<'a, I>(polys: I) -> Result<Polynomial, PolyError>
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    gcd_list(polys)
}

/// Greatest common divisor, normalized to coprime integer coefficients
/// with positive leading coefficient.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    if a.arity() != b.arity() {
        return Err(PolyError::ArityMismatch(a.arity(), b.arity()));
    }
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::GcdBothZero);
    }
    if a.is_zero() {
        return Ok(normalize_primitive(b));
    }
    if b.is_zero() {
        return Ok(normalize_primitive(a));
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(a.arity()));
    }

    // Split off the common monomial factor; the reduced parts have
    // trivial monomial content.
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let shared = Monomial::new(
        ma.exponents().iter().zip(mb.exponents()).map(|(x, y)| *x.min(y)).collect(),
    );
    let ra = a.div_monomial(&ma);
    let rb = b.div_monomial(&mb);
    let shared_poly = Polynomial::from_terms(a.arity(), [(shared, Rational::one())]);

    if ra.is_constant() || rb.is_constant() {
        return Ok(shared_poly);
    }
    if coprime_by_line_check(&ra, &rb) {
        return Ok(shared_poly);
    }
    let core = gcd_primitive_parts(&ra, &rb)?;
    Ok(normalize_primitive(&shared_poly.try_mul(&core)?))
}

/// Sound coprimality pre-check: restrict both polynomials to a random
/// line. If the restriction preserves both total degrees (so the leading
/// forms do not vanish on the direction) and the univariate gcd is
/// constant, the multivariate gcd is 1. A degenerate line is resampled;
/// failure to certify just falls through to the full algorithm.
fn coprime_by_line_check(a: &Polynomial, b: &Polynomial) -> bool {
    let arity = a.arity();
    if arity == 0 {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6fb3_52d1);
    'attempt: for _ in 0..4 {
        let mut args = Vec::with_capacity(arity);
        for _ in 0..arity {
            let base: i64 = rng.gen_range(-50..=50);
            let dir: i64 = rng.gen_range(-50..=50);
            // base + dir * t as an arity-1 polynomial
            let t = Polynomial::variable(1, 0).expect("index 0 < 1");
            let line = Polynomial::constant(1, super::rat_int(base))
                .try_add(&t.scale(&super::rat_int(dir)))
                .expect("arity 1");
            args.push(line);
        }
        let ra = a.compose(&args).expect("argument count matches arity");
        let rb = b.compose(&args).expect("argument count matches arity");
        let ua = UniPoly::from_polynomial(&ra);
        let ub = UniPoly::from_polynomial(&rb);
        if ua.degree() != a.total_degree().map(|d| d as usize)
            || ub.degree() != b.total_degree().map(|d| d as usize)
        {
            continue 'attempt;
        }
        let g = ua.gcd(&ub);
        if g.degree() == Some(0) {
            return true;
        }
        return false;
    }
    false
}

/// Recursive gcd of two non-constant polynomials with trivial monomial
/// content, via content/primitive-part splitting in the top variable and
/// a subresultant PRS on the primitive parts.
fn gcd_primitive_parts(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    let var = *a
        .support()
        .iter()
        .chain(b.support().iter())
        .max()
        .expect("non-constant inputs have support");

    let cont_a = content_in(a, var)?;
    let cont_b = content_in(b, var)?;
    let pp_a = exact_div(a, &cont_a).expect("content divides");
    let pp_b = exact_div(b, &cont_b).expect("content divides");
    let cont_gcd = gcd(&cont_a, &cont_b)?;

    // One side free of the main variable: its primitive part is a unit.
    if a.degree_in(var) == 0 || b.degree_in(var) == 0 {
        return Ok(cont_gcd);
    }

    let pp_gcd = subresultant_prs(&pp_a, &pp_b, var)?;
    Ok(normalize_primitive(&cont_gcd.try_mul(&pp_gcd)?))
}

/// Pseudo-remainder of `a` by `b` in variable `var`:
/// exactly `lc(b)^(deg a - deg b + 1) * a  mod  b`.
fn pseudo_rem(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let arity = a.arity();
    let db = b.degree_in(var) as i64;
    let lcb = b.coefficients_in(var).last().expect("b nonzero").clone();
    let mut rem = a.clone();
    let mut scale_left = a.degree_in(var) as i64 - db + 1;
    while !rem.is_zero() && rem.degree_in(var) as i64 >= db {
        let dr = rem.degree_in(var) as i64;
        let lcr = rem.coefficients_in(var).last().expect("rem nonzero").clone();
        // rem <- lc(b)*rem - lc(r)*x^(dr-db)*b
        let shift = Monomial::new(
            (0..arity).map(|i| if i == var { (dr - db) as u32 } else { 0 }).collect(),
        );
        let lead = b
            .mul_monomial(&shift, &Rational::one())
            .try_mul(&lcr)
            .expect("same arity");
        rem = rem.try_mul(&lcb).expect("same arity").try_sub(&lead).expect("same arity");
        scale_left -= 1;
    }
    // Degree can drop by more than one per step; pad to the full factor.
    for _ in 0..scale_left.max(0) {
        rem = rem.try_mul(&lcb).expect("same arity");
    }
    rem
}

/// Subresultant polynomial remainder sequence; returns the primitive part
/// (with respect to `var`) of the last nonzero remainder, which is a gcd
/// of the primitive inputs.
fn subresultant_prs(a: &Polynomial, b: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    let arity = a.arity();
    let (mut r0, mut r1) = if a.degree_in(var) >= b.degree_in(var) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = Polynomial::one(arity);
    let mut h = Polynomial::one(arity);
    loop {
        let d0 = r0.degree_in(var);
        let d1 = r1.degree_in(var);
        let delta = d0 - d1;
        let prem = pseudo_rem(&r0, &r1, var);
        if prem.is_zero() {
            let cont = content_in(&r1, var)?;
            let pp = exact_div(&r1, &cont).expect("content divides");
            return Ok(normalize_primitive(&pp));
        }
        let divisor = g.try_mul(&h.pow(delta))?;
        let next = exact_div(&prem, &divisor)
            .expect("subresultant scaling divides the pseudo-remainder exactly");
        g = r1.coefficients_in(var).last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            exact_div(&g.pow(delta), &h.pow(delta - 1)).expect("subresultant h update is exact")
        };
        r0 = r1;
        r1 = next;
        if r1.degree_in(var) == 0 {
            // Primitive inputs sharing no factor involving `var`.
            return Ok(Polynomial::one(arity));
        }
    }
}
