#![allow(dead_code)] // compiled per test target; not all targets use all helpers

//! Shared test support: a naive fraction-field Gaussian eliminator (the
//! independent oracle for the fraction-free path) and seeded random
//! generators for polynomials, matrices, and points.

use fibration::poly::{rat_int, Monomial, Polynomial, Rational, RationalFunction};
use fibration::{KernelBasis, PolyMatrix};
use num::Zero;
use rand::Rng;

/// Rank by plain Gauss-Jordan elimination over the rational function
/// field. No fraction-free tricks, no pivot-degree heuristics: the first
/// nonzero entry in each column is the pivot.
pub fn naive_rank(m: &PolyMatrix) -> usize {
    naive_rref(m).1.len()
}

type RfMatrix = Vec<Vec<RationalFunction>>;

fn naive_rref(m: &PolyMatrix) -> (RfMatrix, Vec<usize>) {
    let rows = m.rows();
    let cols = m.cols();
    let mut work: RfMatrix = (0..rows)
        .map(|r| (0..cols).map(|c| RationalFunction::from_polynomial(m.at(r, c).clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !work[r][col].is_zero()) else { continue };
        work.swap(row, p);
        let inv = work[row][col].recip().expect("pivot nonzero");
        for c in col..cols {
            work[row][c] = work[row][c].mul(&inv).expect("one arity");
        }
        for r in 0..rows {
            if r != row && !work[r][col].is_zero() {
                let factor = work[r][col].clone();
                for c in col..cols {
                    let delta = factor.mul(&work[row][c]).expect("one arity");
                    work[r][c] = work[r][c].sub(&delta).expect("one arity");
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (work, pivots)
}

/// Kernel by back-reading the reduced row echelon form, denominators
/// cleared by multiplying through (no gcd shortcuts). Vectors are
/// normalized through the library so spans can be compared directly.
pub fn naive_kernel(m: &PolyMatrix) -> KernelBasis {
    let (rref, pivots) = naive_rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut vectors = Vec::new();
    for &f in &free {
        let mut x: Vec<RationalFunction> =
            (0..cols).map(|_| RationalFunction::zero(m.arity())).collect();
        x[f] = RationalFunction::one(m.arity());
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rref[r][f].neg();
        }
        // Clear denominators with the plain product.
        let mut product = Polynomial::one(m.arity());
        for e in &x {
            product = product.try_mul(e.denominator()).expect("one arity");
        }
        let cleared: Vec<Polynomial> = x
            .iter()
            .map(|e| {
                let cofactor = fibration::poly::exact_div(&product, e.denominator())
                    .expect("denominator divides the product");
                e.numerator().try_mul(&cofactor).expect("one arity")
            })
            .collect();
        vectors.push(cleared);
    }
    KernelBasis::from_vectors(cols, m.arity(), vectors)
}

pub fn random_polynomial(
    rng: &mut impl Rng,
    arity: usize,
    max_terms: usize,
    max_exp: u32,
    coeff_bound: i64,
) -> Polynomial {
    let terms = rng.gen_range(0..=max_terms);
    Polynomial::from_terms(
        arity,
        (0..terms).map(|_| {
            let exps: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..=max_exp)).collect();
            let coeff = rat_int(rng.gen_range(-coeff_bound..=coeff_bound));
            (Monomial::new(exps), coeff)
        }),
    )
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, arity: usize) -> PolyMatrix {
    let entries: Vec<Polynomial> = (0..rows * cols)
        .map(|_| random_polynomial(rng, arity, 2, 2, 4))
        .collect();
    PolyMatrix::new(rows, cols, arity, entries).expect("arities agree")
}

pub fn random_point(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rat_int(rng.gen_range(-1000..=1000))).collect()
}

/// True when every entry is the zero polynomial.
pub fn is_zero_vector(v: &[Polynomial]) -> bool {
    v.iter().all(|p| p.is_zero())
}

/// True when every coordinate evaluates to zero at the point.
pub fn all_vanish(polys: &[Polynomial], point: &[Rational]) -> bool {
    polys
        .iter()
        .all(|p| p.evaluate(point).expect("point length matches").is_zero())
}
