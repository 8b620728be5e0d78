//! Linear algebra over the polynomial ring and its fraction field:
//! fraction-free (Bareiss) elimination, generic rank, symbolic kernels,
//! minors, and Pluecker coordinates.
//!
//! Elimination never leaves the polynomial ring; the only divisions are
//! the exact Bareiss divisions by the previous pivot. Zero-testing is
//! structural, with no epsilon anywhere.

mod qmat;

pub use qmat::{in_span, row_rank, QMatrix};

use crate::poly::{
    exact_div, gcd, gcd_list, rational_content, PolyError, Polynomial,
    Rational, RationalFunction,
};
use itertools::Itertools;
use num::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is full rank; kernel is trivial")]
    KernelEmpty,
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Rectangular matrix with polynomial entries sharing one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    arity: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, arity: usize, entries: Vec<Polynomial>) -> Result<Self, PolyError> {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        for e in &entries {
            if e.arity() != arity {
                return Err(PolyError::ArityMismatch(arity, e.arity()));
            }
        }
        Ok(PolyMatrix { rows, cols, arity, entries })
    }

    pub fn from_rows(arity: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, arity, rows.into_iter().flatten().collect())
    }

    pub fn zero(rows: usize, cols: usize, arity: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            arity,
            entries: vec![Polynomial::zero(arity); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn at(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert_eq!(p.arity(), self.arity);
        self.entries[r * self.cols + c] = p;
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.cols, self.rows, self.arity);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.at(r, c) != self.at(c, r) {
                    return false;
                }
            }
        }
        true
    }

    /// Entry-wise exact evaluation.
    pub fn evaluate(&self, point: &[Rational]) -> Result<QMatrix, PolyError> {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for e in &self.entries {
            data.push(e.evaluate(point)?);
        }
        Ok(QMatrix::new(self.rows, self.cols, data))
    }

    /// Entry-wise polynomial substitution (e.g. restricting to a
    /// parametrized subset).
    pub fn compose(&self, args: &[Polynomial]) -> Result<PolyMatrix, PolyError> {
        let out_arity = args.first().map(|a| a.arity()).unwrap_or(0);
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for e in &self.entries {
            entries.push(e.compose(args)?);
        }
        PolyMatrix::new(self.rows, self.cols, out_arity, entries)
    }

    /// Apply the matrix to a vector of polynomials.
    pub fn mul_poly_vec(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>, PolyError> {
        assert_eq!(v.len(), self.cols);
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc = Polynomial::zero(self.arity);
            for c in 0..self.cols {
                acc = acc.try_add(&self.at(r, c).try_mul(&v[c])?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Result of fraction-free row reduction.
struct Echelon {
    work: Vec<Vec<Polynomial>>,
    pivot_cols: Vec<usize>,
    swap_sign: i8,
}

/// Fraction-free (Bareiss) row echelon. Pivots are chosen per column as
/// the candidate of lowest total degree (ties: lowest row index), which
/// keeps the elimination deterministic while limiting expression swell.
fn bareiss_echelon(m: &PolyMatrix) -> Echelon {
    let mut work: Vec<Vec<Polynomial>> = (0..m.rows)
        .map(|r| (0..m.cols).map(|c| m.at(r, c).clone()).collect())
        .collect();
    let mut pivot_cols = Vec::new();
    let mut prev = Polynomial::one(m.arity);
    let mut row = 0;
    let mut swap_sign = 1i8;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let pivot = (row..m.rows)
            .filter(|&r| !work[r][col].is_zero())
            .min_by_key(|&r| (work[r][col].total_degree().unwrap_or(0), r));
        let Some(p) = pivot else { continue };
        if p != row {
            work.swap(row, p);
            swap_sign = -swap_sign;
        }
        for i in (row + 1)..m.rows {
            for j in (col + 1)..m.cols {
                let num = work[row][col]
                    .try_mul(&work[i][j])
                    .and_then(|a| a.try_sub(&work[i][col].try_mul(&work[row][j])?))
                    .expect("one arity throughout");
                work[i][j] = exact_div(&num, &prev)
                    .expect("Bareiss division by the previous pivot is exact");
            }
            work[i][col] = Polynomial::zero(m.arity);
        }
        prev = work[row][col].clone();
        pivot_cols.push(col);
        row += 1;
    }
    Echelon { work, pivot_cols, swap_sign }
}

/// Rank over the rational function field (the generic rank), computed by
/// fraction-free elimination.
pub fn bareiss_rank(m: &PolyMatrix) -> usize {
    bareiss_echelon(m).pivot_cols.len()
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn determinant(m: &PolyMatrix) -> Polynomial {
    assert_eq!(m.rows, m.cols, "determinant needs a square matrix");
    let ech = bareiss_echelon(m);
    if ech.pivot_cols.len() < m.rows {
        return Polynomial::zero(m.arity);
    }
    let last = ech.work[m.rows - 1][*ech.pivot_cols.last().unwrap()].clone();
    if ech.swap_sign < 0 {
        last.neg()
    } else {
        last
    }
}

/// Exact rank of the matrix evaluated at a rational point.
pub fn rank_at_point(m: &PolyMatrix, point: &[Rational]) -> Result<usize, PolyError> {
    Ok(m.evaluate(point)?.rank())
}

/// Symbolic kernel basis: content-cleared polynomial vectors spanning the
/// kernel over the fraction field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    ambient: usize,
    arity: usize,
    vectors: Vec<Vec<Polynomial>>,
}

impl KernelBasis {
    pub fn from_vectors(ambient: usize, arity: usize, vectors: Vec<Vec<Polynomial>>) -> Self {
        let vectors = vectors.into_iter().map(|v| normalize_poly_vector(&v)).collect();
        KernelBasis { ambient, arity, vectors }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Polynomial>] {
        &self.vectors
    }
}

/// Divide a polynomial vector by the gcd of its entries and by its
/// rational content, then flip signs so the first nonzero entry has a
/// positive grevlex leading coefficient.
pub fn normalize_poly_vector(v: &[Polynomial]) -> Vec<Polynomial> {
    let nonzero: Vec<&Polynomial> = v.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return v.to_vec();
    }
    let g = gcd_list(nonzero.iter().copied()).expect("nonzero entries exist");
    let mut out: Vec<Polynomial> = v
        .iter()
        .map(|p| {
            if p.is_zero() {
                p.clone()
            } else {
                exact_div(p, &g).expect("gcd divides every entry")
            }
        })
        .collect();
    // Clear the joint rational content so coefficients are coprime integers.
    let mut content: Option<Rational> = None;
    for p in out.iter().filter(|p| !p.is_zero()) {
        let c = rational_content(p);
        content = Some(match content {
            None => c,
            Some(acc) => {
                // gcd of two positive rationals a/b, c/d = gcd(ad, cb)/(bd)
                let num = num::Integer::gcd(
                    &(acc.numer() * c.denom()),
                    &(c.numer() * acc.denom()),
                );
                Rational::new(num, acc.denom() * c.denom())
            }
        });
    }
    let mut scale = content.unwrap_or_else(Rational::one).recip();
    if out.iter().find(|p| !p.is_zero()).map(|p| p.leading_sign()).unwrap_or(1) < 0 {
        scale = -scale;
    }
    out.iter_mut().for_each(|p| *p = p.scale(&scale));
    out
}

/// Kernel of `m` over the fraction field, computed from the fraction-free
/// echelon by exact back substitution. Free columns are used in
/// increasing index order, so the basis is deterministic.
pub fn kernel_basis(m: &PolyMatrix) -> Result<KernelBasis, LinalgError> {
    let ech = bareiss_echelon(m);
    let rank = ech.pivot_cols.len();
    if rank == m.cols {
        return Err(LinalgError::KernelEmpty);
    }
    let free: Vec<usize> = (0..m.cols).filter(|c| !ech.pivot_cols.contains(c)).collect();
    let mut vectors = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x: Vec<RationalFunction> =
            (0..m.cols).map(|_| RationalFunction::zero(m.arity)).collect();
        x[f] = RationalFunction::one(m.arity);
        for r in (0..rank).rev() {
            let p = ech.pivot_cols[r];
            let mut sum = RationalFunction::zero(m.arity);
            for j in (p + 1)..m.cols {
                if ech.work[r][j].is_zero() || x[j].is_zero() {
                    continue;
                }
                let term = RationalFunction::from_polynomial(ech.work[r][j].clone()).mul(&x[j])?;
                sum = sum.add(&term)?;
            }
            let pivot = RationalFunction::from_polynomial(ech.work[r][p].clone());
            x[p] = sum.neg().div(&pivot)?;
        }
        vectors.push(clear_denominators(&x)?);
    }
    Ok(KernelBasis::from_vectors(m.cols, m.arity, vectors))
}

/// Multiply a rational-function vector by the least common denominator.
fn clear_denominators(v: &[RationalFunction]) -> Result<Vec<Polynomial>, PolyError> {
    let arity = v.first().map(|f| f.arity()).unwrap_or(0);
    let mut lcd = Polynomial::one(arity);
    for f in v {
        let den = f.denominator();
        let g = gcd(&lcd, den)?;
        lcd = exact_div(&lcd.try_mul(den)?, &g).expect("gcd divides the product");
    }
    let mut out = Vec::with_capacity(v.len());
    for f in v {
        let cofactor = exact_div(&lcd, f.denominator()).expect("lcd is a common multiple");
        out.push(f.numerator().try_mul(&cofactor)?);
    }
    Ok(out)
}

/// All `r x r` minors in lexicographic order on the row tuple, then the
/// column tuple.
pub fn minors(m: &PolyMatrix, r: usize) -> Result<Vec<Polynomial>, LinalgError> {
    if r < 1 || r > m.rows.min(m.cols) {
        return Err(LinalgError::MinorSize { size: r, rows: m.rows, cols: m.cols });
    }
    let mut out = Vec::new();
    for row_set in (0..m.rows).combinations(r) {
        for col_set in (0..m.cols).combinations(r) {
            let entries: Vec<Polynomial> = row_set
                .iter()
                .flat_map(|&rr| col_set.iter().map(move |&cc| m.at(rr, cc).clone()))
                .collect();
            let sub = PolyMatrix::new(r, r, m.arity, entries)?;
            out.push(determinant(&sub));
        }
    }
    Ok(out)
}

/// Pluecker coordinates of the row span of a kernel basis: all maximal
/// minors of the basis matrix, indexed by sorted column tuples in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlueckerVector {
    subspace_dim: usize,
    ambient: usize,
    arity: usize,
    coords: Vec<(Vec<usize>, Polynomial)>,
    reduced: bool,
}

impl PlueckerVector {
    pub fn subspace_dim(&self) -> usize {
        self.subspace_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Coordinates in canonical tuple order (all of them, zeros included).
    pub fn coordinates(&self) -> &[(Vec<usize>, Polynomial)] {
        &self.coords
    }

    pub fn coordinate_polynomials(&self) -> Vec<Polynomial> {
        self.coords.iter().map(|(_, p)| p.clone()).collect()
    }

    /// Divide all coordinates by their common gcd and rational content,
    /// then sign-normalize on the first nonzero coordinate.
    pub fn reduce(&self) -> PlueckerVector {
        let polys: Vec<Polynomial> = self.coords.iter().map(|(_, p)| p.clone()).collect();
        let reduced = normalize_poly_vector(&polys);
        PlueckerVector {
            subspace_dim: self.subspace_dim,
            ambient: self.ambient,
            arity: self.arity,
            coords: self
                .coords
                .iter()
                .zip(reduced)
                .map(|((t, _), p)| (t.clone(), p))
                .collect(),
            reduced: true,
        }
    }

    /// Exact evaluation; `None` when every coordinate vanishes (the point
    /// is in the indeterminacy locus).
    pub fn evaluate(&self, point: &[Rational]) -> Result<Option<GrassmannPoint>, PolyError> {
        let mut vals = Vec::with_capacity(self.coords.len());
        for (t, p) in &self.coords {
            vals.push((t.clone(), p.evaluate(point)?));
        }
        if vals.iter().all(|(_, v)| v.is_zero()) {
            return Ok(None);
        }
        Ok(Some(GrassmannPoint::new(self.subspace_dim, self.ambient, vals)))
    }
}

/// Pluecker coordinates of the span of `basis`.
pub fn pluecker(basis: &KernelBasis) -> Result<PlueckerVector, LinalgError> {
    let d = basis.dim();
    assert!(d >= 1, "pluecker needs a non-empty basis");
    let n = basis.ambient_dim();
    let mat = PolyMatrix::from_rows(basis.arity(), basis.vectors().to_vec())?;
    let mut coords = Vec::new();
    for col_set in (0..n).combinations(d) {
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for &c in &col_set {
                entries.push(mat.at(r, c).clone());
            }
        }
        let sub = PolyMatrix::new(d, d, basis.arity(), entries)?;
        coords.push((col_set, determinant(&sub)));
    }
    Ok(PlueckerVector {
        subspace_dim: d,
        ambient: n,
        arity: basis.arity(),
        coords,
        reduced: false,
    })
}

/// A rational point of the Grassmannian, normalized so the first nonzero
/// coordinate (in tuple order) equals 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannPoint {
    subspace_dim: usize,
    ambient: usize,
    coords: Vec<(Vec<usize>, Rational)>,
}

impl GrassmannPoint {
    pub fn new(subspace_dim: usize, ambient: usize, coords: Vec<(Vec<usize>, Rational)>) -> Self {
        let scale = coords
            .iter()
            .find(|(_, v)| !v.is_zero())
            .map(|(_, v)| v.recip())
            .expect("a Grassmann point needs a nonzero coordinate");
        let coords = coords.into_iter().map(|(t, v)| (t, v * &scale)).collect();
        GrassmannPoint { subspace_dim, ambient, coords }
    }

    pub fn subspace_dim(&self) -> usize {
        self.subspace_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn coordinates(&self) -> &[(Vec<usize>, Rational)] {
        &self.coords
    }

    pub fn coordinate(&self, tuple: &[usize]) -> Option<&Rational> {
        self.coords.iter().find(|(t, _)| t == tuple).map(|(_, v)| v)
    }

    /// Vectors spanning the subspace, reconstructed by contracting the
    /// coordinate vector against the first nonzero tuple.
    pub fn spanning_vectors(&self) -> Vec<Vec<Rational>> {
        let (anchor, _) = self
            .coords
            .iter()
            .find(|(_, v)| !v.is_zero())
            .expect("normalized point has a nonzero coordinate");
        let lookup = |tuple: &[usize]| -> Rational {
            self.coordinate(tuple).cloned().unwrap_or_else(Rational::zero)
        };
        let mut vectors = Vec::with_capacity(self.subspace_dim);
        for &i in anchor {
            let rest: Vec<usize> = anchor.iter().copied().filter(|&k| k != i).collect();
            let mut v = vec![Rational::zero(); self.ambient];
            for j in 0..self.ambient {
                if rest.contains(&j) {
                    continue;
                }
                let mut tuple = rest.clone();
                tuple.push(j);
                tuple.sort_unstable();
                let below = rest.iter().filter(|&&k| k < j).count();
                let sign = if below % 2 == 0 { Rational::one() } else { -Rational::one() };
                v[j] = sign * lookup(&tuple);
            }
            vectors.push(v);
        }
        vectors
    }

    /// Recompute the coordinates from the reconstructed spanning vectors;
    /// equality certifies that the stored coordinates satisfy the Pluecker
    /// relations (they come from an actual subspace).
    pub fn is_consistent(&self) -> bool {
        let vs = self.spanning_vectors();
        let m = QMatrix::from_rows(vs);
        let mut coords = Vec::new();
        for col_set in (0..self.ambient).combinations(self.subspace_dim) {
            let minor = qmat_minor(&m, &col_set);
            coords.push((col_set, minor));
        }
        if coords.iter().all(|(_, v)| v.is_zero()) {
            return false;
        }
        let rebuilt = GrassmannPoint::new(self.subspace_dim, self.ambient, coords);
        rebuilt == *self
    }
}

/// Determinant of the square submatrix of `m` on all rows and the given
/// columns, by rational elimination.
fn qmat_minor(m: &QMatrix, cols: &[usize]) -> Rational {
    let d = cols.len();
    assert_eq!(m.rows(), d);
    let mut work: Vec<Vec<Rational>> =
        (0..d).map(|r| cols.iter().map(|&c| m.at(r, c).clone()).collect()).collect();
    let mut det = Rational::one();
    for col in 0..d {
        let Some(p) = (col..d).find(|&r| !work[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            work.swap(col, p);
            det = -det;
        }
        let pivot = work[col][col].clone();
        det *= &pivot;
        for r in (col + 1)..d {
            let factor = &work[r][col] / &pivot;
            for c in col..d {
                let v = &work[r][c] - &factor * &work[col][c];
                work[r][c] = v;
            }
        }
    }
    det
}
