//! The core analysis: build a polynomial map (possibly from a potential),
//! verify the affine-fibration assumptions, compute the kernel fibration
//! in reduced Pluecker coordinates, classify candidate essential
//! singularities, and take Grassmannian limits along rational curves.

use crate::conjecture::AffineSubspace;
use crate::linalg::{
    bareiss_rank, in_span, kernel_basis, pluecker, rank_at_point, GrassmannPoint, KernelBasis,
    LinalgError, PlueckerVector, PolyMatrix, QMatrix,
};
use crate::poly::unipoly::UniPoly;
use crate::poly::{PolyError, Polynomial, Rational};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibrationError {
    #[error("a map needs at least {min} components, got {got}")]
    TooFewComponents { min: usize, got: usize },
    #[error("component {index} has arity {got}, expected {expected}")]
    ComponentArity { index: usize, expected: usize, got: usize },
    #[error("assumption (A1) fails: generic rank {k} of the Jacobian is not in 1..={max}")]
    AssumptionA1 { k: usize, max: usize },
    #[error("the curve lies inside the indeterminacy locus")]
    CurveInsideIndeterminacy,
    #[error("curve must have a nonzero coefficient beyond the basepoint")]
    DegenerateCurve,
    #[error("curve coefficient {index} has length {got}, expected {expected}")]
    CurveCoefficientLength { index: usize, expected: usize, got: usize },
    #[error("dimension mismatch: limit subspace has dimension {limit}, piece has dimension {piece}")]
    TangencyDimension { limit: usize, piece: usize },
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A polynomial self-map of affine n-space. When built from a potential,
/// the gradient source is remembered and the Jacobian is the (symmetric)
/// Hessian of the potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoloMap {
    n: usize,
    components: Vec<Polynomial>,
    gradient_source: Option<Polynomial>,
}

impl HoloMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self, FibrationError> {
        let n = components.len();
        if n < 1 {
            return Err(FibrationError::TooFewComponents { min: 1, got: n });
        }
        for (i, c) in components.iter().enumerate() {
            if c.arity() != n {
                return Err(FibrationError::ComponentArity {
                    index: i,
                    expected: n,
                    got: c.arity(),
                });
            }
        }
        Ok(HoloMap { n, components, gradient_source: None })
    }

    /// The gradient map of a potential; its Jacobian is the Hessian.
    pub fn from_potential(psi: &Polynomial) -> Result<Self, FibrationError> {
        let n = psi.arity();
        if n < 2 {
            return Err(FibrationError::TooFewComponents { min: 2, got: n });
        }
        let components = (0..n)
            .map(|i| psi.partial_derivative(i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HoloMap { n, components, gradient_source: Some(psi.clone()) })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn gradient_source(&self) -> Option<&Polynomial> {
        self.gradient_source.as_ref()
    }

    /// Jacobian matrix: entry (j, k) is the k-th partial of component j.
    pub fn jacobian(&self) -> PolyMatrix {
        let entries: Vec<Polynomial> = self
            .components
            .iter()
            .flat_map(|c| (0..self.n).map(|k| c.partial_derivative(k).expect("k < arity")))
            .collect();
        PolyMatrix::new(self.n, self.n, self.n, entries).expect("components share arity")
    }
}

/// Assumption (A1): the generic Jacobian rank `k` satisfies `1 <= k <= n-1`.
/// Returns `(k, ok)`; `k = 0` (constant map) and `k = n` (discrete level
/// sets) are reported as `ok = false`.
pub fn check_a1(map: &HoloMap) -> (usize, bool) {
    let k = bareiss_rank(&map.jacobian());
    (k, k >= 1 && k < map.ambient_dim())
}

/// Outcome of the assumption (A2) check. On failure the witness is a
/// nonzero defect component: a polynomial in the original variables plus
/// one trailing scalar parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A2Outcome {
    pub ok: bool,
    pub witness: Option<Polynomial>,
}

/// Assumption (A2) as a local identity: for every denominator-cleared
/// kernel vector `w`, the map is constant along `xi + t*w(xi)`, i.e.
/// `Gamma(xi + t*w(xi)) - Gamma(xi)` vanishes identically.
pub fn check_a2(map: &HoloMap) -> Result<A2Outcome, FibrationError> {
    let kernel = kernel_basis(&map.jacobian())?;
    Ok(check_a2_with_kernel(map, &kernel)?)
}

fn check_a2_with_kernel(map: &HoloMap, kernel: &KernelBasis) -> Result<A2Outcome, PolyError> {
    let n = map.ambient_dim();
    // Work in n+1 variables, the last one being the line parameter t.
    let t = Polynomial::variable(n + 1, n).expect("index n < n+1");
    for w in kernel.vectors() {
        let args: Vec<Polynomial> = (0..n)
            .map(|i| {
                let xi = Polynomial::variable(n + 1, i).expect("i < n+1");
                let wi = w[i].extend_arity(1);
                xi.try_add(&t.try_mul(&wi)?)
            })
            .collect::<Result<_, _>>()?;
        for component in map.components() {
            let shifted = component.compose(&args)?;
            let defect = shifted.try_sub(&component.extend_arity(1))?;
            if !defect.is_zero() {
                return Ok(A2Outcome { ok: false, witness: Some(defect) });
            }
        }
    }
    Ok(A2Outcome { ok: true, witness: None })
}

/// Full analysis of a map satisfying (A1).
#[derive(Debug, Clone)]
pub struct FibrationAnalysis {
    map: HoloMap,
    k: usize,
    jacobian: PolyMatrix,
    kernel: KernelBasis,
    pluecker: PlueckerVector,
    a2: A2Outcome,
}

impl FibrationAnalysis {
    pub fn map(&self) -> &HoloMap {
        &self.map
    }

    /// Generic rank of the Jacobian.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ambient_dim(&self) -> usize {
        self.map.ambient_dim()
    }

    pub fn jacobian(&self) -> &PolyMatrix {
        &self.jacobian
    }

    pub fn kernel(&self) -> &KernelBasis {
        &self.kernel
    }

    /// Reduced Pluecker vector of the kernel fibration.
    pub fn pluecker(&self) -> &PlueckerVector {
        &self.pluecker
    }

    pub fn a1_ok(&self) -> bool {
        true
    }

    pub fn a2_ok(&self) -> bool {
        self.a2.ok
    }

    pub fn a2_witness(&self) -> Option<&Polynomial> {
        self.a2.witness.as_ref()
    }

    /// The reduced Pluecker coordinate polynomials in canonical tuple
    /// order; their common zero set is the candidate singular locus.
    pub fn singular_generators(&self) -> Vec<Polynomial> {
        self.pluecker.coordinate_polynomials()
    }
}

/// Run the full pipeline: (A1), kernel, reduced Pluecker vector, (A2).
/// Refuses to compute the kernel when (A1) fails.
pub fn analyze(map: &HoloMap) -> Result<FibrationAnalysis, FibrationError> {
    let jacobian = map.jacobian();
    let (k, a1_ok) = check_a1(map);
    if !a1_ok {
        return Err(FibrationError::AssumptionA1 { k, max: map.ambient_dim() - 1 });
    }
    let kernel = kernel_basis(&jacobian)?;
    let pv = pluecker(&kernel)?.reduce();
    let a2 = check_a2_with_kernel(map, &kernel)?;
    Ok(FibrationAnalysis { map: map.clone(), k, jacobian, kernel, pluecker: pv, a2 })
}

/// Classification of a point with respect to the kernel fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointClass {
    /// Every reduced Pluecker coordinate vanishes: the extension of the
    /// fibration has no value at this point.
    Singular,
    /// The Jacobian rank drops but the reduced Pluecker vector still has
    /// a value: the fibration extends continuously with this value.
    ExtendibleWith(GrassmannPoint),
    /// The point lies on the maximal-rank stratum; the value is the
    /// honest kernel there.
    OnMaxRankStratum(GrassmannPoint),
}

/// Evaluate the reduced Pluecker vector at a point and classify it.
pub fn is_essential_singularity(
    analysis: &FibrationAnalysis,
    point: &[Rational],
) -> Result<PointClass, FibrationError> {
    let value = analysis.pluecker.evaluate(point)?;
    match value {
        None => Ok(PointClass::Singular),
        Some(gp) => {
            let rank = rank_at_point(&analysis.jacobian, point)?;
            if rank == analysis.k {
                Ok(PointClass::OnMaxRankStratum(gp))
            } else {
                Ok(PointClass::ExtendibleWith(gp))
            }
        }
    }
}

/// A polynomial curve `xi(t) = a_0 + a_1 t + ... + a_d t^d` approaching
/// its basepoint `a_0` as `t -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    coefficients: Vec<Vec<Rational>>,
}

impl CurveSpec {
    pub fn new(coefficients: Vec<Vec<Rational>>) -> Result<Self, FibrationError> {
        let n = match coefficients.first() {
            Some(a0) => a0.len(),
            None => return Err(FibrationError::DegenerateCurve),
        };
        for (i, a) in coefficients.iter().enumerate() {
            if a.len() != n {
                return Err(FibrationError::CurveCoefficientLength {
                    index: i,
                    expected: n,
                    got: a.len(),
                });
            }
        }
        if !coefficients.iter().skip(1).any(|a| a.iter().any(|c| !c.is_zero())) {
            return Err(FibrationError::DegenerateCurve);
        }
        Ok(CurveSpec { coefficients })
    }

    pub fn ambient_dim(&self) -> usize {
        self.coefficients[0].len()
    }

    /// The limit point at `t = 0`.
    pub fn basepoint(&self) -> &[Rational] {
        &self.coefficients[0]
    }

    /// Coordinate functions as arity-1 polynomials in `t`.
    pub fn coordinate_polynomials(&self) -> Vec<Polynomial> {
        let n = self.ambient_dim();
        let t = Polynomial::variable(1, 0).expect("0 < 1");
        (0..n)
            .map(|j| {
                let mut p = Polynomial::zero(1);
                for (deg, a) in self.coefficients.iter().enumerate() {
                    p = p
                        .try_add(&t.pow(deg as u32).scale(&a[j]))
                        .expect("arity 1");
                }
                p
            })
            .collect()
    }
}

/// Grassmannian limit of the kernel fibration along a curve: substitute
/// the curve, strip the largest common power of `t`, and evaluate at 0.
pub fn limit_along_curve(
    analysis: &FibrationAnalysis,
    curve: &CurveSpec,
) -> Result<GrassmannPoint, FibrationError> {
    if curve.ambient_dim() != analysis.ambient_dim() {
        return Err(FibrationError::AmbientMismatch(
            analysis.ambient_dim(),
            curve.ambient_dim(),
        ));
    }
    let coords = curve.coordinate_polynomials();
    let mut restricted: Vec<(Vec<usize>, UniPoly)> = Vec::new();
    for (tuple, p) in analysis.pluecker.coordinates() {
        let r = p.compose(&coords)?;
        restricted.push((tuple.clone(), UniPoly::from_polynomial(&r)));
    }
    let valuation = restricted
        .iter()
        .filter_map(|(_, u)| u.valuation())
        .min()
        .ok_or(FibrationError::CurveInsideIndeterminacy)?;
    let values: Vec<(Vec<usize>, Rational)> = restricted
        .into_iter()
        .map(|(tuple, u)| {
            let v = u
                .coeffs()
                .get(valuation)
                .cloned()
                .unwrap_or_else(Rational::zero);
            (tuple, v)
        })
        .collect();
    Ok(GrassmannPoint::new(
        analysis.pluecker.subspace_dim(),
        analysis.ambient_dim(),
        values,
    ))
}

/// The limiting kernel subspace must lie inside the tangent (direction)
/// space of the affine singular piece.
pub fn check_tangency(
    limit: &GrassmannPoint,
    piece: &AffineSubspace,
) -> Result<bool, FibrationError> {
    if limit.ambient_dim() != piece.ambient_dim() {
        return Err(FibrationError::AmbientMismatch(
            limit.ambient_dim(),
            piece.ambient_dim(),
        ));
    }
    if piece.dimension() < limit.subspace_dim() {
        return Err(FibrationError::TangencyDimension {
            limit: limit.subspace_dim(),
            piece: piece.dimension(),
        });
    }
    for v in limit.spanning_vectors() {
        if v.iter().all(|c| c.is_zero()) {
            continue;
        }
        if !in_span(piece.directions(), &v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generic Jacobian rank on an affine piece: substitute the affine
/// parametrization and take the fraction-free rank in the parameters.
pub fn rank_on_affine_set(map: &HoloMap, piece: &AffineSubspace) -> Result<usize, FibrationError> {
    if piece.ambient_dim() != map.ambient_dim() {
        return Err(FibrationError::AmbientMismatch(map.ambient_dim(), piece.ambient_dim()));
    }
    let jac = map.jacobian();
    if piece.dimension() == 0 {
        return Ok(jac.evaluate(piece.basepoint())?.rank());
    }
    let restricted = jac.compose(&piece.parametrization())?;
    Ok(bareiss_rank(&restricted))
}

/// Generic Jacobian rank on a polynomially parametrized subset.
pub fn rank_on_parametrized_set(
    map: &HoloMap,
    parametrization: &[Polynomial],
) -> Result<usize, FibrationError> {
    let jac = map.jacobian();
    let restricted = jac.compose(parametrization)?;
    Ok(bareiss_rank(&restricted))
}

/// Dimension bounds for a non-empty singular set:
/// `max(k-1, n-k+1) <= d <= n-2`.
pub fn check_dimension_bounds(n: usize, k: usize, d: usize) -> bool {
    let lower = (k.saturating_sub(1)).max(n - k + 1);
    lower <= d && d + 2 <= n
}

/// Low-dimension regression: when `n <= 3` or `k <= 2` the singular set
/// must be empty. Emptiness is certified when some reduced coordinate is
/// a nonzero constant, or when all generators are linear and the affine
/// system is inconsistent. Vacuously true outside the hypothesis.
pub fn check_low_dimension_empty(n: usize, k: usize, generators: &[Polynomial]) -> bool {
    if n > 3 && k > 2 {
        return true;
    }
    if generators.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return true;
    }
    let nonzero: Vec<&Polynomial> = generators.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        // Zero set is everything: certainly not empty.
        return false;
    }
    if nonzero.iter().all(|g| g.total_degree().unwrap_or(0) <= 1) {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for g in &nonzero {
            let mut row = vec![Rational::zero(); n];
            for (mono, c) in g.terms() {
                if mono.is_unit() {
                    continue;
                }
                let i = mono.exponents().iter().position(|&e| e == 1).expect("linear term");
                row[i] = c.clone();
            }
            rows.push(row);
            rhs.push(-g.constant_value());
        }
        return QMatrix::from_rows(rows).solve(&rhs).is_none();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::{rat, rat_int};

    fn vars4() -> Vec<String> {
        ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect()
    }

    fn psi_ex1() -> Polynomial {
        parse_polynomial("x1*x2^2 + (x3 - x2*x4)^2", &vars4()).unwrap()
    }

    fn p(text: &str) -> Polynomial {
        parse_polynomial(text, &vars4()).unwrap()
    }

    #[test]
    fn gradient_jacobian_is_displayed_hessian() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        let jac = map.jacobian();
        let expected = [
            ["0", "2*x2", "0", "0"],
            ["2*x2", "2*x1 + 2*x4^2", "-2*x4", "4*x2*x4 - 2*x3"],
            ["0", "-2*x4", "2", "-2*x2"],
            ["0", "4*x2*x4 - 2*x3", "-2*x2", "2*x2^2"],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (c, text) in row.iter().enumerate() {
                assert_eq!(jac.at(r, c), &p(text), "entry ({r},{c})");
            }
        }
        assert!(jac.is_symmetric());
    }

    #[test]
    fn quadratic_potential_gives_constant_jacobian() {
        // psi = (x1^2 + 3*x1*x2)/1: gradient linear, Hessian constant.
        let vars = ["x1", "x2"].map(String::from);
        let psi = parse_polynomial("x1^2 + 3*x1*x2", &vars).unwrap();
        let map = HoloMap::from_potential(&psi).unwrap();
        let jac = map.jacobian();
        for r in 0..2 {
            for c in 0..2 {
                assert!(jac.at(r, c).is_constant());
            }
        }
        assert_eq!(jac.at(0, 1), &parse_polynomial("3", &vars).unwrap());
    }

    #[test]
    fn from_potential_requires_two_variables() {
        let psi = parse_polynomial("x^3", &["x".to_string()]).unwrap();
        assert!(matches!(
            HoloMap::from_potential(&psi),
            Err(FibrationError::TooFewComponents { .. })
        ));
    }

    #[test]
    fn a1_on_quartic_example() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        assert_eq!(check_a1(&map), (3, true));
    }

    #[test]
    fn a1_rejects_constant_map() {
        let c = Polynomial::constant(2, rat_int(5));
        let map = HoloMap::new(vec![c.clone(), c]).unwrap();
        assert_eq!(check_a1(&map), (0, false));
    }

    #[test]
    fn a1_rejects_identity_map() {
        let vars = ["x", "y"].map(String::from);
        let map = HoloMap::new(vec![
            parse_polynomial("x", &vars).unwrap(),
            parse_polynomial("y", &vars).unwrap(),
        ])
        .unwrap();
        assert_eq!(check_a1(&map), (2, false));
    }

    #[test]
    fn a2_holds_for_quartic_example() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        let outcome = check_a2(&map).unwrap();
        assert!(outcome.ok);
        assert!(outcome.witness.is_none());
    }

    #[test]
    fn a2_holds_for_linear_map() {
        let vars = ["x", "y", "z"].map(String::from);
        let map = HoloMap::new(vec![
            parse_polynomial("x + y", &vars).unwrap(),
            parse_polynomial("x - y", &vars).unwrap(),
            Polynomial::zero(3),
        ])
        .unwrap();
        let outcome = check_a2(&map).unwrap();
        assert!(outcome.ok);
    }

    #[test]
    fn a2_fails_for_curved_fibers() {
        // Gamma = (x^2 + y, 0): level sets are parabolas.
        let vars = ["x", "y"].map(String::from);
        let map = HoloMap::new(vec![
            parse_polynomial("x^2 + y", &vars).unwrap(),
            Polynomial::zero(2),
        ])
        .unwrap();
        let outcome = check_a2(&map).unwrap();
        assert!(!outcome.ok);
        let witness = outcome.witness.unwrap();
        assert!(!witness.is_zero());
    }

    #[test]
    fn analyze_quartic_example() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        let analysis = analyze(&map).unwrap();
        assert_eq!(analysis.k(), 3);
        assert!(analysis.a2_ok());
        let gens = analysis.singular_generators();
        assert_eq!(gens.len(), 4);
        // Common zero set is {x2 = x3 = 0}.
        assert_eq!(gens[0], p("x2*x4 - x3"));
        assert_eq!(gens[2], p("-1*x2^2"));
    }

    #[test]
    fn analyze_refuses_full_rank() {
        let vars = ["x", "y"].map(String::from);
        let psi = parse_polynomial("x^2 + y^2", &vars).unwrap();
        let map = HoloMap::from_potential(&psi).unwrap();
        assert!(matches!(analyze(&map), Err(FibrationError::AssumptionA1 { k: 2, .. })));
    }

    #[test]
    fn singularity_classification_on_quartic_example() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        let analysis = analyze(&map).unwrap();
        let cls = is_essential_singularity(
            &analysis,
            &[rat_int(5), rat_int(0), rat_int(0), rat_int(7)],
        )
        .unwrap();
        assert_eq!(cls, PointClass::Singular);
        let cls = is_essential_singularity(
            &analysis,
            &[rat_int(1), rat_int(1), rat_int(1), rat_int(1)],
        )
        .unwrap();
        match cls {
            PointClass::OnMaxRankStratum(gp) => {
                // kernel formula gives direction (0, 0, 1, 1) at this point
                assert_eq!(gp.coordinate(&[0]), Some(&rat_int(0)));
                let c2 = gp.coordinate(&[2]).unwrap().clone();
                let c3 = gp.coordinate(&[3]).unwrap().clone();
                assert_eq!(c2, c3);
                assert!(!c2.is_zero());
            }
            other => panic!("expected max-rank stratum, got {other:?}"),
        }
        // rank drops at (0,1,0,0)? x2 = 1 so the vector is nonzero there.
        let cls = is_essential_singularity(
            &analysis,
            &[rat_int(0), rat_int(1), rat_int(0), rat_int(0)],
        )
        .unwrap();
        match cls {
            PointClass::OnMaxRankStratum(gp) | PointClass::ExtendibleWith(gp) => {
                // direction proportional to (0, 0, 1, 1)
                assert_eq!(gp.coordinate(&[0]), Some(&rat_int(0)));
                assert_eq!(gp.coordinate(&[1]), Some(&rat_int(0)));
                assert_eq!(gp.coordinate(&[2]), gp.coordinate(&[3]));
            }
            PointClass::Singular => panic!("point is not singular"),
        }
    }

    #[test]
    fn limit_along_quartic_curves() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        let analysis = analyze(&map).unwrap();
        // curve (1, t, c*t, 0) with c = 1
        let curve = CurveSpec::new(vec![
            vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(1), rat_int(0)],
        ])
        .unwrap();
        let gp = limit_along_curve(&analysis, &curve).unwrap();
        // value proportional to (1, 0, 0, 1)
        assert_eq!(gp.coordinate(&[0]), Some(&rat_int(1)));
        assert_eq!(gp.coordinate(&[1]), Some(&rat_int(0)));
        assert_eq!(gp.coordinate(&[2]), Some(&rat_int(0)));
        assert_eq!(gp.coordinate(&[3]), Some(&rat_int(1)));
        // same curve with c = 0
        let curve0 = CurveSpec::new(vec![
            vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)],
        ])
        .unwrap();
        let gp0 = limit_along_curve(&analysis, &curve0).unwrap();
        assert_eq!(gp0.coordinate(&[0]), Some(&rat_int(0)));
        assert_eq!(gp0.coordinate(&[3]), Some(&rat_int(1)));
        assert_ne!(gp, gp0);
    }

    #[test]
    fn limit_of_constant_kernel_is_the_constant() {
        // psi = x1*x2^2 in C^3: kernel is e3 everywhere.
        let vars = ["x1", "x2", "x3"].map(String::from);
        let psi = parse_polynomial("x1*x2^2", &vars).unwrap();
        let map = HoloMap::from_potential(&psi).unwrap();
        let analysis = analyze(&map).unwrap();
        let curve = CurveSpec::new(vec![
            vec![rat_int(2), rat_int(3), rat_int(4)],
            vec![rat_int(1), rat_int(1), rat_int(1)],
        ])
        .unwrap();
        let gp = limit_along_curve(&analysis, &curve).unwrap();
        assert_eq!(gp.coordinate(&[2]), Some(&rat_int(1)));
        assert_eq!(gp.coordinate(&[0]), Some(&rat_int(0)));
    }

    #[test]
    fn curve_inside_indeterminacy_is_reported() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        let analysis = analyze(&map).unwrap();
        // curve inside {x2 = x3 = 0}
        let curve = CurveSpec::new(vec![
            vec![rat_int(0), rat_int(0), rat_int(0), rat_int(0)],
            vec![rat_int(1), rat_int(0), rat_int(0), rat_int(1)],
        ])
        .unwrap();
        assert_eq!(
            limit_along_curve(&analysis, &curve),
            Err(FibrationError::CurveInsideIndeterminacy)
        );
    }

    #[test]
    fn tangency_against_singular_piece() {
        let piece = AffineSubspace::coordinate_plane(4, &[0, 3]);
        let gp = |coords: [i64; 4]| {
            GrassmannPoint::new(
                1,
                4,
                coords
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| (vec![i], rat_int(c)))
                    .collect(),
            )
        };
        assert!(check_tangency(&gp([1, 0, 0, 1]), &piece).unwrap());
        assert!(check_tangency(&gp([0, 0, 0, 1]), &piece).unwrap());
        assert!(!check_tangency(&gp([0, 1, 0, 0]), &piece).unwrap());
    }

    #[test]
    fn tangency_dimension_mismatch() {
        let piece = AffineSubspace::new(vec![rat_int(0); 4], vec![]).unwrap();
        let gp = GrassmannPoint::new(1, 4, vec![(vec![0], rat_int(1))]);
        assert!(matches!(
            check_tangency(&gp, &piece),
            Err(FibrationError::TangencyDimension { .. })
        ));
    }

    #[test]
    fn stratum_ranks_of_quartic_example() {
        let map = HoloMap::from_potential(&psi_ex1()).unwrap();
        let piece = AffineSubspace::coordinate_plane(4, &[0, 3]);
        assert_eq!(rank_on_affine_set(&map, &piece).unwrap(), 2);
        let deeper = AffineSubspace::coordinate_plane(4, &[3]);
        assert_eq!(rank_on_affine_set(&map, &deeper).unwrap(), 1);
        let full = AffineSubspace::coordinate_plane(4, &[0, 1, 2, 3]);
        assert_eq!(rank_on_affine_set(&map, &full).unwrap(), 3);
        // A single point: the rank of the evaluated matrix.
        let origin = AffineSubspace::new(vec![rat_int(0); 4], vec![]).unwrap();
        assert_eq!(rank_on_affine_set(&map, &origin).unwrap(), 1);
    }

    #[test]
    fn dimension_bounds_table() {
        assert!(check_dimension_bounds(4, 3, 2));
        assert!(check_dimension_bounds(7, 5, 5));
        assert!(!check_dimension_bounds(4, 3, 1));
        assert!(!check_dimension_bounds(4, 3, 3));
    }

    #[test]
    fn low_dimension_empty_on_constant_kernels() {
        // psi = x1*x2^2 in C^3: reduced Pluecker vector is (0, 0, 1).
        let vars = ["x1", "x2", "x3"].map(String::from);
        let psi = parse_polynomial("x1*x2^2", &vars).unwrap();
        let map = HoloMap::from_potential(&psi).unwrap();
        let analysis = analyze(&map).unwrap();
        assert_eq!(analysis.k(), 2);
        assert!(check_low_dimension_empty(3, analysis.k(), &analysis.singular_generators()));
        // Outside the hypothesis: vacuous truth.
        assert!(check_low_dimension_empty(4, 3, &[p("x2")]));
    }

    #[test]
    fn low_dimension_empty_with_linear_generators() {
        // Inconsistent linear system: no common zero.
        let vars = ["x", "y"].map(String::from);
        let g1 = parse_polynomial("x + y", &vars).unwrap();
        let g2 = parse_polynomial("x + y - 1", &vars).unwrap();
        assert!(check_low_dimension_empty(2, 2, &[g1.clone(), g2]));
        // Consistent: common zero exists.
        let g3 = parse_polynomial("x - y", &vars).unwrap();
        assert!(!check_low_dimension_empty(2, 2, &[g1, g3]));
    }

    #[test]
    fn curve_spec_validation() {
        assert!(matches!(
            CurveSpec::new(vec![vec![rat_int(1), rat_int(2)]]),
            Err(FibrationError::DegenerateCurve)
        ));
        assert!(matches!(
            CurveSpec::new(vec![
                vec![rat_int(1), rat_int(2)],
                vec![rat_int(0), rat_int(0)]
            ]),
            Err(FibrationError::DegenerateCurve)
        ));
        let c = CurveSpec::new(vec![
            vec![rat(1, 2), rat_int(0)],
            vec![rat_int(0), rat_int(3)],
        ])
        .unwrap();
        assert_eq!(c.ambient_dim(), 2);
    }
}
