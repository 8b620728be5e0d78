//! Affine pieces of candidate singular sets and the union-of-affine-spaces
//! check: containment of declared pieces in the common zero set of the
//! reduced Pluecker coordinates, and a seeded sampling search for zeros
//! outside the declared union.

use crate::linalg::{row_rank, QMatrix};
use crate::poly::unipoly::UniPoly;
use crate::poly::{exact_div, gcd_list, rat_int, PolyError, Polynomial, Rational};
use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("direction vectors are linearly dependent")]
    DependentDirections,
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("vector length {got} does not match ambient dimension {expected}")]
    VectorLength { expected: usize, got: usize },
    #[error("piece is not presented by affine data: {0}")]
    NotAffine(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An affine subspace: basepoint plus linearly independent directions.
/// An empty direction list is a single point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    basepoint: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
}

impl AffineSubspace {
    pub fn new(
        basepoint: Vec<Rational>,
        directions: Vec<Vec<Rational>>,
    ) -> Result<Self, ConjectureError> {
        let n = basepoint.len();
        for d in &directions {
            if d.len() != n {
                return Err(ConjectureError::VectorLength { expected: n, got: d.len() });
            }
        }
        if row_rank(&directions) != directions.len() {
            return Err(ConjectureError::DependentDirections);
        }
        Ok(AffineSubspace { basepoint, directions })
    }

    /// The coordinate subspace spanned by the listed axes through the origin.
    pub fn coordinate_plane(ambient: usize, axes: &[usize]) -> Self {
        let basepoint = vec![Rational::zero(); ambient];
        let directions = axes
            .iter()
            .map(|&a| {
                let mut v = vec![Rational::zero(); ambient];
                v[a] = Rational::one();
                v
            })
            .collect();
        AffineSubspace { basepoint, directions }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.len()
    }

    /// Number of direction vectors; the invariant guarantees independence.
    pub fn dimension(&self) -> usize {
        self.directions.len()
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    pub fn directions(&self) -> &[Vec<Rational>] {
        &self.directions
    }

    /// Affine parametrization: coordinate `j` as a polynomial in the
    /// `dimension()` parameters.
    pub fn parametrization(&self) -> Vec<Polynomial> {
        let m = self.dimension();
        let n = self.ambient_dim();
        (0..n)
            .map(|j| {
                let mut p = Polynomial::constant(m, self.basepoint[j].clone());
                for (i, d) in self.directions.iter().enumerate() {
                    let var = Polynomial::variable(m, i).expect("i < m");
                    p = p.try_add(&var.scale(&d[j])).expect("one arity");
                }
                p
            })
            .collect()
    }

    /// Linear polynomials cutting out the subspace (arity = ambient dim).
    pub fn equations(&self) -> Vec<Polynomial> {
        let n = self.ambient_dim();
        let functionals: Vec<Vec<Rational>> = if self.directions.is_empty() {
            (0..n)
                .map(|j| {
                    let mut f = vec![Rational::zero(); n];
                    f[j] = Rational::one();
                    f
                })
                .collect()
        } else {
            // Functionals vanishing on the direction span: the nullspace of
            // the direction matrix acting on coordinates.
            QMatrix::from_rows(self.directions.clone()).nullspace()
        };
        functionals
            .into_iter()
            .map(|f| {
                let mut p = Polynomial::zero(n);
                let mut shift = Rational::zero();
                for (j, c) in f.iter().enumerate() {
                    let var = Polynomial::variable(n, j).expect("j < n");
                    p = p.try_add(&var.scale(c)).expect("one arity");
                    shift += c * &self.basepoint[j];
                }
                p.try_sub(&Polynomial::constant(n, shift)).expect("one arity")
            })
            .collect()
    }

    pub fn contains_point(&self, point: &[Rational]) -> Result<bool, ConjectureError> {
        if point.len() != self.ambient_dim() {
            return Err(ConjectureError::VectorLength {
                expected: self.ambient_dim(),
                got: point.len(),
            });
        }
        let diff: Vec<Rational> =
            point.iter().zip(&self.basepoint).map(|(p, b)| p - b).collect();
        if self.directions.is_empty() {
            return Ok(diff.iter().all(|x| x.is_zero()));
        }
        let m = QMatrix::from_rows(self.directions.clone()).transpose();
        Ok(m.solve(&diff).is_some())
    }

    /// Intersection of two affine subspaces, or `None` when disjoint.
    pub fn intersect(&self, other: &AffineSubspace) -> Result<Option<AffineSubspace>, ConjectureError> {
        let n = self.ambient_dim();
        if other.ambient_dim() != n {
            return Err(ConjectureError::AmbientMismatch(n, other.ambient_dim()));
        }
        // Solve base_a + Da*s = base_b + Db*u as [Da | -Db] (s,u) = base_b - base_a.
        let ma = self.dimension();
        let mb = other.dimension();
        let mut rows = Vec::with_capacity(n);
        for j in 0..n {
            let mut row = Vec::with_capacity(ma + mb);
            for d in &self.directions {
                row.push(d[j].clone());
            }
            for d in &other.directions {
                row.push(-d[j].clone());
            }
            rows.push(row);
        }
        let system = QMatrix::from_rows(rows);
        let rhs: Vec<Rational> = (0..n)
            .map(|j| &other.basepoint[j] - &self.basepoint[j])
            .collect();
        let Some(sol) = system.solve(&rhs) else {
            return Ok(None);
        };
        let point: Vec<Rational> = (0..n)
            .map(|j| {
                let mut x = self.basepoint[j].clone();
                for (i, d) in self.directions.iter().enumerate() {
                    x += &sol[i] * &d[j];
                }
                x
            })
            .collect();
        // Directions of the intersection: images under Da of the s-part of
        // the homogeneous solutions.
        let null = system.nullspace();
        let mut dirs: Vec<Vec<Rational>> = Vec::new();
        for h in null {
            let v: Vec<Rational> = (0..n)
                .map(|j| {
                    (0..ma).map(|i| &h[i] * &self.directions[i][j]).sum::<Rational>()
                })
                .collect();
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut candidate = dirs.clone();
            candidate.push(v.clone());
            if row_rank(&candidate) > row_rank(&dirs) {
                dirs.push(v);
            }
        }
        Ok(Some(AffineSubspace { basepoint: point, directions: dirs }))
    }
}

/// Number of direction vectors of an affine subspace.
pub fn affine_dimension(s: &AffineSubspace) -> usize {
    s.dimension()
}

/// A piece of a candidate singular set, given by an exact polynomial
/// parametrization together with defining equations. Strictly linear
/// pieces come from an `AffineSubspace`; "affine-family" pieces whose
/// defining equations are bilinear keep the declared polynomial
/// parametrization instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecePresentation {
    ambient: usize,
    params: usize,
    parametrization: Vec<Polynomial>,
    equations: Vec<Polynomial>,
    linear: Option<AffineSubspace>,
}

impl PiecePresentation {
    pub fn from_affine(s: &AffineSubspace) -> Self {
        PiecePresentation {
            ambient: s.ambient_dim(),
            params: s.dimension(),
            parametrization: s.parametrization(),
            equations: s.equations(),
            linear: Some(s.clone()),
        }
    }

    pub fn parametrized(
        ambient: usize,
        params: usize,
        parametrization: Vec<Polynomial>,
        equations: Vec<Polynomial>,
    ) -> Result<Self, ConjectureError> {
        if parametrization.len() != ambient {
            return Err(ConjectureError::VectorLength {
                expected: ambient,
                got: parametrization.len(),
            });
        }
        for p in &parametrization {
            if p.arity() != params {
                return Err(PolyError::ArityMismatch(params, p.arity()).into());
            }
        }
        for e in &equations {
            if e.arity() != ambient {
                return Err(PolyError::ArityMismatch(ambient, e.arity()).into());
            }
        }
        Ok(PiecePresentation { ambient, params, parametrization, equations, linear: None })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.params
    }

    pub fn parametrization(&self) -> &[Polynomial] {
        &self.parametrization
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn as_affine(&self) -> Option<&AffineSubspace> {
        self.linear.as_ref()
    }

    pub fn contains_point(&self, point: &[Rational]) -> Result<bool, PolyError> {
        for e in &self.equations {
            if !e.evaluate(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Intersection computed on defining equations; works for the
    /// bilinear catalog pieces by repeatedly solving the linear part and
    /// substituting until the remaining equations become linear.
    pub fn intersect(&self, other: &PiecePresentation) -> Result<Option<AffineSubspace>, ConjectureError> {
        if self.ambient != other.ambient {
            return Err(ConjectureError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut equations: Vec<Polynomial> = Vec::new();
        equations.extend(self.equations.iter().cloned());
        equations.extend(other.equations.iter().cloned());
        solve_equations_as_affine(self.ambient, &equations)
    }
}

/// Solve a polynomial system as an affine subspace when possible:
/// repeatedly solve all currently-linear equations, substitute the
/// resulting parametrization into the rest, and require every equation to
/// become linear within a bounded number of rounds.
pub fn solve_equations_as_affine(
    ambient: usize,
    equations: &[Polynomial],
) -> Result<Option<AffineSubspace>, ConjectureError> {
    // Current solution chart: ambient coordinates as affine polys in params.
    let mut chart = AffineSubspace::coordinate_plane(ambient, &(0..ambient).collect::<Vec<_>>());
    let mut pending: Vec<Polynomial> = equations.to_vec();
    for _round in 0..equations.len() + 1 {
        let substituted: Vec<Polynomial> = pending
            .iter()
            .map(|e| e.compose(&chart.parametrization()))
            .collect::<Result<_, _>>()?;
        let (linear, nonlinear): (Vec<Polynomial>, Vec<Polynomial>) = substituted
            .into_iter()
            .filter(|e| !e.is_zero())
            .partition(|e| e.total_degree().unwrap_or(0) <= 1);
        if linear.iter().any(|e| e.is_constant() && !e.is_zero()) {
            return Ok(None);
        }
        if linear.is_empty() {
            if nonlinear.is_empty() {
                return Ok(Some(chart));
            }
            return Err(ConjectureError::NotAffine(
                "system does not reduce to linear equations".to_string(),
            ));
        }
        // Solve the linear system in the chart parameters.
        let m = chart.dimension();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for e in &linear {
            let mut row = vec![Rational::zero(); m];
            for (mono, c) in e.terms() {
                if mono.is_unit() {
                    continue;
                }
                let i = mono
                    .exponents()
                    .iter()
                    .position(|&x| x == 1)
                    .expect("degree-1 monomial");
                row[i] = c.clone();
            }
            rows.push(row);
            rhs.push(-e.constant_value());
        }
        let system = QMatrix::from_rows(rows);
        let Some(sol) = system.solve(&rhs) else {
            return Ok(None);
        };
        let null = system.nullspace();
        // Re-express the chart through the solution space of the params.
        let old_param = chart.parametrization();
        let basepoint: Vec<Rational> =
            old_param.iter().map(|p| p.evaluate(&sol).expect("lengths match")).collect();
        let mut directions = Vec::new();
        for h in &null {
            let v: Vec<Rational> = (0..ambient)
                .map(|j| {
                    chart
                        .directions()
                        .iter()
                        .enumerate()
                        .map(|(i, d)| &h[i] * &d[j])
                        .sum::<Rational>()
                })
                .collect();
            directions.push(v);
        }
        // Nullspace vectors of the parameter system map to independent
        // ambient vectors on a coordinate chart; the rank filter below
        // also covers degenerate charts.
        let mut independent: Vec<Vec<Rational>> = Vec::new();
        for v in directions {
            let mut cand = independent.clone();
            cand.push(v.clone());
            if row_rank(&cand) > row_rank(&independent) {
                independent.push(v);
            }
        }
        chart = AffineSubspace::new(basepoint, independent)?;
        pending = nonlinear;
        if pending.is_empty() {
            return Ok(Some(chart));
        }
    }
    Err(ConjectureError::NotAffine("system did not stabilize".to_string()))
}

/// Build a piece from defining equations by exact peeling: monomial
/// equations fix coordinates to zero and equations linear in some
/// variable with a constant coefficient become graph substitutions. The
/// equations must describe a single parametrizable piece, not a union.
pub fn piece_from_equations(
    ambient: usize,
    equations: Vec<Polynomial>,
) -> Result<PiecePresentation, ConjectureError> {
    let identity: Vec<Polynomial> = (0..ambient)
        .map(|j| Polynomial::variable(ambient, j).expect("j < ambient"))
        .collect();
    let mut charts = vec![Chart { params: ambient, map: identity, gens: equations.clone() }];
    let mut resolved: Vec<Chart> = Vec::new();
    let mut steps = 0;
    while let Some(chart) = charts.pop() {
        steps += 1;
        if steps > 64 {
            return Err(ConjectureError::NotAffine("equations did not resolve".to_string()));
        }
        match split_chart(chart)? {
            SplitOutcome::Resolved(c) => resolved.push(c),
            SplitOutcome::Dead => {}
            SplitOutcome::Children(cs) => charts.extend(cs),
            SplitOutcome::Stuck(_) => {
                return Err(ConjectureError::NotAffine(
                    "equations are not monomial or variable-linear".to_string(),
                ))
            }
        }
    }
    match resolved.len() {
        0 => Err(ConjectureError::NotAffine("equations have no solutions".to_string())),
        1 => {
            let chart = resolved.pop().expect("one resolved chart");
            if chart.map.iter().all(|p| p.total_degree().unwrap_or(0) <= 1) {
                // The piece is an honest affine subspace.
                let zeros = vec![Rational::zero(); chart.params];
                let basepoint: Vec<Rational> = chart
                    .map
                    .iter()
                    .map(|p| p.evaluate(&zeros).expect("lengths match"))
                    .collect();
                let mut directions = Vec::new();
                for i in 0..chart.params {
                    let mut unit = zeros.clone();
                    unit[i] = Rational::one();
                    let dir: Vec<Rational> = chart
                        .map
                        .iter()
                        .zip(&basepoint)
                        .map(|(p, b)| p.evaluate(&unit).expect("lengths match") - b)
                        .collect();
                    directions.push(dir);
                }
                return Ok(PiecePresentation::from_affine(&AffineSubspace::new(
                    basepoint, directions,
                )?));
            }
            PiecePresentation::parametrized(ambient, chart.params, chart.map, equations)
        }
        _ => Err(ConjectureError::NotAffine(
            "equations describe a union of pieces; declare them separately".to_string(),
        )),
    }
}

/// True iff every generator vanishes identically on the affine piece.
pub fn contains_affine_set(
    generators: &[Polynomial],
    s: &AffineSubspace,
) -> Result<bool, ConjectureError> {
    vanishes_on_parametrization(generators, &s.parametrization(), s.ambient_dim())
}

/// True iff every generator vanishes identically on the parametrized piece.
pub fn contains_piece(
    generators: &[Polynomial],
    piece: &PiecePresentation,
) -> Result<bool, ConjectureError> {
    vanishes_on_parametrization(generators, piece.parametrization(), piece.ambient_dim())
}

fn vanishes_on_parametrization(
    generators: &[Polynomial],
    parametrization: &[Polynomial],
    ambient: usize,
) -> Result<bool, ConjectureError> {
    for g in generators {
        if g.arity() != ambient {
            return Err(PolyError::ArityMismatch(ambient, g.arity()).into());
        }
        if !g.compose(parametrization)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the union-of-affine-spaces verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnionStatus {
    Consistent,
    PieceNotContained(usize),
    UncoveredZeroFound(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionVerdict {
    pub status: UnionStatus,
    pub piece_dimensions: Vec<usize>,
    pub points_checked: usize,
    /// Slice points that could not be certified rational (irrational or
    /// complex intersections, or roots beyond the divisor search bound).
    pub unchecked_slice_points: usize,
    pub details: String,
}

/// Check that the declared pieces cover the common zero set of the
/// generators: every piece must be contained in the zero set, and a
/// seeded sampling of the zero set must not produce a point outside all
/// pieces. Deterministic for fixed `(samples, seed)`.
pub fn verify_union_of_affine(
    generators: &[Polynomial],
    pieces: &[PiecePresentation],
    samples: usize,
    seed: u64,
) -> Result<UnionVerdict, ConjectureError> {
    assert!(!pieces.is_empty(), "at least one piece is required");
    let piece_dimensions: Vec<usize> = pieces.iter().map(|p| p.dimension()).collect();
    for (i, piece) in pieces.iter().enumerate() {
        if !contains_piece(generators, piece)? {
            return Ok(UnionVerdict {
                status: UnionStatus::PieceNotContained(i),
                piece_dimensions,
                points_checked: 0,
                unchecked_slice_points: 0,
                details: format!("piece {i} is not inside the zero set"),
            });
        }
    }
    let ambient = generators.first().map(|g| g.arity()).unwrap_or(0);
    let mut sampler = ZeroSetSampler::new(ambient, generators.to_vec(), samples, seed)?;
    let (points, unchecked) = sampler.sample()?;
    let points_checked = points.len();
    for point in points {
        let mut covered = false;
        for piece in pieces {
            if piece.contains_point(&point)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(UnionVerdict {
                status: UnionStatus::UncoveredZeroFound(point),
                piece_dimensions,
                points_checked,
                unchecked_slice_points: unchecked,
                details: "sampled a zero outside every declared piece".to_string(),
            });
        }
    }
    Ok(UnionVerdict {
        status: UnionStatus::Consistent,
        piece_dimensions,
        points_checked,
        unchecked_slice_points: unchecked,
        details: format!(
            "{points_checked} sampled zeros covered; {unchecked} slice points unchecked"
        ),
    })
}

/// A chart of the zero set: an exact polynomial parametrization of a
/// subset of ambient space together with the generator system restricted
/// to it.
#[derive(Debug, Clone)]
struct Chart {
    params: usize,
    /// Ambient coordinate j as a polynomial in the parameters.
    map: Vec<Polynomial>,
    /// Restricted generators (arity = params); empty means the whole
    /// chart lies inside the zero set.
    gens: Vec<Polynomial>,
}

/// Exact sampler for rational points on the common zero set of the
/// generators. The system is first decomposed by lossless reductions
/// (common-factor splits, single-variable monomial branches, and graph
/// substitutions for generators linear in some variable with constant
/// leading coefficient); fully resolved charts are sampled directly and
/// anything left over is sliced with random rational lines, whose
/// restricted generator gcd has roots exactly where the line meets the
/// zero set.
struct ZeroSetSampler {
    resolved: Vec<Chart>,
    unresolved: Vec<Chart>,
    samples: usize,
    rng: ChaCha8Rng,
}

impl ZeroSetSampler {
    fn new(
        ambient: usize,
        generators: Vec<Polynomial>,
        samples: usize,
        seed: u64,
    ) -> Result<Self, ConjectureError> {
        let identity: Vec<Polynomial> = (0..ambient)
            .map(|j| Polynomial::variable(ambient, j).expect("j < ambient"))
            .collect();
        let root = Chart { params: ambient, map: identity, gens: generators };
        let mut resolved = Vec::new();
        let mut unresolved = Vec::new();
        let mut queue = vec![root];
        let mut steps = 0usize;
        while let Some(chart) = queue.pop() {
            steps += 1;
            if steps > 256 {
                unresolved.push(chart);
                continue;
            }
            match split_chart(chart)? {
                SplitOutcome::Resolved(c) => resolved.push(c),
                SplitOutcome::Dead => {}
                SplitOutcome::Children(cs) => queue.extend(cs),
                SplitOutcome::Stuck(c) => unresolved.push(c),
            }
        }
        Ok(ZeroSetSampler {
            resolved,
            unresolved,
            samples,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Returns sampled rational points on the zero set plus the count of
    /// slice points that could not be checked.
    fn sample(&mut self) -> Result<(Vec<Vec<Rational>>, usize), ConjectureError> {
        let mut points = Vec::new();
        let mut unchecked = 0usize;
        let chart_count = self.resolved.len() + self.unresolved.len();
        if chart_count == 0 {
            return Ok((points, unchecked));
        }
        let quota = (self.samples / chart_count).max(1);
        let resolved = std::mem::take(&mut self.resolved);
        for chart in &resolved {
            for _ in 0..quota {
                let args: Vec<Rational> =
                    (0..chart.params).map(|_| rat_int(self.rng.gen_range(-1000..=1000))).collect();
                let point: Vec<Rational> = chart
                    .map
                    .iter()
                    .map(|p| p.evaluate(&args))
                    .collect::<Result<_, _>>()?;
                points.push(point);
            }
        }
        self.resolved = resolved;
        let unresolved = std::mem::take(&mut self.unresolved);
        for chart in &unresolved {
            for _ in 0..quota {
                let (mut found, miss) = self.slice_chart_with_line(chart)?;
                points.append(&mut found);
                unchecked += miss;
            }
        }
        self.unresolved = unresolved;
        Ok((points, unchecked))
    }

    /// Restrict the chart's generators to a random rational line; the
    /// univariate gcd of the restrictions vanishes exactly where the line
    /// meets the zero set.
    fn slice_chart_with_line(
        &mut self,
        chart: &Chart,
    ) -> Result<(Vec<Vec<Rational>>, usize), ConjectureError> {
        if chart.params == 0 {
            return Ok((Vec::new(), 0));
        }
        let t = Polynomial::variable(1, 0).expect("0 < 1");
        let line: Vec<Polynomial> = (0..chart.params)
            .map(|_| {
                let base: i64 = self.rng.gen_range(-1000..=1000);
                let dir: i64 = self.rng.gen_range(-50..=50);
                Polynomial::constant(1, rat_int(base))
                    .try_add(&t.scale(&rat_int(dir)))
                    .expect("arity 1")
            })
            .collect();
        let mut gcd_poly: Option<UniPoly> = None;
        for g in &chart.gens {
            let restricted = UniPoly::from_polynomial(&g.compose(&line)?);
            gcd_poly = Some(match gcd_poly {
                None => restricted,
                Some(acc) => acc.gcd(&restricted),
            });
            if gcd_poly.as_ref().map(|g| g.degree() == Some(0)).unwrap_or(false) {
                return Ok((Vec::new(), 0));
            }
        }
        let g = match gcd_poly {
            None => return Ok((Vec::new(), 0)),
            Some(g) => g,
        };
        if g.is_zero() {
            // The whole line lies in the zero set: sample a point on it.
            let t0 = rat_int(self.rng.gen_range(-1000..=1000));
            let param_point: Vec<Rational> = line
                .iter()
                .map(|p| p.evaluate(std::slice::from_ref(&t0)))
                .collect::<Result<_, _>>()?;
            let point = chart
                .map
                .iter()
                .map(|p| p.evaluate(&param_point))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok((vec![point], 0));
        }
        let (roots, unchecked) = g.rational_roots();
        let mut points = Vec::new();
        for r in roots {
            let param_point: Vec<Rational> = line
                .iter()
                .map(|p| p.evaluate(std::slice::from_ref(&r)))
                .collect::<Result<_, _>>()?;
            // Confirm against the restricted system before mapping out.
            let on_zero_set = chart
                .gens
                .iter()
                .map(|g| g.evaluate(&param_point).map(|v| v.is_zero()))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .all(|ok| ok);
            if !on_zero_set {
                continue;
            }
            let point = chart
                .map
                .iter()
                .map(|p| p.evaluate(&param_point))
                .collect::<Result<Vec<_>, _>>()?;
            points.push(point);
        }
        Ok((points, unchecked))
    }
}

enum SplitOutcome {
    Resolved(Chart),
    Dead,
    Children(Vec<Chart>),
    Stuck(Chart),
}

/// One lossless reduction step on a chart.
fn split_chart(mut chart: Chart) -> Result<SplitOutcome, ConjectureError> {
    chart.gens.retain(|g| !g.is_zero());
    if chart.gens.is_empty() {
        return Ok(SplitOutcome::Resolved(chart));
    }
    if chart.gens.iter().any(|g| g.is_constant()) {
        return Ok(SplitOutcome::Dead);
    }
    // Common factor: V({g * f_i}) = V(g) union V({f_i}).
    if chart.gens.len() >= 2 {
        let g = gcd_list(chart.gens.iter())?;
        if !g.is_constant() {
            let reduced: Vec<Polynomial> = chart
                .gens
                .iter()
                .map(|p| exact_div(p, &g).expect("gcd divides"))
                .collect();
            let a = Chart { params: chart.params, map: chart.map.clone(), gens: vec![g] };
            let b = Chart { params: chart.params, map: chart.map, gens: reduced };
            return Ok(SplitOutcome::Children(vec![a, b]));
        }
    }
    // Monomial generator: branch on each variable appearing in it.
    if let Some(idx) = chart.gens.iter().position(|g| g.num_terms() == 1) {
        let mono = chart.gens[idx].terms().next().expect("one term").0.clone();
        let mut children = Vec::new();
        for (v, &e) in mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            children.push(substitute_param(&chart, v, &Polynomial::zero(chart.params))?);
        }
        return Ok(SplitOutcome::Children(children));
    }
    // Graph substitution: a generator of the form c*(v + q(rest))^d lets
    // us solve v = -q exactly.
    for (idx, g) in chart.gens.iter().enumerate() {
        for v in g.support() {
            let d = g.degree_in(v);
            let coeffs = g.coefficients_in(v);
            let top = &coeffs[d as usize];
            if !top.is_constant() {
                continue;
            }
            let c = top.constant_value();
            if d == 1 {
                // q has no v by construction of coefficients_in.
                let q = coeffs[0].scale(&c.recip());
                let sub = substitute_param(&chart, v, &q.neg())?;
                let mut gens = sub.gens;
                gens.remove(idx);
                return Ok(SplitOutcome::Children(vec![Chart { gens, ..sub }]));
            }
            // Pure power check: c*(v + q)^d with q = coeff_{d-1}/(d*c).
            let q = coeffs[d as usize - 1]
                .scale(&(Rational::from_integer(d.into()) * &c).recip());
            if q.degree_in(v) > 0 {
                continue;
            }
            let base = Polynomial::variable(chart.params, v)
                .expect("v < params")
                .try_add(&q)?;
            if base.pow(d).scale(&c) == *g {
                let sub = substitute_param(&chart, v, &q.neg())?;
                let mut gens = sub.gens;
                gens.remove(idx);
                return Ok(SplitOutcome::Children(vec![Chart { gens, ..sub }]));
            }
        }
    }
    // Univariate generator: branch on its certified rational roots.
    for (idx, g) in chart.gens.iter().enumerate() {
        let support = g.support();
        if support.len() != 1 {
            continue;
        }
        let v = support[0];
        let iso = isolate_variable(g, v);
        let (roots, unchecked) = UniPoly::from_polynomial(&iso).rational_roots();
        if unchecked > 0 {
            continue;
        }
        let mut children = Vec::new();
        for r in roots {
            let mut sub = substitute_param(&chart, v, &Polynomial::constant(chart.params, r))?;
            sub.gens.remove(idx);
            children.push(sub);
        }
        return Ok(SplitOutcome::Children(children));
    }
    Ok(SplitOutcome::Stuck(chart))
}

/// View a polynomial supported on the single variable `v` as arity-1.
fn isolate_variable(g: &Polynomial, v: usize) -> Polynomial {
    let coeffs = g.coefficients_in(v);
    let vals: Vec<(u32, Rational)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e as u32, c.constant_value()))
        .collect();
    let mut out = Polynomial::zero(1);
    let t = Polynomial::variable(1, 0).expect("0 < 1");
    for (e, c) in vals {
        out = out.try_add(&t.pow(e).scale(&c)).expect("arity 1");
    }
    out
}

/// Substitute `value` (a polynomial in the old parameters that does not
/// involve parameter `v`) for `v`, dropping that parameter from the chart.
fn substitute_param(chart: &Chart, v: usize, value: &Polynomial) -> Result<Chart, ConjectureError> {
    let m = chart.params;
    debug_assert_eq!(value.arity(), m);
    debug_assert_eq!(value.degree_in(v), 0, "replacement must not involve the variable");
    // Old parameter i maps to its shifted variable in the new space of
    // m-1 parameters; v itself maps to the re-expressed replacement.
    let mut args: Vec<Polynomial> = (0..m)
        .map(|i| {
            if i == v {
                Ok(Polynomial::zero(m - 1))
            } else {
                Polynomial::variable(m - 1, if i < v { i } else { i - 1 })
            }
        })
        .collect::<Result<_, PolyError>>()?;
    args[v] = value.compose(&args)?;
    let map = chart.map.iter().map(|p| p.compose(&args)).collect::<Result<Vec<_>, _>>()?;
    let gens = chart.gens.iter().map(|p| p.compose(&args)).collect::<Result<Vec<_>, _>>()?;
    Ok(Chart { params: m - 1, map, gens })
}
