//! Command-line frontend: parse user-supplied potentials or maps, run
//! analyses, and emit human-readable or JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (or a
//! limit hits the indeterminacy locus, or the union verdict is negative),
//! 2 on malformed input.

use crate::catalog::{self, CatalogError};
use crate::conjecture::{
    piece_from_equations, verify_union_of_affine, PiecePresentation, UnionStatus,
};
use crate::fibration::{
    analyze, check_low_dimension_empty, check_tangency, limit_along_curve, CurveSpec, FibrationAnalysis,
    FibrationError, HoloMap,
};
use crate::parse::parse_polynomial;
use crate::poly::{Polynomial, Rational};
use crate::report::{CheckResult, FibrationReport};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Parser)]
#[command(
    name = "fibration",
    about = "Exact analysis of affine fibrations: kernel fibrations, Pluecker coordinates, and essential singularities",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the fibration assumptions and compute the kernel fibration.
    Analyze(AnalyzeArgs),
    /// Grassmannian limit of the kernel fibration along a curve.
    Limit(LimitArgs),
    /// Check that declared affine pieces cover the candidate singular set.
    Conjecture(ConjectureArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Scalar potential; the map is its gradient.
    #[arg(long, conflicts_with_all = ["map", "catalog"])]
    pub potential: Option<String>,
    /// Semicolon-separated component expressions of the map.
    #[arg(long, conflicts_with = "catalog")]
    pub map: Option<String>,
    /// Bundled catalog entry id, or `all`.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Ordered, comma-separated variable names; the order fixes the
    /// coordinate order of Jacobians, Pluecker tuples, and printing.
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Curve such as "(1,0,0,0)+t*(0,1,1,0)+t^2*(1,0,0,0)".
    #[arg(long)]
    pub curve: String,
    /// Affine pieces as "eq,eq;eq,eq" to test tangency against.
    #[arg(long)]
    pub pieces: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Pieces as "eq,eq;eq,eq"; defaults to the catalog entry's pieces.
    #[arg(long)]
    pub pieces: Option<String>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

/// Everything the subcommands need from the input flags.
struct ResolvedInput {
    description: String,
    vars: Vec<String>,
    map: HoloMap,
    catalog_pieces: Vec<PiecePresentation>,
}

#[derive(Debug)]
pub struct CliFailure {
    pub message: String,
    pub exit_code: i32,
}

fn input_error(message: impl Into<String>) -> CliFailure {
    CliFailure { message: message.into(), exit_code: 2 }
}

fn check_failure(message: impl Into<String>) -> CliFailure {
    CliFailure { message: message.into(), exit_code: 1 }
}

/// Run a parsed command line; returns the stdout payload or a failure
/// with its exit code.
pub fn run(cli: Cli) -> Result<String, CliFailure> {
    match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Limit(args) => cmd_limit(args),
        Command::Conjecture(args) => cmd_conjecture(args),
    }
}

fn resolve_input(input: &InputArgs) -> Result<ResolvedInput, CliFailure> {
    if let Some(id) = &input.catalog {
        let entry = catalog::entry(id).map_err(|e| input_error(e.to_string()))?;
        return Ok(ResolvedInput {
            description: format!("catalog {id}"),
            vars: entry.vars.clone(),
            map: entry.map.clone(),
            catalog_pieces: entry.expected_pieces.clone(),
        });
    }
    if input.vars.is_empty() {
        return Err(input_error("--vars is required with --potential or --map"));
    }
    for (i, v) in input.vars.iter().enumerate() {
        if input.vars[..i].contains(v) {
            return Err(input_error(format!("duplicate variable name `{v}`")));
        }
    }
    let vars = input.vars.clone();
    if let Some(text) = &input.potential {
        let psi = parse_polynomial(text, &vars).map_err(|e| input_error(e.to_string()))?;
        let map = HoloMap::from_potential(&psi).map_err(|e| input_error(e.to_string()))?;
        return Ok(ResolvedInput {
            description: format!("potential {text}"),
            vars,
            map,
            catalog_pieces: Vec::new(),
        });
    }
    if let Some(text) = &input.map {
        let components: Vec<Polynomial> = text
            .split(';')
            .map(|part| parse_polynomial(part.trim(), &vars))
            .collect::<Result<_, _>>()
            .map_err(|e| input_error(e.to_string()))?;
        if components.len() != vars.len() {
            return Err(input_error(format!(
                "map has {} components but {} variables",
                components.len(),
                vars.len()
            )));
        }
        let map = HoloMap::new(components).map_err(|e| input_error(e.to_string()))?;
        return Ok(ResolvedInput {
            description: format!("map {text}"),
            vars,
            map,
            catalog_pieces: Vec::new(),
        });
    }
    Err(input_error("one of --potential, --map, or --catalog is required"))
}

fn analyze_resolved(resolved: &ResolvedInput) -> Result<FibrationAnalysis, CliFailure> {
    analyze(&resolved.map).map_err(|e| match e {
        FibrationError::AssumptionA1 { .. } => check_failure(e.to_string()),
        other => input_error(other.to_string()),
    })
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<String, CliFailure> {
    if args.input.catalog.as_deref() == Some("all") {
        let mut out = String::new();
        let mut failed = false;
        for id in catalog::list_entries() {
            let report = catalog::run_entry_with(id, args.samples, args.seed)
                .map_err(|e| input_error(e.to_string()))?;
            failed |= report.has_failure();
            if args.json {
                out.push_str(&report.to_json());
                out.push('\n');
            } else {
                out.push_str(&report.to_text());
                out.push('\n');
            }
        }
        return if failed { Err(check_failure(out)) } else { Ok(out) };
    }

    let report = if let Some(id) = &args.input.catalog {
        match catalog::run_entry_with(id, args.samples, args.seed) {
            Ok(r) => r,
            Err(CatalogError::UnknownId(id)) => {
                return Err(input_error(format!("unknown catalog id `{id}`")))
            }
            Err(e) => return Err(input_error(e.to_string())),
        }
    } else {
        let resolved = resolve_input(&args.input)?;
        match analyze(&resolved.map) {
            Ok(analysis) => {
                let mut checks = Vec::new();
                checks.push(CheckResult::pass("a1", format!("generic rank k = {}", analysis.k())));
                checks.push(CheckResult::of(
                    "a2",
                    analysis.a2_ok(),
                    match analysis.a2_witness() {
                        None => "level sets are affine along the kernel".to_string(),
                        Some(w) => format!(
                            "defect component {} (last variable is the line parameter)",
                            w.to_text()
                        ),
                    },
                ));
                let mut kernel_identity = true;
                for v in analysis.kernel().vectors() {
                    let image = analysis
                        .jacobian()
                        .mul_poly_vec(v)
                        .map_err(|e| input_error(e.to_string()))?;
                    kernel_identity &= image.iter().all(|p| p.is_zero());
                }
                checks.push(CheckResult::of(
                    "kernel-identity",
                    kernel_identity,
                    "D Gamma * v = 0 symbolically",
                ));
                let n = analysis.ambient_dim();
                if n <= 3 || analysis.k() <= 2 {
                    checks.push(CheckResult::of(
                        "low-dimension",
                        check_low_dimension_empty(n, analysis.k(), &analysis.singular_generators()),
                        "low-dimension criterion certifies an empty singular set",
                    ));
                }
                FibrationReport::from_analysis(
                    resolved.description.clone(),
                    &resolved.vars,
                    &analysis,
                    checks,
                )
            }
            Err(FibrationError::AssumptionA1 { k, .. }) => FibrationReport::from_a1_failure(
                resolved.description.clone(),
                resolved.map.ambient_dim(),
                k,
            ),
            Err(e) => return Err(input_error(e.to_string())),
        }
    };

    let rendered = if args.json { report.to_json() } else { report.to_text() };
    if report.has_failure() {
        Err(check_failure(rendered))
    } else {
        Ok(rendered)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct LimitReport {
    input: String,
    curve: String,
    subspace_dim: usize,
    n: usize,
    /// Limit coordinates keyed by 1-based tuples.
    coordinates: BTreeMap<String, String>,
    tangency: Vec<CheckResult>,
}

fn cmd_limit(args: LimitArgs) -> Result<String, CliFailure> {
    let resolved = resolve_input(&args.input)?;
    let analysis = analyze_resolved(&resolved)?;
    let curve = parse_curve(&args.curve, resolved.map.ambient_dim())?;
    let limit = match limit_along_curve(&analysis, &curve) {
        Ok(gp) => gp,
        Err(FibrationError::CurveInsideIndeterminacy) => {
            return Err(check_failure(
                "the curve lies inside the indeterminacy locus; no Grassmann limit".to_string(),
            ))
        }
        Err(e) => return Err(input_error(e.to_string())),
    };
    let pieces = match &args.pieces {
        Some(text) => parse_pieces(text, &resolved.vars)?,
        None => resolved.catalog_pieces.clone(),
    };
    let mut tangency = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        let name = format!("piece-{i}-tangency");
        match piece.as_affine() {
            None => tangency.push(CheckResult::skip(
                &name,
                "piece is not a single affine space; tangency unverifiable",
            )),
            Some(affine) => match check_tangency(&limit, affine) {
                Ok(ok) => tangency.push(CheckResult::of(
                    &name,
                    ok,
                    "limit subspace inside the piece's direction space",
                )),
                Err(e) => return Err(input_error(e.to_string())),
            },
        }
    }
    let mut coordinates = BTreeMap::new();
    for (tuple, v) in limit.coordinates() {
        let key: Vec<String> = tuple.iter().map(|i| (i + 1).to_string()).collect();
        coordinates.insert(key.join(","), v.to_string());
    }
    let report = LimitReport {
        input: resolved.description,
        curve: args.curve.clone(),
        subspace_dim: limit.subspace_dim(),
        n: limit.ambient_dim(),
        coordinates,
        tangency,
    };
    let failed = report.tangency.iter().any(|c| c.is_fail());
    let rendered = if args.json {
        serde_json::to_string_pretty(&report).expect("limit report serializes")
    } else {
        let mut out = String::new();
        use std::fmt::Write;
        writeln!(out, "input: {}", report.input).unwrap();
        writeln!(out, "curve: {}", report.curve).unwrap();
        writeln!(out, "Grassmann limit (dim {} in C^{}):", report.subspace_dim, report.n).unwrap();
        for (k, v) in &report.coordinates {
            if v != "0" {
                writeln!(out, "  [{k}] {v}").unwrap();
            }
        }
        for c in &report.tangency {
            writeln!(out, "  {:<24} {:<15} {}", c.name, c.status, c.details).unwrap();
        }
        out
    };
    if failed {
        Err(check_failure(rendered))
    } else {
        Ok(rendered)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ConjectureReport {
    input: String,
    status: String,
    piece_dimensions: Vec<usize>,
    points_checked: usize,
    unchecked_slice_points: usize,
    details: String,
}

fn cmd_conjecture(args: ConjectureArgs) -> Result<String, CliFailure> {
    let resolved = resolve_input(&args.input)?;
    let analysis = analyze_resolved(&resolved)?;
    let pieces = match &args.pieces {
        Some(text) => parse_pieces(text, &resolved.vars)?,
        None => resolved.catalog_pieces.clone(),
    };
    if pieces.is_empty() {
        return Err(input_error("no pieces supplied; use --pieces or a catalog entry with pieces"));
    }
    let generators = analysis.singular_generators();
    let verdict = verify_union_of_affine(&generators, &pieces, args.samples, args.seed)
        .map_err(|e| input_error(e.to_string()))?;
    let (status, details) = match &verdict.status {
        UnionStatus::Consistent => ("consistent".to_string(), verdict.details.clone()),
        UnionStatus::PieceNotContained(i) => {
            ("piece-not-contained".to_string(), format!("piece {i} is not inside the zero set"))
        }
        UnionStatus::UncoveredZeroFound(pt) => (
            "uncovered-zero-found".to_string(),
            format!(
                "zero at ({}) lies outside every piece",
                pt.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")
            ),
        ),
    };
    let report = ConjectureReport {
        input: resolved.description,
        status,
        piece_dimensions: verdict.piece_dimensions.clone(),
        points_checked: verdict.points_checked,
        unchecked_slice_points: verdict.unchecked_slice_points,
        details,
    };
    let rendered = if args.json {
        serde_json::to_string_pretty(&report).expect("conjecture report serializes")
    } else {
        format!(
            "input: {}\nstatus: {}\npiece dimensions: {:?}\npoints checked: {}\nunchecked slice points: {}\n{}\n",
            report.input,
            report.status,
            report.piece_dimensions,
            report.points_checked,
            report.unchecked_slice_points,
            report.details
        )
    };
    if verdict.status == UnionStatus::Consistent {
        Ok(rendered)
    } else {
        Err(check_failure(rendered))
    }
}

/// Parse "(a,b,...)+t*(c,d,...)+t^2*(e,f,...)" into a curve.
fn parse_curve(text: &str, n: usize) -> Result<CurveSpec, CliFailure> {
    let mut coefficients: Vec<(usize, Vec<Rational>)> = Vec::new();
    for segment in split_top_level(text, '+') {
        let segment = segment.trim();
        if segment.is_empty() {
            return Err(input_error("empty curve segment"));
        }
        let (power, vector_text) = if let Some(rest) = segment.strip_prefix("t^") {
            let star = rest
                .find('*')
                .ok_or_else(|| input_error("expected `*(...)` after t^k in curve"))?;
            let power: usize = rest[..star]
                .trim()
                .parse()
                .map_err(|_| input_error("bad exponent in curve"))?;
            (power, rest[star + 1..].trim())
        } else if let Some(rest) = segment.strip_prefix("t*") {
            (1, rest.trim())
        } else {
            (0, segment)
        };
        let vector = parse_vector(vector_text, n)?;
        coefficients.push((power, vector));
    }
    let max_power = coefficients.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut dense = vec![vec![Rational::from_integer(0.into()); n]; max_power + 1];
    for (p, v) in coefficients {
        for (slot, val) in dense[p].iter_mut().zip(v) {
            *slot += val;
        }
    }
    CurveSpec::new(dense).map_err(|e| input_error(e.to_string()))
}

/// Parse "(a,b,c)" with signed rational entries.
fn parse_vector(text: &str, n: usize) -> Result<Vec<Rational>, CliFailure> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| input_error(format!("expected a parenthesized vector, got `{text}`")))?;
    let entries: Vec<&str> = inner.split(',').collect();
    if entries.len() != n {
        return Err(input_error(format!(
            "vector has {} entries, expected {n}",
            entries.len()
        )));
    }
    entries
        .iter()
        .map(|e| {
            let p = parse_polynomial(e.trim(), &[] as &[String])
                .map_err(|err| input_error(format!("bad vector entry `{e}`: {err}")))?;
            if !p.is_constant() {
                return Err(input_error(format!("vector entry `{e}` is not a number")));
            }
            Ok(p.constant_value())
        })
        .collect()
}

/// Split on `sep` outside parentheses.
fn split_top_level(text: &str, sep: char) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                current.push(c);
            }
            c if c == sep && depth == 0 => {
                parts.push(std::mem::take(&mut current));
            }
            _ => current.push(c),
        }
    }
    parts.push(current);
    parts
}

/// Parse "eq,eq;eq,eq" into pieces; each equation is "lhs=rhs" or a bare
/// expression meaning "expr=0".
fn parse_pieces(text: &str, vars: &[String]) -> Result<Vec<PiecePresentation>, CliFailure> {
    let n = vars.len();
    let mut pieces = Vec::new();
    for piece_text in text.split(';') {
        let mut equations = Vec::new();
        for eq_text in piece_text.split(',') {
            let eq_text = eq_text.trim();
            if eq_text.is_empty() {
                continue;
            }
            let poly = match eq_text.split_once('=') {
                Some((lhs, rhs)) => {
                    let l = parse_polynomial(lhs.trim(), vars)
                        .map_err(|e| input_error(e.to_string()))?;
                    let r = parse_polynomial(rhs.trim(), vars)
                        .map_err(|e| input_error(e.to_string()))?;
                    l.try_sub(&r).map_err(|e| input_error(e.to_string()))?
                }
                None => parse_polynomial(eq_text, vars).map_err(|e| input_error(e.to_string()))?,
            };
            equations.push(poly);
        }
        if equations.is_empty() {
            return Err(input_error("a piece needs at least one equation"));
        }
        let piece =
            piece_from_equations(n, equations).map_err(|e| input_error(e.to_string()))?;
        pieces.push(piece);
    }
    Ok(pieces)
}
