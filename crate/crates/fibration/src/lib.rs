//! Exact symbolic analysis of affine fibrations over the rationals.
//!
//! Given a polynomial potential or a polynomial self-map of affine
//! n-space, this crate verifies the two affine-fibration assumptions
//! (generic Jacobian rank strictly between 0 and n, and affine level
//! sets), computes the kernel fibration in reduced Pluecker coordinates,
//! locates the candidate set of essential singularities as the common
//! zero set of those coordinates, takes exact Grassmannian limits along
//! rational curves, and checks dimension bounds, tangency, and
//! union-of-affine-spaces structure on a bundled example catalog.
//!
//! All arithmetic is exact: arbitrary-precision rationals, fraction-free
//! elimination, and structural zero tests. There is no floating point
//! anywhere.
//!
//! ```
//! use fibration::fibration::{analyze, HoloMap};
//! use fibration::parse::parse_polynomial;
//!
//! let vars: Vec<String> = ["x1", "x2", "x3", "x4"].iter().map(|s| s.to_string()).collect();
//! let psi = parse_polynomial("x1*x2^2 + (x3 - x2*x4)^2", &vars).unwrap();
//! let map = HoloMap::from_potential(&psi).unwrap();
//! let analysis = analyze(&map).unwrap();
//! assert_eq!(analysis.k(), 3);
//! ```

pub mod catalog;
pub mod cli;
pub mod conjecture;
pub mod fibration;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod report;

pub use conjecture::{
    affine_dimension, contains_affine_set, piece_from_equations, verify_union_of_affine,
    AffineSubspace, PiecePresentation, UnionStatus, UnionVerdict,
};
pub use fibration::{
    analyze, check_a1, check_a2, check_low_dimension_empty, check_tangency, check_dimension_bounds,
    is_essential_singularity, limit_along_curve, rank_on_affine_set, CurveSpec,
    FibrationAnalysis, HoloMap, PointClass,
};
pub use linalg::{
    bareiss_rank, kernel_basis, minors, pluecker, rank_at_point, GrassmannPoint, KernelBasis,
    PlueckerVector, PolyMatrix, QMatrix,
};
pub use parse::parse_polynomial;
pub use poly::{Monomial, PolyError, Polynomial, Rational, RationalFunction};
pub use report::{CheckResult, FibrationReport};
