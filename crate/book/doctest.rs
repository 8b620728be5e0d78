//! Runs every Rust code block in the guide as a doc-test, keeping the
//! book in sync with the library: `cargo test -p fibration-guide --doc`.
//!
//! mdBook renders the same Markdown sources from `src/`; this shim just
//! gives rustdoc a module per chapter so failures name their chapter.

#[doc = include_str!("src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("src/linear-algebra.md")]
pub mod linear_algebra {}

#[doc = include_str!("src/fibrations.md")]
pub mod fibrations {}

#[doc = include_str!("src/singularities.md")]
pub mod singularities {}

#[doc = include_str!("src/union-of-affine.md")]
pub mod union_of_affine {}

#[doc = include_str!("src/catalog.md")]
pub mod catalog {}

#[doc = include_str!("src/cli.md")]
pub mod cli {}
