//! Exact algebra for monomial deformations of Cauchy-Binet determinantal
//! expansions.
//!
//! The library answers two families of questions about a pair of matrices
//! `L(t)` (k×n) and `R(t)` (n×k) over the field of multivariate Laurent
//! fractions:
//!
//! * does the term map `h(I) = Δ_L(I)·Δ_R(I)` reduce to a per-column
//!   potential, i.e. `h(I) = t^{m0}·h(1)(I)·∏_{α∈I} t^{ψ(α)}`
//!   ([`reduce::check_reduction`]), and
//! * can a permutation of column labels be recovered from unlabeled
//!   query answers of the deformed expansion ([`protocol`])?
//!
//! Everything is computed over exact rationals, optionally extended by one
//! square root ([`laurent::QuadExtScalar`]); no floating point is used
//! anywhere, so every verdict is an exact algebraic statement about the
//! input.
//!
//! The crate is organized bottom-up:
//!
//! * [`laurent`] — Laurent polynomials, rational functions, one quadratic
//!   extension, gcd and squarefree decomposition;
//! * [`exactmat`] — matrices over those scalars: minors, signed minors,
//!   Plücker residuals, gauge normalization, duality;
//! * [`matroid`] — the basis family of nonvanishing minors and its
//!   exchange machinery;
//! * [`expansion`] — Cauchy-Binet term maps, χ-triples, curvature, the
//!   monomial condition;
//! * [`yalg`] — Y-terms (cross-ratios of minors), their quadratic algebra,
//!   classification of radical terms, reconstruction of configurations
//!   from a squarefree discriminant, and global root disambiguation;
//! * [`reduce`] — the end-to-end reduction checker producing `(ψ, m0)` or
//!   a violation witness;
//! * [`protocol`] — the unlabeled-query recovery protocol and its integer
//!   two-scalar shortcut;
//! * [`cli`] — the command-line surface used by `src/bin/detform.rs`.
//!
//! The `examples/` directory of this crate contains one runnable program
//! per major capability; they double as usage documentation.

pub mod cli;
pub mod error;
pub mod exactmat;
pub mod expansion;
pub mod fixtures;
pub mod laurent;
pub mod matroid;
pub mod protocol;
pub mod reduce;
pub mod yalg;

pub use error::{Error, Result};
