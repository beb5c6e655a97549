//! Exact arithmetic over multivariate Laurent polynomials with integer
//! coefficients, square matrices over them, and the analytic helpers the
//! rest of the crate needs (dominant roots, Newton polytopes).
//!
//! The variable layout is fixed once per computation: `r` deck variables
//! `t1..tr` followed by the distinguished fibration variable `u`. Exponent
//! vectors store the `t`-exponents first and the `u`-exponent last; the term
//! order compares `u` first, then `t1..tr` lexicographically.

mod matrix;
mod poly;
mod polytope;
mod roots;

pub use matrix::PolyMatrix;
pub use poly::{CohomologyClass, ExponentVector, LaurentPoly, VarNames};
pub use polytope::newton_polytope;
pub use roots::{all_roots, largest_root, spectral_radius};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum RingError {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("zero polynomial has no {0}")]
    ZeroPolynomial(&'static str),
    #[error("matrix entry at ({0},{1}) already contains the variable u")]
    EntryContainsU(usize, usize),
    #[error("expected a univariate polynomial, got arity {0}")]
    NotUnivariate(usize),
    #[error("polynomial is constant after normalization")]
    ConstantPolynomial,
    #[error(
        "dominant root is not real positive: max modulus {modulus}, nearest real candidate {real_part}"
    )]
    DominantRootNotReal { modulus: f64, real_part: f64 },
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}
