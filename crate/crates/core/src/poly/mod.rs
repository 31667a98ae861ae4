//! Polynomials and rational functions over GF(2) for symbolic mode.

pub mod bareiss;
pub mod det;
pub mod mpoly;
pub mod ratfunc;

pub use det::factored_det;
pub use mpoly::{MPoly, Mono, MAX_VARS};
pub use ratfunc::{RatFunc, RatFuncField, SymbolicContext, DEFAULT_MAX_TERMS, DEFAULT_MAX_VARS};
