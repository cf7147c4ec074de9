//! The spectral side: explicit bases of cusp forms, Hecke operators, Petersson
//! inner products and central L-values.

use num_complex::Complex64;
use thiserror::Error;

use crate::arithmetic::ArithmeticError;
use crate::cosets::CosetError;
use crate::geometric::GeometricError;
use crate::multiplier::MultiplierError;
use crate::specfun::SpecfunError;

pub mod basis;
pub mod hecke;
pub mod kernel;
pub mod lvalue;
pub mod moment;
pub mod petersson;
pub mod qexp;
pub mod symsq;

pub use basis::{basis_cuspforms, BasisEvaluator, BasisSet};
pub use qexp::{evaluate_form, evaluate_many, generator_qexps, QExpansion};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Multiplier(#[from] MultiplierError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error(transparent)]
    Geometric(#[from] GeometricError),
    #[error("integer coefficient overflow at q^{0}")]
    Overflow(usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("truncation tail {tail:e} at {point} exceeds tolerance relative to leading term {leading:e}")]
    Truncation { point: Complex64, tail: f64, leading: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("expansion not in the span of the basis (relative residual {residual:e})")]
    NotInSpan { residual: f64 },
    #[error("{what} failed: {detail}")]
    Numerical { what: &'static str, detail: String },
}
