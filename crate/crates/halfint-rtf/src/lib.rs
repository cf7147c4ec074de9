//! Numerical verification of a relative trace formula for the second moment
//! of central L-values of half-integral weight cusp forms on Gamma0(4).

pub mod arithmetic;
pub mod cosets;
pub mod multiplier;
pub mod specfun;
pub mod geometric;
pub mod params;
pub mod spectral;
pub mod harness;

use thiserror::Error;

/// Any failure of the library, by module.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Arithmetic(#[from] arithmetic::ArithmeticError),
    #[error(transparent)]
    Coset(#[from] cosets::CosetError),
    #[error(transparent)]
    Multiplier(#[from] multiplier::MultiplierError),
    #[error(transparent)]
    Specfun(#[from] specfun::SpecfunError),
    #[error(transparent)]
    Geometric(#[from] geometric::GeometricError),
    #[error(transparent)]
    Param(#[from] params::ParamError),
    #[error(transparent)]
    Spectral(#[from] spectral::SpectralError),
    #[error(transparent)]
    Harness(#[from] harness::HarnessError),
}
