//! Validated problem parameters: the half-integral weight and the odd square index.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::arithmetic;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("weight numerator {0} must be odd and at least 9")]
    Weight(u32),
    #[error("cannot parse weight {0:?}; expected W/2 with W odd")]
    WeightSyntax(String),
    #[error("{0} is not an odd square")]
    NotOddSquare(i64),
}

/// Half-integral weight `kappa = w/2` with `w` odd and `kappa > 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Weight(u32);

impl Weight {
    pub fn new(w: u32) -> Result<Self, ParamError> {
        if w % 2 == 1 && w >= 9 {
            Ok(Weight(w))
        } else {
            Err(ParamError::Weight(w))
        }
    }

    /// The odd integer `2 kappa`.
    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn kappa(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `lambda = kappa - 1/2`.
    pub fn lambda(self) -> u32 {
        (self.0 - 1) / 2
    }
}

impl TryFrom<u32> for Weight {
    type Error = ParamError;
    fn try_from(w: u32) -> Result<Self, ParamError> {
        Weight::new(w)
    }
}

impl From<Weight> for u32 {
    fn from(w: Weight) -> u32 {
        w.0
    }
}

impl FromStr for Weight {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, ParamError> {
        let bad = || ParamError::WeightSyntax(s.to_string());
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        if den.trim() != "2" {
            return Err(bad());
        }
        Weight::new(num.trim().parse().map_err(|_| bad())?)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

/// Odd square `n >= 1`, the Hecke index of the trace formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct OddSquare(i64);

impl OddSquare {
    pub const ONE: OddSquare = OddSquare(1);

    pub fn new(n: i64) -> Result<Self, ParamError> {
        if arithmetic::is_odd_square(n) {
            Ok(OddSquare(n))
        } else {
            Err(ParamError::NotOddSquare(n))
        }
    }

    pub fn get(self) -> i64 {
        self.0
    }

    pub fn root(self) -> i64 {
        arithmetic::isqrt(self.0 as u64) as i64
    }
}

impl TryFrom<i64> for OddSquare {
    type Error = ParamError;
    fn try_from(n: i64) -> Result<Self, ParamError> {
        OddSquare::new(n)
    }
}

impl From<OddSquare> for i64 {
    fn from(n: OddSquare) -> i64 {
        n.0
    }
}

impl fmt::Display for OddSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_parsing() {
        let w: Weight = "13/2".parse().unwrap();
        assert_eq!(w.twice(), 13);
        assert_eq!(w.kappa(), 6.5);
        assert_eq!(w.lambda(), 6);
        assert_eq!(w.to_string(), "13/2");
        assert!("7/2".parse::<Weight>().is_err());
        assert!("12/2".parse::<Weight>().is_err());
        assert!("13/3".parse::<Weight>().is_err());
        assert!("x".parse::<Weight>().is_err());
    }

    #[test]
    fn odd_squares() {
        assert_eq!(OddSquare::new(225).unwrap().root(), 15);
        assert!(OddSquare::new(4).is_err());
        assert!(OddSquare::new(3).is_err());
        assert!(OddSquare::new(0).is_err());
        let json = serde_json::to_string(&OddSquare::new(9).unwrap()).unwrap();
        assert_eq!(json, "9");
        assert!(serde_json::from_str::<OddSquare>("8").is_err());
    }
}
