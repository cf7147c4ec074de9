//! The theta multiplier on Gamma0(4) and its extension to primitive integral
//! matrices of odd square determinant.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Mul, Neg};
use thiserror::Error;

use crate::arithmetic::{self, gcd, ArithmeticError};
use crate::cosets;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MultiplierError {
    #[error("matrix {0} is not in Gamma0(4)")]
    NotInGamma0(Mat2),
    #[error("invalid triangular parameters a={a}, d={d}, m={m}: {reason}")]
    BadTriangle { a: i64, d: i64, m: i64, reason: &'static str },
    #[error("no coset factorization for {0}")]
    NoCosetFactorization(Mat2),
    #[error("value {value} is {residual:e} away from a fourth root of unity")]
    Rounding { value: Complex64, residual: f64 },
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// Integer 2x2 matrix `(a, b; c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn upper(a: i64, m: i64, d: i64) -> Self {
        Mat2::new(a, m, 0, d)
    }

    pub fn lower(a: i64, m: i64, d: i64) -> Self {
        Mat2::new(a, 0, m, d)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), gcd(self.c, self.d))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn in_gamma0_4(&self) -> bool {
        self.det() == 1 && self.c % 4 == 0
    }

    pub fn in_m4_plus(&self) -> bool {
        self.det() > 0 && self.c % 4 == 0
    }

    /// Membership in the double coset of `diag(1, n)`: primitive, `4 | c`, det `n`.
    pub fn in_g4(&self, n: i64) -> bool {
        self.det() == n && self.c % 4 == 0 && self.is_primitive()
    }

    /// Linear fractional action `(az + b)/(cz + d)`.
    pub fn act(&self, z: Complex64) -> Complex64 {
        (z * self.a as f64 + self.b as f64) / (z * self.c as f64 + self.d as f64)
    }

    /// `cz + d`.
    pub fn denom(&self, z: Complex64) -> Complex64 {
        z * self.c as f64 + self.d as f64
    }

    /// Adjugate `(d, -b; -c, a)`, the inverse up to the determinant.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn variant(&self, kind: VariantKind) -> Mat2 {
        apply_variant(*self, kind)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// `i^k` for `k` mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourthRoot(u8);

impl FourthRoot {
    pub const ONE: FourthRoot = FourthRoot(0);
    pub const I: FourthRoot = FourthRoot(1);
    pub const MINUS_ONE: FourthRoot = FourthRoot(2);
    pub const MINUS_I: FourthRoot = FourthRoot(3);

    pub fn from_exponent(k: i64) -> Self {
        FourthRoot(k.rem_euclid(4) as u8)
    }

    pub fn from_sign(s: i8) -> Self {
        if s < 0 {
            FourthRoot::MINUS_ONE
        } else {
            FourthRoot::ONE
        }
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inv(self) -> Self {
        FourthRoot::from_exponent(-(self.0 as i64))
    }

    pub fn pow(self, e: i64) -> Self {
        FourthRoot::from_exponent(self.0 as i64 * e.rem_euclid(4))
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// Nearest fourth root of unity, rejected if further than `tol`.
    pub fn round(value: Complex64, tol: f64) -> Result<Self, MultiplierError> {
        let (best, residual) = (0..4)
            .map(|k| {
                let r = FourthRoot(k);
                (r, (value - r.to_complex()).norm())
            })
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("four candidates");
        if residual < tol {
            Ok(best)
        } else {
            Err(MultiplierError::Rounding { value, residual })
        }
    }
}

impl Mul for FourthRoot {
    type Output = FourthRoot;
    fn mul(self, o: FourthRoot) -> FourthRoot {
        FourthRoot((self.0 + o.0) % 4)
    }
}

impl fmt::Display for FourthRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

/// Entry-sign patterns used to pair orbits of the regular cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VariantKind {
    /// `(-a, b; c, -d)`
    Hat,
    /// `(-a, -b; c, d)`
    Bar,
    /// `(a, -b; c, -d)`
    Under,
    /// `(a, -b; c, d)`
    IotaLeft,
    /// `(-a, -b; c, -d)`
    IotaRight,
}

impl VariantKind {
    pub const ALL: [VariantKind; 5] =
        [VariantKind::Hat, VariantKind::Bar, VariantKind::Under, VariantKind::IotaLeft, VariantKind::IotaRight];
}

pub fn apply_variant(g: Mat2, kind: VariantKind) -> Mat2 {
    let Mat2 { a, b, c, d } = g;
    match kind {
        VariantKind::Hat => Mat2::new(-a, b, c, -d),
        VariantKind::Bar => Mat2::new(-a, -b, c, d),
        VariantKind::Under => Mat2::new(a, -b, c, -d),
        VariantKind::IotaLeft => Mat2::new(a, -b, c, d),
        VariantKind::IotaRight => Mat2::new(-a, -b, c, -d),
    }
}

/// Theta multiplier `(c/d) eps_d^{-1} sqrt(cz + d)` on Gamma0(4), with
/// `j_gamma = j_{-gamma}` when `d < 0`.
pub fn j_gamma(gamma: Mat2, z: Complex64) -> Result<Complex64, MultiplierError> {
    if !gamma.in_gamma0_4() {
        return Err(MultiplierError::NotInGamma0(gamma));
    }
    let g = if gamma.d < 0 { -gamma } else { gamma };
    let unit = gamma0_unit(g)?;
    Ok(unit.to_complex() * g.denom(z).sqrt())
}

/// The fourth root `(c/d) eps_d^{-1}` of a Gamma0(4) matrix with `d > 0`.
fn gamma0_unit(g: Mat2) -> Result<FourthRoot, MultiplierError> {
    let chi = arithmetic::jacobi(g.c, g.d)?;
    Ok(FourthRoot::from_sign(chi) * arithmetic::eps(g.d)?.inv())
}

fn check_triangle(a: i64, d: i64, m: i64) -> Result<(), MultiplierError> {
    let bad = |reason| Err(MultiplierError::BadTriangle { a, d, m, reason });
    if a <= 0 || d <= 0 {
        return bad("a and d must be positive");
    }
    if !arithmetic::is_odd_square(a * d) {
        return bad("ad must be an odd square");
    }
    if arithmetic::gcd3(a, d, m) != 1 {
        return bad("gcd(a, d, m) must be 1");
    }
    Ok(())
}

/// Closed form of `t` for the upper triangular matrix `(a, m; 0, d)`.
pub fn t_upper_closed(a: i64, d: i64, m: i64) -> Result<FourthRoot, MultiplierError> {
    check_triangle(a, d, m)?;
    let g = gcd(a, d);
    Ok(arithmetic::eps(g)?.inv() * FourthRoot::from_sign(arithmetic::jacobi(-m, g)?))
}

/// Closed form of `t` for the lower triangular matrix `(a, 0; m, d)`.
pub fn t_lower_closed(a: i64, d: i64, m: i64) -> Result<FourthRoot, MultiplierError> {
    check_triangle(a, d, m)?;
    if m == 0 || m % 4 != 0 {
        return Err(MultiplierError::BadTriangle { a, d, m, reason: "m must be a nonzero multiple of 4" });
    }
    let g = gcd(a, d);
    Ok(arithmetic::eps(g)?.inv() * FourthRoot::from_sign(arithmetic::jacobi(m, g)?))
}

pub const ROUNDING_TOL: f64 = 1e-6;

/// `j` of the upper triangular `(a, m; 0, d)`, built from the Smith
/// factorization `gamma1 diag(1, ad) gamma2` and the cocycle relation.
pub fn j_upper_smith(a: i64, d: i64, m: i64, z: Complex64) -> Result<Complex64, MultiplierError> {
    check_triangle(a, d, m)?;
    let (g1, g2) = cosets::smith_decompose(a, d, m).map_err(|e| MultiplierError::Decomposition(e.to_string()))?;
    let n = a * d;
    let w = g2.act(z);
    let dw = w / n as f64;
    Ok(j_gamma(g1, dw)? * (n as f64).sqrt() * j_gamma(g2, z)?)
}

/// `t` of `(a, m; 0, d)` through the Smith factorization.
pub fn t_upper_smith(a: i64, d: i64, m: i64) -> Result<FourthRoot, MultiplierError> {
    let z = Complex64::new(0.0, 1.0);
    let j = j_upper_smith(a, d, m, z)?;
    FourthRoot::round(j / (d as f64).sqrt(), ROUNDING_TOL)
}

/// Factorization `gamma = delta * tau` with `delta` in Gamma0(4) and
/// `tau = (a', m'; 0, d')`, `0 <= m' < d'`.
pub fn coset_factor(gamma: Mat2) -> Result<(Mat2, Mat2), MultiplierError> {
    let n = gamma.det();
    if n <= 0 || gamma.c % 4 != 0 {
        return Err(MultiplierError::NoCosetFactorization(gamma));
    }
    let ap = gcd(gamma.a, gamma.c);
    if ap == 0 || n % ap != 0 {
        return Err(MultiplierError::NoCosetFactorization(gamma));
    }
    let dp = n / ap;
    for mp in 0..dp {
        let top = gamma.b * ap - gamma.a * mp;
        let bot = gamma.d * ap - gamma.c * mp;
        if top % n == 0 && bot % n == 0 {
            let delta = Mat2::new(gamma.a / ap, top / n, gamma.c / ap, bot / n);
            if delta.in_gamma0_4() {
                return Ok((delta, Mat2::upper(ap, mp, dp)));
            }
        }
    }
    Err(MultiplierError::NoCosetFactorization(gamma))
}

/// `j_gamma(z)` for `gamma` primitive with odd square determinant and `4 | c`.
pub fn j_general(gamma: Mat2, z: Complex64) -> Result<Complex64, MultiplierError> {
    let (delta, tau) = coset_factor(gamma)?;
    let (ap, mp, dp) = (tau.a, tau.b, tau.d);
    Ok(j_gamma(delta, tau.act(z))? * j_upper_smith(ap, dp, mp, z)?)
}

/// `t_gamma` evaluated at a chosen point.
pub fn t_general_at(gamma: Mat2, z: Complex64) -> Result<FourthRoot, MultiplierError> {
    let j = j_general(gamma, z)?;
    FourthRoot::round(j / gamma.denom(z).sqrt(), ROUNDING_TOL)
}

/// `t_gamma` with `j_gamma(z) = t_gamma sqrt(cz + d)`, evaluated at `z = i`.
pub fn t_general(gamma: Mat2) -> Result<FourthRoot, MultiplierError> {
    if !gamma.is_primitive() || !arithmetic::is_odd_square(gamma.det()) {
        return Err(MultiplierError::NoCosetFactorization(gamma));
    }
    t_general_at(gamma, Complex64::new(0.0, 1.0))
}
