//! Arithmetic backends shared by the exact and floating-point engines.
//!
//! Exact computations carry integer path counts: a quantity over `n` steps is
//! stored as its numerator over `4^n`, so every step of a convolution is a
//! plain addition and every result converts to a rational with a power-of-4
//! denominator. The float backend carries probabilities directly.

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Arithmetic mode of a computation; always chosen explicitly by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

pub trait Weight: Clone + Send + Sync + PartialEq + fmt::Debug {
    fn empty() -> Self;
    /// Mass of the whole sample space after `steps` steps.
    fn total(steps: usize) -> Self;
    /// Mass carried by one of the four step choices, applied to `self`.
    fn step(&self) -> Self;
    fn add_assign(&mut self, other: &Self);
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Division by a small integer known to divide exactly in count mode.
    fn div_exact(&self, d: u64) -> Self;
    fn is_empty(&self) -> bool;
    /// Interpret `self` as a quantity over `steps` steps.
    fn into_probability(self, steps: usize) -> Probability;
    fn to_f64(&self, steps: usize) -> f64;
}

impl Weight for BigUint {
    fn empty() -> Self {
        Zero::zero()
    }

    fn total(steps: usize) -> Self {
        BigUint::from(1u8) << (2 * steps)
    }

    fn step(&self) -> Self {
        self.clone()
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div_exact(&self, d: u64) -> Self {
        debug_assert!((self % d).is_zero(), "inexact division by {d}");
        self / d
    }

    fn is_empty(&self) -> bool {
        Zero::is_zero(self)
    }

    fn into_probability(self, steps: usize) -> Probability {
        Probability::Exact(BigRational::new(self.into(), <BigUint as Weight>::total(steps).into()))
    }

    fn to_f64(&self, steps: usize) -> f64 {
        ratio_to_f64(&BigRational::new(self.clone().into(), <BigUint as Weight>::total(steps).into()))
    }
}

impl Weight for f64 {
    fn empty() -> Self {
        0.0
    }

    fn total(_steps: usize) -> Self {
        1.0
    }

    fn step(&self) -> Self {
        0.25 * self
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn div_exact(&self, d: u64) -> Self {
        self / d as f64
    }

    fn is_empty(&self) -> bool {
        *self == 0.0
    }

    fn into_probability(self, _steps: usize) -> Probability {
        Probability::Float(self)
    }

    fn to_f64(&self, _steps: usize) -> f64 {
        *self
    }
}

/// A probability computed either exactly or in double precision.
#[derive(Debug, Clone, PartialEq)]
pub enum Probability {
    Exact(BigRational),
    Float(f64),
}

impl Probability {
    pub fn to_f64(&self) -> f64 {
        match self {
            Probability::Exact(r) => ratio_to_f64(r),
            Probability::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Probability::Exact(r) => Some(r),
            Probability::Float(_) => None,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Probability::Exact(_) => Mode::Exact,
            Probability::Float(_) => Mode::Float,
        }
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probability::Exact(r) => write!(f, "{r}"),
            Probability::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Probability::Exact(r) => s.serialize_str(&r.to_string()),
            Probability::Float(x) => s.serialize_f64(*x),
        }
    }
}

/// Rational to double without overflowing on huge numerators and denominators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    let (n, d) = (r.numer(), r.denom());
    let shift = n.bits().max(d.bits()).saturating_sub(900) as usize;
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}
