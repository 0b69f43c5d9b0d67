//! Globally adaptive tanh-sinh quadrature.
//!
//! The substitution `x = tanh(π/2 · sinh t)` clusters nodes double-exponentially
//! at both endpoints, which makes the rule robust to integrable endpoint
//! singularities such as `ln|x - a|`. Intervals whose level-to-level
//! difference is too large are bisected, largest error first, until the
//! summed error estimate meets the absolute tolerance.
//!
//! Nodes next to `a` are formed as `a + d` where `d` is computed directly from
//! `e^{-u} / cosh u` rather than as `a + (b - a)(1 + x)/2`. An integrand
//! expressed in a coordinate whose singular point is `a = 0` therefore sees its
//! true distance from the singularity, down to the smallest subnormal.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { absolute_tolerance: 1e-10, max_subdivisions: 200 }
    }
}

impl QuadratureSpec {
    pub fn with_tolerance(absolute_tolerance: f64) -> Self {
        QuadratureSpec { absolute_tolerance, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.absolute_tolerance.is_nan()
            || self.absolute_tolerance <= 0.0
            || self.absolute_tolerance.is_infinite()
        {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance must be positive, got {}",
                self.absolute_tolerance
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 8;
const T_MAX: f64 = 4.0;

#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Tanh-sinh estimate on `[a, b]` refined until two successive levels agree
/// to `tol` or `MAX_LEVEL` is reached. Returns (value, error, evaluations).
fn tanh_sinh_piece<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> (f64, f64, usize) {
    let half = 0.5 * (b - a);
    let mut evals = 0;
    let mut estimate = |level: u32| {
        let h = (-(level as f64)).exp2();
        let jmax = (T_MAX / h) as i64;
        let mut sum = 0.0;
        for j in 0..=jmax {
            let t = j as f64 * h;
            let u = FRAC_PI_2 * t.sinh();
            let cu = u.cosh();
            let w = FRAC_PI_2 * t.cosh() / (cu * cu);
            let d = half * (-u).exp() / cu;
            if j == 0 {
                sum += w * f(a + half);
                evals += 1;
                continue;
            }
            if d > 0.0 {
                sum += w * (f(a + d) + f(b - d));
                evals += 2;
            }
        }
        half * h * sum
    };
    let mut prev = estimate(MIN_LEVEL);
    let mut err = f64::INFINITY;
    for level in MIN_LEVEL + 1..=MAX_LEVEL {
        let cur = estimate(level);
        err = (cur - prev).abs();
        prev = cur;
        if err <= tol {
            break;
        }
    }
    (prev, err, evals)
}

/// Integrate `f` over `[a, b]` to the absolute tolerance of `spec`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    spec.validate()?;
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    let tol = spec.absolute_tolerance;
    let width = b - a;
    let mut evaluations = 0;
    let mut eval_piece = |a: f64, b: f64| {
        let local_tol = 0.1 * tol * (b - a) / width;
        let (value, error, n) = tanh_sinh_piece(&f, a, b, local_tol);
        evaluations += n;
        Piece { a, b, value, error }
    };

    let mut pieces = vec![eval_piece(a, b)];
    let mut subdivisions = 0;
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.error).sum();
        if total_err <= tol {
            let value = pieces.iter().map(|p| p.value).sum();
            return Ok(Integral { value, error_estimate: total_err, subdivisions, evaluations });
        }
        if subdivisions >= spec.max_subdivisions || !total_err.is_finite() {
            return Err(Error::Tolerance { tolerance: tol, estimate: total_err });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("non-empty");
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        pieces.push(eval_piece(p.a, mid));
        pieces.push(eval_piece(mid, p.b));
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn polynomial() {
        let r = integrate(|x| x * x, 0.0, 3.0, &QuadratureSpec::default()).unwrap();
        assert!((r.value - 9.0).abs() < 1e-12);
    }

    #[test]
    fn log_endpoint_singularity() {
        // ∫_0^1 ln x dx = -1
        let r = integrate(|x| x.ln(), 0.0, 1.0, &QuadratureSpec::with_tolerance(1e-13)).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12, "{r:?}");
        // ∫_0^π ln(sin x) dx = -π ln 2, singular at both ends
        let r = integrate(|x: f64| x.sin().ln(), 0.0, PI, &QuadratureSpec::default()).unwrap();
        assert!((r.value + PI * LN_2).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn oscillatory_needs_subdivision() {
        let r = integrate(|x: f64| (40.0 * x).cos().powi(2), 0.0, PI, &QuadratureSpec::default()).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(integrate(|x| x, 1.0, 0.0, &QuadratureSpec::default()).is_err());
        assert!(integrate(|x| x, 0.0, 1.0, &QuadratureSpec::with_tolerance(0.0)).is_err());
        let tight = QuadratureSpec { absolute_tolerance: 1e-14, max_subdivisions: 0 };
        assert!(matches!(
            integrate(|x: f64| (50.0 * x).sin(), 0.0, 10.0, &tight),
            Err(Error::Tolerance { .. })
        ));
    }
}
