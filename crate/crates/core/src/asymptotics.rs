//! The constant `C_{k,m}` in `p_n ~ C_{k,m} / sqrt(π n)`, and the finite-n
//! proxy for the hull-edge constant.
//!
//! `C_{k,m} = exp( (1/4π) ∫_{-π}^{π} ln(1 - (cos kθ + cos mθ)/2) dθ )`.
//!
//! Writing `1 - (cos kθ + cos mθ)/2 = sin²(kθ/2) + sin²(mθ/2)` shows the
//! integrand vanishes exactly where both cosines equal one, that is at the
//! multiples of `2π/g` with `g = gcd(k, m)`, and behaves like `2 ln|θ - θ*|`
//! there. The integral is reduced to `[0, π]` by evenness and split at those
//! points. Each piece adjacent to a singular point `θ*` is integrated in the
//! local coordinate `δ = |θ - θ*|`, in which the integrand is
//! `ln(sin²(kδ/2) + sin²(mδ/2))` because `kθ*/2` and `mθ*/2` are multiples of
//! `π`; this keeps full relative precision arbitrarily close to `θ*`.
//!
//! An independent route uses the same identity at the level of coefficients:
//! `ln C_{k,m} = -sum_{n>=1} h_n / (2n)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::edge::exact_edge_probability;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSpec};
use crate::series::return_weights;
use crate::walk::{EdgeSpec, StepLaw};
use crate::weight::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstantMethod {
    Quadrature,
    SeriesTail,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticConstant {
    pub law: StepLaw,
    pub value: f64,
    pub method: ConstantMethod,
    /// Bound on `|value - C_{k,m}|`; infinite when nothing can be claimed.
    pub error_bound: f64,
}

/// `C_{k,m}` by singularity-aware adaptive quadrature.
pub fn ckm_quadrature(law: &StepLaw, spec: &QuadratureSpec) -> Result<AsymptoticConstant> {
    spec.validate()?;
    let (k, m) = (law.k() as f64, law.m() as f64);
    let g = law.gcd();
    let integrand = move |delta: f64| {
        let (a, b) = ((0.5 * k * delta).sin(), (0.5 * m * delta).sin());
        (a * a + b * b).ln()
    };

    // Pieces of [0, π] in local coordinates: (width, count). Interior gaps
    // between consecutive singular points are split at their midpoints so that
    // every piece has its singular point at local coordinate 0.
    let period = 2.0 * PI / g as f64;
    let full_gaps = g / 2;
    let mut pieces: Vec<f64> = Vec::new();
    for _ in 0..full_gaps {
        pieces.push(0.5 * period);
        pieces.push(0.5 * period);
    }
    if g % 2 == 1 {
        // last singular point sits at π - π/g; π itself is regular
        pieces.push(PI - full_gaps as f64 * period);
    }

    // exponent = (1/4π) ∫_{-π}^{π} = (1/2π) ∫_0^π
    let share = 2.0 * PI / pieces.len() as f64;
    let piece_spec = QuadratureSpec {
        absolute_tolerance: spec.absolute_tolerance * share,
        max_subdivisions: spec.max_subdivisions,
    };
    let mut total = 0.0;
    let mut err = 0.0;
    for width in pieces {
        // report failures in units of the exponent
        let r = integrate(integrand, 0.0, width, &piece_spec).map_err(|e| match e {
            Error::Tolerance { estimate, .. } => {
                Error::Tolerance { tolerance: spec.absolute_tolerance, estimate: estimate / share }
            }
            other => other,
        })?;
        total += r.value;
        err += r.error_estimate;
    }
    let exponent = total / (2.0 * PI);
    let exponent_err = err / (2.0 * PI);
    let value = exponent.exp();
    Ok(AsymptoticConstant {
        law: *law,
        value,
        method: ConstantMethod::Quadrature,
        error_bound: value * exponent_err.exp_m1(),
    })
}

/// `C_{k,m}` as the partial product `exp(-sum_{n<=terms} h_n / (2n))`.
///
/// The omitted tail is positive, so the partial product overestimates the
/// constant. With `h_n ≈ c n^{-1/2}` the tail is close to the local level of
/// `h` at the cutoff, taken as the mean of the last two terms (return
/// probabilities of odd-step laws vanish at odd times). The reported bound
/// allows twice that level.
pub fn ckm_series_tail(law: &StepLaw, terms: usize) -> AsymptoticConstant {
    if terms == 0 {
        return AsymptoticConstant {
            law: *law,
            value: 1.0,
            method: ConstantMethod::SeriesTail,
            error_bound: f64::INFINITY,
        };
    }
    let h = return_weights::<f64>(law, terms);
    let partial: f64 = (1..=terms).map(|n| h[n] / (2.0 * n as f64)).sum();
    let value = (-partial).exp();
    let level = if terms >= 2 { 0.5 * (h[terms] + h[terms - 1]) } else { h[terms] };
    AsymptoticConstant {
        law: *law,
        value,
        method: ConstantMethod::SeriesTail,
        error_bound: -value * (-2.0 * level).exp_m1(),
    }
}

/// Leading-order approximation `C_{k,m} / sqrt(π n)` of the stay-positive probability.
pub fn asymptotic_pn(law: &StepLaw, n: usize, spec: &QuadratureSpec) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let c = ckm_quadrature(law, spec)?;
    Ok(c.value / (PI * n as f64).sqrt())
}

/// `sqrt(n) · P(chord (n1, n2) is a hull edge of an n-step walk)` at a single
/// large `n`, computed exactly in floating point.
///
/// The hull-edge probability decays like `C_{n1,n2} / sqrt(n)`; this is the
/// finite-`n` value of the scaled probability, not the limit itself.
pub fn edge_constant_estimate(n1: usize, n2: usize, n_large: usize) -> Result<f64> {
    let spec = EdgeSpec::new(n1, n2, n_large)?;
    let p = exact_edge_probability(spec, Mode::Float)?;
    Ok((n_large as f64).sqrt() * p.value.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::stay_positive_weights;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn law(k: u64, m: u64) -> StepLaw {
        StepLaw::new(k, m).unwrap()
    }

    fn ckm(k: u64, m: u64) -> f64 {
        ckm_quadrature(&law(k, m), &QuadratureSpec::default()).unwrap().value
    }

    #[test]
    fn analytic_anchors() {
        assert!((ckm(1, 1) - FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((ckm(1, 0) - 0.5).abs() < 1e-10);
        assert!((ckm(0, 1) - 0.5).abs() < 1e-10);
    }

    #[test]
    fn tabulated_constants() {
        assert!((ckm(2, 1) - 0.8091).abs() <= 5e-4, "{}", ckm(2, 1));
        assert!((ckm(5, 7) - 0.8896).abs() <= 5e-4, "{}", ckm(5, 7));
    }

    #[test]
    fn symmetry_and_dilation() {
        for (k, m) in [(2, 1), (5, 7), (3, 2), (1, 0), (4, 1)] {
            let c = ckm(k, m);
            assert!((c - ckm(m, k)).abs() <= 1e-10);
            for s in [2, 3] {
                assert!((ckm(s * k, s * m) - c).abs() <= 1e-8, "({k},{m}) x{s}");
            }
            assert!(c > 0.0 && c < 1.0);
        }
    }

    #[test]
    fn series_tail_brackets_quadrature() {
        for (k, m) in [(1, 1), (2, 1), (1, 0), (5, 7), (3, 2), (4, 0)] {
            let q = ckm(k, m);
            let s = ckm_series_tail(&law(k, m), 2000);
            assert!(s.value >= q, "partial product must overestimate");
            assert!((s.value - q).abs() <= s.error_bound, "({k},{m}): {s:?} vs {q}");
            assert!(s.error_bound <= 2e-2);
        }
        let empty = ckm_series_tail(&law(3, 1), 0);
        assert_eq!(empty.value, 1.0);
        assert!(empty.error_bound.is_infinite());
    }

    #[test]
    fn asymptotic_values() {
        let spec = QuadratureSpec::default();
        let v = asymptotic_pn(&law(1, 1), 10_000, &spec).unwrap();
        assert!((v - FRAC_1_SQRT_2 / (PI * 1e4).sqrt()).abs() < 1e-12);
        let v = asymptotic_pn(&law(2, 1), 100, &spec).unwrap();
        assert!((v - 0.04565).abs() < 5e-5, "{v}");
        assert!(asymptotic_pn(&law(2, 1), 0, &spec).is_err());
    }

    #[test]
    fn exact_pn_sandwich() {
        for (k, m) in [(1, 1), (2, 1), (1, 0), (5, 7), (3, 2)] {
            let l = law(k, m);
            let c = ckm(k, m);
            let p = stay_positive_weights::<f64>(&l, 2000);
            for n in (200..=2000).step_by(50) {
                let r = p[n] * (PI * n as f64).sqrt() / c;
                assert!((r - 1.0).abs() <= 0.05, "({k},{m}) n={n}: ratio {r}");
            }
        }
    }
}
