//! One-dimensional stay-positive machinery.
//!
//! For the projected law (mass 1/4 on each of `±k`, `±m`) this module computes
//! the return probabilities `h_n = P(S_n = 0)`, the positivity probabilities
//! `a_n = P(S_n > 0) = (1 - h_n) / 2`, and the stay-positive probabilities
//! `p_n = P(S_1 > 0, ..., S_n > 0)`.
//!
//! The production route for `p_n` is the Sparre Andersen exponential identity
//! `P(s) = exp(sum a_n s^n / n)`. Differentiating its logarithm gives the
//! coefficient recursion
//!
//! ```text
//! n p_n = sum_{j=1..n} a_j p_{n-j},    p_0 = 1,
//! ```
//!
//! which is O(n^2) and, in count mode, exact integer arithmetic (the sum is
//! always divisible by `n`). A forward dynamic program over positions and a
//! full enumeration of step sequences are kept as independent checks.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::walk::StepLaw;
use crate::weight::{Mode, Probability, Weight};

/// Largest `n` accepted by [`brute_force_stay_positive`].
pub const BRUTE_FORCE_MAX_STEPS: usize = 12;

/// Largest step count accepted by exact (rational) sequence computations.
/// Exact counts grow to `2n` bits and the recursion is quadratic in `n`.
pub const EXACT_MAX_STEPS: usize = 4096;

/// Resource check applied before exact-mode sequence work; float mode is unlimited.
pub fn check_exact_steps(n: usize, mode: Mode) -> Result<()> {
    if mode == Mode::Exact && n > EXACT_MAX_STEPS {
        return Err(Error::TooLarge { what: "n", value: n, max: EXACT_MAX_STEPS });
    }
    Ok(())
}

/// Mass of each position of the walk, indexed from `-max_pos`.
#[derive(Debug, Clone)]
struct Distribution<W> {
    offset: usize,
    mass: Vec<W>,
}

impl<W: Weight> Distribution<W> {
    fn point_mass_at_zero(max_steps: usize, law: &StepLaw) -> Self {
        let offset = max_steps * law.max_step() as usize;
        let mut mass = vec![W::empty(); 2 * offset + 1];
        mass[offset] = W::total(0);
        Distribution { offset, mass }
    }

    fn at(&self, pos: i64) -> &W {
        &self.mass[(self.offset as i64 + pos) as usize]
    }

    /// One step of the walk, restricted to the positions reachable after
    /// `steps_done + 1` steps.
    fn advance(&mut self, law: &StepLaw, steps_done: usize) {
        let reach = ((steps_done + 1) as u64 * law.max_step()) as i64;
        let incs = law.increments();
        let mut next = vec![W::empty(); self.mass.len()];
        for pos in -reach..=reach {
            let slot = &mut next[(self.offset as i64 + pos) as usize];
            for inc in incs {
                let from = pos - inc;
                if from.unsigned_abs() as usize <= self.offset {
                    let w = self.at(from);
                    if !w.is_empty() {
                        slot.add_assign(&w.step());
                    }
                }
            }
        }
        self.mass = next;
    }
}

/// `h_0, ..., h_n` as weights; `h_0` is the full mass of the empty walk.
pub fn return_weights<W: Weight>(law: &StepLaw, n: usize) -> Vec<W> {
    let mut dist = Distribution::<W>::point_mass_at_zero(n, law);
    let mut out = Vec::with_capacity(n + 1);
    out.push(dist.at(0).clone());
    for t in 0..n {
        dist.advance(law, t);
        out.push(dist.at(0).clone());
    }
    out
}

/// `a_0, ..., a_n` as weights with `a_0 = 0`.
pub fn positivity_weights<W: Weight>(law: &StepLaw, n: usize) -> Vec<W> {
    let h = return_weights::<W>(law, n);
    let mut out = Vec::with_capacity(n + 1);
    out.push(W::empty());
    for (j, hj) in h.iter().enumerate().skip(1) {
        out.push(W::total(j).sub(hj).div_exact(2));
    }
    out
}

/// `p_0, ..., p_n` through the logarithmic-derivative recursion.
pub fn stay_positive_weights<W: Weight>(law: &StepLaw, n: usize) -> Vec<W> {
    let a = positivity_weights::<W>(law, n);
    let mut p: Vec<W> = Vec::with_capacity(n + 1);
    p.push(W::total(0));
    for t in 1..=n {
        let mut acc = W::empty();
        for j in 1..=t {
            acc.add_assign(&a[j].mul(&p[t - j]));
        }
        p.push(acc.div_exact(t as u64));
    }
    p
}

/// `p_0, ..., p_n` by forward dynamic programming over the positive positions.
pub fn stay_positive_dp_weights<W: Weight>(law: &StepLaw, n: usize) -> Vec<W> {
    let top = n * law.max_step() as usize;
    let incs = law.increments();
    // mass[x] = weight of surviving walks currently at position x (x = 0 only at t = 0)
    let mut mass = vec![W::empty(); top + 1];
    mass[0] = W::total(0);
    let mut out = vec![W::total(0)];
    for _ in 0..n {
        let mut next = vec![W::empty(); top + 1];
        for (x, w) in mass.iter().enumerate() {
            if w.is_empty() {
                continue;
            }
            let stepped = w.step();
            for inc in incs {
                let y = x as i64 + inc;
                if y > 0 {
                    next[y as usize].add_assign(&stepped);
                }
            }
        }
        let mut alive = W::empty();
        for w in &next {
            alive.add_assign(w);
        }
        out.push(alive);
        mass = next;
    }
    out
}

fn require_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} must be at least 1")));
    }
    Ok(())
}

/// `h_n = P(S_n = 0)` for `n >= 1`.
pub fn return_probability(law: &StepLaw, n: usize, mode: Mode) -> Result<Probability> {
    require_positive(n, "n")?;
    check_exact_steps(n, mode)?;
    Ok(match mode {
        Mode::Exact => return_weights::<BigUint>(law, n).swap_remove(n).into_probability(n),
        Mode::Float => return_weights::<f64>(law, n).swap_remove(n).into_probability(n),
    })
}

/// `a_n = P(S_n > 0) = (1 - h_n) / 2` for `n >= 1`.
pub fn positivity_probability(law: &StepLaw, n: usize, mode: Mode) -> Result<Probability> {
    require_positive(n, "n")?;
    check_exact_steps(n, mode)?;
    Ok(match mode {
        Mode::Exact => positivity_weights::<BigUint>(law, n).swap_remove(n).into_probability(n),
        Mode::Float => positivity_weights::<f64>(law, n).swap_remove(n).into_probability(n),
    })
}

/// `p_n = P(S_1 > 0, ..., S_n > 0)`, with `p_0 = 1`.
pub fn stay_positive(law: &StepLaw, n: usize, mode: Mode) -> Probability {
    match mode {
        Mode::Exact => stay_positive_weights::<BigUint>(law, n).swap_remove(n).into_probability(n),
        Mode::Float => stay_positive_weights::<f64>(law, n).swap_remove(n).into_probability(n),
    }
}

/// Same quantity as [`stay_positive`] by an independent position DP.
pub fn stay_positive_dp(law: &StepLaw, n: usize, mode: Mode) -> Probability {
    match mode {
        Mode::Exact => stay_positive_dp_weights::<BigUint>(law, n).swap_remove(n).into_probability(n),
        Mode::Float => stay_positive_dp_weights::<f64>(law, n).swap_remove(n).into_probability(n),
    }
}

/// Exact `p_n` by enumerating all `4^n` step sequences.
pub fn brute_force_stay_positive(law: &StepLaw, n: usize) -> Result<BigRational> {
    if n > BRUTE_FORCE_MAX_STEPS {
        return Err(Error::TooLarge { what: "n", value: n, max: BRUTE_FORCE_MAX_STEPS });
    }
    let incs = law.increments();
    let mut hits: u64 = 0;
    for code in 0u64..(1u64 << (2 * n)) {
        let mut s = 0i64;
        let mut ok = true;
        for i in 0..n {
            s += incs[((code >> (2 * i)) & 3) as usize];
            if s <= 0 {
                ok = false;
            }
        }
        hits += ok as u64;
    }
    Ok(BigRational::new(BigInt::from(hits), BigInt::from(1u64) << (2 * n)))
}

/// `P(S_1 > 0, ..., S_{L-1} > 0 | S_L = 0)` for the one-dimensional law.
///
/// Conditioning on a null event (no bridge of length `L` exists) is an error,
/// never a zero.
pub fn bridge_stay_positive_1d(law: &StepLaw, len: usize, mode: Mode) -> Result<Probability> {
    require_positive(len, "bridge length")?;
    match mode {
        Mode::Exact => {
            let (pos, all) = bridge_weights::<BigUint>(law, len);
            if all.is_empty() {
                return Err(null_bridge(law, len));
            }
            Ok(Probability::Exact(BigRational::new(pos.into(), all.into())))
        }
        Mode::Float => {
            let (pos, all) = bridge_weights::<f64>(law, len);
            if all == 0.0 {
                return Err(null_bridge(law, len));
            }
            Ok(Probability::Float(pos / all))
        }
    }
}

fn null_bridge(law: &StepLaw, len: usize) -> Error {
    Error::NullBridge { k: law.k(), m: law.m(), steps: len }
}

/// (mass of positive-interior bridges, mass of all bridges) of length `len`.
fn bridge_weights<W: Weight>(law: &StepLaw, len: usize) -> (W, W) {
    let incs = law.increments();
    let top = len * law.max_step() as usize;
    let mut mass = vec![W::empty(); top + 1];
    mass[0] = W::total(0);
    for _ in 1..len {
        let mut next = vec![W::empty(); top + 1];
        for (x, w) in mass.iter().enumerate() {
            if w.is_empty() {
                continue;
            }
            let stepped = w.step();
            for inc in incs {
                let y = x as i64 + inc;
                if y > 0 {
                    next[y as usize].add_assign(&stepped);
                }
            }
        }
        mass = next;
    }
    let mut pos = W::empty();
    for (x, w) in mass.iter().enumerate() {
        for inc in incs {
            if x as i64 + inc == 0 {
                pos.add_assign(&w.step());
            }
        }
    }
    let all = return_weights::<W>(law, len).swap_remove(len);
    (pos, all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    /// Stay-positive probabilities `p_n`.
    P,
    /// Return probabilities `h_n`; the constant term is `h_0 = 1`.
    H,
    /// Positivity probabilities `a_n`; the constant term is `0`.
    A,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SeriesValues {
    Exact(#[serde(serialize_with = "ser_rationals")] Vec<BigRational>),
    Float(Vec<f64>),
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

/// Truncated generating-function coefficients, index 0 through `order`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientSeries {
    pub law: StepLaw,
    pub kind: SeriesKind,
    pub values: SeriesValues,
}

impl CoefficientSeries {
    pub fn order(&self) -> usize {
        match &self.values {
            SeriesValues::Exact(v) => v.len() - 1,
            SeriesValues::Float(v) => v.len() - 1,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match &self.values {
            SeriesValues::Exact(v) => v.iter().map(crate::weight::ratio_to_f64).collect(),
            SeriesValues::Float(v) => v.clone(),
        }
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        match &self.values {
            SeriesValues::Exact(v) => Some(v),
            SeriesValues::Float(_) => None,
        }
    }
}

pub fn series(kind: SeriesKind, law: &StepLaw, order: usize, mode: Mode) -> Result<CoefficientSeries> {
    require_positive(order, "order")?;
    check_exact_steps(order, mode)?;
    fn build<W: Weight>(kind: SeriesKind, law: &StepLaw, order: usize) -> Vec<W> {
        match kind {
            SeriesKind::P => stay_positive_weights::<W>(law, order),
            SeriesKind::H => return_weights::<W>(law, order),
            SeriesKind::A => positivity_weights::<W>(law, order),
        }
    }
    let values = match mode {
        Mode::Exact => SeriesValues::Exact(
            build::<BigUint>(kind, law, order)
                .into_iter()
                .enumerate()
                .map(|(i, w)| match w.into_probability(i) {
                    Probability::Exact(r) => r,
                    Probability::Float(_) => unreachable!(),
                })
                .collect(),
        ),
        Mode::Float => SeriesValues::Float(build::<f64>(kind, law, order)),
    };
    Ok(CoefficientSeries { law: *law, kind, values })
}

/// Closed form of the stay-positive generating function,
///
/// ```text
/// P(s) = (1 - s)^(-1/2) exp( (1/4π) ∫_{-π}^{π} ln(1 - (s/2)(cos kθ + cos mθ)) dθ ),
/// ```
///
/// for `0 <= s < 1`. The integrand is smooth and 2π-periodic there, so the
/// trapezoidal rule converges geometrically; the node count doubles until two
/// successive estimates of the exponent agree to `tol`.
pub fn closed_form_p(law: &StepLaw, s: f64, tol: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::InvalidArgument(format!("s must lie in [0, 1), got {s}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    const MAX_NODES: usize = 1 << 24;
    let (k, m) = (law.k() as f64, law.m() as f64);
    let integrand = |theta: f64| (-(s / 2.0) * ((k * theta).cos() + (m * theta).cos())).ln_1p();
    // mean over a period = (1/2π) ∫_{-π}^{π}
    let trapezoid = |nodes: usize| {
        let h = 2.0 * PI / nodes as f64;
        (0..nodes).map(|i| integrand(i as f64 * h)).sum::<f64>() / nodes as f64
    };
    let mut nodes = 8 * (law.max_step() as usize + 1);
    let mut prev = trapezoid(nodes);
    loop {
        nodes *= 2;
        let cur = trapezoid(nodes);
        let diff = (cur - prev).abs();
        if diff <= tol {
            return Ok((0.5 * cur).exp() / (1.0 - s).sqrt());
        }
        if nodes >= MAX_NODES {
            return Err(Error::Tolerance { tolerance: tol, estimate: diff });
        }
        prev = cur;
    }
}

/// Coefficients of `(1 - s)^(-1/2)`: `C(2n, n) / 4^n`.
fn inverse_sqrt_series(order: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = BigRational::one();
    out.push(c.clone());
    for n in 1..=order {
        // C(2n,n)/4^n = C(2n-2,n-1)/4^(n-1) * (2n-1)/(2n)
        c *= BigRational::new(BigInt::from(2 * n - 1), BigInt::from(2 * n));
        out.push(c.clone());
    }
    out
}

/// Checks, coefficient by coefficient and in exact arithmetic, that
///
/// ```text
/// P(s) = (1 - s)^(-1/2) · exp( -sum_{n>=1} h_n s^n / (2n) )
/// ```
///
/// reproduces the stay-positive probabilities through `order`. The right-hand
/// side is built from the return probabilities alone and compared against the
/// position DP, which shares no code with either series.
pub fn log_series_identity_check(law: &StepLaw, order: usize) -> Result<bool> {
    require_positive(order, "order")?;
    check_exact_steps(order, Mode::Exact)?;
    let h = return_weights::<BigUint>(law, order);
    let h: Vec<BigRational> = h
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.into_probability(i).as_exact().cloned().expect("exact"))
        .collect();

    // exp(L(s)) with L(s) = -sum h_n s^n / (2n): n e_n = sum_j (j L_j) e_{n-j}, j L_j = -h_j / 2
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut e = vec![BigRational::one()];
    for n in 1..=order {
        let mut acc = BigRational::zero();
        for j in 1..=n {
            acc -= &half * &h[j] * &e[n - j];
        }
        e.push(acc / BigRational::from_integer(BigInt::from(n)));
    }

    let b = inverse_sqrt_series(order);
    let target: Vec<BigRational> = stay_positive_dp_weights::<BigUint>(law, order)
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.into_probability(i).as_exact().cloned().expect("exact"))
        .collect();

    Ok((0..=order).all(|n| {
        let mut q = BigRational::zero();
        for j in 0..=n {
            q += &b[j] * &e[n - j];
        }
        q == target[n]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn law(k: u64, m: u64) -> StepLaw {
        StepLaw::new(k, m).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn exact(p: Probability) -> BigRational {
        p.as_exact().unwrap().clone()
    }

    /// Enumerates all 4^n step sequences and returns (paths ending at 0, paths
    /// ending above 0) over `4^n`. Used only as an oracle.
    fn enumerate_endpoints(law: &StepLaw, n: usize) -> (BigRational, BigRational) {
        let incs = law.increments();
        let (mut zero, mut pos) = (0i64, 0i64);
        for code in 0u64..(1 << (2 * n)) {
            let s: i64 = (0..n).map(|i| incs[((code >> (2 * i)) & 3) as usize]).sum();
            if s == 0 {
                zero += 1;
            } else if s > 0 {
                pos += 1;
            }
        }
        let d = 1i64 << (2 * n);
        (q(zero, d), q(pos, d))
    }

    #[test]
    fn return_probability_values() {
        assert_eq!(exact(return_probability(&law(1, 1), 2, Mode::Exact).unwrap()), q(1, 2));
        assert_eq!(exact(return_probability(&law(2, 1), 2, Mode::Exact).unwrap()), q(1, 4));
        assert_eq!(exact(return_probability(&law(5, 7), 1, Mode::Exact).unwrap()), q(0, 1));
        assert_eq!(exact(return_probability(&law(1, 0), 1, Mode::Exact).unwrap()), q(1, 2));
        assert!(return_probability(&law(1, 1), 0, Mode::Exact).is_err());
    }

    #[test]
    fn return_and_positivity_match_enumeration() {
        for l in [law(1, 1), law(2, 1), law(3, 2), law(1, 0), law(5, 7)] {
            for n in 1..=7 {
                let (h, a) = enumerate_endpoints(&l, n);
                assert_eq!(exact(return_probability(&l, n, Mode::Exact).unwrap()), h);
                assert_eq!(exact(positivity_probability(&l, n, Mode::Exact).unwrap()), a);
            }
        }
    }

    #[test]
    fn positivity_values() {
        assert_eq!(exact(positivity_probability(&law(1, 1), 1, Mode::Exact).unwrap()), q(1, 2));
        assert_eq!(exact(positivity_probability(&law(1, 0), 1, Mode::Exact).unwrap()), q(1, 4));
        assert_eq!(exact(positivity_probability(&law(2, 1), 2, Mode::Exact).unwrap()), q(3, 8));
    }

    #[test]
    fn stay_positive_values() {
        assert_eq!(exact(stay_positive(&law(1, 1), 2, Mode::Exact)), q(1, 4));
        assert_eq!(exact(stay_positive(&law(2, 1), 2, Mode::Exact)), q(5, 16));
        for l in [law(1, 1), law(2, 1), law(5, 7), law(3, 3)] {
            assert_eq!(exact(stay_positive(&l, 1, Mode::Exact)), q(1, 2));
        }
        // +,+,+ and +,+,- are the surviving sign patterns
        assert_eq!(exact(stay_positive_dp(&law(1, 1), 3, Mode::Exact)), q(1, 4));
        assert_eq!(exact(stay_positive_dp(&law(1, 0), 0, Mode::Exact)), q(1, 1));
        assert_eq!(brute_force_stay_positive(&law(1, 1), 2).unwrap(), q(1, 4));
        assert_eq!(brute_force_stay_positive(&law(2, 1), 1).unwrap(), q(1, 2));
        assert_eq!(brute_force_stay_positive(&law(1, 0), 2).unwrap(), q(3, 16));
        assert!(brute_force_stay_positive(&law(1, 1), 13).is_err());
    }

    #[test]
    fn simple_walk_binomial_form() {
        let p = stay_positive_weights::<BigUint>(&law(1, 1), 1000);
        for r in 1..=500usize {
            // p_{2r} 4^{2r} = C(2r, r) 4^r / 2
            let expected = binomial(BigUint::from(2 * r), BigUint::from(r)) << (2 * r - 1);
            assert_eq!(p[2 * r], expected, "r = {r}");
        }
    }

    #[test]
    fn recursion_matches_dp() {
        for l in [law(1, 1), law(2, 1), law(5, 7), law(1, 0)] {
            let a = stay_positive_weights::<BigUint>(&l, 200);
            let b = stay_positive_dp_weights::<BigUint>(&l, 200);
            assert_eq!(a, b, "{l}");
        }
    }

    #[test]
    fn float_mode_tracks_exact() {
        let l = law(5, 7);
        let a = stay_positive_weights::<f64>(&l, 120);
        let b = stay_positive_weights::<BigUint>(&l, 120);
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            let y = y.to_f64(i);
            assert!((x - y).abs() <= 1e-12 * y, "n = {i}: {x} vs {y}");
        }
    }

    #[test]
    fn monotone_and_positive() {
        for l in [law(1, 1), law(2, 1), law(1, 0), law(4, 0)] {
            let p = stay_positive_weights::<BigUint>(&l, 100);
            for w in p.windows(2) {
                // p_{n+1} <= p_n  <=>  count_{n+1} <= 4 count_n
                assert!(w[1] <= &w[0] << 2usize && !w[1].is_zero());
            }
            let p = stay_positive_weights::<f64>(&l, 1000);
            assert_eq!(p[0], 1.0);
            for w in p.windows(2) {
                assert!(w[1] <= w[0] * (1.0 + 1e-12) && w[1] > 0.0);
            }
        }
    }

    #[test]
    fn parity_of_returns() {
        let h = return_weights::<BigUint>(&law(3, 1), 30);
        for (n, w) in h.iter().enumerate() {
            if n % 2 == 1 {
                assert!(w.is_empty());
            }
        }
        let h = return_weights::<BigUint>(&law(2, 1), 30);
        assert!(!h[3].is_zero());
    }

    #[test]
    fn series_examples() {
        let h = series(SeriesKind::H, &law(1, 1), 4, Mode::Exact).unwrap();
        assert_eq!(h.exact().unwrap()[1..], [q(0, 1), q(1, 2), q(0, 1), q(3, 8)]);
        let p = series(SeriesKind::P, &law(2, 1), 2, Mode::Exact).unwrap();
        assert_eq!(p.exact().unwrap(), [q(1, 1), q(1, 2), q(5, 16)]);
    }

    #[test]
    fn series_ring_identities() {
        for l in [law(1, 1), law(2, 1), law(1, 0), law(5, 7)] {
            let order = 40;
            let h = series(SeriesKind::H, &l, order, Mode::Exact).unwrap();
            let a = series(SeriesKind::A, &l, order, Mode::Exact).unwrap();
            let p = series(SeriesKind::P, &l, order, Mode::Exact).unwrap();
            let (h, a, p) = (h.exact().unwrap(), a.exact().unwrap(), p.exact().unwrap());
            for n in 0..=order {
                // 2 A(s) = 1/(1-s) - H(s)
                assert_eq!(q(2, 1) * &a[n], q(1, 1) - &h[n]);
                if n > 0 {
                    let mut s = BigRational::zero();
                    for j in 1..=n {
                        s += &a[j] * &p[n - j];
                    }
                    assert_eq!(s, BigRational::from_integer(n.into()) * &p[n]);
                }
            }
        }
    }

    #[test]
    fn log_identity_holds() {
        assert!(log_series_identity_check(&law(1, 1), 50).unwrap());
        assert!(log_series_identity_check(&law(2, 1), 50).unwrap());
        assert!(log_series_identity_check(&law(1, 0), 30).unwrap());
    }

    #[test]
    fn bridge_1d() {
        let b = bridge_stay_positive_1d(&law(1, 1), 2, Mode::Exact).unwrap();
        assert_eq!(exact(b), q(1, 2));
        let b = bridge_stay_positive_1d(&law(2, 1), 2, Mode::Exact).unwrap();
        assert_eq!(exact(b), q(1, 2));
        assert_eq!(
            bridge_stay_positive_1d(&law(1, 1), 3, Mode::Exact),
            Err(Error::NullBridge { k: 1, m: 1, steps: 3 })
        );
        // zero steps are the only length-1 bridges and have no interior
        let b = bridge_stay_positive_1d(&law(1, 0), 1, Mode::Float).unwrap();
        assert_eq!(b.to_f64(), 1.0);
    }

    #[test]
    fn closed_form_against_truncated_series() {
        for l in [law(1, 1), law(2, 1), law(5, 7), law(1, 0)] {
            assert_eq!(closed_form_p(&l, 0.0, 1e-14).unwrap(), 1.0);
            for (s, order, tol) in [(0.3, 60, 1e-12), (0.5, 60, 1e-12), (0.9, 400, 1e-10)] {
                let p = stay_positive_weights::<f64>(&l, order);
                let truncated: f64 = p.iter().rev().fold(0.0, |acc, c| acc * s + c);
                let closed = closed_form_p(&l, s, 1e-15).unwrap();
                assert!((closed - truncated).abs() <= tol, "{l} s={s}: {closed} vs {truncated}");
            }
        }
        assert!(closed_form_p(&law(1, 1), 1.0, 1e-12).is_err());
    }

    #[test]
    fn exact_step_limit() {
        let l = law(1, 1);
        assert!(check_exact_steps(EXACT_MAX_STEPS, Mode::Exact).is_ok());
        assert!(matches!(
            series(SeriesKind::P, &l, EXACT_MAX_STEPS + 1, Mode::Exact),
            Err(Error::TooLarge { .. })
        ));
        assert!(series(SeriesKind::P, &l, EXACT_MAX_STEPS + 1, Mode::Float).is_ok());
        assert!(return_probability(&l, EXACT_MAX_STEPS + 1, Mode::Exact).is_err());
    }
}
