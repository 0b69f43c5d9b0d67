//! Exact finite-n probability that a fixed chord of the planar walk is a hull edge.
//!
//! Fix the chord displacement `d = S_{n2} - S_{n1} = (a, b) ≠ 0`. The event
//! splits into three independent pieces, each asking that the normal
//! projection `d × (S_j - S_{n1})` keeps one sign:
//!
//! * the back segment after `n2`: a one-dimensional walk with increments
//!   `{±a, ±b}` must stay positive for `n - n2` steps;
//! * the front segment before `n1`: read backwards from `S_{n1}` it is again
//!   such a walk, so it contributes the stay-positive probability for `n1` steps;
//! * the middle segment: an `L = n2 - n1` step planar walk that ends at `d`
//!   and keeps every interior point strictly on the positive side. This joint
//!   mass is computed exactly by a planar dynamic program, not by the
//!   one-dimensional projected bridge, which conditions on a different event.
//!
//! Reversing the middle segment maps the all-negative event onto the
//! all-positive one, so the two sides contribute equally and
//!
//! ```text
//! P(edge) = 2 · Σ_{d ≠ 0} bridge⁺(d, L) · p_{n1}(|a|,|b|) · p_{n-n2}(|a|,|b|).
//! ```
//!
//! The factor two counts the two sides, which are disjoint unless the walk has
//! no other points at all (`n = 1`), where the probability is one.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hull::strictly_one_sided;
use crate::series::{bridge_stay_positive_1d, check_exact_steps, stay_positive_weights};
use crate::walk::{EdgeSpec, Point, Step, StepLaw};
use crate::weight::{Mode, Probability, Weight};

/// Largest `n` accepted by [`brute_force_edge_probability`].
pub const BRUTE_FORCE_MAX_STEPS: usize = 12;

/// Largest chord length `n2 - n1` accepted by the exact engine. The planar
/// bridge program costs O(L^3) per displacement and there are O(L^2) of them.
pub const MAX_CHORD_LEN: usize = 48;

/// Law of the `L`-step displacement `S_L` of the planar walk, as path counts over `4^L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplacementLaw {
    pub steps: usize,
    pub counts: BTreeMap<Point, BigUint>,
}

impl DisplacementLaw {
    pub fn probability(&self, p: Point) -> BigRational {
        let count = self.counts.get(&p).cloned().unwrap_or_default();
        BigRational::new(count.into(), BigInt::from(1u8) << (2 * self.steps))
    }

    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.counts.keys().copied()
    }
}

fn reachable(a: i64, b: i64, steps: usize) -> bool {
    a.unsigned_abs() + b.unsigned_abs() <= steps as u64 && (a + b).rem_euclid(2) as usize == steps % 2
}

/// Number of `L`-step walks ending at `(a, b)`: in the rotated coordinates
/// `x + y` and `x - y` the walk is a pair of independent `±1` walks, so the
/// count is `C(L, (L+a+b)/2) · C(L, (L+a-b)/2)`.
pub fn displacement_count(a: i64, b: i64, steps: usize) -> BigUint {
    if !reachable(a, b, steps) {
        return BigUint::default();
    }
    let l = steps as i64;
    let u = ((l + a + b) / 2) as u64;
    let v = ((l + a - b) / 2) as u64;
    let n = BigUint::from(steps);
    binomial(n.clone(), BigUint::from(u)) * binomial(n, BigUint::from(v))
}

pub fn displacement_law(steps: usize) -> Result<DisplacementLaw> {
    if steps == 0 {
        return Err(Error::InvalidArgument("displacement length must be at least 1".into()));
    }
    let l = steps as i64;
    let mut counts = BTreeMap::new();
    for a in -l..=l {
        for b in -l..=l {
            if reachable(a, b, steps) {
                counts.insert(Point::new(a, b), displacement_count(a, b, steps));
            }
        }
    }
    Ok(DisplacementLaw { steps, counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Feasibility {
    Feasible,
    /// `|a| + |b| > L`.
    OutOfReach,
    /// `a + b` and `L` have different parity.
    ParityMismatch,
}

/// Joint mass of "ends at `(a, b)` after `L` steps and every interior point
/// has strictly positive normal projection".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeMass {
    pub joint: Probability,
    pub feasibility: Feasibility,
}

/// Planar positive-bridge mass as a weight over `4^L`.
pub fn bridge_positive_weight<W: Weight>(a: i64, b: i64, steps: usize) -> W {
    if !reachable(a, b, steps) {
        return W::empty();
    }
    let d = Point::new(a, b);
    let l = steps as i64;
    let side = (2 * l + 1) as usize;
    let idx = |p: Point| ((p.x + l) as usize) * side + (p.y + l) as usize;
    let mut mass = vec![W::empty(); side * side];
    mass[idx(Point::ORIGIN)] = W::total(0);
    let mut frontier = vec![Point::ORIGIN];
    for t in 1..steps {
        let remaining = (steps - t) as u64;
        let mut next = vec![W::empty(); side * side];
        let mut next_frontier = Vec::new();
        for &p in &frontier {
            let w = mass[idx(p)].step();
            for s in Step::ALL {
                let q = p.add(s.delta());
                if d.cross(q) <= 0 || q.sub(d).x.unsigned_abs() + q.sub(d).y.unsigned_abs() > remaining {
                    continue;
                }
                let slot = &mut next[idx(q)];
                if slot.is_empty() {
                    next_frontier.push(q);
                }
                slot.add_assign(&w);
            }
        }
        mass = next;
        frontier = next_frontier;
    }
    let mut out = W::empty();
    for &p in &frontier {
        if Step::from_delta(d.sub(p)).is_some() {
            out.add_assign(&mass[idx(p)].step());
        }
    }
    out
}

pub fn bridge_positive_2d(a: i64, b: i64, steps: usize, mode: Mode) -> Result<BridgeMass> {
    if steps == 0 {
        return Err(Error::InvalidArgument("bridge length must be at least 1".into()));
    }
    if a == 0 && b == 0 {
        return Err(Error::DegenerateChord);
    }
    let feasibility = if a.unsigned_abs() + b.unsigned_abs() > steps as u64 {
        Feasibility::OutOfReach
    } else if (a + b).rem_euclid(2) as usize != steps % 2 {
        Feasibility::ParityMismatch
    } else {
        Feasibility::Feasible
    };
    let joint = match mode {
        Mode::Exact => bridge_positive_weight::<BigUint>(a, b, steps).into_probability(steps),
        Mode::Float => bridge_positive_weight::<f64>(a, b, steps).into_probability(steps),
    };
    Ok(BridgeMass { joint, feasibility })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeMethod {
    ExactFactored,
    BruteForce,
    MonteCarlo,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeProbabilityResult {
    pub spec: EdgeSpec,
    pub value: Probability,
    pub method: EdgeMethod,
}

/// Nonzero displacements reachable in `steps` steps, in sorted order.
fn displacements(steps: usize) -> Vec<Point> {
    let l = steps as i64;
    let mut out = Vec::new();
    for a in -l..=l {
        for b in -l..=l {
            if (a, b) != (0, 0) && reachable(a, b, steps) {
                out.push(Point::new(a, b));
            }
        }
    }
    out
}

fn projected_law(d: Point) -> StepLaw {
    StepLaw::new(d.x.unsigned_abs(), d.y.unsigned_abs()).expect("nonzero displacement").normalized()
}

fn edge_weight<W: Weight>(spec: EdgeSpec) -> W {
    let len = spec.chord_len();
    let front = spec.n1;
    let back = spec.n - spec.n2;
    let horizon = front.max(back);

    let disps = displacements(len);
    let mut laws: Vec<StepLaw> = disps.iter().map(|&d| projected_law(d)).collect();
    laws.sort_unstable();
    laws.dedup();
    let stay: HashMap<StepLaw, Vec<W>> =
        laws.into_par_iter().map(|law| (law, stay_positive_weights::<W>(&law, horizon))).collect();

    let terms: Vec<W> = disps
        .par_iter()
        .map(|&d| {
            let bridge = bridge_positive_weight::<W>(d.x, d.y, len);
            let p = &stay[&projected_law(d)];
            bridge.mul(&p[front]).mul(&p[back])
        })
        .collect();
    let mut total = W::empty();
    for t in &terms {
        total.add_assign(t);
    }
    let mut doubled = total.clone();
    doubled.add_assign(&total);
    doubled
}

/// Exact probability of the strict chord-on-hull event via the factored sum.
pub fn exact_edge_probability(spec: EdgeSpec, mode: Mode) -> Result<EdgeProbabilityResult> {
    let spec = EdgeSpec::new(spec.n1, spec.n2, spec.n)?;
    if spec.chord_len() > MAX_CHORD_LEN {
        return Err(Error::TooLarge { what: "n2 - n1", value: spec.chord_len(), max: MAX_CHORD_LEN });
    }
    check_exact_steps(spec.n, mode)?;
    let value = if !spec.has_other_points() {
        match mode {
            Mode::Exact => BigUint::from(1u8).into_probability(0),
            Mode::Float => Probability::Float(1.0),
        }
    } else {
        match mode {
            Mode::Exact => edge_weight::<BigUint>(spec).into_probability(spec.n),
            Mode::Float => edge_weight::<f64>(spec).into_probability(spec.n),
        }
    };
    Ok(EdgeProbabilityResult { spec, value, method: EdgeMethod::ExactFactored })
}

/// Exact probability by enumerating all `4^n` walks and applying the strict predicate.
pub fn brute_force_edge_probability(spec: EdgeSpec) -> Result<EdgeProbabilityResult> {
    let spec = EdgeSpec::new(spec.n1, spec.n2, spec.n)?;
    let n = spec.n;
    if n > BRUTE_FORCE_MAX_STEPS {
        return Err(Error::TooLarge { what: "n", value: n, max: BRUTE_FORCE_MAX_STEPS });
    }
    let total = 1u64 << (2 * n);
    let chunk = 1u64 << 12;
    let hits: u64 = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut pts = [Point::ORIGIN; BRUTE_FORCE_MAX_STEPS + 1];
            let mut hits = 0u64;
            for code in c * chunk..((c + 1) * chunk).min(total) {
                for i in 0..n {
                    let s = Step::from_index(((code >> (2 * i)) & 3) as usize);
                    pts[i + 1] = pts[i].add(s.delta());
                }
                hits += strictly_one_sided(&pts[..=n], spec.n1, spec.n2) as u64;
            }
            hits
        })
        .sum();
    let value = Probability::Exact(BigRational::new(BigInt::from(hits), BigInt::from(1u8) << (2 * n)));
    Ok(EdgeProbabilityResult { spec, value, method: EdgeMethod::BruteForce })
}

/// Middle factor for one displacement: the planar conditional probability of
/// a positive interior given `S_L = d`, next to the one-dimensional projected
/// bridge probability for the law `(|a|, |b|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MiddleFactorDiagnostic {
    pub displacement: Point,
    pub steps: usize,
    pub conditional_2d: f64,
    pub bridge_1d: f64,
    pub ratio: f64,
}

pub fn middle_factor_diagnostic(a: i64, b: i64, steps: usize) -> Result<MiddleFactorDiagnostic> {
    let mass = bridge_positive_2d(a, b, steps, Mode::Exact)?;
    if mass.feasibility != Feasibility::Feasible {
        return Err(Error::InvalidArgument(format!(
            "displacement ({a}, {b}) is not reachable in {steps} steps"
        )));
    }
    let endpoint = BigRational::new(displacement_count(a, b, steps).into(), BigInt::from(1u8) << (2 * steps));
    let cond = mass.joint.as_exact().expect("exact") / endpoint;
    let law = StepLaw::new(a.unsigned_abs(), b.unsigned_abs())?;
    let one_d = bridge_stay_positive_1d(&law, steps, Mode::Exact)?;
    let conditional_2d = crate::weight::ratio_to_f64(&cond);
    let bridge_1d = one_d.to_f64();
    Ok(MiddleFactorDiagnostic {
        displacement: Point::new(a, b),
        steps,
        conditional_2d,
        bridge_1d,
        ratio: conditional_2d / bridge_1d,
    })
}
