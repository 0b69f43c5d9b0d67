//! Lattice walks, step laws and chord frames.
//!
//! A chord is the segment between the walk positions at two fixed times.
//! Everything downstream only ever asks which side of the chord line a point
//! lies on, so projections are integer cross products against the chord
//! direction rather than normalized real projections.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }

    /// `self × other`, widened so that no coordinate range we accept can overflow.
    pub fn cross(self, other: Point) -> i128 {
        self.x as i128 * other.y as i128 - self.y as i128 * other.x as i128
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One of the four unit steps of the simple walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    E,
    W,
    N,
    S,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::E, Step::W, Step::N, Step::S];

    pub fn delta(self) -> Point {
        match self {
            Step::E => Point::new(1, 0),
            Step::W => Point::new(-1, 0),
            Step::N => Point::new(0, 1),
            Step::S => Point::new(0, -1),
        }
    }

    pub fn from_delta(d: Point) -> Option<Step> {
        match (d.x, d.y) {
            (1, 0) => Some(Step::E),
            (-1, 0) => Some(Step::W),
            (0, 1) => Some(Step::N),
            (0, -1) => Some(Step::S),
            _ => None,
        }
    }

    /// Index used by the simulators: two random bits pick a step.
    pub fn from_index(i: usize) -> Step {
        Step::ALL[i & 3]
    }

    pub fn letter(self) -> char {
        match self {
            Step::E => 'E',
            Step::W => 'W',
            Step::N => 'N',
            Step::S => 'S',
        }
    }
}

/// The one-dimensional law putting mass 1/4 on each of `+k, -k, +m, -m`.
///
/// Coinciding values accumulate mass, so `k == m` is the `±k` walk and
/// `m == 0` carries an atom of mass 1/2 at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StepLaw {
    k: u64,
    m: u64,
}

impl StepLaw {
    pub fn new(k: u64, m: u64) -> Result<Self> {
        if k == 0 && m == 0 {
            return Err(Error::ZeroLaw);
        }
        Ok(StepLaw { k, m })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn max_step(&self) -> u64 {
        self.k.max(self.m)
    }

    /// `gcd(k, m)` with `gcd(k, 0) = k`.
    pub fn gcd(&self) -> u64 {
        self.k.gcd(&self.m)
    }

    /// The four equally likely increments `[+k, -k, +m, -m]`.
    pub fn increments(&self) -> [i64; 4] {
        let (k, m) = (self.k as i64, self.m as i64);
        [k, -k, m, -m]
    }

    /// Divide out the gcd and order the pair as `(max, min)`.
    ///
    /// Sign events of the walk, and hence every stay-positive quantity and the
    /// asymptotic constant, are unchanged by this normalization.
    pub fn normalized(&self) -> StepLaw {
        let g = self.gcd();
        let (a, b) = (self.k / g, self.m / g);
        StepLaw { k: a.max(b), m: a.min(b) }
    }

    /// True when every increment is odd after normalization; the walk then
    /// only returns to zero at even times.
    pub fn has_period_two(&self) -> bool {
        let n = self.normalized();
        n.k % 2 == 1 && n.m % 2 == 1
    }
}

impl fmt::Display for StepLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k = {}, m = {}", self.k, self.m)
    }
}

/// A realized walk `S_0, ..., S_n` with `S_0 = (0, 0)` and unit increments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePath {
    points: Vec<Point>,
}

impl LatticePath {
    pub fn from_steps(steps: &[Step]) -> Self {
        let mut points = Vec::with_capacity(steps.len() + 1);
        let mut cur = Point::ORIGIN;
        points.push(cur);
        for s in steps {
            cur = cur.add(s.delta());
            points.push(cur);
        }
        LatticePath { points }
    }

    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        match points.first() {
            None => return Err(Error::InvalidPath("path has no points".into())),
            Some(&p) if p != Point::ORIGIN => {
                return Err(Error::InvalidPath(format!("path starts at {p}, not at the origin")))
            }
            _ => {}
        }
        for (i, w) in points.windows(2).enumerate() {
            if Step::from_delta(w[1].sub(w[0])).is_none() {
                return Err(Error::InvalidPath(format!(
                    "points {i} and {} are not lattice neighbours: {} -> {}",
                    i + 1,
                    w[0],
                    w[1]
                )));
            }
        }
        Ok(LatticePath { points })
    }

    /// Parse the step-list format: one of `E`, `W`, `N`, `S` per line.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_steps(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let step = match line {
                "E" | "e" => Step::E,
                "W" | "w" => Step::W,
                "N" | "n" => Step::N,
                "S" | "s" => Step::S,
                other => {
                    return Err(Error::InvalidPath(format!(
                        "line {}: expected one of E, W, N, S, got {other:?}",
                        lineno + 1
                    )))
                }
            };
            steps.push(step);
        }
        Ok(LatticePath::from_steps(&steps))
    }

    /// Parse a JSON array of `[x, y]` integer pairs.
    pub fn parse_json(text: &str) -> Result<Self> {
        let pairs: Vec<[i64; 2]> =
            serde_json::from_str(text).map_err(|e| Error::InvalidPath(e.to_string()))?;
        LatticePath::from_points(pairs.into_iter().map(|[x, y]| Point::new(x, y)).collect())
    }

    /// Accept either interchange format: JSON when the first non-blank
    /// character is `[`, the step list otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('[') {
            LatticePath::parse_json(text)
        } else {
            LatticePath::parse_steps(text)
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn step_list(&self) -> Vec<Step> {
        self.points
            .windows(2)
            .map(|w| Step::from_delta(w[1].sub(w[0])).expect("validated on construction"))
            .collect()
    }
}

/// The triple `(n1, n2, n)` naming the chord `S_{n1} S_{n2}` of an `n`-step walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub n1: usize,
    pub n2: usize,
    pub n: usize,
}

impl EdgeSpec {
    pub fn new(n1: usize, n2: usize, n: usize) -> Result<Self> {
        if n1 >= n2 || n2 > n {
            return Err(Error::InvalidEdgeSpec { n1, n2, n });
        }
        Ok(EdgeSpec { n1, n2, n })
    }

    /// Number of steps between the chord endpoints.
    pub fn chord_len(&self) -> usize {
        self.n2 - self.n1
    }

    /// True when the walk has at least one time other than `n1` and `n2`.
    pub fn has_other_points(&self) -> bool {
        self.n > 1
    }
}

/// Base point and direction of a chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChordFrame {
    pub base: Point,
    pub direction: Point,
}

impl ChordFrame {
    pub fn is_degenerate(&self) -> bool {
        self.direction == Point::ORIGIN
    }

    /// Signed normal coordinate of `p`: `d × (p - base)`. Positive means left
    /// of the chord when walking from `base` along `direction`.
    pub fn project(&self, p: Point) -> i128 {
        self.direction.cross(p.sub(self.base))
    }

    pub fn negated(&self) -> ChordFrame {
        ChordFrame { base: self.base, direction: Point::new(-self.direction.x, -self.direction.y) }
    }
}

pub fn chord_frame(path: &LatticePath, spec: EdgeSpec) -> Result<ChordFrame> {
    let steps = path.steps();
    if spec.n > steps {
        return Err(Error::IndexOutOfRange { index: spec.n, steps });
    }
    let pts = path.points();
    Ok(ChordFrame { base: pts[spec.n1], direction: pts[spec.n2].sub(pts[spec.n1]) })
}

/// Normal projections of every point of `path` relative to `frame`.
pub fn project_normal(path: &LatticePath, frame: &ChordFrame) -> Result<Vec<i128>> {
    if frame.is_degenerate() {
        return Err(Error::DegenerateChord);
    }
    Ok(path.points().iter().map(|&p| frame.project(p)).collect())
}

/// Law of the projected increment of a unit step: `(|d_x|, |d_y|)`.
pub fn induced_step_law(frame: &ChordFrame) -> Result<StepLaw> {
    if frame.is_degenerate() {
        return Err(Error::DegenerateChord);
    }
    StepLaw::new(frame.direction.x.unsigned_abs(), frame.direction.y.unsigned_abs())
}
