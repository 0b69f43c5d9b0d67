//! Exact integer convex hulls and the chord-on-boundary predicates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::walk::{chord_frame, EdgeSpec, LatticePath, Point};

/// Convex polygon with vertices in counterclockwise order, starting from the
/// lexicographically smallest vertex. Collinear boundary points are not vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HullPolygon {
    pub vertices: Vec<Point>,
}

impl HullPolygon {
    /// A single point or a segment.
    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn position(&self, p: Point) -> Option<usize> {
        self.vertices.iter().position(|&v| v == p)
    }

    /// True when `p` and `q` are distinct vertices joined by a polygon edge.
    pub fn are_adjacent(&self, p: Point, q: Point) -> bool {
        let len = self.vertices.len();
        match (self.position(p), self.position(q)) {
            (Some(i), Some(j)) if i != j => (i + 1) % len == j || (j + 1) % len == i,
            _ => false,
        }
    }
}

/// Orientation of the turn `o -> a -> b`: positive for counterclockwise.
pub fn orient(o: Point, a: Point, b: Point) -> i128 {
    a.sub(o).cross(b.sub(o))
}

/// Andrew's monotone chain with exact orientation tests.
pub fn convex_hull(points: &[Point]) -> Result<HullPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return Ok(HullPolygon { vertices: pts });
    }

    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    // the chain closes on its starting point
    hull.pop();
    Ok(HullPolygon { vertices: hull })
}

/// Strict one-sidedness of the chord between `points[n1]` and `points[n2]`:
/// every other point has nonzero normal projection and all projections share
/// a sign. A degenerate chord is never an edge; with no other points the
/// condition holds vacuously.
pub fn strictly_one_sided(points: &[Point], n1: usize, n2: usize) -> bool {
    let base = points[n1];
    let dir = points[n2].sub(base);
    if dir == Point::ORIGIN {
        return false;
    }
    let mut side = 0i128;
    for (j, &p) in points.iter().enumerate() {
        if j == n1 || j == n2 {
            continue;
        }
        let s = dir.cross(p.sub(base)).signum();
        if s == 0 {
            return false;
        }
        if side == 0 {
            side = s;
        } else if s != side {
            return false;
        }
    }
    true
}

/// The chord-on-hull event: all points of the walk other than `S_{n1}` and
/// `S_{n2}` lie strictly on one side of the chord line.
pub fn chord_on_boundary_strict(path: &LatticePath, spec: EdgeSpec) -> Result<bool> {
    chord_frame(path, spec)?;
    Ok(strictly_one_sided(&path.points()[..=spec.n], spec.n1, spec.n2))
}

/// `S_{n1}` and `S_{n2}` are both vertices of the hull and adjacent on it.
///
/// Unlike the strict predicate this ignores walk points that lie on the chord
/// line, including revisits of the endpoints.
pub fn chord_is_hull_edge_geometric(path: &LatticePath, spec: EdgeSpec) -> Result<bool> {
    let frame = chord_frame(path, spec)?;
    if frame.is_degenerate() {
        return Ok(false);
    }
    let pts = &path.points()[..=spec.n];
    let hull = convex_hull(pts)?;
    Ok(hull.are_adjacent(pts[spec.n1], pts[spec.n2]))
}

/// True when some time other than `n1`, `n2` has zero normal projection.
pub fn has_collinear_visit(path: &LatticePath, spec: EdgeSpec) -> Result<bool> {
    let frame = chord_frame(path, spec)?;
    Ok(path.points()[..=spec.n]
        .iter()
        .enumerate()
        .any(|(j, &p)| j != spec.n1 && j != spec.n2 && frame.project(p) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::Step::{self, *};
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    /// Jarvis march reference: CCW from the lexicographically smallest point,
    /// always taking the farthest point among collinear candidates.
    fn gift_wrap(points: &[Point]) -> Vec<Point> {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.len() < 3 {
            return pts;
        }
        let start = pts[0];
        let mut hull = vec![start];
        let mut cur = start;
        loop {
            let mut cand = if pts[0] == cur { pts[1] } else { pts[0] };
            for &q in &pts {
                if q == cur {
                    continue;
                }
                let o = orient(cur, cand, q);
                let farther = (q.x - cur.x).pow(2) + (q.y - cur.y).pow(2)
                    > (cand.x - cur.x).pow(2) + (cand.y - cur.y).pow(2);
                if o < 0 || (o == 0 && farther) {
                    cand = q;
                }
            }
            if cand == start {
                break;
            }
            hull.push(cand);
            cur = cand;
        }
        hull
    }

    fn spec(n1: usize, n2: usize, n: usize) -> EdgeSpec {
        EdgeSpec::new(n1, n2, n).unwrap()
    }

    #[test]
    fn square() {
        let h = convex_hull(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1), p(0, 0)]).unwrap();
        assert_eq!(h.vertices, vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
        assert!(!h.is_degenerate());
    }

    #[test]
    fn degenerate_hulls() {
        let h = convex_hull(&[p(0, 0), p(1, 0), p(2, 0)]).unwrap();
        assert_eq!(h.vertices, vec![p(0, 0), p(2, 0)]);
        assert!(h.is_degenerate());
        let h = convex_hull(&[p(3, 3), p(3, 3)]).unwrap();
        assert_eq!(h.vertices, vec![p(3, 3)]);
        assert_eq!(convex_hull(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn predicate_examples() {
        let en = LatticePath::from_steps(&[E, N]);
        let ew = LatticePath::from_steps(&[E, W]);
        let ee = LatticePath::from_steps(&[E, E]);
        let s = spec(0, 2, 2);
        assert!(chord_on_boundary_strict(&en, s).unwrap());
        assert!(!chord_on_boundary_strict(&ew, s).unwrap());
        assert!(!chord_on_boundary_strict(&ee, s).unwrap());
        assert!(chord_is_hull_edge_geometric(&en, s).unwrap());
        assert!(chord_is_hull_edge_geometric(&ee, s).unwrap());
        assert!(!chord_is_hull_edge_geometric(&ew, s).unwrap());
        let single = LatticePath::from_steps(&[N]);
        assert!(chord_on_boundary_strict(&single, spec(0, 1, 1)).unwrap());
        assert!(chord_is_hull_edge_geometric(&single, spec(0, 1, 1)).unwrap());
    }

    fn arb_steps(max: usize) -> impl Strategy<Value = Vec<Step>> {
        prop::collection::vec((0usize..4).prop_map(Step::from_index), 1..max)
    }

    proptest! {
        #[test]
        fn monotone_chain_matches_gift_wrapping(steps in arb_steps(60)) {
            let path = LatticePath::from_steps(&steps);
            let hull = convex_hull(path.points()).unwrap();
            prop_assert_eq!(hull.vertices, gift_wrap(path.points()));
        }

        #[test]
        fn permutation_invariant(steps in arb_steps(40), seed in any::<u64>()) {
            let path = LatticePath::from_steps(&steps);
            let mut pts = path.points().to_vec();
            // deterministic shuffle
            let mut s = seed | 1;
            for i in (1..pts.len()).rev() {
                s ^= s << 13; s ^= s >> 7; s ^= s << 17;
                pts.swap(i, (s % (i as u64 + 1)) as usize);
            }
            prop_assert_eq!(convex_hull(&pts).unwrap(), convex_hull(path.points()).unwrap());
        }

        #[test]
        fn hull_contains_all_points(steps in arb_steps(50)) {
            let path = LatticePath::from_steps(&steps);
            let hull = convex_hull(path.points()).unwrap();
            let v = &hull.vertices;
            if v.len() >= 3 {
                for i in 0..v.len() {
                    let (a, b, c) = (v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]);
                    prop_assert!(orient(a, b, c) > 0);
                    for &q in path.points() {
                        prop_assert!(orient(a, b, q) >= 0);
                    }
                }
            }
            for q in v {
                prop_assert!(path.points().contains(q));
            }
        }
    }
}
