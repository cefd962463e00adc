//! Exact elementary geometry: circumcenters, smallest enclosing circles and the
//! largest number of integer points a closed disk of given radius can hold.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::Rational;
use crate::lattice::{points_in_disk, IntPoint, QPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Circle {
    pub center: QPoint,
    pub radius_sq: Rational,
}

impl Circle {
    pub fn new(center: QPoint, radius_sq: Rational) -> Self {
        debug_assert!(!radius_sq.is_negative());
        Circle { center, radius_sq }
    }

    /// Closed containment.
    pub fn contains(&self, p: &QPoint) -> bool {
        self.center.dist_sq(p) <= self.radius_sq
    }

    fn diameter(a: &QPoint, b: &QPoint) -> Circle {
        let two = Rational::from(2);
        let center = QPoint::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two);
        let radius_sq = a.dist_sq(b) / Rational::from(4);
        Circle { center, radius_sq }
    }

    fn through(a: &QPoint, b: &QPoint, c: &QPoint) -> Circle {
        match circumcenter(a, b, c) {
            Some(center) => {
                let radius_sq = center.dist_sq(a);
                Circle { center, radius_sq }
            }
            None => {
                // collinear: the farthest pair spans the circle
                let pairs = [(a, b), (a, c), (b, c)];
                let (p, q) = pairs
                    .into_iter()
                    .max_by(|x, y| x.0.dist_sq(x.1).cmp(&y.0.dist_sq(y.1)))
                    .expect("three pairs");
                Circle::diameter(p, q)
            }
        }
    }
}

/// Exact circumcenter; `None` for collinear input.
pub fn circumcenter(a: &QPoint, b: &QPoint, c: &QPoint) -> Option<QPoint> {
    let b = b - a;
    let c = c - a;
    let d = b.cross(&c) * Rational::from(2);
    if d.is_zero() {
        return None;
    }
    let (nb, nc) = (b.norm_sq(), c.norm_sq());
    let ux = (&c.y * &nb - &b.y * &nc) / &d;
    let uy = (&b.x * &nc - &c.x * &nb) / &d;
    Some(QPoint::new(&a.x + &ux, &a.y + &uy))
}

/// Smallest enclosing circle (closed containment), via the iterative
/// move-to-front scheme over exact rationals.
///
/// Panics on an empty input.
pub fn sec(points: &[QPoint]) -> Circle {
    assert!(!points.is_empty(), "smallest enclosing circle of an empty set");
    let mut pts: Vec<QPoint> = Vec::with_capacity(points.len());
    for p in points {
        if !pts.contains(p) {
            pts.push(p.clone());
        }
    }

    let mut circle = Circle::new(pts[0].clone(), Rational::zero());
    for i in 1..pts.len() {
        if !circle.contains(&pts[i]) {
            circle = sec_with_one(&pts[..i], &pts[i]);
        }
    }
    circle
}

fn sec_with_one(pts: &[QPoint], p: &QPoint) -> Circle {
    let mut circle = Circle::new(p.clone(), Rational::zero());
    for j in 0..pts.len() {
        if !circle.contains(&pts[j]) {
            circle = sec_with_two(&pts[..j], p, &pts[j]);
        }
    }
    circle
}

fn sec_with_two(pts: &[QPoint], p: &QPoint, q: &QPoint) -> Circle {
    let mut circle = Circle::diameter(p, q);
    for r in pts {
        if !circle.contains(r) {
            circle = Circle::through(p, q, r);
        }
    }
    circle
}

/// SEC of integer points.
pub fn sec_int(points: &[IntPoint]) -> Circle {
    let q: Vec<QPoint> = points.iter().map(|p| p.to_q()).collect();
    sec(&q)
}

/// A point `base + dir·√radicand` of the quadratic extension Q(√radicand)².
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticPoint {
    pub base: QPoint,
    pub dir: QPoint,
    pub radicand: Rational,
}

impl QuadraticPoint {
    pub fn to_f64(&self) -> (f64, f64) {
        let s = self.radicand.to_f64().sqrt();
        (
            self.base.x.to_f64() + self.dir.x.to_f64() * s,
            self.base.y.to_f64() + self.dir.y.to_f64() * s,
        )
    }

    /// Exact test `|z − self|² <= radius_sq`.
    ///
    /// Expanding gives `u + v·√D <= 0` with rational `u, v`.
    pub fn within(&self, z: &QPoint, radius_sq: &Rational) -> bool {
        let w = z - &self.base;
        let u = w.norm_sq() + self.dir.norm_sq() * &self.radicand - radius_sq;
        let v = w.dot(&self.dir) * Rational::from(-2);
        sum_with_sqrt_nonpositive(&u, &v, &self.radicand)
    }
}

impl fmt::Display for QuadraticPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·sqrt({})", self.base, self.dir, self.radicand)
    }
}

/// Decides `u + v·√d <= 0` exactly for `d >= 0`.
pub fn sum_with_sqrt_nonpositive(u: &Rational, v: &Rational, d: &Rational) -> bool {
    if v.is_zero() || d.is_zero() {
        return !u.is_positive();
    }
    let u_pos = u.is_positive();
    let v_pos = v.is_positive();
    match (u_pos, v_pos) {
        (false, false) => true,
        (true, true) => false,
        // u <= 0 < v: need v√d <= -u
        (false, true) => v.square() * d <= u.square(),
        // v < 0 < u: need u <= -v√d
        (true, false) => u.square() <= v.square() * d,
    }
}

/// Where a best disk sits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CenterWitness {
    Rational(QPoint),
    Quadratic(QuadraticPoint),
}

impl CenterWitness {
    pub fn to_f64(&self) -> (f64, f64) {
        match self {
            CenterWitness::Rational(p) => p.to_f64(),
            CenterWitness::Quadratic(q) => q.to_f64(),
        }
    }

    /// Integer points in the closed disk of `radius_sq` around this center, sorted.
    pub fn covered_points(&self, radius_sq: &Rational) -> Vec<IntPoint> {
        match self {
            CenterWitness::Rational(c) => points_in_disk(c, radius_sq),
            CenterWitness::Quadratic(q) => points_near_quadratic(q, radius_sq),
        }
    }
}

impl fmt::Display for CenterWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterWitness::Rational(p) => write!(f, "{p}"),
            CenterWitness::Quadratic(q) => write!(f, "{q}"),
        }
    }
}

/// Filtered exact enumeration: a floating-point distance decides clear cases,
/// the exact predicate decides everything within `slack` of the boundary.
fn points_near_quadratic(c: &QuadraticPoint, radius_sq: &Rational) -> Vec<IntPoint> {
    let (cx, cy) = c.to_f64();
    let r2 = radius_sq.to_f64();
    let r = r2.sqrt();
    let slack = 1e-7 * (1.0 + r2);
    let mut out = Vec::new();
    let x_lo = (cx - r).floor() as i64 - 1;
    let x_hi = (cx + r).ceil() as i64 + 1;
    let y_lo = (cy - r).floor() as i64 - 1;
    let y_hi = (cy + r).ceil() as i64 + 1;
    for x in x_lo..=x_hi {
        for y in y_lo..=y_hi {
            let d2 = (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2);
            let inside = if d2 < r2 - slack {
                true
            } else if d2 > r2 + slack {
                false
            } else {
                c.within(&IntPoint::new(x, y).to_q(), radius_sq)
            };
            if inside {
                out.push(IntPoint::new(x, y));
            }
        }
    }
    out
}

/// The two disk centers with both `0` and `q` on the boundary of a circle of
/// squared radius `radius_sq`; `None` if `|q|² > 4·radius_sq`.
fn two_point_centers(q: IntPoint, radius_sq: &Rational) -> Option<[QuadraticPoint; 2]> {
    let len_sq = Rational::from(q.norm_sq());
    let chord = radius_sq - &len_sq / Rational::from(4);
    if chord.is_negative() {
        return None;
    }
    let base = QPoint::frac(q.x, 2, q.y, 2);
    let normal = IntPoint::new(-q.y, q.x);
    let radicand = chord / len_sq;
    let mk = |n: IntPoint| QuadraticPoint {
        base: base.clone(),
        dir: n.to_q(),
        radicand: radicand.clone(),
    };
    Some([mk(normal), mk(-normal)])
}

/// Result of [`max_points_in_disk`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxPointsInDisk {
    pub k: usize,
    pub witness: CenterWitness,
}

/// Candidate centers, up to translation by Z²: a lattice point, the three
/// half-integer points, and for every `q` with `|q| <= 2r` both centers whose
/// boundary passes through `0` and `q`. With `octant_only`, `q` is restricted to
/// `x > 0, 0 <= y <= x`, which represents every direction up to the symmetries
/// of Z² fixing the origin.
fn candidate_centers(radius_sq: &Rational, octant_only: bool) -> Vec<CenterWitness> {
    let mut out = vec![
        CenterWitness::Rational(QPoint::origin()),
        CenterWitness::Rational(QPoint::frac(1, 2, 0, 1)),
        CenterWitness::Rational(QPoint::frac(0, 1, 1, 2)),
        CenterWitness::Rational(QPoint::frac(1, 2, 1, 2)),
    ];
    let reach_sq = radius_sq * &Rational::from(4);
    for q in points_in_disk(&QPoint::origin(), &reach_sq) {
        if q == IntPoint::ORIGIN {
            continue;
        }
        if octant_only && !(q.x > 0 && 0 <= q.y && q.y <= q.x) {
            continue;
        }
        if let Some(pair) = two_point_centers(q, radius_sq) {
            out.extend(pair.into_iter().map(CenterWitness::Quadratic));
        }
    }
    out
}

/// Maximum number of points of Z² inside a closed disk of squared radius
/// `radius_sq`, over all placements of the center.
///
/// If an optimal disk holds at least two points, the region of admissible
/// centers is an intersection of equal disks around those points and has a
/// vertex on two of the boundary circles, which is one of the enumerated
/// candidates. Ties keep the earliest candidate.
pub fn max_points_in_disk(radius_sq: &Rational) -> MaxPointsInDisk {
    let candidates = candidate_centers(radius_sq, true);
    let counts: Vec<usize> = candidates
        .par_iter()
        .map(|c| c.covered_points(radius_sq).len())
        .collect();
    let (best, k) = counts
        .iter()
        .enumerate()
        .fold((0usize, 0usize), |acc, (i, &n)| if n > acc.1 { (i, n) } else { acc });
    MaxPointsInDisk {
        k,
        witness: candidates[best].clone(),
    }
}

/// Every inclusion-maximal set of integer points that fits in a closed disk of
/// squared radius `radius_sq`, translated so its lexicographically smallest
/// point is the origin. Sorted by decreasing size, then lexicographically.
pub fn maximal_point_sets(radius_sq: &Rational) -> Vec<Vec<IntPoint>> {
    let candidates = candidate_centers(radius_sq, false);
    let mut sets: Vec<Vec<IntPoint>> = candidates
        .par_iter()
        .filter_map(|c| {
            let pts = c.covered_points(radius_sq);
            let anchor = *pts.first()?;
            Some(pts.into_iter().map(|p| p - anchor).collect::<Vec<_>>())
        })
        .collect();
    sets.sort();
    sets.dedup();
    let mut maximal: Vec<Vec<IntPoint>> = Vec::new();
    for s in &sets {
        let dominated = sets.iter().any(|t| t.len() > s.len() && contains_translate(t, s));
        if !dominated {
            maximal.push(s.clone());
        }
    }
    maximal.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    maximal
}

fn contains_translate(big: &[IntPoint], small: &[IntPoint]) -> bool {
    let first = small[0];
    big.iter().any(|&b| {
        let t = b - first;
        small.iter().all(|&s| big.binary_search(&(s + t)).is_ok())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(x: i64, y: i64) -> QPoint {
        IntPoint::new(x, y).to_q()
    }

    #[test]
    fn circumcenter_examples() {
        assert_eq!(
            circumcenter(&qp(0, 0), &qp(1, 0), &qp(0, 1)),
            Some(QPoint::frac(1, 2, 1, 2))
        );
        assert_eq!(circumcenter(&qp(0, 0), &qp(1, 0), &qp(2, 0)), None);
        let (a, b, c) = (qp(0, 0), qp(3, 2), qp(-2, 3));
        let o = circumcenter(&a, &b, &c).unwrap();
        assert_eq!(o.dist_sq(&a), o.dist_sq(&b));
        assert_eq!(o.dist_sq(&a), o.dist_sq(&c));
    }

    #[test]
    fn sec_examples() {
        let c = sec(&[qp(0, 0)]);
        assert_eq!(c, Circle::new(qp(0, 0), Rational::zero()));

        let c = sec(&[qp(0, 0), qp(1, 0), qp(0, 1), qp(1, 1)]);
        assert_eq!(c, Circle::new(QPoint::frac(1, 2, 1, 2), Rational::frac(1, 2)));

        let block: Vec<QPoint> = (-1..=1).flat_map(|x| (-1..=1).map(move |y| qp(x, y))).collect();
        assert_eq!(sec(&block), Circle::new(qp(0, 0), Rational::from(2)));
    }

    #[test]
    fn sec_handles_duplicates_and_collinear() {
        let c = sec(&[qp(0, 0), qp(0, 0), qp(2, 0), qp(1, 0), qp(4, 0)]);
        assert_eq!(c, Circle::new(qp(2, 0), Rational::from(4)));
    }

    #[test]
    fn sqrt_sign_predicate() {
        let r = |n, d| Rational::frac(n, d);
        // 1 - √2 <= 0
        assert!(sum_with_sqrt_nonpositive(&r(1, 1), &r(-1, 1), &r(2, 1)));
        // -1 + √2 > 0
        assert!(!sum_with_sqrt_nonpositive(&r(-1, 1), &r(1, 1), &r(2, 1)));
        // -2 + √4 == 0
        assert!(sum_with_sqrt_nonpositive(&r(-2, 1), &r(1, 1), &r(4, 1)));
        // 2 - √4 == 0
        assert!(sum_with_sqrt_nonpositive(&r(2, 1), &r(-1, 1), &r(4, 1)));
        assert!(!sum_with_sqrt_nonpositive(&r(1, 100), &r(0, 1), &r(4, 1)));
    }

    #[test]
    fn max_points_small_radius() {
        assert_eq!(max_points_in_disk(&Rational::frac(1, 8)).k, 1);
    }

    #[test]
    fn max_points_unit_radius() {
        let m = max_points_in_disk(&Rational::one());
        assert_eq!(m.k, 5);
        assert_eq!(m.witness, CenterWitness::Rational(QPoint::origin()));
    }

    #[test]
    fn max_points_half_diagonal() {
        assert_eq!(max_points_in_disk(&Rational::frac(1, 2)).k, 4);
    }

    #[test]
    fn maximal_sets_at_five_quarters() {
        let sets = maximal_point_sets(&Rational::frac(5, 4));
        assert_eq!(sets[0].len(), 6);
        // the 2×3 and 3×2 rectangles are the only 6-point sets
        assert_eq!(sets.iter().filter(|s| s.len() == 6).count(), 2);
        for s in &sets {
            assert!(sec_int(s).radius_sq <= Rational::frac(5, 4));
        }
    }
}
