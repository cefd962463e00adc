//! Integer sublattices of Z² and the point sets that live on them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{ceil_sqrt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank-deficient basis ({u}, {v}): determinant is zero")]
    RankDeficient { u: IntPoint, v: IntPoint },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct IntPoint {
    pub x: i64,
    pub y: i64,
}

impl IntPoint {
    pub const ORIGIN: IntPoint = IntPoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        IntPoint { x, y }
    }

    pub fn norm_sq(self) -> i64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, o: IntPoint) -> i64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: IntPoint) -> i64 {
        self.x * o.y - self.y * o.x
    }

    pub fn scale(self, k: i64) -> IntPoint {
        IntPoint::new(self.x * k, self.y * k)
    }

    pub fn to_q(self) -> QPoint {
        QPoint::from(self)
    }
}

impl Add for IntPoint {
    type Output = IntPoint;
    fn add(self, o: IntPoint) -> IntPoint {
        IntPoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for IntPoint {
    type Output = IntPoint;
    fn sub(self, o: IntPoint) -> IntPoint {
        IntPoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for IntPoint {
    type Output = IntPoint;
    fn neg(self) -> IntPoint {
        IntPoint::new(-self.x, -self.y)
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point with rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct QPoint {
    pub x: Rational,
    pub y: Rational,
}

impl QPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        QPoint { x, y }
    }

    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        QPoint::new(Rational::frac(xn, xd), Rational::frac(yn, yd))
    }

    pub fn origin() -> Self {
        QPoint::default()
    }

    pub fn norm_sq(&self) -> Rational {
        self.x.square() + self.y.square()
    }

    pub fn dist_sq(&self, o: &QPoint) -> Rational {
        (&self.x - &o.x).square() + (&self.y - &o.y).square()
    }

    pub fn dot(&self, o: &QPoint) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &QPoint) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn scale(&self, k: &Rational) -> QPoint {
        QPoint::new(&self.x * k, &self.y * k)
    }

    pub fn translate(&self, t: IntPoint) -> QPoint {
        QPoint::new(&self.x + Rational::from(t.x), &self.y + Rational::from(t.y))
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_int(&self) -> Option<IntPoint> {
        Some(IntPoint::new(self.x.to_i64()?, self.y.to_i64()?))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl From<IntPoint> for QPoint {
    fn from(p: IntPoint) -> Self {
        QPoint::new(p.x.into(), p.y.into())
    }
}

impl Add<&QPoint> for &QPoint {
    type Output = QPoint;
    fn add(self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub<&QPoint> for &QPoint {
    type Output = QPoint;
    fn sub(self, o: &QPoint) -> QPoint {
        QPoint::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl fmt::Display for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Debug for QPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// One of the 8 linear symmetries of Z², as an integer matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareSymmetry([[i64; 2]; 2]);

impl SquareSymmetry {
    pub const ALL: [SquareSymmetry; 8] = [
        SquareSymmetry([[1, 0], [0, 1]]),
        SquareSymmetry([[0, -1], [1, 0]]),
        SquareSymmetry([[-1, 0], [0, -1]]),
        SquareSymmetry([[0, 1], [-1, 0]]),
        SquareSymmetry([[1, 0], [0, -1]]),
        SquareSymmetry([[-1, 0], [0, 1]]),
        SquareSymmetry([[0, 1], [1, 0]]),
        SquareSymmetry([[0, -1], [-1, 0]]),
    ];

    pub fn apply(&self, p: IntPoint) -> IntPoint {
        let m = self.0;
        IntPoint::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
    }

    pub fn apply_q(&self, p: &QPoint) -> QPoint {
        let m = self.0;
        let f = |a: i64, b: i64| Rational::from(a) * &p.x + Rational::from(b) * &p.y;
        QPoint::new(f(m[0][0], m[0][1]), f(m[1][0], m[1][1]))
    }
}

/// A full-rank sublattice of Z² given by a basis `⟨u, v⟩`.
///
/// The basis is kept as supplied; consumers that need a canonical basis use
/// [`IntLattice::canonical_reduced`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IntLattice {
    u: IntPoint,
    v: IntPoint,
}

impl IntLattice {
    pub fn new(u: IntPoint, v: IntPoint) -> Result<Self, LatticeError> {
        if u.cross(v) == 0 {
            return Err(LatticeError::RankDeficient { u, v });
        }
        Ok(IntLattice { u, v })
    }

    pub fn from_coords(ux: i64, uy: i64, vx: i64, vy: i64) -> Result<Self, LatticeError> {
        IntLattice::new(IntPoint::new(ux, uy), IntPoint::new(vx, vy))
    }

    pub fn unit() -> Self {
        IntLattice {
            u: IntPoint::new(1, 0),
            v: IntPoint::new(0, 1),
        }
    }

    pub fn u(&self) -> IntPoint {
        self.u
    }

    pub fn v(&self) -> IntPoint {
        self.v
    }

    pub fn det(&self) -> i64 {
        self.u.cross(self.v)
    }

    /// Number of cosets of Z² / Λ.
    pub fn index(&self) -> u64 {
        self.det().unsigned_abs()
    }

    /// Hermite normal form `⟨(a, 0), (b, c)⟩` with `a, c > 0` and `0 <= b < a`.
    /// Unique per lattice.
    pub fn hnf(&self) -> (i64, i64, i64) {
        let (u, v) = (self.u, self.v);
        let eg = u.y.extended_gcd(&v.y);
        let g = eg.gcd;
        // w1 has y == g, w0 has y == 0
        let w1 = u.scale(eg.x) + v.scale(eg.y);
        let w0 = u.scale(v.y / g) - v.scale(u.y / g);
        let a = w0.x.abs();
        let c = g;
        let b = w1.x.rem_euclid(a);
        (a, b, c)
    }

    pub fn hnf_lattice(&self) -> IntLattice {
        let (a, b, c) = self.hnf();
        IntLattice {
            u: IntPoint::new(a, 0),
            v: IntPoint::new(b, c),
        }
    }

    /// Gauss-reduced basis derived from the HNF; identical for every basis of the same lattice.
    pub fn canonical_reduced(&self) -> IntLattice {
        let r = gauss_reduce(&self.hnf_lattice());
        let orient = |p: IntPoint| if p.x < 0 || (p.x == 0 && p.y < 0) { -p } else { p };
        let (u, v) = (orient(r.u), orient(r.v));
        let v = if u.cross(v) < 0 { -v } else { v };
        IntLattice { u, v }
    }

    pub fn same_lattice(&self, other: &IntLattice) -> bool {
        self.hnf() == other.hnf()
    }

    pub fn contains(&self, p: IntPoint) -> bool {
        let det = self.det() as i128;
        let a = (p.x as i128) * (self.v.y as i128) - (p.y as i128) * (self.v.x as i128);
        let b = (self.u.x as i128) * (p.y as i128) - (self.u.y as i128) * (p.x as i128);
        a % det == 0 && b % det == 0
    }

    pub fn point(&self, i: i64, j: i64) -> IntPoint {
        self.u.scale(i) + self.v.scale(j)
    }

    /// Canonical coset representative: the unique point of `p + Λ` inside the
    /// half-open fundamental parallelogram `{s·u + t·v : 0 <= s, t < 1}` of the
    /// canonical reduced basis.
    pub fn residue(&self, p: IntPoint) -> IntPoint {
        self.canonical_reduced().residue_in_basis(p)
    }

    fn residue_in_basis(&self, p: IntPoint) -> IntPoint {
        let det = self.det();
        let (s, t) = (p.cross(self.v), self.u.cross(p));
        let (s, t) = (floor_div(s, det), floor_div(t, det));
        p - self.u.scale(s) - self.v.scale(t)
    }

    /// Squared length of a shortest nonzero vector.
    pub fn shortest_vector_sq(&self) -> Rational {
        Rational::from(gauss_reduce(self).u.norm_sq())
    }

    /// `min |w + λ|²` over `λ ∈ Λ`, skipping `λ = -w` when `exclude_zero` is set
    /// and `w` itself is a lattice vector.
    ///
    /// Completeness: with a Gauss-reduced basis, `|a·u + b·v|² >= (a² + b²)/2 · |u|²`.
    /// Starting from the fundamental-domain reduction `w0` of `w` with candidate
    /// value `best`, any improving `λ` satisfies `|λ| <= |w0| + √best`, hence
    /// `a² + b² <= 2(|w0| + √best)²/|u|² <= 4(|w0|² + best)/|u|²`. The search box
    /// below has half-width at least the square root of that bound.
    pub fn min_translate_sq(&self, w: &QPoint, exclude_zero: bool) -> Rational {
        let r = self.canonical_reduced();
        let (u, v) = (r.u.to_q(), r.v.to_q());
        let det = Rational::from(r.det());
        let s = (w.cross(&v) / &det).floor();
        let t = (u.cross(w) / &det).floor();
        let w0 = QPoint::new(
            &w.x - Rational::from_int(&s * r.u.x + &t * r.v.x),
            &w.y - Rational::from_int(&s * r.u.y + &t * r.v.y),
        );
        let w0_sq = w0.norm_sq();
        let u_sq = Rational::from(r.u.norm_sq());
        let mut best = if exclude_zero && w0_sq.is_zero() {
            u_sq.clone()
        } else {
            w0_sq.clone()
        };
        let bound_sq = (Rational::from(4) * (&w0_sq + &best)) / &u_sq;
        let k = ceil_sqrt(&bound_sq).to_i64().expect("search box fits in i64");
        debug_assert!(Rational::from(k * k) >= bound_sq);
        for a in -k..=k {
            for b in -k..=k {
                let lam = r.point(a, b).to_q();
                let cand = (&w0 + &lam).norm_sq();
                if exclude_zero && cand.is_zero() {
                    continue;
                }
                if cand < best {
                    best = cand;
                }
            }
        }
        best
    }

    pub fn apply_symmetry(&self, g: &SquareSymmetry) -> IntLattice {
        IntLattice {
            u: g.apply(self.u),
            v: g.apply(self.v),
        }
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {}⟩", self.u, self.v)
    }
}

impl fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

fn one() -> BigInt {
    BigInt::from(1)
}

/// Gauss–Lagrange reduction: returns a basis with `|u| <= |v|` and
/// `|u·v| <= |u|²/2`, so `u` is a shortest nonzero vector.
pub fn gauss_reduce(lattice: &IntLattice) -> IntLattice {
    let (mut u, mut v) = (lattice.u, lattice.v);
    loop {
        if u.norm_sq() > v.norm_sq() {
            std::mem::swap(&mut u, &mut v);
        }
        let n = u.norm_sq();
        // q = floor(u·v / |u|² + 1/2); ties go toward +∞, which terminates
        let q = floor_div(2 * u.dot(v) + n, 2 * n);
        if q == 0 {
            break;
        }
        v = v - u.scale(q);
    }
    IntLattice { u, v }
}

/// Multiplicity of each canonical coset residue among `points`.
pub fn coset_decompose(points: &[IntPoint], lattice: &IntLattice) -> BTreeMap<IntPoint, usize> {
    let r = lattice.canonical_reduced();
    let mut out = BTreeMap::new();
    for &p in points {
        *out.entry(r.residue_in_basis(p)).or_insert(0) += 1;
    }
    out
}

/// All integer points in the closed disk, in lexicographic order.
pub fn points_in_disk(center: &QPoint, radius_sq: &Rational) -> Vec<IntPoint> {
    let mut out = Vec::new();
    if radius_sq.is_negative() {
        return out;
    }
    let k = ceil_sqrt(radius_sq);
    let cx = center.x.floor();
    let x_lo = (&cx - &k - one()).to_i64().expect("coordinate range");
    let x_hi = (&cx + &k + one()).to_i64().expect("coordinate range");
    let cy = center.y.floor();
    for x in x_lo..=x_hi {
        let rest = radius_sq - (Rational::from(x) - &center.x).square();
        if rest.is_negative() {
            continue;
        }
        let ky = ceil_sqrt(&rest);
        let y_lo = (&cy - &ky - one()).to_i64().expect("coordinate range");
        let y_hi = (&cy + &ky + one()).to_i64().expect("coordinate range");
        for y in y_lo..=y_hi {
            if (Rational::from(y) - &center.y).square() <= rest {
                out.push(IntPoint::new(x, y));
            }
        }
    }
    out
}

/// Every sublattice of index `det`, one HNF basis each, ordered by `(a, b)`.
pub fn sublattices_of_index(det: u64) -> Vec<IntLattice> {
    let det = det as i64;
    let mut out = Vec::new();
    for a in 1..=det {
        if det % a != 0 {
            continue;
        }
        let c = det / a;
        for b in 0..a {
            out.push(IntLattice {
                u: IntPoint::new(a, 0),
                v: IntPoint::new(b, c),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> IntPoint {
        IntPoint::new(x, y)
    }

    fn lat(ux: i64, uy: i64, vx: i64, vy: i64) -> IntLattice {
        IntLattice::from_coords(ux, uy, vx, vy).unwrap()
    }

    /// Exhaustive minimum over coefficients in [-10, 10]².
    fn brute_shortest(l: &IntLattice) -> i64 {
        let mut best = i64::MAX;
        for a in -10..=10 {
            for b in -10..=10 {
                if (a, b) != (0, 0) {
                    best = best.min(l.point(a, b).norm_sq());
                }
            }
        }
        best
    }

    #[test]
    fn rank_deficient_rejected() {
        assert!(matches!(
            IntLattice::from_coords(2, 0, 4, 0),
            Err(LatticeError::RankDeficient { .. })
        ));
    }

    #[test]
    fn reduce_examples() {
        let r = gauss_reduce(&lat(1, 0, 0, 1));
        assert_eq!((r.u(), r.v()), (p(1, 0), p(0, 1)));

        let r = gauss_reduce(&lat(3, 2, 0, 4));
        assert_eq!(brute_shortest(&lat(3, 2, 0, 4)), 13);
        assert_eq!(r.u().norm_sq(), 13);
        assert_eq!(r.v().norm_sq(), 13);

        let r = gauss_reduce(&lat(5, 0, 4, 1));
        assert!(r.u().norm_sq() <= 5);
        assert_eq!(r.u().norm_sq(), brute_shortest(&lat(5, 0, 4, 1)));
        assert_eq!(r.u().norm_sq(), 2);
    }

    #[test]
    fn shortest_vector_examples() {
        assert_eq!(lat(1, 0, 0, 1).shortest_vector_sq(), Rational::from(1));
        assert_eq!(lat(2, 0, 1, 1).shortest_vector_sq(), Rational::from(2));
        assert_eq!(lat(3, 2, 0, 4).shortest_vector_sq(), Rational::from(13));
        assert_eq!(brute_shortest(&lat(2, 0, 1, 1)), 2);
    }

    #[test]
    fn reduce_handles_ties() {
        // u·v = |u|²/2 exactly
        let r = gauss_reduce(&lat(2, 0, 1, 5));
        assert_eq!(r.u(), p(2, 0));
        assert!(2 * r.u().dot(r.v()).abs() <= r.u().norm_sq());
    }

    #[test]
    fn hnf_is_basis_independent() {
        let a = lat(3, 2, 0, 4);
        let b = lat(3, 2, 3, 6); // v + u
        let c = lat(-3, -2, 3, -2);
        assert_eq!(a.hnf(), b.hnf());
        assert_eq!(a.hnf(), c.hnf());
        assert_eq!(a.canonical_reduced(), c.canonical_reduced());
        let (x, _, z) = a.hnf();
        assert_eq!((x * z) as u64, a.index());
    }

    #[test]
    fn coset_examples() {
        let m = coset_decompose(&[p(0, 0), p(1, 1)], &lat(2, 0, 0, 2));
        assert_eq!(m.len(), 2);
        assert!(m.values().all(|&c| c == 1));

        let m = coset_decompose(&[p(0, 0), p(3, 2)], &lat(3, 2, 0, 4));
        assert_eq!(m.len(), 1);
        assert_eq!(m.values().next(), Some(&2));

        let twelve = [
            p(0, -1),
            p(0, 0),
            p(0, 1),
            p(0, 2),
            p(1, -1),
            p(1, 0),
            p(1, 1),
            p(1, 2),
            p(-1, 0),
            p(-1, 1),
            p(2, 0),
            p(2, 1),
        ];
        let m = coset_decompose(&twelve, &lat(3, 2, 0, 4));
        assert_eq!(m.len(), 12);
    }

    #[test]
    fn residue_is_in_fundamental_domain_and_idempotent() {
        let l = lat(3, 2, 0, 4);
        let r = l.canonical_reduced();
        for x in -6..6 {
            for y in -6..6 {
                let q = l.residue(p(x, y));
                assert!(l.contains(q - p(x, y)));
                assert_eq!(l.residue(q), q);
                let det = r.det();
                let s = q.cross(r.v());
                let t = r.u().cross(q);
                assert!(floor_div(s, det) == 0 && floor_div(t, det) == 0);
            }
        }
    }

    #[test]
    fn disk_examples() {
        let pts = points_in_disk(&QPoint::origin(), &Rational::one());
        assert_eq!(pts, vec![p(-1, 0), p(0, -1), p(0, 0), p(0, 1), p(1, 0)]);

        let half = QPoint::frac(1, 2, 1, 2);
        let pts = points_in_disk(&half, &Rational::frac(1, 2));
        assert_eq!(pts, vec![p(0, 0), p(0, 1), p(1, 0), p(1, 1)]);

        let pts = points_in_disk(&half, &Rational::frac(5, 2));
        // direct enumeration over the bounding box
        let mut brute = 0;
        for x in -5..=5 {
            for y in -5..=5 {
                if (2 * x - 1) * (2 * x - 1) + (2 * y - 1) * (2 * y - 1) <= 10 {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 12);
        assert_eq!(pts.len(), 12);
    }

    #[test]
    fn disk_off_center_small_radius() {
        let c = QPoint::frac(9, 10, 0, 1);
        assert_eq!(points_in_disk(&c, &Rational::frac(1, 50)), vec![p(1, 0)]);
        assert!(points_in_disk(&QPoint::frac(1, 2, 1, 2), &Rational::frac(1, 4)).is_empty());
    }

    #[test]
    fn min_translate_matches_brute() {
        let l = lat(5, 0, 4, 1);
        let w = QPoint::frac(7, 3, -11, 5);
        let mut best: Option<Rational> = None;
        for a in -12..=12 {
            for b in -12..=12 {
                let c = (&w + &l.point(a, b).to_q()).norm_sq();
                if best.as_ref().is_none_or(|x| &c < x) {
                    best = Some(c);
                }
            }
        }
        assert_eq!(l.min_translate_sq(&w, false), best.unwrap());
        assert_eq!(l.min_translate_sq(&QPoint::origin(), true), Rational::from(2));
        assert_eq!(l.min_translate_sq(&QPoint::origin(), false), Rational::zero());
    }

    #[test]
    fn sublattice_counts_are_sigma() {
        let sigma = |n: u64| (1..=n).filter(|d| n.is_multiple_of(*d)).sum::<u64>() as usize;
        for n in 1..=12 {
            let ls = sublattices_of_index(n);
            assert_eq!(ls.len(), sigma(n));
            for l in &ls {
                assert_eq!(l.index(), n);
                assert_eq!(l.hnf_lattice(), *l);
            }
        }
    }
}
