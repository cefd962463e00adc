//! Exact verification of covering certificates.
//!
//! A certificate is verified when
//!
//! * every coset of Z²/Λ contains a cluster point (so the family covers Z²),
//! * `4·β² <= α²` with `α² > 0`, where `β²` is the largest squared distance
//!   from a cluster center to one of its points and `α²` the smallest squared
//!   distance between two distinct centers of the periodic family.
//!
//! The covered interval is then `[√(4/α²), √(1/β²)]`, unbounded above when
//! every cluster is a single point sitting on its center.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::certificate::{Cluster, CoveringCertificate};
use crate::exactnum::{Rational, SqrtInterval, SqrtRational};
use crate::lattice::{coset_decompose, IntLattice, IntPoint, QPoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Coverage {
    Covered,
    /// `witness` is the canonical residue of a coset no cluster point reaches.
    Uncovered {
        witness: IntPoint,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Multiplicity {
    Partition,
    /// `overlap` counts cluster points whose coset is already hit by another point.
    Cover {
        overlap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageVerdict {
    pub index: u64,
    pub cosets_hit: usize,
    pub coverage: Coverage,
    pub multiplicity: Multiplicity,
}

/// Every canonical coset residue of Z²/Λ, sorted.
pub fn all_residues(lattice: &IntLattice) -> Vec<IntPoint> {
    let (a, _, c) = lattice.hnf();
    let reps: Vec<IntPoint> = (0..a).flat_map(|x| (0..c).map(move |y| IntPoint::new(x, y))).collect();
    coset_decompose(&reps, lattice).into_keys().collect()
}

pub fn check_coverage(cert: &CoveringCertificate) -> CoverageVerdict {
    let lattice = cert.lattice();
    let points: Vec<IntPoint> = cert
        .clusters()
        .iter()
        .flat_map(|c| c.points().iter().copied())
        .collect();
    let hits = coset_decompose(&points, lattice);
    let overlap = points.len() - hits.len();
    let index = lattice.index();
    let coverage = if hits.len() as u64 == index {
        Coverage::Covered
    } else {
        let witness = all_residues(lattice)
            .into_iter()
            .find(|r| !hits.contains_key(r))
            .expect("an unhit coset exists");
        Coverage::Uncovered { witness }
    };
    let multiplicity = if overlap == 0 {
        Multiplicity::Partition
    } else {
        Multiplicity::Cover { overlap }
    };
    CoverageVerdict {
        index,
        cosets_hit: hits.len(),
        coverage,
        multiplicity,
    }
}

/// Largest squared distance from a cluster center to one of its points.
pub fn cluster_beta_sq(cluster: &Cluster) -> Rational {
    cluster
        .points()
        .iter()
        .map(|p| cluster.center().dist_sq(&p.to_q()))
        .max()
        .expect("clusters are non-empty")
}

pub fn compute_beta_sq(cert: &CoveringCertificate) -> Rational {
    cert.clusters()
        .iter()
        .map(cluster_beta_sq)
        .max()
        .expect("certificates have clusters")
}

/// Smallest squared distance between distinct centers of `{c_k + λ}`.
///
/// Zero means two clusters share a center modulo Λ (degenerate).
pub fn compute_alpha_sq(cert: &CoveringCertificate) -> Rational {
    let lattice = cert.lattice();
    let clusters = cert.clusters();
    let mut best = lattice.shortest_vector_sq();
    for j in 0..clusters.len() {
        for k in (j + 1)..clusters.len() {
            let diff = clusters[j].center() - clusters[k].center();
            let d = lattice.min_translate_sq(&diff, false);
            if d < best {
                best = d;
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub index: u64,
    pub clusters: usize,
    pub coverage: Coverage,
    pub multiplicity: Multiplicity,
    pub alpha_sq: Rational,
    pub beta_sq: Rational,
    pub admissible: bool,
    pub interval: Option<SqrtInterval>,
}

impl VerificationReport {
    pub fn is_verified(&self) -> bool {
        self.interval.is_some()
    }
}

pub fn verify(cert: &CoveringCertificate) -> VerificationReport {
    let cov = check_coverage(cert);
    let alpha_sq = compute_alpha_sq(cert);
    let beta_sq = compute_beta_sq(cert);
    let admissible = alpha_sq.is_positive() && Rational::from(4) * &beta_sq <= alpha_sq;
    let interval = (admissible && cov.coverage == Coverage::Covered).then(|| {
        let lo = SqrtRational::Finite(Rational::from(4) / &alpha_sq);
        let hi = match beta_sq.recip() {
            Some(r) => SqrtRational::Finite(r),
            None => SqrtRational::Infinity,
        };
        SqrtInterval::new(lo, hi).expect("admissible implies 4/α² <= 1/β²")
    });
    VerificationReport {
        name: cert.name().to_string(),
        index: cov.index,
        clusters: cert.clusters().len(),
        coverage: cov.coverage,
        multiplicity: cov.multiplicity,
        alpha_sq,
        beta_sq,
        admissible,
        interval,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WindowWitness {
    /// No cluster instance contains this lattice point.
    Uncovered { point: IntPoint },
    /// The point lies outside the dilated unit disk of every instance containing it.
    Coverage {
        point: IntPoint,
        center: QPoint,
        scaled_dist_sq: Rational,
    },
    /// Two dilated unit disks overlap in their interiors.
    Disjointness {
        first: QPoint,
        second: QPoint,
        scaled_dist_sq: Rational,
    },
}

impl WindowWitness {
    pub fn is_coverage(&self) -> bool {
        matches!(self, WindowWitness::Coverage { .. } | WindowWitness::Uncovered { .. })
    }

    pub fn is_disjointness(&self) -> bool {
        matches!(self, WindowWitness::Disjointness { .. })
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum WindowOutcome {
    Pass { points: usize, centers: usize },
    Fail { witness: WindowWitness },
}

impl WindowOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, WindowOutcome::Pass { .. })
    }

    pub fn witness(&self) -> Option<&WindowWitness> {
        match self {
            WindowOutcome::Pass { .. } => None,
            WindowOutcome::Fail { witness } => Some(witness),
        }
    }
}

/// Direct check of the dilated configuration on the box `[-window, window]²`.
///
/// Cluster instances are generated by brute-force lattice translations, with
/// no use of coset arithmetic. Each lattice point `z` in the box must satisfy
/// `d²·|z − c|² <= 1` for some instance containing it, and any two instance
/// centers inside the box must satisfy `d²·|c − c'|² >= 4`. Equality passes.
pub fn window_check(cert: &CoveringCertificate, d: &Rational, window: i64) -> WindowOutcome {
    assert!(d.is_positive(), "dilation factor must be positive");
    assert!(window >= 0, "window must be nonnegative");
    let d_sq = d.square();
    let lattice = cert.lattice();

    let reach = cert
        .clusters()
        .iter()
        .flat_map(|c| {
            c.points()
                .iter()
                .map(|p| p.x.abs().max(p.y.abs()))
                .chain([c.center().x.abs().ceil_i64(), c.center().y.abs().ceil_i64()])
        })
        .max()
        .unwrap_or(0);
    let span = window + reach + 1;
    let (u, v) = (lattice.u(), lattice.v());
    let det = lattice.det().abs();
    let ci = (span * (v.x.abs() + v.y.abs())) / det + 1;
    let cj = (span * (u.x.abs() + u.y.abs())) / det + 1;

    let in_box = |p: &IntPoint| p.x.abs() <= window && p.y.abs() <= window;
    let mut best: HashMap<IntPoint, (Rational, QPoint)> = HashMap::new();
    let mut centers: BTreeSet<QPoint> = BTreeSet::new();
    let mut duplicate_center: Option<QPoint> = None;
    let lim = Rational::from(window);

    for i in -ci..=ci {
        for j in -cj..=cj {
            let t = lattice.point(i, j);
            if t.x.abs() > span || t.y.abs() > span {
                continue;
            }
            for cluster in cert.clusters() {
                let c = cluster.center().translate(t);
                if c.x.abs() <= lim && c.y.abs() <= lim && !centers.insert(c.clone()) {
                    duplicate_center.get_or_insert(c.clone());
                }
                for &p in cluster.points() {
                    let z = p + t;
                    if !in_box(&z) {
                        continue;
                    }
                    let dist = c.dist_sq(&z.to_q());
                    match best.get(&z) {
                        Some((b, _)) if b <= &dist => {}
                        _ => {
                            best.insert(z, (dist, c.clone()));
                        }
                    }
                }
            }
        }
    }

    let one = Rational::one();
    let mut points = 0;
    for x in -window..=window {
        for y in -window..=window {
            let z = IntPoint::new(x, y);
            points += 1;
            match best.get(&z) {
                None => {
                    return WindowOutcome::Fail {
                        witness: WindowWitness::Uncovered { point: z },
                    }
                }
                Some((dist, c)) => {
                    let scaled = &d_sq * dist;
                    if scaled > one {
                        return WindowOutcome::Fail {
                            witness: WindowWitness::Coverage {
                                point: z,
                                center: c.clone(),
                                scaled_dist_sq: scaled,
                            },
                        };
                    }
                }
            }
        }
    }

    if let Some(c) = duplicate_center {
        return WindowOutcome::Fail {
            witness: WindowWitness::Disjointness {
                first: c.clone(),
                second: c,
                scaled_dist_sq: Rational::zero(),
            },
        };
    }

    // bucket centers on a grid of integer cell size >= 2/d; overlapping pairs are
    // then in the same or adjacent cells
    let cell = (Rational::from(2) / d).ceil_i64().max(1);
    let cell_q = Rational::from(cell);
    let key = |c: &QPoint| ((&c.x / &cell_q).floor_i64(), (&c.y / &cell_q).floor_i64());
    let mut grid: BTreeMap<(i64, i64), Vec<&QPoint>> = BTreeMap::new();
    for c in &centers {
        grid.entry(key(c)).or_default().push(c);
    }
    let four = Rational::from(4);
    for c in &centers {
        let (kx, ky) = key(c);
        let mut worst: Option<(&QPoint, Rational)> = None;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for &o in grid.get(&(kx + dx, ky + dy)).into_iter().flatten() {
                    if o <= c {
                        continue;
                    }
                    let scaled = &d_sq * c.dist_sq(o);
                    if scaled < four && worst.as_ref().is_none_or(|(w, _)| o < *w) {
                        worst = Some((o, scaled));
                    }
                }
            }
        }
        if let Some((o, scaled)) = worst {
            return WindowOutcome::Fail {
                witness: WindowWitness::Disjointness {
                    first: c.clone(),
                    second: o.clone(),
                    scaled_dist_sq: scaled,
                },
            };
        }
    }

    WindowOutcome::Pass {
        points,
        centers: centers.len(),
    }
}

/// A plane isometry `x ↦ linear·x + translation` with rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isometry {
    pub linear: [[Rational; 2]; 2],
    pub translation: QPoint,
}

impl Isometry {
    pub fn apply(&self, p: &QPoint) -> QPoint {
        let m = &self.linear;
        QPoint::new(
            &m[0][0] * &p.x + &m[0][1] * &p.y + &self.translation.x,
            &m[1][0] * &p.x + &m[1][1] * &p.y + &self.translation.y,
        )
    }

    pub fn apply_linear(&self, p: &QPoint) -> QPoint {
        let m = &self.linear;
        QPoint::new(&m[0][0] * &p.x + &m[0][1] * &p.y, &m[1][0] * &p.x + &m[1][1] * &p.y)
    }

    pub fn is_reflection(&self) -> bool {
        let m = &self.linear;
        (&m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]).is_negative()
    }

    fn with_translation(linear: [[Rational; 2]; 2], from: &QPoint, to: &QPoint) -> Isometry {
        let mut g = Isometry {
            linear,
            translation: QPoint::origin(),
        };
        let image = g.apply_linear(from);
        g.translation = to - &image;
        g
    }
}

fn identity() -> [[Rational; 2]; 2] {
    [[Rational::one(), Rational::zero()], [Rational::zero(), Rational::one()]]
}

/// Rotation and reflection carrying `w` onto `w2` (equal nonzero lengths).
fn orthogonal_maps(w: &QPoint, w2: &QPoint) -> [[[Rational; 2]; 2]; 2] {
    let n = w.norm_sq();
    let a = w.dot(w2) / &n;
    let b = w.cross(w2) / &n;
    let rot = [[a.clone(), -&b], [b, a]];
    let a = (&w.x * &w2.x - &w.y * &w2.y) / &n;
    let b = (&w.y * &w2.x + &w.x * &w2.y) / &n;
    let refl = [[a.clone(), b.clone()], [b, -a]];
    [rot, refl]
}

fn maps_cluster_onto(g: &Isometry, from: &Cluster, to: &Cluster) -> bool {
    if from.points().len() != to.points().len() || g.apply(from.center()) != *to.center() {
        return false;
    }
    let target: BTreeSet<QPoint> = to.points().iter().map(|p| p.to_q()).collect();
    from.points().iter().all(|p| target.contains(&g.apply(&p.to_q())))
}

/// Every isometry carrying `from` (points and center) onto `to`. When all of
/// `from`'s points coincide with its center, only the pure translation is
/// returned.
pub fn cluster_isometries(from: &Cluster, to: &Cluster) -> Vec<Isometry> {
    if from.points().len() != to.points().len() {
        return Vec::new();
    }
    let anchor = from
        .points()
        .iter()
        .map(|p| &p.to_q() - from.center())
        .find(|w| !w.norm_sq().is_zero());
    let Some(w) = anchor else {
        let g = Isometry::with_translation(identity(), from.center(), to.center());
        return if maps_cluster_onto(&g, from, to) {
            vec![g]
        } else {
            Vec::new()
        };
    };
    let len = w.norm_sq();
    let mut out = Vec::new();
    for q in to.points() {
        let w2 = &q.to_q() - to.center();
        if w2.norm_sq() != len {
            continue;
        }
        for m in orthogonal_maps(&w, &w2) {
            let g = Isometry::with_translation(m, from.center(), to.center());
            if maps_cluster_onto(&g, from, to) && !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum CongruenceOutcome {
    /// One isometry per cluster `k`, carrying cluster 0 onto cluster `k`.
    Pass {
        isometries: Vec<Isometry>,
    },
    Fail {
        first: usize,
        second: usize,
    },
}

impl CongruenceOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CongruenceOutcome::Pass { .. })
    }
}

/// Every cluster is congruent to cluster 0, centers included.
pub fn strict_congruence(cert: &CoveringCertificate) -> CongruenceOutcome {
    let clusters = cert.clusters();
    let mut isometries = Vec::with_capacity(clusters.len());
    for (k, c) in clusters.iter().enumerate() {
        match cluster_isometries(&clusters[0], c).into_iter().next() {
            Some(g) => isometries.push(g),
            None => return CongruenceOutcome::Fail { first: 0, second: k },
        }
    }
    CongruenceOutcome::Pass { isometries }
}

/// Rational orthogonal matrices `R` with `RΛ = Λ`, sorted.
pub fn lattice_automorphisms(lattice: &IntLattice) -> Vec<[[Rational; 2]; 2]> {
    let r = lattice.canonical_reduced();
    let (u, v) = (r.u(), r.v());
    let (nu, nv) = (u.norm_sq(), v.norm_sq());
    // |a·u + b·v|² >= (a² + b²)/2·|u|² on a reduced basis
    let bound = |n: i64| {
        let mut k = 0;
        while k * k * nu < 2 * n {
            k += 1;
        }
        k
    };
    let vectors_of_norm = |n: i64| -> Vec<IntPoint> {
        let k = bound(n);
        let mut out = Vec::new();
        for a in -k..=k {
            for b in -k..=k {
                let p = r.point(a, b);
                if p.norm_sq() == n {
                    out.push(p);
                }
            }
        }
        out
    };
    let det = Rational::from(u.cross(v));
    let mut out = Vec::new();
    for w1 in vectors_of_norm(nu) {
        for w2 in vectors_of_norm(nv) {
            if w1.dot(w2) != u.dot(v) || w1.cross(w2).abs() != u.cross(v).abs() {
                continue;
            }
            // R = [w1 w2]·[u v]⁻¹
            let inv = [
                [Rational::from(v.y) / &det, Rational::from(-v.x) / &det],
                [Rational::from(-u.y) / &det, Rational::from(u.x) / &det],
            ];
            let cols = [[w1.x, w2.x], [w1.y, w2.y]];
            let mut m = [
                [Rational::zero(), Rational::zero()],
                [Rational::zero(), Rational::zero()],
            ];
            for (i, row) in m.iter_mut().enumerate() {
                for (j, entry) in row.iter_mut().enumerate() {
                    *entry = Rational::from(cols[i][0]) * &inv[0][j] + Rational::from(cols[i][1]) * &inv[1][j];
                }
            }
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum TransitivityOutcome {
    /// For each cluster `k`, a pattern symmetry carrying orbit 0 onto orbit `k`.
    Pass {
        symmetries: Vec<Isometry>,
    },
    Fail {
        first: usize,
        second: usize,
    },
}

impl TransitivityOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, TransitivityOutcome::Pass { .. })
    }
}

/// Image of a cluster under `g`, matched against the orbits modulo Λ.
fn orbit_image(g: &Isometry, cluster: &Cluster, cert: &CoveringCertificate) -> Option<usize> {
    let c = g.apply(cluster.center());
    let lattice = cert.lattice();
    cert.clusters().iter().position(|other| {
        let diff = &c - other.center();
        let Some(lam) = diff.to_int() else { return false };
        if !lattice.contains(lam) {
            return false;
        }
        maps_cluster_onto(g, cluster, &other.translated(lam))
    })
}

/// Some isometry normalizing Λ maps the pattern onto itself and orbit 0 onto
/// each orbit `k`. A single orbit passes through the lattice translations.
pub fn strict_transitivity(cert: &CoveringCertificate) -> TransitivityOutcome {
    let clusters = cert.clusters();
    let autos = lattice_automorphisms(cert.lattice());
    let mut symmetries = Vec::with_capacity(clusters.len());
    symmetries.push(Isometry {
        linear: identity(),
        translation: QPoint::origin(),
    });
    for k in 1..clusters.len() {
        let found = autos.iter().find_map(|m| {
            let g = Isometry::with_translation(m.clone(), clusters[0].center(), clusters[k].center());
            if !maps_cluster_onto(&g, &clusters[0], &clusters[k]) {
                return None;
            }
            let mut images = BTreeSet::new();
            for c in clusters {
                images.insert(orbit_image(&g, c, cert)?);
            }
            (images.len() == clusters.len()).then_some(g)
        });
        match found {
            Some(g) => symmetries.push(g),
            None => return TransitivityOutcome::Fail { first: 0, second: k },
        }
    }
    TransitivityOutcome::Pass { symmetries }
}

/// Cluster point sets of the periodic family are pairwise disjoint.
pub fn strict_disjointness(cert: &CoveringCertificate) -> bool {
    check_coverage(cert).multiplicity == Multiplicity::Partition
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrictReport {
    pub congruence: CongruenceOutcome,
    pub disjoint: bool,
    pub transitivity: TransitivityOutcome,
}

impl StrictReport {
    pub fn passed(&self) -> bool {
        self.congruence.passed() && self.disjoint && self.transitivity.passed()
    }
}

pub fn strict_check(cert: &CoveringCertificate) -> StrictReport {
    let congruence = strict_congruence(cert);
    let transitivity = if congruence.passed() {
        strict_transitivity(cert)
    } else {
        TransitivityOutcome::Fail { first: 0, second: 0 }
    };
    StrictReport {
        congruence,
        disjoint: strict_disjointness(cert),
        transitivity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{builtin, catalog};

    fn p(x: i64, y: i64) -> IntPoint {
        IntPoint::new(x, y)
    }

    fn sq(s: &str) -> SqrtRational {
        s.parse().unwrap()
    }

    fn cert(lattice: (i64, i64, i64, i64), clusters: Vec<(Vec<(i64, i64)>, QPoint)>) -> CoveringCertificate {
        let l = IntLattice::from_coords(lattice.0, lattice.1, lattice.2, lattice.3).unwrap();
        let cs = clusters
            .into_iter()
            .map(|(pts, c)| Cluster::new(pts.into_iter().map(|(x, y)| p(x, y)).collect(), c).unwrap())
            .collect();
        CoveringCertificate::new("test", l, cs).unwrap()
    }

    #[test]
    fn coverage_examples() {
        let v = check_coverage(&builtin("plus5").unwrap());
        assert_eq!(
            (v.coverage, v.multiplicity, v.index),
            (Coverage::Covered, Multiplicity::Partition, 5)
        );
        let v = check_coverage(&builtin("twelve").unwrap());
        assert_eq!(
            (v.coverage, v.multiplicity, v.index),
            (Coverage::Covered, Multiplicity::Partition, 12)
        );

        let broken = cert(
            (2, 0, 0, 2),
            vec![(vec![(0, 0), (1, 0), (0, 1)], QPoint::frac(1, 2, 1, 2))],
        );
        let v = check_coverage(&broken);
        let expected = broken.lattice().residue(p(1, 1));
        assert_eq!(v.coverage, Coverage::Uncovered { witness: expected });
        assert_eq!(v.cosets_hit, 3);
    }

    #[test]
    fn overlap_is_reported() {
        let c = cert((1, 0, 0, 1), vec![(vec![(0, 0), (1, 0)], QPoint::frac(1, 2, 0, 1))]);
        assert_eq!(check_coverage(&c).multiplicity, Multiplicity::Cover { overlap: 1 });
        assert!(!strict_disjointness(&c));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(compute_beta_sq(&builtin("B1").unwrap()), Rational::zero());
        assert_eq!(compute_beta_sq(&builtin("B2").unwrap()), Rational::frac(1, 2));
        // max of 12 exact squared distances from (1/2, 1/2)
        let b6 = builtin("B6").unwrap();
        let c = QPoint::frac(1, 2, 1, 2);
        let brute = b6.clusters()[0]
            .points()
            .iter()
            .map(|q| c.dist_sq(&q.to_q()))
            .max()
            .unwrap();
        assert_eq!(brute, Rational::frac(5, 2));
        assert_eq!(compute_beta_sq(&b6), Rational::frac(5, 2));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(compute_alpha_sq(&builtin("B1").unwrap()), Rational::one());
        assert_eq!(compute_alpha_sq(&builtin("B3").unwrap()), Rational::from(2));
        assert_eq!(compute_alpha_sq(&builtin("B6").unwrap()), Rational::from(13));
    }

    #[test]
    fn degenerate_alpha() {
        let c = cert(
            (2, 0, 0, 1),
            vec![(vec![(0, 0)], QPoint::origin()), (vec![(1, 0)], QPoint::origin())],
        );
        assert_eq!(compute_alpha_sq(&c), Rational::zero());
        assert!(!verify(&c).admissible);
    }

    #[test]
    fn verify_examples() {
        let r = verify(&builtin("B2").unwrap());
        let iv = r.interval.unwrap();
        assert_eq!((iv.lo(), iv.hi()), (&sq("1"), &sq("sqrt(2)")));
        let r = verify(&builtin("B5").unwrap());
        let iv = r.interval.unwrap();
        assert_eq!((iv.lo(), iv.hi()), (&sq("2/3"), &sq("sqrt(1/2)")));
        let r = verify(&builtin("B1").unwrap());
        let iv = r.interval.unwrap();
        assert_eq!((iv.lo(), iv.hi()), (&sq("2"), &SqrtRational::Infinity));
    }

    #[test]
    fn window_examples() {
        let b4 = builtin("B4").unwrap();
        assert!(window_check(&b4, &Rational::one(), 20).passed());

        let out = window_check(&b4, &Rational::frac(9, 8), 20);
        assert!(out.witness().unwrap().is_coverage(), "{out:?}");

        let out = window_check(&b4, &Rational::frac(4, 5), 20);
        match out.witness() {
            Some(WindowWitness::Disjointness { scaled_dist_sq, .. }) => {
                assert_eq!(scaled_dist_sq, &Rational::frac(16, 5));
            }
            other => panic!("expected disjointness witness, got {other:?}"),
        }
    }

    #[test]
    fn window_detects_uncovered() {
        let broken = cert(
            (2, 0, 0, 2),
            vec![(vec![(0, 0), (1, 0), (0, 1)], QPoint::frac(1, 2, 1, 2))],
        );
        let out = window_check(&broken, &Rational::one(), 4);
        assert!(matches!(out.witness(), Some(WindowWitness::Uncovered { .. })));
    }

    #[test]
    fn congruence_examples() {
        assert!(strict_congruence(&builtin("B4").unwrap()).passed());

        let quarter = cert(
            (10, 0, 0, 10),
            vec![
                (vec![(0, 0), (1, 0)], QPoint::frac(1, 2, 0, 1)),
                (vec![(5, 0), (5, 1)], QPoint::frac(5, 1, 1, 2)),
            ],
        );
        match strict_congruence(&quarter) {
            CongruenceOutcome::Pass { isometries } => {
                let g = &isometries[1];
                assert_eq!(g.apply(&QPoint::frac(1, 2, 0, 1)), QPoint::frac(5, 1, 1, 2));
            }
            other => panic!("{other:?}"),
        }

        let mixed = cert(
            (10, 0, 0, 10),
            vec![
                (vec![(0, 0), (1, 0)], QPoint::frac(1, 2, 0, 1)),
                (vec![(5, 0), (5, 1), (5, 2)], QPoint::frac(5, 1, 1, 1)),
            ],
        );
        assert_eq!(
            strict_congruence(&mixed),
            CongruenceOutcome::Fail { first: 0, second: 1 }
        );
    }

    #[test]
    fn congruence_rejects_shifted_center() {
        let c = cert(
            (10, 0, 0, 10),
            vec![
                (vec![(0, 0), (1, 0)], QPoint::frac(1, 2, 0, 1)),
                (vec![(5, 0), (6, 0)], QPoint::frac(5, 1, 0, 1)),
            ],
        );
        assert!(!strict_congruence(&c).passed());
    }

    #[test]
    fn transitivity_examples() {
        assert!(strict_transitivity(&builtin("B5").unwrap()).passed());
        assert!(strict_transitivity(&builtin("B3").unwrap()).passed());

        // rows of horizontal dominoes, second orbit shifted along the row
        let passing = cert(
            (4, 0, 0, 2),
            vec![
                (vec![(0, 0), (1, 0)], QPoint::frac(1, 2, 0, 1)),
                (vec![(2, 0), (3, 0)], QPoint::frac(5, 2, 0, 1)),
            ],
        );
        assert!(strict_congruence(&passing).passed());
        assert!(strict_transitivity(&passing).passed());

        // same, with the second domino stood upright: congruent, but no symmetry
        // of the lattice turns horizontal into vertical
        let deformed = cert(
            (4, 0, 0, 2),
            vec![
                (vec![(0, 0), (1, 0)], QPoint::frac(1, 2, 0, 1)),
                (vec![(2, 0), (2, 1)], QPoint::frac(2, 1, 1, 2)),
            ],
        );
        assert!(strict_congruence(&deformed).passed());
        assert_eq!(
            strict_transitivity(&deformed),
            TransitivityOutcome::Fail { first: 0, second: 1 }
        );
    }

    #[test]
    fn automorphisms_of_square_and_tilted_lattices() {
        let unit = IntLattice::unit();
        assert_eq!(lattice_automorphisms(&unit).len(), 8);
        // ⟨(2,1),(-1,2)⟩ is a rotated square lattice: also 8 automorphisms,
        // including reflections that are not symmetries of Z²
        let tilted = IntLattice::from_coords(2, 1, -1, 2).unwrap();
        let autos = lattice_automorphisms(&tilted);
        assert_eq!(autos.len(), 8);
        assert!(autos.iter().any(|m| !m[0][0].is_integer()));
        let rect = IntLattice::from_coords(4, 0, 0, 2).unwrap();
        assert_eq!(lattice_automorphisms(&rect).len(), 4);
    }

    #[test]
    fn catalog_is_strict() {
        for c in catalog() {
            let s = strict_check(&c);
            assert!(s.passed(), "{}: {s:?}", c.name());
        }
    }
}
