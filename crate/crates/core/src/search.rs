//! Exact-cover search for covering certificates.
//!
//! For each candidate lattice Λ (Hermite normal form, index ascending) the
//! cosets of Z²/Λ are partitioned into at most `max_orbits` clusters. The
//! smallest unassigned coset is filled first by placing a shape from a fixed
//! library so that one of its points is that coset's representative. Shapes
//! are the translation classes of lattice point sets whose smallest enclosing
//! circle has `radius² <= beta_sq_max`; a shape's center is that circle's
//! center. Each placement is checked against every placed center modulo Λ.
//!
//! Lattices are searched in parallel. The reported certificate comes from the
//! first lattice in canonical order that yields one, and within a lattice the
//! backtracking order is fixed, so outcomes do not depend on scheduling. Node
//! budgets count per lattice for the same reason.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{Cluster, CoveringCertificate, SearchTarget};
use crate::exactnum::Rational;
use crate::geometry::{max_points_in_disk, maximal_point_sets, sec_int};
use crate::lattice::{sublattices_of_index, IntLattice, IntPoint, QPoint};
use crate::verifier::{verify, VerificationReport};

pub const DEFAULT_NODE_BUDGET: u64 = 5_000_000;

/// Largest lattice point count of a closed disk of radius² `beta_sq`.
pub fn cluster_capacity(beta_sq: &Rational) -> usize {
    if beta_sq.is_positive() {
        max_points_in_disk(beta_sq).k
    } else {
        1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Precheck {
    Feasible {
        k_max: usize,
    },
    /// Centers at pairwise distance `>= α` have density at most `2/(√3·α²)`,
    /// below the `1/k_max` a covering needs.
    Infeasible {
        k_max: usize,
    },
}

/// Infeasible iff `3·alpha_sq_min² > 4·k_max²`.
pub fn density_precheck(target: &SearchTarget) -> Precheck {
    let k_max = cluster_capacity(&target.beta_sq_max);
    let lhs = Rational::from(3) * target.alpha_sq_min.square();
    let rhs = Rational::from(4 * (k_max as i64) * (k_max as i64));
    if lhs > rhs {
        Precheck::Infeasible { k_max }
    } else {
        Precheck::Feasible { k_max }
    }
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub target: SearchTarget,
    /// Candidate lattices; all indices `1..=max_index` when `None`.
    pub lattices: Option<Vec<IntLattice>>,
    /// Placement attempts allowed per lattice.
    pub node_budget: u64,
    /// Wall-clock limit for the whole search. Hitting it is not reproducible.
    pub time_budget: Option<Duration>,
}

impl SearchParams {
    pub fn new(target: SearchTarget) -> Self {
        SearchParams {
            target,
            lattices: None,
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub max_index: u64,
    pub max_orbits: usize,
    pub k_max: usize,
    pub shapes: usize,
    pub lattices_enumerated: usize,
    /// Lattices discarded before backtracking (short vectors or orbit counts).
    pub lattices_pruned: usize,
    pub lattices_searched: usize,
    pub lattices_over_budget: usize,
    pub nodes: u64,
    pub node_budget: u64,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found {
        certificate: CoveringCertificate,
        report: VerificationReport,
        stats: SearchStats,
    },
    /// No certificate exists within the enumerated limits.
    Exhausted {
        stats: SearchStats,
    },
    BudgetExceeded {
        stats: SearchStats,
        timed_out: bool,
    },
    Infeasible {
        alpha_sq_min: Rational,
        beta_sq_max: Rational,
        k_max: usize,
    },
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&CoveringCertificate> {
        match self {
            SearchOutcome::Found { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn stats(&self) -> Option<&SearchStats> {
        match self {
            SearchOutcome::Found { stats, .. }
            | SearchOutcome::Exhausted { stats }
            | SearchOutcome::BudgetExceeded { stats, .. } => Some(stats),
            SearchOutcome::Infeasible { .. } => None,
        }
    }
}

/// A translation class of cluster point sets, normalized so its smallest
/// point is the origin; `center = (cx, cy)/den`.
#[derive(Debug, Clone)]
struct Shape {
    points: Vec<IntPoint>,
    center: QPoint,
    cx: i128,
    cy: i128,
    den: i128,
}

fn normalize(mut pts: Vec<IntPoint>) -> Vec<IntPoint> {
    pts.sort();
    let a = pts[0];
    pts.iter().map(|&p| p - a).collect()
}

/// All shapes with enclosing radius² at most `beta_sq`, largest first, then
/// lexicographic.
fn shape_library(beta_sq: &Rational) -> Vec<Shape> {
    let maximal = if beta_sq.is_positive() {
        maximal_point_sets(beta_sq)
    } else {
        vec![vec![IntPoint::ORIGIN]]
    };
    let mut sets: BTreeSet<Vec<IntPoint>> = BTreeSet::new();
    for m in &maximal {
        assert!(m.len() <= 24, "cluster capacity {} too large to enumerate", m.len());
        for mask in 1u32..(1u32 << m.len()) {
            let sub: Vec<IntPoint> = (0..m.len()).filter(|i| mask & (1 << i) != 0).map(|i| m[i]).collect();
            sets.insert(normalize(sub));
        }
    }
    let mut shapes: Vec<Shape> = sets
        .into_iter()
        .map(|points| {
            let circle = sec_int(&points);
            debug_assert!(&circle.radius_sq <= beta_sq);
            let c = circle.center;
            let den = num_integer::lcm(c.x.denom().clone(), c.y.denom().clone());
            let scale = |r: &Rational| (r.numer() * (&den / r.denom())).to_i128().expect("center fits in i128");
            Shape {
                cx: scale(&c.x),
                cy: scale(&c.y),
                den: den.to_i128().expect("center fits in i128"),
                center: c,
                points,
            }
        })
        .collect();
    shapes.sort_by(|a, b| {
        b.points
            .len()
            .cmp(&a.points.len())
            .then_with(|| a.points.cmp(&b.points))
    });
    shapes
}

/// Lattice-dependent data for one backtracking run.
struct LatticeCtx {
    a: i64,
    b: i64,
    c: i64,
    u: (i128, i128),
    v: (i128, i128),
    det: i128,
    /// Lattice vectors that may lie within `α` of a point of the fundamental cell.
    near: Vec<(i128, i128)>,
    alpha_num: i128,
    alpha_den: i128,
}

impl LatticeCtx {
    fn new(lattice: &IntLattice, alpha_sq: &Rational) -> Self {
        let (a, b, c) = lattice.hnf();
        let r = lattice.canonical_reduced();
        let (u, v) = (r.u(), r.v());
        let (uu, mut vv) = ((u.x as i128, u.y as i128), (v.x as i128, v.y as i128));
        if u.cross(v) < 0 {
            vv = (-vv.0, -vv.1);
        }
        let det = uu.0 * vv.1 - uu.1 * vv.0;
        // |λ| < |u| + |v| + α, and (x + y + z)² <= 3(x² + y² + z²)
        let nu = uu.0 * uu.0 + uu.1 * uu.1;
        let nv = vv.0 * vv.0 + vv.1 * vv.1;
        let alpha_ceil = alpha_sq.ceil().to_i128().expect("alpha² fits in i128");
        let rsq = 3 * (nu + nv + alpha_ceil);
        // |i·u + j·v|² >= (i² + j²)/2·|u|² for a reduced basis
        let mut k = 0;
        while k * k * nu <= 2 * rsq {
            k += 1;
        }
        let mut near = Vec::new();
        for i in -k..=k {
            for j in -k..=k {
                let w = (i * uu.0 + j * vv.0, i * uu.1 + j * vv.1);
                if w.0 * w.0 + w.1 * w.1 <= rsq {
                    near.push(w);
                }
            }
        }
        LatticeCtx {
            a,
            b,
            c,
            u: uu,
            v: vv,
            det,
            near,
            alpha_num: alpha_sq.numer().to_i128().expect("alpha² fits in i128"),
            alpha_den: alpha_sq.denom().to_i128().expect("alpha² fits in i128"),
        }
    }

    fn index(&self) -> usize {
        (self.a * self.c) as usize
    }

    fn coset(&self, p: IntPoint) -> usize {
        let j = p.y.div_euclid(self.c);
        let y = p.y - j * self.c;
        let x = (p.x - j * self.b).rem_euclid(self.a);
        (y * self.a + x) as usize
    }

    fn rep(&self, idx: usize) -> IntPoint {
        let idx = idx as i64;
        IntPoint::new(idx % self.a, idx / self.a)
    }

    /// Whether `(w.0, w.1)/d` stays at squared distance `>= α²` from every lattice vector.
    fn separated(&self, w: (i128, i128), d: i128) -> bool {
        let s = floor_i128(w.0 * self.v.1 - w.1 * self.v.0, self.det * d);
        let t = floor_i128(self.u.0 * w.1 - self.u.1 * w.0, self.det * d);
        let w = (
            w.0 - d * (s * self.u.0 + t * self.v.0),
            w.1 - d * (s * self.u.1 + t * self.v.1),
        );
        let bound = self.alpha_num * d * d;
        self.near.iter().all(|l| {
            let (dx, dy) = (w.0 - d * l.0, w.1 - d * l.1);
            (dx * dx + dy * dy) * self.alpha_den >= bound
        })
    }
}

fn floor_i128(n: i128, m: i128) -> i128 {
    let (n, m) = if m < 0 { (-n, -m) } else { (n, m) };
    n.div_euclid(m)
}

struct Placed {
    shape: usize,
    shift: IntPoint,
    cx: i128,
    cy: i128,
    den: i128,
}

enum RunResult {
    Found(Vec<Placed>, u64),
    Exhausted(u64),
    OverBudget(u64),
    Cancelled(u64),
}

struct Runner<'a> {
    ctx: LatticeCtx,
    shapes: &'a [Shape],
    max_size: usize,
    orbit_cap: usize,
    assigned: Vec<bool>,
    uncovered: usize,
    placed: Vec<Placed>,
    nodes: u64,
    budget: u64,
    cancel: &'a dyn Fn() -> bool,
    stopped: Option<bool>,
}

impl Runner<'_> {
    fn run(mut self) -> RunResult {
        if self.dfs() {
            RunResult::Found(self.placed, self.nodes)
        } else {
            match self.stopped {
                None => RunResult::Exhausted(self.nodes),
                Some(true) => RunResult::Cancelled(self.nodes),
                Some(false) => RunResult::OverBudget(self.nodes),
            }
        }
    }

    fn dfs(&mut self) -> bool {
        if self.uncovered == 0 {
            return true;
        }
        let slots = self.orbit_cap - self.placed.len();
        if slots == 0 || self.uncovered > slots * self.max_size {
            return false;
        }
        let target = self.assigned.iter().position(|&a| !a).expect("a coset is unassigned");
        let p = self.ctx.rep(target);
        let min_size = self.uncovered.saturating_sub((slots - 1) * self.max_size).max(1);
        let mut cosets = Vec::with_capacity(self.max_size);
        for si in 0..self.shapes.len() {
            let shape = &self.shapes[si];
            if shape.points.len() < min_size {
                break;
            }
            if shape.points.len() > self.uncovered {
                continue;
            }
            for &anchor in &shape.points {
                self.nodes += 1;
                if self.nodes > self.budget {
                    self.stopped.get_or_insert(false);
                    return false;
                }
                if self.nodes.is_multiple_of(4096) && (self.cancel)() {
                    self.stopped = Some(true);
                    return false;
                }
                let shift = p - anchor;
                cosets.clear();
                let ok = shape.points.iter().all(|&q| {
                    let k = self.ctx.coset(q + shift);
                    if self.assigned[k] || cosets.contains(&k) {
                        return false;
                    }
                    cosets.push(k);
                    true
                });
                if !ok {
                    continue;
                }
                let cx = shape.cx + shape.den * shift.x as i128;
                let cy = shape.cy + shape.den * shift.y as i128;
                let den = shape.den;
                let apart = self.placed.iter().all(|o| {
                    let w = (cx * o.den - o.cx * den, cy * o.den - o.cy * den);
                    self.ctx.separated(w, den * o.den)
                });
                if !apart {
                    continue;
                }
                for &k in &cosets {
                    self.assigned[k] = true;
                }
                self.uncovered -= cosets.len();
                self.placed.push(Placed {
                    shape: si,
                    shift,
                    cx,
                    cy,
                    den,
                });
                if self.dfs() {
                    return true;
                }
                self.placed.pop();
                self.uncovered += cosets.len();
                for &k in &cosets {
                    self.assigned[k] = false;
                }
                if self.stopped.is_some() {
                    return false;
                }
            }
        }
        false
    }
}

/// Largest `m` with `3·α⁴·m² <= 4·n²`: the orbit count a lattice of index `n`
/// can carry with centers `α` apart.
fn density_orbit_cap(n: u64, alpha_sq: &Rational) -> u64 {
    let lhs = Rational::from(3) * alpha_sq.square();
    let rhs = Rational::from(4 * (n as i64) * (n as i64));
    let mut m = 0u64;
    while lhs.clone() * Rational::from(((m + 1) * (m + 1)) as i64) <= rhs {
        m += 1;
    }
    m
}

/// Candidate lattices, index ascending and HNF order within an index.
pub fn candidate_lattices(max_index: u64) -> Vec<IntLattice> {
    (1..=max_index).flat_map(sublattices_of_index).collect()
}

pub fn search_certificate(params: &SearchParams) -> SearchOutcome {
    let target = &params.target;
    let k_max = match density_precheck(target) {
        Precheck::Infeasible { k_max } => {
            return SearchOutcome::Infeasible {
                alpha_sq_min: target.alpha_sq_min.clone(),
                beta_sq_max: target.beta_sq_max.clone(),
                k_max,
            }
        }
        Precheck::Feasible { k_max } => k_max,
    };
    let shapes = shape_library(&target.beta_sq_max);
    let max_size = shapes.first().map_or(1, |s| s.points.len());
    let lattices = params
        .lattices
        .clone()
        .unwrap_or_else(|| candidate_lattices(target.max_index));

    // orbit cap per lattice, or None when pruned
    let caps: Vec<Option<usize>> = lattices
        .iter()
        .map(|l| {
            if l.shortest_vector_sq() < target.alpha_sq_min {
                return None;
            }
            let n = l.index();
            let cap = density_orbit_cap(n, &target.alpha_sq_min).min(target.max_orbits as u64) as usize;
            (cap * max_size >= n as usize).then_some(cap)
        })
        .collect();

    let deadline = params.time_budget.map(|t| Instant::now() + t);
    let timed_out = AtomicBool::new(false);
    let best = AtomicUsize::new(usize::MAX);

    let results: Vec<Option<RunResult>> = lattices
        .par_iter()
        .zip(caps.par_iter())
        .enumerate()
        .map(|(pos, (lattice, cap))| {
            let cap = (*cap)?;
            if best.load(AtomicOrdering::SeqCst) < pos {
                return Some(RunResult::Cancelled(0));
            }
            let cancel = || {
                if best.load(AtomicOrdering::SeqCst) < pos {
                    return true;
                }
                if deadline.is_some_and(|d| Instant::now() >= d) {
                    timed_out.store(true, AtomicOrdering::SeqCst);
                    return true;
                }
                false
            };
            let ctx = LatticeCtx::new(lattice, &target.alpha_sq_min);
            let n = ctx.index();
            let runner = Runner {
                ctx,
                shapes: &shapes,
                max_size,
                orbit_cap: cap,
                assigned: vec![false; n],
                uncovered: n,
                placed: Vec::new(),
                nodes: 0,
                budget: params.node_budget,
                cancel: &cancel,
                stopped: None,
            };
            let result = runner.run();
            match &result {
                RunResult::Found(..) => {
                    best.fetch_min(pos, AtomicOrdering::SeqCst);
                    log::info!("lattice {lattice} (index {n}): found");
                }
                RunResult::Exhausted(nodes) => {
                    log::debug!("lattice {lattice} (index {n}): exhausted after {nodes} nodes")
                }
                RunResult::OverBudget(_) => log::info!("lattice {lattice} (index {n}): node budget exceeded"),
                RunResult::Cancelled(_) => {}
            }
            Some(result)
        })
        .collect();

    let mut stats = SearchStats {
        max_index: target.max_index,
        max_orbits: target.max_orbits,
        k_max,
        shapes: shapes.len(),
        lattices_enumerated: lattices.len(),
        lattices_pruned: caps.iter().filter(|c| c.is_none()).count(),
        lattices_searched: 0,
        lattices_over_budget: 0,
        nodes: 0,
        node_budget: params.node_budget,
    };
    let mut found = None;
    for (pos, r) in results.into_iter().enumerate() {
        let Some(r) = r else { continue };
        match r {
            RunResult::Found(placed, nodes) => {
                stats.lattices_searched += 1;
                stats.nodes += nodes;
                found = Some((pos, placed));
                break;
            }
            RunResult::Exhausted(nodes) => {
                stats.lattices_searched += 1;
                stats.nodes += nodes;
            }
            RunResult::OverBudget(nodes) => {
                stats.lattices_searched += 1;
                stats.lattices_over_budget += 1;
                stats.nodes += nodes;
            }
            RunResult::Cancelled(nodes) => {
                stats.lattices_over_budget += 1;
                stats.nodes += nodes;
            }
        }
    }

    if let Some((pos, placed)) = found {
        let certificate = assemble(&lattices[pos], &shapes, &placed, target);
        let report = verify(&certificate);
        let wanted = target.interval().expect("target interval is nonempty");
        let ok = report.interval.as_ref().is_some_and(|iv| iv.contains_interval(&wanted));
        assert!(ok, "search produced a certificate that does not verify: {report:?}");
        return SearchOutcome::Found {
            certificate,
            report,
            stats,
        };
    }
    if stats.lattices_over_budget > 0 {
        SearchOutcome::BudgetExceeded {
            stats,
            timed_out: timed_out.load(AtomicOrdering::SeqCst),
        }
    } else {
        SearchOutcome::Exhausted { stats }
    }
}

fn assemble(lattice: &IntLattice, shapes: &[Shape], placed: &[Placed], target: &SearchTarget) -> CoveringCertificate {
    let clusters = placed
        .iter()
        .map(|pl| {
            let s = &shapes[pl.shape];
            let pts = s.points.iter().map(|&q| q + pl.shift).collect();
            Cluster::new(pts, s.center.translate(pl.shift)).expect("shapes are valid clusters")
        })
        .collect();
    let name = format!("search a2>={} b2<={}", target.alpha_sq_min, target.beta_sq_max);
    CoveringCertificate::new(name, *lattice, clusters).expect("assembled certificate is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::target_from_interval;
    use crate::exactnum::SqrtRational;

    fn target(a: Rational, b: Rational, max_index: u64, orbits: usize) -> SearchTarget {
        SearchTarget::new(a, b, max_index, orbits).unwrap()
    }

    #[test]
    fn precheck_examples() {
        let t = target(Rational::from(10), Rational::frac(1, 2), 30, 4);
        assert_eq!(density_precheck(&t), Precheck::Infeasible { k_max: 4 });
        let t = target(Rational::from(5), Rational::one(), 30, 4);
        assert_eq!(density_precheck(&t), Precheck::Feasible { k_max: 5 });
        let t = target(Rational::from(4), Rational::frac(1, 2), 30, 4);
        assert_eq!(density_precheck(&t), Precheck::Feasible { k_max: 4 });
    }

    #[test]
    fn infeasible_outcome() {
        let t = target(Rational::from(10), Rational::frac(1, 2), 30, 4);
        assert!(matches!(
            search_certificate(&SearchParams::new(t)),
            SearchOutcome::Infeasible { .. }
        ));
    }

    #[test]
    fn orbit_cap() {
        // 2/(√3·10) per unit area: index 18 carries 2 orbits, index 27 carries 3
        assert_eq!(density_orbit_cap(18, &Rational::from(10)), 2);
        assert_eq!(density_orbit_cap(27, &Rational::from(10)), 3);
        assert_eq!(density_orbit_cap(17, &Rational::from(10)), 1);
    }

    #[test]
    fn coset_index_matches_residues() {
        for l in candidate_lattices(8) {
            let ctx = LatticeCtx::new(&l, &Rational::one());
            let mut seen = BTreeSet::new();
            for x in -6..6 {
                for y in -6..6 {
                    let p = IntPoint::new(x, y);
                    let k = ctx.coset(p);
                    assert!(k < ctx.index());
                    assert!(l.contains(p - ctx.rep(k)));
                    seen.insert(k);
                }
            }
            assert_eq!(seen.len(), ctx.index());
        }
    }

    #[test]
    fn separation_matches_exact_alpha() {
        let alpha = Rational::frac(13, 2);
        for l in candidate_lattices(12) {
            let ctx = LatticeCtx::new(&l, &alpha);
            for (wx, wy, d) in [(1, 0, 2), (5, 1, 2), (7, 3, 4), (0, 0, 1), (9, -5, 6)] {
                let w = QPoint::frac(wx, d, wy, d);
                let exact = l.min_translate_sq(&w, false) >= alpha;
                assert_eq!(ctx.separated((wx as i128, wy as i128), d as i128), exact, "{l} {w:?}");
            }
        }
    }

    #[test]
    fn shape_library_small() {
        let shapes = shape_library(&Rational::frac(1, 2));
        // monomino, two dominoes, two diagonal pairs, four trominoes, square
        assert_eq!(shapes.len(), 10);
        assert_eq!(shapes[0].points.len(), 4);
    }

    #[test]
    fn finds_plus_interval() {
        let t = target_from_interval(
            &SqrtRational::sqrt_of(Rational::frac(4, 5)).unwrap(),
            &SqrtRational::from_rational(&Rational::one()).unwrap(),
        )
        .unwrap();
        let t = SearchTarget { max_index: 5, ..t };
        let out = search_certificate(&SearchParams::new(t));
        let cert = out.certificate().expect("found");
        assert!(verify(cert).is_verified());
    }

    #[test]
    fn finds_square_interval() {
        let t = target_from_interval(
            &SqrtRational::from_rational(&Rational::one()).unwrap(),
            &SqrtRational::sqrt_of(Rational::from(2)).unwrap(),
        )
        .unwrap();
        let t = SearchTarget { max_index: 4, ..t };
        let out = search_certificate(&SearchParams::new(t));
        let cert = out.certificate().expect("found");
        assert_eq!(cert.lattice().index(), 4);
    }
}
