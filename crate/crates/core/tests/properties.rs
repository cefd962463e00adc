use std::collections::BTreeSet;

use proptest::prelude::*;

use lattice_cover::certificate::{catalog, parse};
use lattice_cover::geometry::{sec, sec_int};
use lattice_cover::lattice::{
    coset_decompose, gauss_reduce, points_in_disk, IntLattice, IntPoint, QPoint, SquareSymmetry,
};
use lattice_cover::verifier::{compute_alpha_sq, verify};
use lattice_cover::{interval_union, sqrt_cmp, Rational, SqrtInterval, SqrtRational};

fn rational(max_num: i64, max_den: i64) -> impl Strategy<Value = Rational> {
    (-max_num..=max_num, 1..=max_den).prop_map(|(n, d)| Rational::frac(n, d))
}

fn nonneg_rational() -> impl Strategy<Value = Rational> {
    (0i64..200, 1i64..40).prop_map(|(n, d)| Rational::frac(n, d))
}

fn qpoint() -> impl Strategy<Value = QPoint> {
    (rational(40, 8), rational(40, 8)).prop_map(|(x, y)| QPoint::new(x, y))
}

fn lattice() -> impl Strategy<Value = IntLattice> {
    // entries <= 6 keep shortest-vector coefficients within the ±10 box
    (-6i64..=6, -6i64..=6, -6i64..=6, -6i64..=6).prop_filter_map("rank deficient", |(a, b, c, d)| {
        IntLattice::from_coords(a, b, c, d).ok()
    })
}

fn sqrt_interval() -> impl Strategy<Value = SqrtInterval> {
    (nonneg_rational(), nonneg_rational(), prop::bool::weighted(0.1)).prop_map(|(a, b, inf)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let hi = if inf {
            SqrtRational::Infinity
        } else {
            SqrtRational::Finite(hi)
        };
        SqrtInterval::new(SqrtRational::Finite(lo), hi).unwrap()
    })
}

proptest! {
    #[test]
    fn sqrt_cmp_matches_radicands(a in nonneg_rational(), b in nonneg_rational()) {
        let (sa, sb) = (SqrtRational::Finite(a.clone()), SqrtRational::Finite(b.clone()));
        prop_assert_eq!(sqrt_cmp(&sa, &sb), a.cmp(&b));
    }

    #[test]
    fn union_idempotent_and_order_free(mut ivs in prop::collection::vec(sqrt_interval(), 1..8)) {
        let u = interval_union(&ivs);
        prop_assert_eq!(interval_union(&u.components), u.clone());
        ivs.reverse();
        prop_assert_eq!(interval_union(&ivs), u.clone());

        let ends: BTreeSet<SqrtRational> = ivs.iter().flat_map(|i| [i.lo().clone(), i.hi().clone()]).collect();
        for c in &u.components {
            prop_assert!(ends.contains(c.lo()) && ends.contains(c.hi()));
        }
        for w in u.components.windows(2) {
            prop_assert!(w[0].hi() < w[1].lo());
        }
        for iv in &ivs {
            prop_assert!(u.contains_interval(iv));
        }
    }

    #[test]
    fn reduce_preserves_lattice(l in lattice()) {
        let r = gauss_reduce(&l);
        prop_assert!(l.contains(r.u()) && l.contains(r.v()));
        prop_assert!(r.contains(l.u()) && r.contains(l.v()));
        prop_assert_eq!(r.index(), l.index());
    }

    #[test]
    fn shortest_vector_matches_box(l in lattice()) {
        let mut best = i64::MAX;
        for i in -10..=10 {
            for j in -10..=10 {
                if (i, j) != (0, 0) {
                    best = best.min(l.point(i, j).norm_sq());
                }
            }
        }
        prop_assert_eq!(l.shortest_vector_sq(), Rational::from(best));
        prop_assert_eq!(gauss_reduce(&l).shortest_vector_sq(), Rational::from(best));
    }

    #[test]
    fn fundamental_domain_hits_every_coset(l in lattice()) {
        let (a, _, c) = l.hnf();
        let pts: Vec<IntPoint> = (0..a).flat_map(|x| (0..c).map(move |y| IntPoint::new(x, y))).collect();
        prop_assert_eq!(coset_decompose(&pts, &l).len() as u64, l.index());
    }

    #[test]
    fn disk_points_symmetric(c in qpoint(), r in (1i64..60, 1i64..6)) {
        let r = Rational::frac(r.0, r.1);
        let base: BTreeSet<IntPoint> = points_in_disk(&c, &r).into_iter().collect();
        for g in SquareSymmetry::ALL {
            let moved: BTreeSet<IntPoint> = points_in_disk(&g.apply_q(&c), &r).into_iter().collect();
            let mapped: BTreeSet<IntPoint> = base.iter().map(|&p| g.apply(p)).collect();
            prop_assert_eq!(&moved, &mapped);
        }
    }

    #[test]
    fn sec_covariant(pts in prop::collection::vec(qpoint(), 1..8), t in qpoint()) {
        let base = sec(&pts);
        for p in &pts {
            prop_assert!(base.contains(p));
        }
        let moved: Vec<QPoint> = pts.iter().map(|p| p + &t).collect();
        let c = sec(&moved);
        prop_assert_eq!(&c.radius_sq, &base.radius_sq);
        prop_assert_eq!(c.center, &base.center + &t);
        for g in SquareSymmetry::ALL {
            let img: Vec<QPoint> = pts.iter().map(|p| g.apply_q(p)).collect();
            let c = sec(&img);
            prop_assert_eq!(&c.radius_sq, &base.radius_sq);
            prop_assert_eq!(c.center, g.apply_q(&base.center));
        }
    }
}

#[test]
fn catalog_round_trips() {
    for cert in catalog() {
        assert_eq!(parse(&cert.to_text()).unwrap(), cert);
    }
}

#[test]
fn verify_invariant_under_motions() {
    let shifts = [IntPoint::new(3, -7), IntPoint::new(-11, 2)];
    for cert in catalog() {
        let base = verify(&cert);
        for t in shifts {
            let r = verify(&cert.translated(t));
            assert_eq!(
                (&r.alpha_sq, &r.beta_sq, &r.interval),
                (&base.alpha_sq, &base.beta_sq, &base.interval)
            );
        }
        for g in SquareSymmetry::ALL {
            let r = verify(&cert.mapped(&g));
            assert_eq!(
                (&r.alpha_sq, &r.beta_sq, &r.interval),
                (&base.alpha_sq, &base.beta_sq, &base.interval)
            );
        }
    }
}

#[test]
fn alpha_matches_periodic_box() {
    for cert in catalog() {
        let (u, v) = (cert.lattice().u(), cert.lattice().v());
        let mut centers = Vec::new();
        for i in -5..=5 {
            for j in -5..=5 {
                let t = u.scale(i) + v.scale(j);
                for c in cert.clusters() {
                    centers.push(c.center().translate(t));
                }
            }
        }
        // pairs involving the base copies suffice by periodicity
        let base: Vec<&QPoint> = cert.clusters().iter().map(|c| c.center()).collect();
        let mut best: Option<Rational> = None;
        for b in &base {
            for c in &centers {
                if c != *b {
                    let d = b.dist_sq(c);
                    if best.as_ref().is_none_or(|x| &d < x) {
                        best = Some(d);
                    }
                }
            }
        }
        assert_eq!(compute_alpha_sq(&cert), best.unwrap(), "{}", cert.name());
    }
}

#[test]
fn sec_int_matches_sec() {
    let pts = [IntPoint::new(0, 0), IntPoint::new(3, 1), IntPoint::new(1, 4)];
    let q: Vec<QPoint> = pts.iter().map(|p| p.to_q()).collect();
    assert_eq!(sec_int(&pts), sec(&q));
}
