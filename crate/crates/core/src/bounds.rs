//! Density-based uncoverability verdicts for the dilated lattice `L_d = dZ²`.
//!
//! A covering of `L_d` by pairwise disjoint unit disks assigns every point to a
//! disk holding at most `k = max_points_in_disk(1/d²)` points, so disks must
//! appear with density at least `1/(k·d²)` per unit area. Disjoint unit disks
//! have density at most `1/√12` per unit area (the hexagonal packing bound),
//! hence a covering needs `k·d² >= √12`. The verdict is uncoverable exactly
//! when `k²·d⁴ < 12`. Equality claims nothing.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::Rational;
use crate::geometry::max_points_in_disk;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Uncoverable,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityVerdict {
    pub d: Rational,
    pub k: usize,
    /// Sign of `k²·d⁴ − 12`.
    #[serde(serialize_with = "ser_ordering")]
    pub comparison: Ordering,
    pub verdict: Verdict,
}

fn ser_ordering<S: serde::Serializer>(o: &Ordering, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_i8(*o as i8)
}

pub fn density_verdict(d: &Rational) -> DensityVerdict {
    assert!(d.is_positive(), "d must be positive");
    let radius_sq = d.square().recip().expect("d > 0");
    let k = max_points_in_disk(&radius_sq).k;
    let kk = Rational::from(k as i64);
    let lhs = kk.square() * d.square().square();
    let comparison = lhs.cmp(&Rational::from(12));
    let verdict = if comparison == Ordering::Less {
        Verdict::Uncoverable
    } else {
        Verdict::Inconclusive
    };
    DensityVerdict {
        d: d.clone(),
        k,
        comparison,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdScan {
    pub rows: Vec<DensityVerdict>,
    /// Largest grid value with an uncoverable verdict.
    pub largest_uncoverable: Option<Rational>,
}

/// The grid `d_lo + i·(d_hi − d_lo)/(steps − 1)` for `i < steps`; a single
/// step yields `d_lo` alone.
pub fn scan_grid(d_lo: &Rational, d_hi: &Rational, steps: usize) -> Vec<Rational> {
    assert!(steps >= 1);
    if steps == 1 {
        return vec![d_lo.clone()];
    }
    let step = (d_hi - d_lo) / Rational::from(steps as i64 - 1);
    (0..steps)
        .map(|i| d_lo + &(&step * &Rational::from(i as i64)))
        .collect()
}

pub fn threshold_scan(d_lo: &Rational, d_hi: &Rational, steps: usize) -> ThresholdScan {
    assert!(d_lo.is_positive() && d_lo < d_hi, "need 0 < d_lo < d_hi");
    let rows: Vec<DensityVerdict> = scan_grid(d_lo, d_hi, steps).par_iter().map(density_verdict).collect();
    let largest_uncoverable = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Uncoverable)
        .map(|r| r.d.clone())
        .max();
    ThresholdScan {
        rows,
        largest_uncoverable,
    }
}

/// Earlier lower bound for disjoint unit-disk coverings, `2(2√3/3 − 1) = 4/√3 − 2`.
pub const PRIOR_BOUND_EXPR: &str = "2(2√3/3 − 1)";

pub fn prior_bound_f64() -> f64 {
    2.0 * (2.0 * 3f64.sqrt() / 3.0 - 1.0)
}

/// Exact comparison of `d` with `4/√3 − 2`, via `(d + 2)²` against `16/3`.
pub fn cmp_prior_bound(d: &Rational) -> Ordering {
    assert!(!d.is_negative());
    (d + &Rational::from(2)).square().cmp(&Rational::frac(16, 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_examples() {
        let v = density_verdict(&Rational::from(2));
        assert_eq!((v.k, v.verdict), (2, Verdict::Inconclusive));
        let v = density_verdict(&Rational::frac(1, 10));
        assert_eq!(v.verdict, Verdict::Uncoverable);
        assert!(v.k > 300);
    }

    #[test]
    fn half_follows_k_threshold() {
        let v = density_verdict(&Rational::frac(1, 2));
        assert_eq!(v.verdict == Verdict::Uncoverable, v.k <= 13);
    }

    #[test]
    fn scan_consistency() {
        let s = threshold_scan(&Rational::frac(1, 4), &Rational::frac(1, 2), 5);
        assert_eq!(s.rows.len(), 5);
        assert_eq!(s.rows[1].d, Rational::frac(5, 16));
        for r in &s.rows {
            assert_eq!(r, &density_verdict(&r.d));
        }
        for w in s.rows.windows(2) {
            assert!(w[0].k >= w[1].k);
        }
    }

    #[test]
    fn upper_scan_inconclusive() {
        let s = threshold_scan(&Rational::frac(3, 2), &Rational::from(2), 5);
        assert!(s.rows.iter().all(|r| r.verdict == Verdict::Inconclusive));
        assert_eq!(s.largest_uncoverable, None);
    }

    #[test]
    fn prior_bound_comparison() {
        assert!((prior_bound_f64() - 0.309401).abs() < 1e-6);
        assert_eq!(cmp_prior_bound(&Rational::frac(309, 1000)), Ordering::Less);
        assert_eq!(cmp_prior_bound(&Rational::frac(31, 100)), Ordering::Greater);
    }
}
