//! Exact verification, discovery and rendering support for periodic coverings
//! of the scaled square lattice `L_d = (dZ)²` by closed unit disks with
//! pairwise-disjoint interiors.
//!
//! A [`certificate::CoveringCertificate`] describes a periodic family of
//! integer point clusters with centers. If the clusters cover Z², every cluster
//! point lies within `β` of its center, and distinct centers are at least `α`
//! apart with `2β <= α`, then dilating by any `d ∈ [2/α, 1/β]` turns the family
//! into a covering of `L_d` by disjoint unit disks. [`verifier::verify`] checks
//! exactly that, with all distances kept squared and rational.

pub mod bounds;
pub mod certificate;
pub mod exactnum;
pub mod geometry;
pub mod lattice;
pub mod search;
pub mod verifier;

pub use exactnum::{interval_union, sqrt_cmp, Gap, IntervalUnion, NumError, Rational, SqrtInterval, SqrtRational};
pub use lattice::{IntLattice, IntPoint, LatticeError, QPoint};
