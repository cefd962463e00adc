//! Covering certificates: the data model, the text file format, and the
//! built-in catalog.
//!
//! File format (see `docs/certificate-format.md` for the grammar):
//!
//! ```text
//! # comment
//! name = plus5
//! lattice = 2 1 -1 2
//!
//! [cluster]
//! center = 0 0
//! points = 0 0; 1 0; -1 0; 0 1; 0 -1
//! ```

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{NumError, Rational, SqrtInterval, SqrtRational};
use crate::lattice::{IntLattice, IntPoint, LatticeError, QPoint, SquareSymmetry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("cluster has no points")]
    EmptyCluster,
    #[error("duplicate point {0} in cluster")]
    DuplicatePoint(IntPoint),
    #[error("certificate has no clusters")]
    NoClusters,
    #[error("certificate name must be a single non-empty line")]
    BadName,
    #[error("unknown built-in certificate `{0}`")]
    UnknownBuiltin(String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed rational in `{field}`: {source}")]
    MalformedRational {
        field: &'static str,
        #[source]
        source: NumError,
    },
    #[error("malformed integer `{text}` in `{field}`")]
    MalformedInteger { field: &'static str, text: String },
    #[error("`{field}` expects {expected} values, found {found}")]
    Arity {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{0}")]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Certificate(#[from] CertificateError),
    #[error("missing `{0}`")]
    Missing(&'static str),
    #[error("`{0}` given twice")]
    Repeated(&'static str),
    #[error("unexpected content `{0}`")]
    Unexpected(String),
}

/// One motif copy reduced to the lattice points it covers, plus its center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cluster {
    points: Vec<IntPoint>,
    center: QPoint,
}

impl Cluster {
    pub fn new(points: Vec<IntPoint>, center: QPoint) -> Result<Self, CertificateError> {
        if points.is_empty() {
            return Err(CertificateError::EmptyCluster);
        }
        let mut sorted = points.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(CertificateError::DuplicatePoint(w[0]));
        }
        Ok(Cluster { points, center })
    }

    pub fn points(&self) -> &[IntPoint] {
        &self.points
    }

    pub fn center(&self) -> &QPoint {
        &self.center
    }

    pub fn translated(&self, t: IntPoint) -> Cluster {
        Cluster {
            points: self.points.iter().map(|&p| p + t).collect(),
            center: self.center.translate(t),
        }
    }

    pub fn mapped(&self, g: &SquareSymmetry) -> Cluster {
        Cluster {
            points: self.points.iter().map(|&p| g.apply(p)).collect(),
            center: g.apply_q(&self.center),
        }
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.trim() == name && !name.contains(['\n', '#'])
}

/// A periodic family `{cluster_k + λ : k, λ ∈ Λ}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringCertificate {
    name: String,
    lattice: IntLattice,
    clusters: Vec<Cluster>,
}

impl CoveringCertificate {
    pub fn new(name: impl Into<String>, lattice: IntLattice, clusters: Vec<Cluster>) -> Result<Self, CertificateError> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(CertificateError::BadName);
        }
        if clusters.is_empty() {
            return Err(CertificateError::NoClusters);
        }
        Ok(CoveringCertificate {
            name,
            lattice,
            clusters,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn clusters(&self) -> &[Cluster] {
        &self.clusters
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Result<Self, CertificateError> {
        let name = name.into();
        if !valid_name(&name) {
            return Err(CertificateError::BadName);
        }
        self.name = name;
        Ok(self)
    }

    /// All clusters shifted by `t`.
    pub fn translated(&self, t: IntPoint) -> CoveringCertificate {
        CoveringCertificate {
            name: self.name.clone(),
            lattice: self.lattice,
            clusters: self.clusters.iter().map(|c| c.translated(t)).collect(),
        }
    }

    /// The whole certificate under a symmetry of Z².
    pub fn mapped(&self, g: &SquareSymmetry) -> CoveringCertificate {
        CoveringCertificate {
            name: self.name.clone(),
            lattice: self.lattice.apply_symmetry(g),
            clusters: self.clusters.iter().map(|c| c.mapped(g)).collect(),
        }
    }

    pub fn total_points(&self) -> usize {
        self.clusters.iter().map(|c| c.points.len()).sum()
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CoveringCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = (self.lattice.u(), self.lattice.v());
        writeln!(f, "name = {}", self.name)?;
        writeln!(f, "lattice = {} {} {} {}", u.x, u.y, v.x, v.y)?;
        for c in &self.clusters {
            writeln!(f)?;
            writeln!(f, "[cluster]")?;
            writeln!(f, "center = {} {}", c.center.x, c.center.y)?;
            let mut line = String::new();
            for (i, p) in c.points.iter().enumerate() {
                if i > 0 {
                    line.push_str("; ");
                }
                write!(line, "{} {}", p.x, p.y)?;
            }
            writeln!(f, "points = {line}")?;
        }
        Ok(())
    }
}

fn parse_ints(field: &'static str, text: &str) -> Result<Vec<i64>, ParseErrorKind> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<i64>().map_err(|_| ParseErrorKind::MalformedInteger {
                field,
                text: t.to_string(),
            })
        })
        .collect()
}

fn arity<T>(field: &'static str, v: Vec<T>, expected: usize) -> Result<Vec<T>, ParseErrorKind> {
    if v.len() != expected {
        return Err(ParseErrorKind::Arity {
            field,
            expected,
            found: v.len(),
        });
    }
    Ok(v)
}

struct ClusterDraft {
    line: usize,
    center: Option<QPoint>,
    points: Vec<IntPoint>,
}

impl ClusterDraft {
    fn finish(self) -> Result<Cluster, ParseError> {
        let line = self.line;
        let center = self.center.ok_or(ParseError {
            line,
            kind: ParseErrorKind::Missing("center"),
        })?;
        Cluster::new(self.points, center).map_err(|e| ParseError { line, kind: e.into() })
    }
}

/// Parse the certificate text format.
pub fn parse(text: &str) -> Result<CoveringCertificate, ParseError> {
    let mut name: Option<String> = None;
    let mut lattice: Option<IntLattice> = None;
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut draft: Option<ClusterDraft> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let err = |kind: ParseErrorKind| ParseError { line: line_no, kind };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "[cluster]" {
            if let Some(d) = draft.take() {
                clusters.push(d.finish()?);
            }
            draft = Some(ClusterDraft {
                line: line_no,
                center: None,
                points: Vec::new(),
            });
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(err(ParseErrorKind::Unexpected(line.to_string())));
        };
        let (key, value) = (key.trim(), value.trim());
        match (&mut draft, key) {
            (None, "name") => {
                if name.is_some() {
                    return Err(err(ParseErrorKind::Repeated("name")));
                }
                if value.is_empty() {
                    return Err(err(CertificateError::BadName.into()));
                }
                name = Some(value.to_string());
            }
            (None, "lattice") => {
                if lattice.is_some() {
                    return Err(err(ParseErrorKind::Repeated("lattice")));
                }
                let v = parse_ints("lattice", value)
                    .and_then(|v| arity("lattice", v, 4))
                    .map_err(err)?;
                let l = IntLattice::from_coords(v[0], v[1], v[2], v[3]).map_err(|e| err(e.into()))?;
                lattice = Some(l);
            }
            (Some(d), "center") => {
                if d.center.is_some() {
                    return Err(err(ParseErrorKind::Repeated("center")));
                }
                let parts: Vec<&str> = value.split_whitespace().collect();
                let parts = arity("center", parts, 2).map_err(err)?;
                let coord = |s: &str| {
                    s.parse::<Rational>().map_err(|source| {
                        err(ParseErrorKind::MalformedRational {
                            field: "center",
                            source,
                        })
                    })
                };
                d.center = Some(QPoint::new(coord(parts[0])?, coord(parts[1])?));
            }
            (Some(d), "points") => {
                for pair in value.split(';') {
                    let v = parse_ints("points", pair)
                        .and_then(|v| arity("points", v, 2))
                        .map_err(err)?;
                    d.points.push(IntPoint::new(v[0], v[1]));
                }
            }
            _ => return Err(err(ParseErrorKind::Unexpected(line.to_string()))),
        }
    }
    if let Some(d) = draft.take() {
        clusters.push(d.finish()?);
    }
    let at_end = |kind| ParseError {
        line: last_line.max(1),
        kind,
    };
    let name = name.ok_or_else(|| at_end(ParseErrorKind::Missing("name")))?;
    let lattice = lattice.ok_or_else(|| at_end(ParseErrorKind::Missing("lattice")))?;
    CoveringCertificate::new(name, lattice, clusters).map_err(|e| at_end(e.into()))
}

/// Catalog entries as `(short id, name)`.
pub const CATALOG: [(&str, &str); 6] = [
    ("B1", "singleton"),
    ("B2", "square4"),
    ("B3", "domino-brick"),
    ("B4", "plus5"),
    ("B5", "block9"),
    ("B6", "twelve"),
];

fn pts(coords: &[(i64, i64)]) -> Vec<IntPoint> {
    coords.iter().map(|&(x, y)| IntPoint::new(x, y)).collect()
}

/// A catalog certificate by name or short id (`B1`..`B6`, case-insensitive).
pub fn builtin(name: &str) -> Result<CoveringCertificate, CertificateError> {
    let canonical = CATALOG
        .iter()
        .find(|(id, n)| id.eq_ignore_ascii_case(name) || n.eq_ignore_ascii_case(name))
        .map(|&(_, n)| n)
        .ok_or_else(|| CertificateError::UnknownBuiltin(name.to_string()))?;

    let lat = |a, b, c, d| IntLattice::from_coords(a, b, c, d).expect("catalog lattices have full rank");
    let (lattice, points, center) = match canonical {
        "singleton" => (lat(1, 0, 0, 1), pts(&[(0, 0)]), QPoint::origin()),
        "square4" => (
            lat(2, 0, 0, 2),
            pts(&[(0, 0), (1, 0), (0, 1), (1, 1)]),
            QPoint::frac(1, 2, 1, 2),
        ),
        "domino-brick" => (lat(2, 0, 1, 1), pts(&[(0, 0), (1, 0)]), QPoint::frac(1, 2, 0, 1)),
        "plus5" => (
            lat(2, 1, -1, 2),
            pts(&[(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]),
            QPoint::origin(),
        ),
        "block9" => (
            lat(3, 0, 0, 3),
            (-1..=1)
                .flat_map(|x| (-1..=1).map(move |y| IntPoint::new(x, y)))
                .collect(),
            QPoint::origin(),
        ),
        "twelve" => (
            lat(3, 2, 0, 4),
            pts(&[
                (0, -1),
                (0, 0),
                (0, 1),
                (0, 2),
                (1, -1),
                (1, 0),
                (1, 1),
                (1, 2),
                (-1, 0),
                (-1, 1),
                (2, 0),
                (2, 1),
            ]),
            QPoint::frac(1, 2, 1, 2),
        ),
        _ => unreachable!("catalog names are exhaustive"),
    };
    let cluster = Cluster::new(points, center).expect("catalog clusters are valid");
    Ok(CoveringCertificate::new(canonical, lattice, vec![cluster]).expect("catalog certificate is valid"))
}

/// Every catalog certificate, in catalog order.
pub fn catalog() -> Vec<CoveringCertificate> {
    CATALOG
        .iter()
        .map(|(id, _)| builtin(id).expect("catalog entry"))
        .collect()
}

pub const DEFAULT_MAX_INDEX: u64 = 30;
pub const DEFAULT_MAX_ORBITS: usize = 4;

/// What a search must achieve: `α² >= alpha_sq_min`, `β² <= beta_sq_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchTarget {
    pub alpha_sq_min: Rational,
    pub beta_sq_max: Rational,
    pub max_index: u64,
    pub max_orbits: usize,
}

impl SearchTarget {
    pub fn new(
        alpha_sq_min: Rational,
        beta_sq_max: Rational,
        max_index: u64,
        max_orbits: usize,
    ) -> Result<Self, CertificateError> {
        if !alpha_sq_min.is_positive() {
            return Err(CertificateError::InvalidInterval("alpha² must be positive".into()));
        }
        if beta_sq_max.is_negative() {
            return Err(CertificateError::InvalidInterval("beta² must be nonnegative".into()));
        }
        if Rational::from(4) * &beta_sq_max > alpha_sq_min {
            return Err(CertificateError::InvalidInterval(format!(
                "4·beta² = {} exceeds alpha² = {alpha_sq_min}",
                Rational::from(4) * &beta_sq_max
            )));
        }
        Ok(SearchTarget {
            alpha_sq_min,
            beta_sq_max,
            max_index,
            max_orbits,
        })
    }

    /// The `d` interval a certificate meeting this target is guaranteed to cover.
    pub fn interval(&self) -> Option<SqrtInterval> {
        let lo = SqrtRational::Finite(Rational::from(4) / &self.alpha_sq_min);
        let hi = match self.beta_sq_max.recip() {
            Some(r) => SqrtRational::Finite(r),
            None => SqrtRational::Infinity,
        };
        SqrtInterval::new(lo, hi).ok()
    }
}

/// `α² >= 4/d_lo²`, `β² <= 1/d_hi²`, with default search limits.
pub fn target_from_interval(d_lo: &SqrtRational, d_hi: &SqrtRational) -> Result<SearchTarget, CertificateError> {
    let lo_sq = match d_lo {
        SqrtRational::Finite(r) if r.is_positive() => r,
        SqrtRational::Finite(_) => {
            return Err(CertificateError::InvalidInterval(
                "lower endpoint must be positive".into(),
            ))
        }
        SqrtRational::Infinity => {
            return Err(CertificateError::InvalidInterval(
                "lower endpoint must be finite".into(),
            ))
        }
    };
    if d_lo > d_hi {
        return Err(CertificateError::InvalidInterval(format!("{d_lo} exceeds {d_hi}")));
    }
    let alpha_sq_min = Rational::from(4) / lo_sq;
    let beta_sq_max = match d_hi {
        SqrtRational::Finite(r) => r.recip().expect("upper endpoint >= lower > 0"),
        SqrtRational::Infinity => Rational::zero(),
    };
    SearchTarget::new(alpha_sq_min, beta_sq_max, DEFAULT_MAX_INDEX, DEFAULT_MAX_ORBITS)
}
