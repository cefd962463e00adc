//! Exact arithmetic kernel.
//!
//! Every geometric quantity in this crate is a squared distance and therefore
//! rational. Square roots only appear at the reporting boundary, as
//! [`SqrtRational`] values that are compared through their radicands.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed square-root value `{0}`")]
    MalformedSqrt(String),
    #[error("negative radicand `{0}`")]
    NegativeRadicand(String),
    #[error("empty interval: lower endpoint {lo} exceeds upper endpoint {hi}")]
    EmptyInterval { lo: String, hi: String },
}

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, NumError> {
        let (n, d) = (numer.into(), denom.into());
        if d.is_zero() {
            return Err(NumError::ZeroDenominator(format!("{n}/{d}")));
        }
        Ok(Rational(BigRational::new(n, d)))
    }

    /// Panics on a zero denominator; meant for literals.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Floor as a machine integer. Panics if out of `i64` range.
    pub fn floor_i64(&self) -> i64 {
        self.floor().to_i64().expect("rational floor out of i64 range")
    }

    pub fn ceil_i64(&self) -> i64 {
        self.ceil().to_i64().expect("rational ceiling out of i64 range")
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Non-normative decimal approximation.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact square root when the value is the square of a rational.
    pub fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational(BigRational::new(n, d)))
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Smallest integer `k >= 0` with `k * k >= r`, for nonnegative `r`.
pub(crate) fn ceil_sqrt(r: &Rational) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    let c = r.ceil();
    let s = c.sqrt();
    if &s * &s >= c {
        s
    } else {
        s + 1
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || NumError::MalformedRational(s.to_string());
        let parse_int = |p: &str| -> Result<BigInt, NumError> {
            let p = p.trim();
            let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            p.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Rational::from_int(parse_int(t)?)),
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_negative() {
                    return Err(bad());
                }
                if d.is_zero() {
                    return Err(NumError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational(BigRational::new(n, d)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($tr::$method(self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($tr::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division by zero panics, as for the underlying type.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// A nonnegative real `√q` with `q` rational, or positive infinity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SqrtRational {
    Finite(Rational),
    Infinity,
}

impl SqrtRational {
    /// `√radicand`; rejects negative radicands.
    pub fn sqrt_of(radicand: Rational) -> Result<Self, NumError> {
        if radicand.is_negative() {
            return Err(NumError::NegativeRadicand(radicand.to_string()));
        }
        Ok(SqrtRational::Finite(radicand))
    }

    /// The nonnegative rational `value`, stored as `√(value²)`.
    pub fn from_rational(value: &Rational) -> Result<Self, NumError> {
        if value.is_negative() {
            return Err(NumError::NegativeRadicand(value.to_string()));
        }
        Ok(SqrtRational::Finite(value.square()))
    }

    pub fn radicand(&self) -> Option<&Rational> {
        match self {
            SqrtRational::Finite(r) => Some(r),
            SqrtRational::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SqrtRational::Infinity)
    }

    /// The exact value when it is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        self.radicand().and_then(Rational::exact_sqrt)
    }

    /// `floor(den·√r)/den`, the largest multiple of `1/den` not above the value.
    pub fn floor_approx(&self, den: u64) -> Option<Rational> {
        assert!(den > 0);
        let r = self.radicand()?;
        let d = BigInt::from(den);
        let scaled = (r * &Rational::from_int(&d * &d)).floor();
        Some(Rational(BigRational::new(scaled.sqrt(), d)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SqrtRational::Finite(r) => r.to_f64().sqrt(),
            SqrtRational::Infinity => f64::INFINITY,
        }
    }

    /// Human-oriented exact form, e.g. `2/√13`, `√2`, `2/3`, `∞`.
    pub fn pretty(&self) -> String {
        let r = match self {
            SqrtRational::Infinity => return "∞".to_string(),
            SqrtRational::Finite(r) => r,
        };
        let n = exact_isqrt(r.numer());
        let d = exact_isqrt(r.denom());
        match (n, d) {
            (Some(n), Some(d)) => Rational(BigRational::new(n, d)).to_string(),
            (Some(n), None) => format!("{}/√{}", n, r.denom()),
            (None, Some(d)) if d.is_one() => format!("√{}", r.numer()),
            (None, Some(d)) => format!("√{}/{}", r.numer(), d),
            (None, None) => format!("√({r})"),
        }
    }
}

/// Compare `√a` with `√b` exactly.
pub fn sqrt_cmp(a: &SqrtRational, b: &SqrtRational) -> Ordering {
    match (a, b) {
        (SqrtRational::Infinity, SqrtRational::Infinity) => Ordering::Equal,
        (SqrtRational::Infinity, _) => Ordering::Greater,
        (_, SqrtRational::Infinity) => Ordering::Less,
        (SqrtRational::Finite(x), SqrtRational::Finite(y)) => x.cmp(y),
    }
}

impl PartialOrd for SqrtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SqrtRational {
    fn cmp(&self, other: &Self) -> Ordering {
        sqrt_cmp(self, other)
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SqrtRational::Finite(r) => write!(f, "sqrt({r})"),
            SqrtRational::Infinity => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SqrtRational {
    type Err = NumError;

    /// Accepts `inf`, `sqrt(p/q)`, or a plain nonnegative rational `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "inf" || t == "∞" {
            return Ok(SqrtRational::Infinity);
        }
        if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let r: Rational = inner.parse()?;
            return SqrtRational::sqrt_of(r);
        }
        if t.starts_with("sqrt") {
            return Err(NumError::MalformedSqrt(s.to_string()));
        }
        let r: Rational = t.parse()?;
        SqrtRational::from_rational(&r)
    }
}

impl Serialize for SqrtRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Closed interval `[lo, hi]` of square-root values; `hi` may be infinite.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SqrtInterval {
    lo: SqrtRational,
    hi: SqrtRational,
}

impl SqrtInterval {
    pub fn new(lo: SqrtRational, hi: SqrtRational) -> Result<Self, NumError> {
        if lo.is_infinite() || lo > hi {
            return Err(NumError::EmptyInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(SqrtInterval { lo, hi })
    }

    pub fn lo(&self) -> &SqrtRational {
        &self.lo
    }

    pub fn hi(&self) -> &SqrtRational {
        &self.hi
    }

    pub fn contains(&self, x: &SqrtRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        match SqrtRational::from_rational(x) {
            Ok(s) => self.contains(&s),
            Err(_) => false,
        }
    }

    pub fn contains_interval(&self, other: &SqrtInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn pretty(&self) -> String {
        if self.hi.is_infinite() {
            format!("[{}, ∞)", self.lo.pretty())
        } else {
            format!("[{}, {}]", self.lo.pretty(), self.hi.pretty())
        }
    }
}

impl fmt::Display for SqrtInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for SqrtInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Open interval `(lo, hi)` left uncovered between two union components.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Gap {
    pub lo: SqrtRational,
    pub hi: SqrtRational,
}

impl Gap {
    /// Non-normative width estimate.
    pub fn approx_width(&self) -> f64 {
        self.hi.to_f64() - self.lo.to_f64()
    }

    pub fn pretty(&self) -> String {
        format!("({}, {})", self.lo.pretty(), self.hi.pretty())
    }
}

impl fmt::Debug for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalUnion {
    pub components: Vec<SqrtInterval>,
    pub gaps: Vec<Gap>,
}

impl IntervalUnion {
    pub fn contains(&self, x: &SqrtRational) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }

    pub fn contains_interval(&self, iv: &SqrtInterval) -> bool {
        self.components.iter().any(|c| c.contains_interval(iv))
    }
}

/// Merge closed intervals into sorted, pairwise disjoint, non-touching components.
pub fn interval_union(intervals: &[SqrtInterval]) -> IntervalUnion {
    let mut sorted: Vec<&SqrtInterval> = intervals.iter().collect();
    sorted.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));

    let mut components: Vec<SqrtInterval> = Vec::new();
    for iv in sorted {
        match components.last_mut() {
            // closed intervals sharing an endpoint merge
            Some(last) if iv.lo <= last.hi => {
                if iv.hi > last.hi {
                    last.hi = iv.hi.clone();
                }
            }
            _ => components.push(iv.clone()),
        }
    }
    let gaps = components
        .windows(2)
        .map(|w| Gap {
            lo: w[0].hi.clone(),
            hi: w[1].lo.clone(),
        })
        .collect();
    IntervalUnion { components, gaps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn sq(s: &str) -> SqrtRational {
        s.parse().unwrap()
    }

    fn iv(lo: &str, hi: &str) -> SqrtInterval {
        SqrtInterval::new(sq(lo), sq(hi)).unwrap()
    }

    #[test]
    fn rational_lowest_terms_and_display() {
        assert!("6/-4".parse::<Rational>().is_err());
        assert_eq!(q("4/2").to_string(), "2");
        assert_eq!(q("-6/4").to_string(), "-3/2");
        assert_eq!(q("0/7").to_string(), "0");
        assert_eq!(Rational::frac(3, -6), q("-1/2"));
    }

    #[test]
    fn rational_parse_errors() {
        assert!(matches!("1/0".parse::<Rational>(), Err(NumError::ZeroDenominator(_))));
        assert!(matches!("abc".parse::<Rational>(), Err(NumError::MalformedRational(_))));
        assert!(matches!("1/".parse::<Rational>(), Err(NumError::MalformedRational(_))));
        assert!(matches!("1.5".parse::<Rational>(), Err(NumError::MalformedRational(_))));
        assert!(matches!(
            "1/2/3".parse::<Rational>(),
            Err(NumError::MalformedRational(_))
        ));
    }

    #[test]
    fn sqrt_cmp_examples() {
        assert_eq!(sqrt_cmp(&sq("sqrt(4/13)"), &sq("sqrt(2/5)")), Ordering::Less);
        assert_eq!(sqrt_cmp(&sq("sqrt(2)"), &sq("sqrt(2)")), Ordering::Equal);
        // 1/√2 < 4/√26
        assert_eq!(sqrt_cmp(&sq("sqrt(1/2)"), &sq("sqrt(16/26)")), Ordering::Less);
        assert_eq!(sqrt_cmp(&sq("inf"), &sq("sqrt(1000000)")), Ordering::Greater);
        assert_eq!(sqrt_cmp(&sq("inf"), &sq("inf")), Ordering::Equal);
    }

    #[test]
    fn sqrt_parse_and_pretty() {
        assert_eq!(sq("2/3"), sq("sqrt(4/9)"));
        assert_eq!(sq("sqrt(4/13)").pretty(), "2/√13");
        assert_eq!(sq("sqrt(2)").pretty(), "√2");
        assert_eq!(sq("sqrt(2/5)").pretty(), "√(2/5)");
        assert_eq!(sq("sqrt(4/9)").pretty(), "2/3");
        assert_eq!(sq("inf").to_string(), "inf");
        assert_eq!(sq("sqrt(1/2)").to_string(), "sqrt(1/2)");
        assert!(matches!(
            "sqrt(-1)".parse::<SqrtRational>(),
            Err(NumError::NegativeRadicand(_))
        ));
        assert!(matches!(
            "sqrt(2".parse::<SqrtRational>(),
            Err(NumError::MalformedSqrt(_))
        ));
        assert!("-1".parse::<SqrtRational>().is_err());
    }

    #[test]
    fn floor_approx_of_root_two() {
        let r2: SqrtRational = "sqrt(2)".parse().unwrap();
        assert_eq!(r2.floor_approx(1000), Some(Rational::frac(1414, 1000)));
        let third = SqrtRational::from_rational(&Rational::frac(1, 3)).unwrap();
        assert_eq!(third.floor_approx(3), Some(Rational::frac(1, 3)));
        assert_eq!(SqrtRational::Infinity.floor_approx(10), None);
    }

    #[test]
    fn interval_rejects_empty() {
        assert!(SqrtInterval::new(sq("2"), sq("1")).is_err());
        assert!(SqrtInterval::new(sq("inf"), sq("inf")).is_err());
        assert!(SqrtInterval::new(sq("1"), sq("1")).is_ok());
    }

    #[test]
    fn union_merges_shared_endpoints() {
        let u = interval_union(&[iv("1", "sqrt(2)"), iv("sqrt(2)", "2"), iv("2", "inf")]);
        assert_eq!(u.components, vec![iv("1", "inf")]);
        assert!(u.gaps.is_empty());
    }

    #[test]
    fn union_single() {
        let u = interval_union(&[iv("1", "2")]);
        assert_eq!(u.components, vec![iv("1", "2")]);
        assert!(u.gaps.is_empty());
    }

    #[test]
    fn union_of_catalog_and_searched_intervals() {
        let figs = [
            iv("sqrt(4/13)", "sqrt(2/5)"),
            iv("sqrt(2/5)", "2/3"),
            iv("2/3", "sqrt(1/2)"),
            iv("sqrt(16/26)", "sqrt(4/5)"),
            iv("sqrt(4/5)", "1"),
            iv("1", "sqrt(2)"),
            iv("sqrt(2)", "2"),
            iv("2", "inf"),
        ];
        let u = interval_union(&figs);
        assert_eq!(
            u.components,
            vec![iv("sqrt(4/13)", "sqrt(1/2)"), iv("sqrt(8/13)", "inf")]
        );
        assert_eq!(u.gaps.len(), 1);
        assert_eq!(u.gaps[0].lo, sq("sqrt(1/2)"));
        assert_eq!(u.gaps[0].hi, sq("sqrt(8/13)"));
        assert!((u.gaps[0].approx_width() - 0.077).abs() < 0.0005);
    }

    #[test]
    fn nested_and_disjoint_union() {
        let u = interval_union(&[iv("1", "5"), iv("2", "3"), iv("7", "8")]);
        assert_eq!(u.components, vec![iv("1", "5"), iv("7", "8")]);
        assert_eq!(u.gaps.len(), 1);
    }
}
