//! Timekeeping and series: the halving jab schedule that fits ω steps into
//! two minutes, ε–N witnesses for its metrical limit, and the Grandi series
//! with its Cesàro means and groupings.
//!
//! All arithmetic is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("step index must be at least 1")]
    ZeroIndex,
    #[error("time {0} lies outside [0, 2]")]
    TimeOutOfRange(ExactRational),
    #[error("epsilon 0 is met only at the omega position, never by a finite N")]
    ZeroEpsilon,
    #[error("epsilon {0} is negative")]
    NegativeEpsilon(ExactRational),
    #[error("the Cesaro mean needs at least one term")]
    EmptyMean,
    #[error("invalid schedule: {0}")]
    InvalidSchedule(&'static str),
    #[error("invalid rational {0:?}")]
    BadRational(String),
}

/// Reduced fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    /// `2^exp` for any signed exponent.
    pub fn pow2(exp: i64) -> Self {
        let p = BigInt::one() << exp.unsigned_abs();
        if exp >= 0 {
            ExactRational::integer(p)
        } else {
            ExactRational::new(1, p)
        }
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::integer(n)
    }
}

/// `p/q`, or `p` when the denominator is 1.
impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for ExactRational {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AnalysisError::BadRational(s.to_string());
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(ExactRational::new(p, q))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Position reached at a given time: a finite step count, or ω at the
/// closing instant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepPosition {
    Step(u64),
    Omega,
}

impl PartialOrd for StepPosition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StepPosition {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (StepPosition::Step(a), StepPosition::Step(b)) => a.cmp(b),
            (StepPosition::Step(_), StepPosition::Omega) => Ordering::Less,
            (StepPosition::Omega, StepPosition::Step(_)) => Ordering::Greater,
            (StepPosition::Omega, StepPosition::Omega) => Ordering::Equal,
        }
    }
}

impl fmt::Display for StepPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepPosition::Step(n) => write!(f, "{n}"),
            StepPosition::Omega => f.write_str("omega"),
        }
    }
}

impl Serialize for StepPosition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            StepPosition::Step(n) => serializer.serialize_u64(*n),
            StepPosition::Omega => serializer.serialize_str("omega"),
        }
    }
}

/// Geometric series `a, a·r, a·r², …` with `0 < r < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricSchedule {
    first_term: ExactRational,
    ratio: ExactRational,
}

impl GeometricSchedule {
    pub fn new(first_term: ExactRational, ratio: ExactRational) -> Result<Self, AnalysisError> {
        if !ratio.is_positive() || ratio >= ExactRational::one() {
            return Err(AnalysisError::InvalidSchedule("ratio must lie in (0, 1)"));
        }
        if !first_term.is_positive() {
            return Err(AnalysisError::InvalidSchedule(
                "first term must be positive",
            ));
        }
        Ok(GeometricSchedule { first_term, ratio })
    }

    /// One minute, then half of the previous interval each time.
    pub fn lamp() -> Self {
        GeometricSchedule {
            first_term: ExactRational::one(),
            ratio: ExactRational::new(1, 2),
        }
    }

    pub fn first_term(&self) -> &ExactRational {
        &self.first_term
    }

    pub fn ratio(&self) -> &ExactRational {
        &self.ratio
    }

    /// `a / (1 − r)`.
    pub fn total(&self) -> ExactRational {
        &self.first_term / &(ExactRational::one() - self.ratio.clone())
    }

    /// Duration of the `n`-th step, `a·r^(n−1)`.
    pub fn term(&self, n: u64) -> Result<ExactRational, AnalysisError> {
        if n == 0 {
            return Err(AnalysisError::ZeroIndex);
        }
        Ok(&self.first_term * &rpow(&self.ratio, n - 1))
    }

    /// Time elapsed once `n` steps are done, `a·(1 − rⁿ)/(1 − r)`.
    pub fn partial_sum(&self, n: u64) -> ExactRational {
        &self.total() * &(ExactRational::one() - rpow(&self.ratio, n))
    }
}

fn rpow(r: &ExactRational, n: u64) -> ExactRational {
    ExactRational(num_traits::pow::Pow::pow(&r.0, n))
}

/// Duration of the `n`-th jab on the lamp schedule: `(1/2)^(n−1)`.
pub fn jab_time(n: u64) -> Result<ExactRational, AnalysisError> {
    GeometricSchedule::lamp().term(n)
}

/// Time elapsed after `n` jabs: `2 − 2^(1−n)`.
pub fn elapsed_after(n: u64) -> ExactRational {
    GeometricSchedule::lamp().partial_sum(n)
}

/// Largest `e ≥ 0` with `num · 2^e ≤ den`, for positive `num ≤ den`.
fn floor_log2_ratio(num: &BigInt, den: &BigInt) -> u64 {
    debug_assert!(num.is_positive() && num <= den);
    let mut e = den.bits().saturating_sub(num.bits());
    while (num << e) > *den {
        e -= 1;
    }
    while (num << (e + 1)) <= *den {
        e += 1;
    }
    e
}

/// Number of jabs completed by time `t`, or ω at `t = 2`.
pub fn position_at_time(t: &ExactRational) -> Result<StepPosition, AnalysisError> {
    let two = ExactRational::integer(2);
    if t.is_negative() || *t > two {
        return Err(AnalysisError::TimeOutOfRange(t.clone()));
    }
    if *t == two {
        return Ok(StepPosition::Omega);
    }
    // elapsed_after(n) ≤ t  ⇔  2^(1−n) ≥ d  ⇔  d·2^n ≤ 2  with d = 2 − t
    let d = &two - t;
    let n = floor_log2_ratio(d.numerator(), &(d.denominator() * 2));
    Ok(StepPosition::Step(n))
}

/// Least `N` such that `|elapsed_after(m) − 2| < ε` for every `m > N`.
///
/// The deviation at step `m` is exactly `2^(1−m)` and decreasing, so `N` is
/// the least `N ≥ 0` with `2^(−N) < ε`.
pub fn epsilon_witness(epsilon: &ExactRational) -> Result<u64, AnalysisError> {
    if epsilon.is_zero() {
        return Err(AnalysisError::ZeroEpsilon);
    }
    if epsilon.is_negative() {
        return Err(AnalysisError::NegativeEpsilon(epsilon.clone()));
    }
    if *epsilon > ExactRational::one() {
        return Ok(0);
    }
    // least N with p·2^N > q, i.e. one past the largest e with p·2^e ≤ q
    Ok(floor_log2_ratio(epsilon.numerator(), epsilon.denominator()) + 1)
}

/// `|elapsed_after(m) − 2|`.
pub fn deviation(m: u64) -> ExactRational {
    (ExactRational::integer(2) - elapsed_after(m)).abs()
}

/// Partial sums `s₁ … s_count` of `1 − 1 + 1 − 1 + …`.
pub fn grandi_partial_sums(count: usize) -> Vec<i64> {
    (0..count)
        .scan(0i64, |s, i| {
            *s += if i % 2 == 0 { 1 } else { -1 };
            Some(*s)
        })
        .collect()
}

/// Average of the first `count` Grandi partial sums.
pub fn cesaro_mean(count: usize) -> Result<ExactRational, AnalysisError> {
    if count == 0 {
        return Err(AnalysisError::EmptyMean);
    }
    let total: i64 = grandi_partial_sums(count).iter().sum();
    Ok(ExactRational::new(total, count as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Grouping {
    /// `1 + (−1 + 1) + (−1 + 1) + …`
    LeadingUnpaired,
    /// `(1 − 1) + (1 − 1) + …`
    FullyPaired,
}

impl Grouping {
    pub fn name(self) -> &'static str {
        match self {
            Grouping::LeadingUnpaired => "leading-unpaired",
            Grouping::FullyPaired => "fully-paired",
        }
    }
}

/// Sums `pairs` parenthesized pairs of Grandi terms under `grouping`.
pub fn grouped_sum(pairs: usize, grouping: Grouping) -> i64 {
    let (lead, pair) = match grouping {
        Grouping::LeadingUnpaired => (1, [-1i64, 1]),
        Grouping::FullyPaired => (0, [1i64, -1]),
    };
    lead + (0..pairs).map(|_| pair.iter().sum::<i64>()).sum::<i64>()
}

/// `1/n`.
pub fn harmonic_term(n: u64) -> Result<ExactRational, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::ZeroIndex);
    }
    Ok(ExactRational::new(1, n))
}

/// Least `N` with `1/m < ε` for every `m > N`, namely `⌊1/ε⌋`.
pub fn harmonic_witness(epsilon: &ExactRational) -> Result<BigInt, AnalysisError> {
    if epsilon.is_zero() {
        return Err(AnalysisError::ZeroEpsilon);
    }
    if epsilon.is_negative() {
        return Err(AnalysisError::NegativeEpsilon(epsilon.clone()));
    }
    Ok((&ExactRational::one() / epsilon).floor())
}
