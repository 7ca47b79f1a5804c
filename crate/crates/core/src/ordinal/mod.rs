//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `ω^e₁·c₁ + ω^e₂·c₂ + …` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients.
//! Every constructor returns the canonical form, so derived structural
//! equality coincides with ordinal equality.

mod parse;
mod von_neumann;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use parse::{parse_ordinal, ParseError, MAX_EXPONENT_DEPTH};
pub use von_neumann::{
    cardinality, even_split_exists, von_neumann_set, von_neumann_set_bounded, EvenSplit, NestedSet,
    SetError, DEFAULT_VON_NEUMANN_BOUND, EVEN_SPLIT_SCOPE,
};

/// One `ω^exponent · coefficient` summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: Ordinal,
    coefficient: u64,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> u64 {
        self.coefficient
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Split of an ordinal into `limit_part + finite_tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitDecomposition {
    /// Zero or a limit ordinal.
    pub limit_part: Ordinal,
    pub finite_tail: u64,
}

impl Ordinal {
    pub const fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::from(1)
    }

    pub fn omega() -> Self {
        Ordinal::omega_power(Ordinal::one(), 1)
    }

    /// `ω^exponent · coefficient`; a zero coefficient yields 0.
    pub fn omega_power(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs in any order,
    /// normalizing by left-to-right ordinal addition.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Ordinal, u64)>,
    {
        terms.into_iter().fold(Ordinal::zero(), |acc, (e, c)| {
            acc.add(&Ordinal::omega_power(e, c))
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.as_finite().is_some()
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    /// Exponents strictly decreasing, coefficients positive, recursively.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.coefficient >= 1 && t.exponent.is_canonical())
            && self
                .terms
                .windows(2)
                .all(|w| w[0].exponent.compare(&w[1].exponent) == Ordering::Greater)
    }

    /// Lexicographic on the term sequence: exponent first, then coefficient.
    pub fn compare(&self, other: &Ordinal) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a
                .exponent
                .compare(&b.exponent)
                .then(a.coefficient.cmp(&b.coefficient));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    pub fn successor(&self) -> Ordinal {
        self.add(&Ordinal::one())
    }

    /// Ordinal sum `self + rhs`. Terms of `self` below the leading exponent of
    /// `rhs` are absorbed.
    ///
    /// Panics if a merged coefficient overflows `u64`.
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut rest = rhs.terms.iter();
        for t in &self.terms {
            match t.exponent.compare(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    let coefficient = t
                        .coefficient
                        .checked_add(lead.coefficient)
                        .expect("ordinal coefficient overflow");
                    terms.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient,
                    });
                    rest.next();
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rest.cloned());
        let out = Ordinal { terms };
        debug_assert!(out.is_canonical());
        out
    }

    /// Ordinal product `self · rhs`.
    ///
    /// Uses `a · ω^e = ω^(lead(a) + e)` for `e > 0` and
    /// `a · n = ω^lead(a)·(c·n) + rest(a)` for finite `n`, distributing over
    /// the terms of `rhs`. Panics on coefficient overflow.
    pub fn multiply(&self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = self.terms.first() else {
            return Ordinal::zero();
        };
        let mut out = Ordinal::zero();
        for t in &rhs.terms {
            let piece = if t.exponent.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].coefficient = lead
                    .coefficient
                    .checked_mul(t.coefficient)
                    .expect("ordinal coefficient overflow");
                Ordinal { terms }
            } else {
                Ordinal::omega_power(lead.exponent.add(&t.exponent), t.coefficient)
            };
            out = out.add(&piece);
        }
        debug_assert!(out.is_canonical());
        out
    }

    /// True for nonzero ordinals without a predecessor.
    pub fn is_limit(&self) -> bool {
        self.terms.last().is_some_and(|t| !t.exponent.is_zero())
    }

    pub fn decompose(&self) -> LimitDecomposition {
        match self.terms.split_last() {
            Some((last, init)) if last.exponent.is_zero() => LimitDecomposition {
                limit_part: Ordinal {
                    terms: init.to_vec(),
                },
                finite_tail: last.coefficient,
            },
            _ => LimitDecomposition {
                limit_part: self.clone(),
                finite_tail: 0,
            },
        }
    }

    /// Parity of the finite tail. A limit ordinal λ satisfies `2·λ = λ`, so
    /// only the finite tail can make an ordinal odd.
    pub fn is_even(&self) -> bool {
        self.decompose().finite_tail.is_multiple_of(2)
    }
}

impl LimitDecomposition {
    pub fn recompose(&self) -> Ordinal {
        self.limit_part.add(&Ordinal::from(self.finite_tail))
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::omega_power(Ordinal::zero(), n)
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl std::ops::Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl std::ops::Mul for &Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::multiply(self, rhs)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match t.exponent.as_finite() {
                Some(0) => write!(f, "{}", t.coefficient)?,
                Some(1) => f.write_str("w")?,
                Some(n) => write!(f, "w^{n}")?,
                None => write!(f, "w^({})", t.exponent)?,
            }
            if !t.exponent.is_zero() && t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ordinal(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
