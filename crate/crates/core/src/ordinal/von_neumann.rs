//! Hereditarily finite sets and the von Neumann naturals built from them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub const DEFAULT_VON_NEUMANN_BOUND: u64 = 16;

/// Largest `n` accepted by [`even_split_exists`].
pub const EVEN_SPLIT_SCOPE: u64 = 20;

/// Two disjoint equinumerous halves of `{0..n-1}`.
pub type EvenSplit = (BTreeSet<u64>, BTreeSet<u64>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("n = {n} exceeds the bound {bound}")]
    BoundExceeded { n: u64, bound: u64 },
}

/// A hereditarily finite set.
///
/// Elements are stored deduplicated and sorted under a canonical order, and
/// shared through `Arc`, so `vn(n)` costs O(n) nodes although its hereditary
/// expansion has 2ⁿ. Equality is extensional.
#[derive(Clone)]
pub struct NestedSet {
    elements: Arc<[NestedSet]>,
}

impl NestedSet {
    pub fn empty() -> Self {
        NestedSet {
            elements: Arc::from(Vec::new()),
        }
    }

    pub fn from_elements<I: IntoIterator<Item = NestedSet>>(elements: I) -> Self {
        let mut v: Vec<NestedSet> = elements.into_iter().collect();
        v.sort();
        v.dedup();
        NestedSet {
            elements: Arc::from(v),
        }
    }

    pub fn elements(&self) -> &[NestedSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &NestedSet) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &NestedSet) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    /// `self ∪ {self}`.
    pub fn successor(&self) -> NestedSet {
        NestedSet::from_elements(self.elements.iter().cloned().chain([self.clone()]))
    }

    /// Number of nodes in the fully expanded membership tree, counting `self`.
    pub fn hereditary_size(&self) -> u128 {
        1 + self
            .elements
            .iter()
            .map(NestedSet::hereditary_size)
            .sum::<u128>()
    }
}

impl PartialEq for NestedSet {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for NestedSet {}

impl PartialOrd for NestedSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NestedSet {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.elements, &other.elements) {
            return Ordering::Equal;
        }
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.iter().cmp(other.elements.iter()))
    }
}

impl fmt::Debug for NestedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements.iter()).finish()
    }
}

impl fmt::Display for NestedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub fn von_neumann_set(n: u64) -> Result<NestedSet, SetError> {
    von_neumann_set_bounded(n, DEFAULT_VON_NEUMANN_BOUND)
}

/// The von Neumann natural `n`, built from ∅ by repeated `a ∪ {a}`.
pub fn von_neumann_set_bounded(n: u64, bound: u64) -> Result<NestedSet, SetError> {
    if n > bound {
        return Err(SetError::BoundExceeded { n, bound });
    }
    Ok((0..n).fold(NestedSet::empty(), |a, _| a.successor()))
}

pub fn cardinality(s: &NestedSet) -> usize {
    s.len()
}

/// Searches every bipartition of `{0..n-1}` for two disjoint equinumerous
/// halves covering the set.
pub fn even_split_exists(n: u64) -> Result<Option<EvenSplit>, SetError> {
    if n > EVEN_SPLIT_SCOPE {
        return Err(SetError::BoundExceeded {
            n,
            bound: EVEN_SPLIT_SCOPE,
        });
    }
    let full: u32 = ((1u64 << n) - 1) as u32;
    for mask in 0..=full {
        let left = mask.count_ones();
        let right = (full & !mask).count_ones();
        if left == right {
            let pick = |m: u32| (0..n).filter(|i| m & (1 << i) != 0).collect();
            return Ok(Some((pick(mask), pick(full & !mask))));
        }
    }
    Ok(None)
}
