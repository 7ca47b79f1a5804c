//! Decimal digits of π and the parity machine that reads them.
//!
//! Digits come from a bounded decimal spigot run with guard positions; the
//! prefix is accepted only if a second run with more guard positions agrees
//! on it. The parity machine emits 1 for an even digit and 0 for an odd one.
//! It has no eventual period, so it has no state at any limit runtime.

use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

use crate::ordinal::Ordinal;

pub const DEFAULT_MAX_INDEX: usize = 1000;

/// Extra digits computed past the requested prefix.
pub const GUARD_DIGITS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigitsError {
    #[error("index {index} is beyond the configured bound {max_index}")]
    IndexBeyondBound { index: u64, max_index: usize },
    #[error("no finite period: the parity stream has no state at runtime {runtime}")]
    NoFinitePeriod { runtime: Ordinal },
    #[error("scan bounds invalid: {0}")]
    ScanBounds(String),
    #[error("spigot output unstable at index {index}")]
    Unstable { index: usize },
}

/// Rabinowitz–Wagon spigot: returns `count` leading decimal digits of π,
/// the last few of which may be wrong when a run of 9s is still pending.
fn spigot(count: usize) -> Vec<u8> {
    let len = 10 * count / 3 + 1;
    let mut rem = vec![2u64; len];
    let mut out = Vec::with_capacity(count + 1);
    let mut predigit = 0u8;
    let mut nines = 0usize;
    for _ in 0..count {
        let mut carry = 0u64;
        for i in (1..=len as u64).rev() {
            let x = 10 * rem[i as usize - 1] + carry * i;
            let den = 2 * i - 1;
            rem[i as usize - 1] = x % den;
            carry = x / den;
        }
        rem[0] = carry % 10;
        let q = (carry / 10) as u8;
        match q {
            9 => nines += 1,
            10 => {
                out.push(predigit + 1);
                out.extend(std::iter::repeat_n(0, nines));
                predigit = 0;
                nines = 0;
            }
            _ => {
                out.push(predigit);
                predigit = q;
                out.extend(std::iter::repeat_n(9, nines));
                nines = 0;
            }
        }
    }
    out.push(predigit);
    // the first emitted predigit is a placeholder zero
    out.remove(0);
    out.truncate(count);
    out
}

fn stable_prefix(count: usize) -> Result<Vec<u8>, DigitsError> {
    let first = spigot(count + GUARD_DIGITS);
    let second = spigot(count + 2 * GUARD_DIGITS);
    if let Some(index) = (0..count).find(|&i| first[i] != second[i]) {
        return Err(DigitsError::Unstable { index });
    }
    Ok(first[..count].to_vec())
}

/// Decimal digits of π at indices `0..=max_index`; index 0 is the leading 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitStream {
    digits: Arc<[u8]>,
}

impl DigitStream {
    pub fn pi(max_index: usize) -> Result<Self, DigitsError> {
        Ok(DigitStream {
            digits: Arc::from(stable_prefix(max_index + 1)?),
        })
    }

    /// Shared stream with the default bound, computed once.
    pub fn default_pi() -> &'static DigitStream {
        static STREAM: OnceLock<DigitStream> = OnceLock::new();
        STREAM.get_or_init(|| DigitStream::pi(DEFAULT_MAX_INDEX).expect("spigot is stable"))
    }

    pub fn max_index(&self) -> usize {
        self.digits.len() - 1
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn digit_at(&self, index: u64) -> Result<u8, DigitsError> {
        usize::try_from(index)
            .ok()
            .and_then(|i| self.digits.get(i).copied())
            .ok_or(DigitsError::IndexBeyondBound {
                index,
                max_index: self.max_index(),
            })
    }

    /// 1 for an even digit, 0 for an odd one.
    pub fn parity_bit(&self, index: u64) -> Result<u8, DigitsError> {
        Ok(parity_of(self.digit_at(index)?))
    }

    /// Parity bits for indices `0..len`.
    pub fn parity_prefix(&self, len: usize) -> Result<Vec<u8>, DigitsError> {
        if len > self.digits.len() {
            return Err(DigitsError::IndexBeyondBound {
                index: len as u64 - 1,
                max_index: self.max_index(),
            });
        }
        Ok(self.digits[..len].iter().copied().map(parity_of).collect())
    }

    /// Parity output at an ordinal runtime. Limit runtimes have no value.
    pub fn parity_state_at(&self, runtime: &Ordinal) -> Result<u8, DigitsError> {
        match runtime.as_finite() {
            Some(n) => self.parity_bit(n),
            None => Err(DigitsError::NoFinitePeriod {
                runtime: runtime.clone(),
            }),
        }
    }
}

fn parity_of(d: u8) -> u8 {
    u8::from(d.is_multiple_of(2))
}

pub fn pi_digit(n: u64) -> Result<u8, DigitsError> {
    DigitStream::default_pi().digit_at(n)
}

pub fn parity_bit(n: u64) -> Result<u8, DigitsError> {
    DigitStream::default_pi().parity_bit(n)
}

pub fn pi_parity_state_at(runtime: &Ordinal) -> Result<u8, DigitsError> {
    DigitStream::default_pi().parity_state_at(runtime)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodScanReport {
    pub prefix_length: usize,
    pub max_tail: usize,
    pub max_period: usize,
    /// Minimal `(tail, period)`: least tail first, then least period.
    pub found: Option<(usize, usize)>,
}

/// Searches `stream[..prefix_length]` for a tail `μ ≤ max_tail` after which
/// the prefix repeats with period `k ≤ max_period`.
pub fn period_scan(
    stream: &[u8],
    prefix_length: usize,
    max_tail: usize,
    max_period: usize,
) -> Result<PeriodScanReport, DigitsError> {
    if prefix_length > stream.len() {
        return Err(DigitsError::ScanBounds(format!(
            "prefix length {prefix_length} exceeds the {} available symbols",
            stream.len()
        )));
    }
    if max_period == 0 {
        return Err(DigitsError::ScanBounds(
            "max period must be at least 1".into(),
        ));
    }
    if max_tail + 2 * max_period > prefix_length {
        return Err(DigitsError::ScanBounds(format!(
            "max tail {max_tail} + 2 * max period {max_period} exceeds prefix length {prefix_length}"
        )));
    }
    let s = &stream[..prefix_length];
    let found = (0..=max_tail).find_map(|mu| {
        (1..=max_period)
            .find(|&k| (mu..prefix_length - k).all(|i| s[i] == s[i + k]))
            .map(|k| (mu, k))
    });
    Ok(PeriodScanReport {
        prefix_length,
        max_tail,
        max_period,
        found,
    })
}
