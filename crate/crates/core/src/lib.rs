//! Evaluate finite deterministic state-transition systems at ordinal
//! runtimes.
//!
//! - [`ordinal`]: Cantor-normal-form ordinals below ε₀, parity, von Neumann
//!   naturals.
//! - [`sts`]: systems, their text format, validation and rho analysis.
//! - [`eval`]: the state after a finite or transfinite runtime.
//! - [`analysis`]: the halving time schedule, ε–N witnesses, Grandi series.
//! - [`digits`]: π digits and the parity machine with no eventual period.

pub mod analysis;
pub mod digits;
pub mod eval;
pub mod ordinal;
pub mod sts;

pub use eval::{state_at, state_at_finite, EvalResult, LampState, Rule};
pub use ordinal::{parse_ordinal, Ordinal};
pub use sts::{parse_sts, RhoShape, StateId, StateTransitionSystem};
