//! State of a system after an ordinal number of steps.
//!
//! Finite runtimes are plain iteration. At a limit runtime the system sits
//! at the entry node of the cycle its run falls into, and a runtime
//! `λ + q` takes `q` further transitions from there. Every finite system
//! has a tail and period below ω, so the entry-node rule applies to every
//! nonzero limit part, including nested limits such as ω².

use serde::Serialize;

use crate::ordinal::Ordinal;
use crate::sts::{RhoShape, StateId, StateTransitionSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Finite runtime: ordinary iteration.
    FiniteIteration,
    /// Limit runtime: the entry node, reached by no preceding step.
    LimitEntryNode,
    /// `λ + q` with `q > 0`: `q` transitions on from the entry node.
    LimitPlusRemainder,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::FiniteIteration => "finite-iteration",
            Rule::LimitEntryNode => "limit-entry-node",
            Rule::LimitPlusRemainder => "limit-plus-remainder",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvalResult {
    pub final_state: StateId,
    pub runtime: Ordinal,
    pub rho: RhoShape,
    pub rule_applied: Rule,
}

/// State after `n` steps, read off the rho shape: a direct walk inside the
/// tail, a cycle index beyond it.
pub fn state_at_finite(sts: &StateTransitionSystem, start: StateId, n: u64) -> StateId {
    finite_with_rho(sts, &sts.rho_analyze(start), n)
}

fn finite_with_rho(sts: &StateTransitionSystem, rho: &RhoShape, n: u64) -> StateId {
    let mu = rho.tail_length as u64;
    if n < mu {
        sts.run(rho.start).nth(n as usize).expect("run is infinite")
    } else {
        rho.cycle[((n - mu) % rho.period as u64) as usize]
    }
}

pub fn state_at(sts: &StateTransitionSystem, start: StateId, runtime: &Ordinal) -> EvalResult {
    let rho = sts.rho_analyze(start);
    let split = runtime.decompose();
    let q = split.finite_tail;
    let (final_state, rule_applied) = if split.limit_part.is_zero() {
        (finite_with_rho(sts, &rho, q), Rule::FiniteIteration)
    } else {
        // the entry node lies on the cycle, so q more steps stay on it
        let at = rho.cycle[(q % rho.period as u64) as usize];
        let rule = if q == 0 {
            Rule::LimitEntryNode
        } else {
            Rule::LimitPlusRemainder
        };
        (at, rule)
    };
    EvalResult {
        final_state,
        runtime: runtime.clone(),
        rho,
        rule_applied,
    }
}

/// Samples finite runtimes `μ + m·k + q` for `m = 1..=sample_count` and
/// every `q < k`, checking each against the value at `ω + q`.
pub fn verify_limit_consistency(
    sts: &StateTransitionSystem,
    start: StateId,
    sample_count: u64,
) -> bool {
    let rho = sts.rho_analyze(start);
    let (mu, k) = (rho.tail_length as u64, rho.period as u64);
    let omega = Ordinal::omega();
    (0..k).all(|q| {
        let at_limit = state_at(sts, start, &omega.add(&Ordinal::from(q))).final_state;
        (1..=sample_count).all(|m| state_at_finite(sts, start, mu + m * k + q) == at_limit)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LampState {
    Off,
    On,
}

impl LampState {
    pub fn label(self) -> &'static str {
        match self {
            LampState::Off => "off",
            LampState::On => "on",
        }
    }
}

/// State of the lamp after ω presses, evaluated on the lamp system.
pub fn lamp_answer(initial: LampState) -> LampState {
    let lamp = StateTransitionSystem::thomson_lamp();
    let start = lamp.id(initial.label()).expect("lamp has off and on");
    let result = state_at(&lamp, start, &Ordinal::omega());
    let answer = match lamp.label(result.final_state) {
        "off" => LampState::Off,
        _ => LampState::On,
    };
    assert_eq!(answer, initial, "lamp must end in its initial state");
    answer
}
