//! Finite deterministic state-transition systems.
//!
//! A system has a non-empty ordered set of labelled states, a non-empty set
//! of start states, and a total transition function: every state has
//! exactly one successor. Iterating the function from any state therefore
//! traces a "rho": a tail of `mu` distinct states followed by a cycle of
//! length `k`.
//!
//! Text format, one directive per line, `#` starts a comment:
//!
//! ```text
//! states: off on
//! start: off on
//! selected: off
//! transition: off -> on
//! transition: on -> off
//! runtime: w
//! ```

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::ordinal::{parse_ordinal, Ordinal, ParseError};

/// Index of a state in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StsError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: invalid state label {label:?}")]
    InvalidLabel { line: usize, label: String },
    #[error("line {line}: state {label:?} declared twice")]
    DuplicateState { line: usize, label: String },
    #[error("line {line}: state {state:?} already has an outgoing transition")]
    DuplicateEdge { line: usize, state: String },
    #[error("state {state:?} has no outgoing transition")]
    MissingTransition { state: String },
    #[error("line {line}: unknown state {label:?}")]
    UnknownState { line: usize, label: String },
    #[error("no states declared")]
    EmptyStates,
    #[error("no start states declared")]
    EmptyStart,
    #[error("selected state {label:?} is not a start state")]
    SelectedNotStart { label: String },
    #[error("line {line}: {directive} given twice")]
    RepeatedDirective {
        line: usize,
        directive: &'static str,
    },
    #[error("line {line}: bad runtime: {source}")]
    Runtime { line: usize, source: ParseError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTransitionSystem {
    labels: Vec<String>,
    index: HashMap<String, StateId>,
    start_states: Vec<StateId>,
    transition: Vec<StateId>,
    selected_start: Option<StateId>,
    default_runtime: Option<Ordinal>,
}

/// Tail and cycle reached by iterating the transition from `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RhoShape {
    pub start: StateId,
    /// Number of states visited before the cycle is entered (μ).
    pub tail_length: usize,
    /// Cycle length (k), always at least 1.
    pub period: usize,
    /// First state of the run that lies on the cycle.
    pub entry_node: StateId,
    /// The `period` cycle states in run order, beginning at `entry_node`.
    pub cycle: Vec<StateId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", content = "states", rename_all = "kebab-case")]
pub enum WarningCode {
    UnreachableState(String),
    InaccessibleCycle(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub code: WarningCode,
    pub message: String,
}

/// Advisory findings; they never change evaluation results.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub warnings: Vec<Warning>,
}

impl Diagnostics {
    pub fn is_clean(&self) -> bool {
        self.warnings.is_empty()
    }
}

impl WarningCode {
    pub fn name(&self) -> &'static str {
        match self {
            WarningCode::UnreachableState(_) => "unreachable-state",
            WarningCode::InaccessibleCycle(_) => "inaccessible-cycle",
        }
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl StateTransitionSystem {
    /// Builds a system from labels and `(from, to)` edges.
    ///
    /// Errors are reported with line 0 since there is no source text.
    pub fn new<S: AsRef<str>>(
        states: &[S],
        start_states: &[S],
        transitions: &[(S, S)],
        selected_start: Option<&str>,
    ) -> Result<Self, StsError> {
        let mut b = Builder::default();
        for s in states {
            b.declare_state(0, s.as_ref())?;
        }
        for s in start_states {
            b.starts.push((0, s.as_ref().to_string()));
        }
        for (from, to) in transitions {
            b.edges
                .push((0, from.as_ref().to_string(), to.as_ref().to_string()));
        }
        b.selected = selected_start.map(|s| (0, s.to_string()));
        b.finish()
    }

    pub fn with_default_runtime(mut self, runtime: Option<Ordinal>) -> Self {
        self.default_runtime = runtime;
        self
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.labels.len()).map(StateId)
    }

    pub fn label(&self, id: StateId) -> &str {
        &self.labels[id.0]
    }

    pub fn id(&self, label: &str) -> Option<StateId> {
        self.index.get(label).copied()
    }

    pub fn start_states(&self) -> &[StateId] {
        &self.start_states
    }

    pub fn selected_start(&self) -> Option<StateId> {
        self.selected_start
    }

    /// The selected start, or else the first declared start state.
    pub fn default_start(&self) -> StateId {
        self.selected_start.unwrap_or(self.start_states[0])
    }

    pub fn default_runtime(&self) -> Option<&Ordinal> {
        self.default_runtime.as_ref()
    }

    pub fn next(&self, s: StateId) -> StateId {
        self.transition[s.0]
    }

    pub fn transition_table(&self) -> &[StateId] {
        &self.transition
    }

    /// The states `s, T(s), T²(s), …`.
    pub fn run(&self, start: StateId) -> impl Iterator<Item = StateId> + '_ {
        std::iter::successors(Some(start), move |&s| Some(self.next(s)))
    }

    /// Records the step at which each state is first visited and stops at
    /// the first repeat, which by pigeonhole occurs within `len() + 1`
    /// steps.
    pub fn rho_analyze(&self, start: StateId) -> RhoShape {
        let mut first_visit = vec![usize::MAX; self.len()];
        let mut path = Vec::new();
        let mut s = start;
        while first_visit[s.0] == usize::MAX {
            first_visit[s.0] = path.len();
            path.push(s);
            s = self.next(s);
        }
        let tail_length = first_visit[s.0];
        let cycle = path.split_off(tail_length);
        RhoShape {
            start,
            tail_length,
            period: cycle.len(),
            entry_node: s,
            cycle,
        }
    }

    /// Reports states no start can reach and cycles none of whose states
    /// are reachable.
    pub fn validate(&self) -> Diagnostics {
        let mut reachable = vec![false; self.len()];
        for &s in &self.start_states {
            for t in self.run(s) {
                if reachable[t.0] {
                    break;
                }
                reachable[t.0] = true;
            }
        }

        let mut warnings = Vec::new();
        for s in self.states().filter(|s| !reachable[s.0]) {
            warnings.push(Warning {
                code: WarningCode::UnreachableState(self.label(s).to_string()),
                message: format!(
                    "state {} is not reachable from any start state",
                    self.label(s)
                ),
            });
        }
        for cycle in self.cycles() {
            if cycle.iter().all(|s| !reachable[s.0]) {
                let names: Vec<String> = cycle.iter().map(|&s| self.label(s).to_string()).collect();
                warnings.push(Warning {
                    message: format!(
                        "cycle [{}] is not accessible from any start state",
                        names.join(" ")
                    ),
                    code: WarningCode::InaccessibleCycle(names),
                });
            }
        }
        Diagnostics { warnings }
    }

    /// Every cycle of the functional graph, each rotated to begin at its
    /// lowest-numbered state, ordered by that state.
    pub fn cycles(&self) -> Vec<Vec<StateId>> {
        let mut on_cycle = vec![false; self.len()];
        let mut cycles = Vec::new();
        let mut seen = vec![false; self.len()];
        for s in self.states() {
            if seen[s.0] {
                continue;
            }
            let rho = self.rho_analyze(s);
            for t in self.run(s).take(rho.tail_length + rho.period) {
                seen[t.0] = true;
            }
            if !on_cycle[rho.entry_node.0] {
                let mut cycle = rho.cycle;
                for c in &cycle {
                    on_cycle[c.0] = true;
                }
                let min_at = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
                cycle.rotate_left(min_at);
                cycles.push(cycle);
            }
        }
        cycles.sort_by_key(|c| c[0]);
        cycles
    }

    /// Two states, both starts, transition is negation; `off` is selected.
    pub fn thomson_lamp() -> Self {
        StateTransitionSystem::new(
            &["off", "on"],
            &["off", "on"],
            &[("off", "on"), ("on", "off")],
            Some("off"),
        )
        .expect("lamp system is well formed")
    }

    /// `1 → 2 → 3 → 4 → 3`: a two-state tail feeding the 2-cycle `{3, 4}`,
    /// every state a start state.
    ///
    /// The entry node is 3 for starts 1, 2 and 3, and 4 for start 4.
    pub fn four_state_rho() -> Self {
        StateTransitionSystem::new(
            &["1", "2", "3", "4"],
            &["1", "2", "3", "4"],
            &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "3")],
            Some("1"),
        )
        .expect("four-state system is well formed")
    }
}

#[derive(Default)]
struct Builder {
    labels: Vec<String>,
    index: HashMap<String, StateId>,
    starts: Vec<(usize, String)>,
    edges: Vec<(usize, String, String)>,
    selected: Option<(usize, String)>,
    runtime: Option<Ordinal>,
}

impl Builder {
    fn declare_state(&mut self, line: usize, label: &str) -> Result<(), StsError> {
        if !valid_label(label) {
            return Err(StsError::InvalidLabel {
                line,
                label: label.to_string(),
            });
        }
        if self.index.contains_key(label) {
            return Err(StsError::DuplicateState {
                line,
                label: label.to_string(),
            });
        }
        self.index
            .insert(label.to_string(), StateId(self.labels.len()));
        self.labels.push(label.to_string());
        Ok(())
    }

    fn resolve(&self, line: usize, label: &str) -> Result<StateId, StsError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| StsError::UnknownState {
                line,
                label: label.to_string(),
            })
    }

    fn finish(self) -> Result<StateTransitionSystem, StsError> {
        if self.labels.is_empty() {
            return Err(StsError::EmptyStates);
        }
        let mut transition: Vec<Option<StateId>> = vec![None; self.labels.len()];
        for (line, from, to) in &self.edges {
            let f = self.resolve(*line, from)?;
            let t = self.resolve(*line, to)?;
            if transition[f.0].is_some() {
                return Err(StsError::DuplicateEdge {
                    line: *line,
                    state: from.clone(),
                });
            }
            transition[f.0] = Some(t);
        }
        let transition = transition
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| StsError::MissingTransition {
                    state: self.labels[i].clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut start_states = Vec::new();
        for (line, label) in &self.starts {
            let id = self.resolve(*line, label)?;
            if !start_states.contains(&id) {
                start_states.push(id);
            }
        }
        if start_states.is_empty() {
            return Err(StsError::EmptyStart);
        }
        let selected_start = match &self.selected {
            None => None,
            Some((line, label)) => {
                let id = self.resolve(*line, label)?;
                if !start_states.contains(&id) {
                    return Err(StsError::SelectedNotStart {
                        label: label.clone(),
                    });
                }
                Some(id)
            }
        };
        Ok(StateTransitionSystem {
            labels: self.labels,
            index: self.index,
            start_states,
            transition,
            selected_start,
            default_runtime: self.runtime,
        })
    }
}

fn syntax(line: usize, message: impl Into<String>) -> StsError {
    StsError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses the line-oriented system format. Line numbers in errors are
/// 1-based.
pub fn parse_sts(text: &str) -> Result<StateTransitionSystem, StsError> {
    let mut b = Builder::default();
    let mut saw_runtime = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax(line, format!("expected 'directive:' in {content:?}")))?;
        let words: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "states" => {
                if words.is_empty() {
                    return Err(syntax(line, "states: needs at least one label"));
                }
                for w in words {
                    b.declare_state(line, w)?;
                }
            }
            "start" => {
                if words.is_empty() {
                    return Err(syntax(line, "start: needs at least one label"));
                }
                b.starts.extend(words.iter().map(|w| (line, w.to_string())));
            }
            "selected" => {
                if b.selected.is_some() {
                    return Err(StsError::RepeatedDirective {
                        line,
                        directive: "selected",
                    });
                }
                match words.as_slice() {
                    [w] => b.selected = Some((line, w.to_string())),
                    _ => return Err(syntax(line, "selected: takes exactly one label")),
                }
            }
            "transition" => {
                let (from, to) = rest
                    .split_once("->")
                    .ok_or_else(|| syntax(line, "expected 'transition: a -> b'"))?;
                let (from, to) = (from.trim(), to.trim());
                for label in [from, to] {
                    if !valid_label(label) {
                        return Err(StsError::InvalidLabel {
                            line,
                            label: label.to_string(),
                        });
                    }
                }
                b.edges.push((line, from.to_string(), to.to_string()));
            }
            "runtime" => {
                if saw_runtime {
                    return Err(StsError::RepeatedDirective {
                        line,
                        directive: "runtime",
                    });
                }
                saw_runtime = true;
                b.runtime =
                    Some(parse_ordinal(rest).map_err(|source| StsError::Runtime { line, source })?);
            }
            other => return Err(syntax(line, format!("unknown directive {other:?}"))),
        }
    }
    b.finish()
}

impl FromStr for StateTransitionSystem {
    type Err = StsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sts(s)
    }
}

/// Canonical serialization: `states`, `start`, `selected`, one
/// `transition` per state in declaration order, then `runtime`.
impl fmt::Display for StateTransitionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.labels.join(" "))?;
        let starts: Vec<&str> = self.start_states.iter().map(|&s| self.label(s)).collect();
        writeln!(f, "start: {}", starts.join(" "))?;
        if let Some(s) = self.selected_start {
            writeln!(f, "selected: {}", self.label(s))?;
        }
        for s in self.states() {
            writeln!(
                f,
                "transition: {} -> {}",
                self.label(s),
                self.label(self.next(s))
            )?;
        }
        if let Some(r) = &self.default_runtime {
            writeln!(f, "runtime: {r}")?;
        }
        Ok(())
    }
}
