use std::fmt;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use supertask::analysis::{
    cesaro_mean, elapsed_after, epsilon_witness, grandi_partial_sums, grouped_sum, jab_time,
    position_at_time, ExactRational, Grouping,
};
use supertask::digits::{DigitStream, DigitsError};
use supertask::eval::{state_at, EvalResult, LampState};
use supertask::{parse_ordinal, parse_sts, Ordinal, StateId, StateTransitionSystem};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

/// Output of one command: text lines, the same data as JSON, and warnings.
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub warnings: Vec<String>,
}

impl Report {
    fn new(lines: Vec<String>, json: Value) -> Self {
        Report {
            lines,
            json,
            warnings: Vec::new(),
        }
    }

    pub fn text(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

fn ordinal(text: &str) -> Result<Ordinal, CliError> {
    parse_ordinal(text).map_err(|e| CliError::Input(format!("bad ordinal {text:?}: {e}")))
}

fn rational(text: &str) -> Result<ExactRational, CliError> {
    text.parse().map_err(|e| CliError::Input(format!("{e}")))
}

fn load(file: &Path) -> Result<StateTransitionSystem, CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", file.display())))?;
    parse_sts(&text).map_err(|e| CliError::Input(format!("{}: {e}", file.display())))
}

fn eval_report(sts: &StateTransitionSystem, r: &EvalResult) -> Report {
    let label = |s: StateId| sts.label(s).to_string();
    let cycle: Vec<String> = r.rho.cycle.iter().map(|&s| label(s)).collect();
    let lines = vec![
        format!("start: {}", label(r.rho.start)),
        format!("runtime: {}", r.runtime),
        format!("final: {}", label(r.final_state)),
        format!("rule: {}", r.rule_applied.name()),
        format!(
            "rho: mu={} k={} entry={}",
            r.rho.tail_length,
            r.rho.period,
            label(r.rho.entry_node)
        ),
    ];
    let json = json!({
        "start": label(r.rho.start),
        "runtime": r.runtime.to_string(),
        "final": label(r.final_state),
        "rule": r.rule_applied.name(),
        "mu": r.rho.tail_length,
        "k": r.rho.period,
        "entry": label(r.rho.entry_node),
        "cycle": cycle,
    });
    Report::new(lines, json)
}

pub fn eval(file: &Path, runtime: Option<&str>, start: Option<&str>) -> Result<Report, CliError> {
    let sts = load(file)?;
    let runtime = match runtime {
        Some(r) => ordinal(r)?,
        None => sts
            .default_runtime()
            .cloned()
            .unwrap_or_else(Ordinal::omega),
    };
    let start = match start {
        Some(s) => sts
            .id(s)
            .ok_or_else(|| CliError::Usage(format!("unknown start state {s:?}")))?,
        None => sts.default_start(),
    };
    Ok(eval_report(&sts, &state_at(&sts, start, &runtime)))
}

pub fn analyze(file: &Path) -> Result<Report, CliError> {
    let sts = load(file)?;
    let mut lines = Vec::new();
    let mut starts = Vec::new();
    for &s in sts.start_states() {
        let rho = sts.rho_analyze(s);
        let (start, entry) = (sts.label(s), sts.label(rho.entry_node));
        lines.push(format!(
            "{start}: mu={} k={} entry={entry}",
            rho.tail_length, rho.period
        ));
        starts.push(json!({
            "start": start,
            "mu": rho.tail_length,
            "k": rho.period,
            "entry": entry,
        }));
    }
    let diagnostics = sts.validate();
    let warnings: Vec<String> = diagnostics
        .warnings
        .iter()
        .map(|w| format!("{}: {}", w.code.name(), w.message))
        .collect();
    let mut report = Report::new(lines, json!({ "starts": starts, "warnings": warnings }));
    report.warnings = warnings;
    Ok(report)
}

pub fn lamp(initial: LampState, runtime: &str) -> Result<Report, CliError> {
    let sts = StateTransitionSystem::thomson_lamp();
    let runtime = ordinal(runtime)?;
    let start = sts.id(initial.label()).expect("lamp has off and on");
    Ok(eval_report(&sts, &state_at(&sts, start, &runtime)))
}

pub fn ordinal_eval(expr: &str) -> Result<Report, CliError> {
    let o = ordinal(expr)?.to_string();
    Ok(Report::new(vec![o.clone()], json!({ "value": o })))
}

pub fn ordinal_cmp(left: &str, right: &str) -> Result<Report, CliError> {
    let symbol = match ordinal(left)?.compare(&ordinal(right)?) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    };
    Ok(Report::new(vec![symbol.into()], json!({ "cmp": symbol })))
}

pub fn ordinal_even(expr: &str) -> Result<Report, CliError> {
    let word = if ordinal(expr)?.is_even() {
        "even"
    } else {
        "odd"
    };
    Ok(Report::new(vec![word.into()], json!({ "parity": word })))
}

pub fn ordinal_decompose(expr: &str) -> Result<Report, CliError> {
    let d = ordinal(expr)?.decompose();
    let limit = d.limit_part.to_string();
    Ok(Report::new(
        vec![format!("limit={limit} finite={}", d.finite_tail)],
        json!({ "limit": limit, "finite": d.finite_tail }),
    ))
}

pub fn schedule_step(n: u64) -> Result<Report, CliError> {
    let jab = jab_time(n).map_err(|e| CliError::Domain(e.to_string()))?;
    let elapsed = elapsed_after(n);
    Ok(Report::new(
        vec![format!("jab={jab} elapsed={elapsed}")],
        json!({ "step": n, "jab": jab.to_string(), "elapsed": elapsed.to_string() }),
    ))
}

pub fn schedule_time(t: &str) -> Result<Report, CliError> {
    let pos = position_at_time(&rational(t)?).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(Report::new(
        vec![format!("position: {pos}")],
        json!({ "position": pos }),
    ))
}

pub fn schedule_epsilon(eps: &str) -> Result<Report, CliError> {
    let n = epsilon_witness(&rational(eps)?).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(Report::new(vec![format!("N={n}")], json!({ "N": n })))
}

pub fn grandi_cesaro(terms: usize) -> Result<Report, CliError> {
    let mean = cesaro_mean(terms).map_err(|e| CliError::Usage(format!("--cesaro: {e}")))?;
    let sums = grandi_partial_sums(terms);
    let joined: Vec<String> = sums.iter().map(i64::to_string).collect();
    Ok(Report::new(
        vec![
            format!("partial_sums={}", joined.join(",")),
            format!("mean={mean}"),
        ],
        json!({ "partial_sums": sums, "mean": mean.to_string() }),
    ))
}

pub fn grandi_grouped(pairs: usize, grouping: Grouping) -> Report {
    let value = grouped_sum(pairs, grouping);
    Report::new(
        vec![value.to_string()],
        json!({ "grouping": grouping.name(), "pairs": pairs, "sum": value }),
    )
}

fn digits_error(e: DigitsError) -> CliError {
    match e {
        DigitsError::NoFinitePeriod { .. } => CliError::Domain(format!("NoFinitePeriod: {e}")),
        other => CliError::Domain(other.to_string()),
    }
}

pub fn pi_stream(max_index: usize) -> Result<DigitStream, CliError> {
    if max_index == supertask::digits::DEFAULT_MAX_INDEX {
        return Ok(DigitStream::default_pi().clone());
    }
    DigitStream::pi(max_index).map_err(digits_error)
}

pub fn pi_digit(stream: &DigitStream, n: u64) -> Result<Report, CliError> {
    let digit = stream.digit_at(n).map_err(digits_error)?;
    let parity = stream.parity_bit(n).map_err(digits_error)?;
    Ok(Report::new(
        vec![format!("digit={digit} parity={parity}")],
        json!({ "index": n, "digit": digit, "parity": parity }),
    ))
}

fn digit_string(ds: &[u8]) -> String {
    ds.iter().map(|d| char::from(b'0' + d)).collect()
}

pub fn pi_prefix(stream: &DigitStream, n: usize) -> Result<Report, CliError> {
    let bits = digit_string(&stream.parity_prefix(n).map_err(digits_error)?);
    Ok(Report::new(vec![bits.clone()], json!({ "parity": bits })))
}

pub fn pi_digits(stream: &DigitStream, n: usize) -> Result<Report, CliError> {
    if n > stream.digits().len() {
        return Err(digits_error(DigitsError::IndexBeyondBound {
            index: n as u64 - 1,
            max_index: stream.max_index(),
        }));
    }
    let s = digit_string(&stream.digits()[..n]);
    Ok(Report::new(vec![s.clone()], json!({ "digits": s })))
}

pub fn pi_runtime(stream: &DigitStream, runtime: &str) -> Result<Report, CliError> {
    let rt = ordinal(runtime)?;
    let bit = stream.parity_state_at(&rt).map_err(digits_error)?;
    Ok(Report::new(
        vec![format!("parity={bit}")],
        json!({ "runtime": rt.to_string(), "parity": bit }),
    ))
}
