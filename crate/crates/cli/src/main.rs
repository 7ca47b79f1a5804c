//! `supertask`: evaluate state-transition systems at ordinal runtimes.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 domain
//! error. Results go to standard output only; warnings and errors go to
//! standard error.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Report};

#[derive(Parser, Debug)]
#[command(
    name = "supertask",
    version,
    about = "Evaluate finite state-transition systems at ordinal runtimes"
)]
struct Cli {
    /// Emit one JSON object instead of text lines.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report tail length, period and entry node for every start state.
    Analyze { file: PathBuf },
    /// State of a system after a runtime such as 7, w, w+1 or w*2.
    Eval {
        file: PathBuf,
        /// Ordinal runtime; defaults to the file's runtime, else w.
        #[arg(long)]
        runtime: Option<String>,
        /// Start state; defaults to the selected, else first, start state.
        #[arg(long)]
        start: Option<String>,
    },
    /// The two-state lamp whose button toggles it on every press.
    Lamp {
        #[arg(long, value_enum, default_value = "off")]
        initial: Initial,
        #[arg(long, default_value = "w")]
        runtime: String,
    },
    /// Ordinal arithmetic on expressions like w^2*3+w+1.
    Ordinal {
        #[command(subcommand)]
        op: OrdinalOp,
    },
    /// The halving schedule: one minute, then half the previous interval.
    Schedule(ScheduleArgs),
    /// The series 1 - 1 + 1 - 1 + ...
    ///
    /// A grouping plays the role of the lamp's history: fully-paired
    /// brackets return to the initial value like a lamp started off,
    /// leading-unpaired keeps the first term like a lamp started on.
    Grandi(GrandiArgs),
    /// Parity of the decimal digits of pi (1 = even digit, 0 = odd digit).
    PiParity(PiParityArgs),
}

#[derive(Subcommand, Debug)]
enum OrdinalOp {
    /// Print the Cantor normal form.
    Eval { expr: String },
    /// Print <, = or >.
    Cmp { left: String, right: String },
    /// Print even or odd.
    Even { expr: String },
    /// Split into limit part and finite tail.
    Decompose { expr: String },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("query").required(true).args(["step", "time", "epsilon"])))]
struct ScheduleArgs {
    /// Duration of jab n and time elapsed after it.
    #[arg(long)]
    step: Option<u64>,
    /// Jabs completed by time t in [0, 2]; 2 is the omega position.
    #[arg(long, allow_hyphen_values = true)]
    time: Option<String>,
    /// Least N with every later elapsed time within epsilon of 2.
    #[arg(long, allow_hyphen_values = true)]
    epsilon: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["cesaro", "grouping"])))]
struct GrandiArgs {
    /// Number of partial sums, or of bracketed pairs with --grouping.
    #[arg(long)]
    terms: usize,
    /// Print the partial sums and their exact mean.
    #[arg(long)]
    cesaro: bool,
    #[arg(long, value_enum)]
    grouping: Option<GroupingMode>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("query").required(true).args(["digit", "prefix", "digits", "runtime"])))]
struct PiParityArgs {
    /// Digit n (0 is the leading 3) and its parity bit.
    #[arg(long)]
    digit: Option<u64>,
    /// Parity bits of the first N digits as one string.
    #[arg(long)]
    prefix: Option<usize>,
    /// The first N digits as one string.
    #[arg(long)]
    digits: Option<usize>,
    /// Parity output at an ordinal runtime; limit runtimes have none.
    #[arg(long)]
    runtime: Option<String>,
    #[arg(long, default_value_t = supertask::digits::DEFAULT_MAX_INDEX)]
    max_index: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Initial {
    Off,
    On,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupingMode {
    LeadingUnpaired,
    FullyPaired,
}

fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Analyze { file } => commands::analyze(&file),
        Command::Eval {
            file,
            runtime,
            start,
        } => commands::eval(&file, runtime.as_deref(), start.as_deref()),
        Command::Lamp { initial, runtime } => {
            let initial = match initial {
                Initial::Off => supertask::LampState::Off,
                Initial::On => supertask::LampState::On,
            };
            commands::lamp(initial, &runtime)
        }
        Command::Ordinal { op } => match op {
            OrdinalOp::Eval { expr } => commands::ordinal_eval(&expr),
            OrdinalOp::Cmp { left, right } => commands::ordinal_cmp(&left, &right),
            OrdinalOp::Even { expr } => commands::ordinal_even(&expr),
            OrdinalOp::Decompose { expr } => commands::ordinal_decompose(&expr),
        },
        Command::Schedule(a) => match (a.step, a.time, a.epsilon) {
            (Some(n), _, _) => commands::schedule_step(n),
            (_, Some(t), _) => commands::schedule_time(&t),
            (_, _, Some(e)) => commands::schedule_epsilon(&e),
            _ => unreachable!("clap requires one query"),
        },
        Command::Grandi(a) => match a.grouping {
            Some(GroupingMode::LeadingUnpaired) => Ok(commands::grandi_grouped(
                a.terms,
                supertask::analysis::Grouping::LeadingUnpaired,
            )),
            Some(GroupingMode::FullyPaired) => Ok(commands::grandi_grouped(
                a.terms,
                supertask::analysis::Grouping::FullyPaired,
            )),
            None => commands::grandi_cesaro(a.terms),
        },
        Command::PiParity(a) => {
            let stream = commands::pi_stream(a.max_index)?;
            match (a.digit, a.prefix, a.digits, a.runtime) {
                (Some(n), ..) => commands::pi_digit(&stream, n),
                (_, Some(n), ..) => commands::pi_prefix(&stream, n),
                (_, _, Some(n), _) => commands::pi_digits(&stream, n),
                (.., Some(r)) => commands::pi_runtime(&stream, &r),
                _ => unreachable!("clap requires one query"),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let mut out = std::io::stdout().lock();
            let text = if json {
                format!("{}\n", report.json)
            } else {
                report.text()
            };
            if out.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
