//! The command-line frontend.
//!
//! Exit codes: 0 success, 1 a bound failed (with its hypotheses met),
//! 2 bad input, 3 an enumeration or size cap was exceeded, 4 a singular
//! system or a pole. On a nonzero exit nothing is written to stdout.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weingarten_core::bounds::{self, BoundCheckResult};
use weingarten_core::exact::{
    self, wg_full_cycle, wg_orthogonal_gram, wg_orthogonal_series, wg_symplectic, wg_unitary_gram,
    wg_unitary_recursion, wg_unitary_series, SeriesEvaluation, WgTable,
};
use weingarten_core::graph::{OrthogonalPathCounter, UnitaryPathCounter};
use weingarten_core::process::{
    estimate_l_power_sum, estimate_l_power_sum_orthogonal, estimate_ti_tail, estimate_time_to_halve,
    run_wp_orthogonal, run_wp_orthogonal_class, run_wp_unitary, run_wp_unitary_class, LExponent,
    SplitSampler,
};
use weingarten_core::rational::{parse_rational, to_pq_string};
use weingarten_core::rng::stream_rng;
use weingarten_core::{ExactRational, Pairing, Partition, Permutation, WgError};

use crate::estimator::EstimatorJson;
use crate::paths::{paths_to_csv, PathRow};
use crate::report::{emit_report, report_to_csv, ReportFormat};
use crate::table::{rows_to_json, table_rows};
use crate::trace::trace_to_jsonl;

pub const EXIT_OK: i32 = 0;
pub const EXIT_BOUND_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_SINGULAR: i32 = 4;

/// What a run produced. `stdout` is empty whenever `code != 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

impl From<WgError> for CliError {
    fn from(e: WgError) -> Self {
        let code = match e {
            WgError::CapExceeded { .. } => EXIT_CAP,
            WgError::Singular { .. } | WgError::Pole(_) => EXIT_SINGULAR,
            _ => EXIT_PARSE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<weingarten_core::ParseError> for CliError {
    fn from(e: weingarten_core::ParseError) -> Self {
        Self::usage(e.to_string())
    }
}

type CliResult = Result<(String, String), CliError>;

#[derive(Parser, Debug)]
#[command(name = "weingarten", version, about = "Exact Weingarten functions, path counts, processes and bound checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Weingarten values.
    Eval(EvalArgs),
    /// Path counts in the Weingarten graph.
    Paths(PathsArgs),
    /// Process trajectories and Monte Carlo estimates.
    Sample(SampleArgs),
    /// Bound checks; exit 0 iff every check with its hypotheses met holds.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GroupArg {
    #[value(name = "U")]
    U,
    #[value(name = "O")]
    O,
    #[value(name = "SP")]
    Sp,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Gram,
    Recursion,
    Series,
    Closed,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// Conjugacy class (or coset type), e.g. "3,1,1".
    #[arg(long, visible_alias = "lambda", conflicts_with_all = ["sigma", "pairing"])]
    class: Option<String>,
    /// A permutation in cycle notation, e.g. "(1 2 3)(4 5)".
    #[arg(long, conflicts_with = "pairing")]
    sigma: Option<String>,
    /// A pairing, e.g. "{1-2, 3-7, 4-6, 5-8}".
    #[arg(long)]
    pairing: Option<String>,
    /// Degree (or half-size for pairings).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[arg(long, value_enum, default_value = "U")]
    group: GroupArg,
    #[command(flatten)]
    state: StateArgs,
    /// Evaluation point, "p" or "p/q".
    #[arg(long = "N")]
    n_eval: String,
    /// Engine; defaults to recursion for U and gram for O and SP.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Highest order kept by the series method.
    #[arg(long, default_value_t = 4)]
    g_max: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
}

#[derive(Args, Debug)]
struct PathsArgs {
    #[arg(long, value_enum, default_value = "U")]
    group: GroupArg,
    #[command(flatten)]
    state: StateArgs,
    /// Unitary: number of extra solid-edge pairs.
    #[arg(long, default_value_t = 0)]
    g: usize,
    /// Orthogonal: minor defects.
    #[arg(long, default_value_t = 0)]
    g1: usize,
    /// Orthogonal: major defects.
    #[arg(long, default_value_t = 0)]
    g2: usize,
    /// Emit every order up to this one instead of a single count.
    #[arg(long)]
    g_max: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Stat {
    #[value(name = "trace")]
    Trace,
    #[value(name = "Lsum")]
    Lsum,
    #[value(name = "T")]
    T,
    #[value(name = "Titail")]
    Titail,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, value_enum, default_value = "U")]
    group: GroupArg,
    #[command(flatten)]
    state: StateArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "trace")]
    stat: Stat,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Exponent for Lsum: "3/2" or "1".
    #[arg(long, default_value = "3/2")]
    exponent: String,
    /// Coupon index for Titail.
    #[arg(long, default_value_t = 0)]
    i: usize,
    /// Tail parameter for Titail: estimates P(T_{i+1} − T_i > 5t).
    #[arg(long, default_value_t = 0)]
    t: u64,
    /// Stream index of a single trace.
    #[arg(long, default_value_t = 0)]
    run: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Claim {
    Main,
    Orth,
    Small,
    Log,
    Paths,
    Process,
    Catalan,
    Energy,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    claim: Claim,
    #[arg(long)]
    n: usize,
    #[arg(long = "N")]
    n_eval: Option<String>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format; defaults to csv for a .csv output path, json otherwise.
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// small: largest norm |σ| checked.
    #[arg(long, default_value_t = 2)]
    norm_cap: usize,
    /// process: start class (default "n").
    #[arg(long)]
    lambda: Option<String>,
    /// process: tail parameters t.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,5,10,20")]
    t: Vec<u64>,
    /// energy: values of γ.
    #[arg(long, value_delimiter = ',', default_value = "3/5,9/10")]
    gamma: Vec<String>,
    /// energy: number of random vectors.
    #[arg(long, default_value_t = 20)]
    vectors: u64,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Paths(a) => cmd_paths(&a),
        Command::Sample(a) => cmd_sample(&a),
        Command::Verify(a) => cmd_verify(&a),
    };
    match result {
        Ok((stdout, stderr)) => Outcome {
            code: EXIT_OK,
            stdout,
            stderr,
        },
        Err(e) => Outcome {
            code: e.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
        },
    }
}

fn parse_n(text: &str) -> Result<ExactRational, CliError> {
    Ok(parse_rational(text)?)
}

/// The requested element: a class (with its representative), a
/// permutation or a pairing.
enum State {
    Class(Partition),
    Perm(Permutation),
    Pair(Pairing),
}

impl State {
    fn size(&self) -> usize {
        match self {
            State::Class(l) => l.size(),
            State::Perm(s) => s.degree(),
            State::Pair(p) => p.half_size(),
        }
    }

    fn class(&self) -> Partition {
        match self {
            State::Class(l) => l.clone(),
            State::Perm(s) => s.cycle_type().clone(),
            State::Pair(p) => p.coset_type(),
        }
    }

    fn permutation(&self) -> Result<Permutation, CliError> {
        match self {
            State::Class(l) => Ok(l.representative()),
            State::Perm(s) => Ok(s.clone()),
            State::Pair(_) => Err(CliError::usage("a pairing needs --group O or SP")),
        }
    }

    fn pairing(&self) -> Result<Pairing, CliError> {
        match self {
            State::Class(l) => Ok(Pairing::coset_representative(l)),
            State::Pair(p) => Ok(p.clone()),
            State::Perm(_) => Err(CliError::usage("a permutation needs --group U")),
        }
    }
}

/// The selected state (if any) and the degree, checked for consistency.
fn resolve_state(s: &StateArgs) -> Result<(Option<State>, usize), CliError> {
    let state = if let Some(c) = &s.class {
        Some(State::Class(c.parse()?))
    } else if let Some(c) = &s.sigma {
        Some(State::Perm(Permutation::parse_cycles(c, s.n)?))
    } else if let Some(p) = &s.pairing {
        Some(State::Pair(p.parse()?))
    } else {
        None
    };
    let n = match (&state, s.n) {
        (Some(st), Some(n)) if st.size() != n => {
            return Err(CliError::usage(format!("--n {n} does not match the given state of size {}", st.size())))
        }
        (Some(st), _) => st.size(),
        (None, Some(n)) => n,
        (None, None) => return Err(CliError::usage("give --n or one of --class, --sigma, --pairing")),
    };
    Ok((state, n))
}

// ---------------------------------------------------------------------------
// eval

fn cmd_eval(a: &EvalArgs) -> CliResult {
    let n_eval = parse_n(&a.n_eval)?;
    let (state, n) = resolve_state(&a.state)?;
    if a.format == OutFormat::Csv {
        return Err(CliError::usage("eval writes text or json"));
    }
    let method = a.method.unwrap_or(match a.group {
        GroupArg::U => Method::Recursion,
        _ => Method::Gram,
    });
    match (a.group, method) {
        (GroupArg::U, Method::Gram) => emit_table(&wg_unitary_gram(n, &n_eval)?, state.as_ref(), a.format, None),
        (GroupArg::U, Method::Recursion) => {
            emit_table(&wg_unitary_recursion(n, &n_eval)?, state.as_ref(), a.format, None)
        }
        (GroupArg::U, Method::Closed) => {
            let full = Partition::single(n);
            if let Some(st) = &state {
                if st.class() != full {
                    return Err(CliError::usage(format!(
                        "the closed form covers the full cycle class ({n}) only, not {}",
                        st.class()
                    )));
                }
            }
            let value = wg_full_cycle(n, &n_eval)?;
            let mut table = WgTable::new(exact::Group::Unitary, n_eval, n);
            table.insert(full.clone(), value);
            emit_table(&table, Some(&State::Class(full)), a.format, None)
        }
        (GroupArg::U, Method::Series) => {
            let sigma = state
                .as_ref()
                .ok_or_else(|| CliError::usage("the series method needs --class or --sigma"))?
                .permutation()?;
            emit_series(&wg_unitary_series(&sigma, &n_eval, a.g_max)?, a.format)
        }
        (GroupArg::O, Method::Gram) => {
            reject_perm(&state)?;
            emit_table(&wg_orthogonal_gram(n, &n_eval)?, state.as_ref(), a.format, None)
        }
        (GroupArg::O, Method::Series) => {
            let pi = state
                .as_ref()
                .ok_or_else(|| CliError::usage("the series method needs --class or --pairing"))?
                .pairing()?;
            emit_series(&wg_orthogonal_series(&pi, &n_eval, a.g_max)?, a.format)
        }
        (GroupArg::Sp, Method::Gram) => {
            reject_perm(&state)?;
            emit_table(&wg_symplectic(n, &n_eval)?, state.as_ref(), a.format, Some("±"))
        }
        (g, m) => Err(CliError::usage(format!("method {m:?} is not available for group {g:?}"))),
    }
}

fn reject_perm(state: &Option<State>) -> Result<(), CliError> {
    if let Some(State::Perm(_)) = state {
        return Err(CliError::usage("a permutation needs --group U"));
    }
    Ok(())
}

/// Text: the bare value when a single class is shown, else one
/// `partition value` line per class of the top level. JSON: the selected row,
/// or the whole table.
fn emit_table(table: &WgTable, state: Option<&State>, format: OutFormat, sign: Option<&str>) -> CliResult {
    let sign = sign.unwrap_or("");
    let selected = state.map(State::class);
    match format {
        OutFormat::Json => {
            let mut rows = table_rows(table, selected.as_ref());
            if rows.is_empty() {
                return Err(CliError::usage("class not in the table"));
            }
            if !sign.is_empty() {
                for r in &mut rows {
                    r.sign = Some(sign.to_string());
                }
            }
            Ok((rows_to_json(&rows), String::new()))
        }
        _ => {
            if let Some(lambda) = selected {
                return Ok((format!("{sign}{}\n", table.value(&lambda)?), String::new()));
            }
            let top: Vec<_> = table.rows().into_iter().filter(|(l, _)| l.size() == table.max_level).collect();
            if top.len() == 1 {
                return Ok((format!("{sign}{}\n", top[0].1), String::new()));
            }
            let mut out = String::new();
            for (lambda, v) in top {
                out.push_str(&format!("{lambda} {sign}{v}\n"));
            }
            Ok((out, String::new()))
        }
    }
}

fn emit_series(s: &SeriesEvaluation, format: OutFormat) -> CliResult {
    match format {
        OutFormat::Json => {
            let v = serde_json::json!({
                "partial": to_pq_string(&s.partial),
                "tail": to_pq_string(&s.tail),
                "counts": s.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            Ok((format!("{v}\n"), String::new()))
        }
        _ => Ok((format!("partial {}\ntail {}\n", s.partial, s.tail), String::new())),
    }
}

// ---------------------------------------------------------------------------
// paths

fn cmd_paths(a: &PathsArgs) -> CliResult {
    let (state, n) = resolve_state(&a.state)?;
    let mut rows = Vec::new();
    match a.group {
        GroupArg::U => {
            let sigma = match &state {
                Some(s) => s.permutation()?,
                None => Permutation::identity(n),
            };
            let mut counter = UnitaryPathCounter::new();
            let gs: Vec<usize> = match a.g_max {
                Some(m) => (0..=m).collect(),
                None => vec![a.g],
            };
            for g in gs {
                rows.push(PathRow::Unitary {
                    state: sigma.to_string(),
                    g,
                    count: counter.count(&sigma, g)?,
                });
            }
        }
        GroupArg::O | GroupArg::Sp => {
            let pi = match &state {
                Some(s) => s.pairing()?,
                None => Pairing::canonical(n),
            };
            let mut counter = OrthogonalPathCounter::new();
            let pairs: Vec<(usize, usize)> = match a.g_max {
                Some(m) => (0..=m).flat_map(|g1| (0..=m - g1).map(move |g2| (g1, g2))).collect(),
                None => vec![(a.g1, a.g2)],
            };
            for (g1, g2) in pairs {
                rows.push(PathRow::Orthogonal {
                    state: pi.to_string(),
                    g1,
                    g2,
                    count: counter.count(&pi, g1, g2)?,
                });
            }
        }
    }
    match a.format {
        OutFormat::Csv => Ok((paths_to_csv(&rows), String::new())),
        OutFormat::Json => Err(CliError::usage("paths writes text or csv")),
        OutFormat::Text => {
            let mut out = String::new();
            let single = rows.len() == 1;
            for row in &rows {
                match row {
                    PathRow::Unitary { g, count, .. } if !single => out.push_str(&format!("{g} {count}\n")),
                    PathRow::Orthogonal { g1, g2, count, .. } if !single => {
                        out.push_str(&format!("{g1} {g2} {count}\n"))
                    }
                    PathRow::Unitary { count, .. } | PathRow::Orthogonal { count, .. } => {
                        out.push_str(&format!("{count}\n"))
                    }
                }
            }
            Ok((out, String::new()))
        }
    }
}

// ---------------------------------------------------------------------------
// sample

fn cmd_sample(a: &SampleArgs) -> CliResult {
    let (state, n) = resolve_state(&a.state)?;
    let state = state.unwrap_or(State::Class(Partition::ones(n)));
    let mut sampler = SplitSampler::new();
    let class = state.class();
    let unitary = a.group == GroupArg::U;
    match a.stat {
        Stat::Trace => {
            let mut rng = stream_rng(a.seed, a.run);
            let text = match (&state, unitary) {
                (State::Class(l), true) => trace_to_jsonl(&run_wp_unitary_class(l, &mut sampler, &mut rng)),
                (State::Class(l), false) => trace_to_jsonl(&run_wp_orthogonal_class(l, &mut sampler, &mut rng)),
                (State::Perm(s), true) => trace_to_jsonl(&run_wp_unitary(s, &mut sampler, &mut rng)),
                (State::Pair(p), false) => trace_to_jsonl(&run_wp_orthogonal(p, &mut sampler, &mut rng)),
                (State::Perm(_), false) => return Err(CliError::usage("a permutation needs --group U")),
                (State::Pair(_), true) => return Err(CliError::usage("a pairing needs --group O")),
            };
            Ok((text, String::new()))
        }
        Stat::Lsum => {
            let exponent = match a.exponent.as_str() {
                "3/2" | "1.5" => LExponent::ThreeHalves,
                "1" => LExponent::One,
                other => return Err(CliError::usage(format!("exponent must be 3/2 or 1, got {other:?}"))),
            };
            let report = if unitary {
                estimate_l_power_sum(&class, exponent, a.samples, a.seed)?
            } else {
                estimate_l_power_sum_orthogonal(&class, exponent, 0, a.samples, a.seed)?
            };
            Ok((EstimatorJson::new("Lsum", class.to_text(), &report).to_json(), String::new()))
        }
        Stat::T | Stat::Titail if !unitary => {
            Err(CliError::usage("T and Titail are estimated on the unitary process"))
        }
        Stat::T => {
            let report = estimate_time_to_halve(&class, a.samples, a.seed)?;
            Ok((EstimatorJson::new("T", class.to_text(), &report).to_json(), String::new()))
        }
        Stat::Titail => {
            let report = estimate_ti_tail(&class, a.i, a.t, a.samples, a.seed)?;
            Ok((EstimatorJson::new("Titail", class.to_text(), &report).to_json(), String::new()))
        }
    }
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(a: &VerifyArgs) -> CliResult {
    let need_n = || -> Result<ExactRational, CliError> {
        let text = a
            .n_eval
            .as_ref()
            .ok_or_else(|| CliError::usage(format!("--claim {:?} needs --N", a.claim)))?;
        parse_n(text)
    };
    let results: Vec<BoundCheckResult> = match a.claim {
        Claim::Main => bounds::check_theorem_main(a.n, &need_n()?)?,
        Claim::Orth => bounds::check_theorem_orthogonal(a.n, &need_n()?)?,
        Claim::Small => bounds::check_small_perm(a.n, a.norm_cap, &[need_n()?])?,
        Claim::Log => bounds::check_log_bound(a.n, &need_n()?)?,
        Claim::Paths => bounds::check_path_ratio_bounds(a.n, a.samples, a.seed)?,
        Claim::Catalan => bounds::check_catalan_quotient(a.n)?,
        Claim::Process => {
            let lambda = match &a.lambda {
                Some(text) => text.parse::<Partition>()?,
                None => Partition::single(a.n),
            };
            if lambda.size() != a.n {
                return Err(CliError::usage(format!("--lambda {lambda} is not a partition of {}", a.n)));
            }
            bounds::check_process_bounds(&lambda, a.samples, a.seed, &a.t)?
        }
        Claim::Energy => {
            let gammas = a.gamma.iter().map(|g| parse_n(g)).collect::<Result<Vec<_>, _>>()?;
            bounds::check_energy_estimate(a.n, &need_n()?, &gammas, a.vectors, a.seed)?
        }
    };
    let format = match a.format {
        Some(OutFormat::Csv) => ReportFormat::Csv,
        Some(OutFormat::Json) => ReportFormat::Json,
        Some(OutFormat::Text) => return Err(CliError::usage("verify writes csv or json")),
        None => match a.out.as_ref().and_then(|p| p.extension()) {
            Some(ext) if ext == "csv" => ReportFormat::Csv,
            _ => ReportFormat::Json,
        },
    };
    let report = emit_report(&results, format);
    let failures: Vec<BoundCheckResult> = results.iter().filter(|r| r.is_failure()).cloned().collect();
    let unmet = results.iter().filter(|r| !r.hypotheses_met).count();
    let summary = format!(
        "verify {:?}: {} rows, {} failures, {} with hypotheses unmet\n",
        a.claim,
        results.len(),
        failures.len(),
        unmet
    )
    .to_lowercase();
    if let Some(path) = &a.out {
        std::fs::write(path, &report)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if !failures.is_empty() {
        return Err(CliError {
            code: EXIT_BOUND_FAILURE,
            message: format!("{summary}failing rows:\n{}", report_to_csv(&failures)),
        });
    }
    let stdout = if a.out.is_some() { String::new() } else { report };
    Ok((stdout, summary))
}
