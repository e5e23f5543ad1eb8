//! Command-line front end: `alloc`, `pair` and `sweep`.
//!
//! SNR is given in dB on every flag and converted to a linear ratio
//! internally. Any flag can also come from a key-value file passed with
//! `--config`; flags on the command line win over the file. The default
//! sweep seed can be set through `NOMA_SEED`.
//!
//! Exit codes: 0 success, 2 invalid flags or inputs, 3 empty feasible
//! interval, 4 output could not be written.

use std::ffi::OsString;
use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::NomaError;
use crate::model::{log2_1p, noma_rates, ChannelGains, TransmitSnr};
use crate::output::{matching_table, sweep_table, Cell, Format, Table};
use crate::pairing::{near_far_policy, pairing_sum_rate, rank_matchings, OmaBaseline};
use crate::power::{alpha2_bounds, optimal_m_user};
use crate::sim::{
    run_sweep, snr_grid, SweepConfig, SweepMode, DEFAULT_SNR_START_DB, DEFAULT_SNR_STEP_DB,
    DEFAULT_SNR_STOP_DB, DEFAULT_TRIALS,
};

pub const SEED_ENV: &str = "NOMA_SEED";

/// Tolerance for treating another matching as tied with near-far.
const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "noma",
    version,
    about = "Uplink NOMA power allocation, pairing and fading sweeps"
)]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal power coefficients for M users sharing one resource.
    Alloc(AllocArgs),
    /// Near-far pairing and, optionally, the ranked table of all matchings.
    Pair(PairArgs),
    /// Monte Carlo sweep over transmit SNR.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct AllocArgs {
    /// Transmit SNR in dB.
    #[arg(long, allow_negative_numbers = true)]
    pub snr_db: f64,
    /// Channel gain of the weakest user.
    #[arg(long)]
    pub g1: f64,
    /// Number of users on the resource.
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    /// Strong-user gain; adds the feasible α₂ interval (two users only).
    #[arg(long)]
    pub g2: Option<f64>,
    #[arg(long, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineArg {
    PerPair,
    Network,
}

impl From<BaselineArg> for OmaBaseline {
    fn from(b: BaselineArg) -> Self {
        match b {
            BaselineArg::PerPair => OmaBaseline::PerPair,
            BaselineArg::Network => OmaBaseline::Network,
        }
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Comma-separated channel gains (an even count). Users are numbered by
    /// ascending gain.
    #[arg(long, value_delimiter = ',', required = true)]
    pub gains: Vec<f64>,
    /// Transmit SNR in dB.
    #[arg(long, allow_negative_numbers = true)]
    pub snr_db: f64,
    /// Rank every perfect matching (up to 12 users).
    #[arg(long)]
    pub oracle: bool,
    /// OMA reference for the oma_sum column.
    #[arg(long, value_enum, default_value_t = BaselineArg::PerPair)]
    pub baseline: BaselineArg,
    #[arg(long, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// two-user-rates, two-user-sum, four-user-cases or m-user-group.
    #[arg(long)]
    pub mode: SweepMode,
    /// Users per draw; defaults to 2, 2, 4 and 12 for the modes above.
    #[arg(long)]
    pub users: Option<usize>,
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_SNR_START_DB)]
    pub snr_start: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = DEFAULT_SNR_STOP_DB)]
    pub snr_stop: f64,
    #[arg(long, default_value_t = DEFAULT_SNR_STEP_DB)]
    pub snr_step: f64,
    /// Explicit comma-separated SNR points in dB; overrides the start/stop/step grid.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub snr_points: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: u32,
    #[arg(long, env = SEED_ENV, default_value_t = crate::sim::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Infeasible(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Infeasible(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<NomaError> for CliError {
    fn from(e: NomaError) -> Self {
        match e {
            NomaError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Reads `key = value` lines into `--key value` flags.
///
/// Blank lines and `#` comments are skipped. `true`/`false` values toggle
/// switches such as `oracle`.
pub fn config_flags(text: &str) -> Result<Vec<String>, CliError> {
    let mut flags = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", n + 1))
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim().trim_matches('"');
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            v => flags.push(format!("--{key}={v}")),
        }
    }
    Ok(flags)
}

fn flag_name(arg: &str) -> Option<&str> {
    let name = arg.strip_prefix("--")?;
    Some(name.split_once('=').map_or(name, |(n, _)| n))
}

/// Pulls `--config PATH` out of `args` and splices the file's flags in
/// right after the subcommand. Flags given on the command line take
/// precedence over the same keys in the file.
pub fn expand_config(args: Vec<String>) -> Result<Vec<String>, CliError> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            path = Some(
                iter.next()
                    .ok_or_else(|| CliError::Usage("--config needs a path".into()))?,
            );
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
    let given: Vec<&str> = rest.iter().filter_map(|a| flag_name(a)).collect();
    let flags: Vec<String> = config_flags(&text)?
        .into_iter()
        .filter(|f| flag_name(f).is_some_and(|name| !given.contains(&name)))
        .collect();
    let at = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|p| p + 2)
        .unwrap_or(rest.len());
    rest.splice(at..at, flags);
    Ok(rest)
}

fn snr(db: f64) -> Result<TransmitSnr, CliError> {
    Ok(TransmitSnr::from_db(db)?)
}

pub fn alloc_table(args: &AllocArgs) -> Result<Table, CliError> {
    let snr = snr(args.snr_db)?;
    if args.g2.is_some() && args.m != 2 {
        return Err(CliError::Usage("--g2 is only meaningful with --m 2".into()));
    }
    let bounds = args
        .g2
        .map(|g2| alpha2_bounds(snr, args.g1, g2))
        .transpose()?;
    let alloc = optimal_m_user(snr, args.g1, args.m)?;

    // Residual of the weak user's rate against its OMA share, computed on a
    // group whose other gains do not affect user 1.
    let share = 1.0 / args.m as f64;
    let oma_weak = share * log2_1p(snr.linear() * args.g1);
    let placeholder = ChannelGains::new(vec![args.g1; args.m])?;
    let noma_weak = noma_rates(&placeholder, &alloc, snr)?[0];
    let residual = (noma_weak - oma_weak).abs() / oma_weak;

    let mut columns = vec!["snr_db".to_string(), "g1".into(), "m".into()];
    columns.extend((1..=args.m).map(|i| format!("alpha_{i}")));
    columns.push("weak_residual".into());
    if bounds.is_some() {
        columns.extend(["alpha2_lower".into(), "alpha2_upper".into()]);
    }
    let mut row = vec![
        Cell::Real(args.snr_db),
        Cell::Real(args.g1),
        Cell::from(args.m),
    ];
    row.extend(alloc.as_slice().iter().map(|&a| Cell::Real(a)));
    row.push(Cell::Real(residual));
    if let Some(b) = bounds {
        row.extend([Cell::Real(b.lower), Cell::Real(b.upper)]);
    }
    let mut table = Table::new(columns);
    table.push(row);
    Ok(table)
}

pub fn pair_table(args: &PairArgs) -> Result<Table, CliError> {
    let snr = snr(args.snr_db)?;
    if args.gains.len() % 2 == 1 {
        return Err(NomaError::OddUserCount(args.gains.len()).into());
    }
    let gains = ChannelGains::from_unsorted(args.gains.clone())?;
    let baseline = args.baseline.into();
    if args.oracle {
        let ranked = rank_matchings(&gains, snr, baseline, TIE_TOLERANCE)?;
        return Ok(matching_table(&ranked));
    }
    let policy = near_far_policy(gains.len() / 2)?;
    let report = pairing_sum_rate(&gains, &policy, snr, baseline)?;
    let mut table = Table::new(["policy", "noma_sum", "oma_sum"]);
    table.push(vec![
        Cell::Text(policy.to_string()),
        Cell::Real(report.noma_sum),
        Cell::Real(report.oma_sum),
    ]);
    Ok(table)
}

pub fn sweep_config(args: &SweepArgs) -> Result<SweepConfig, CliError> {
    let defaults = SweepConfig::new(args.mode);
    let snr_db = match &args.snr_points {
        Some(points) => points.clone(),
        None => snr_grid(args.snr_start, args.snr_stop, args.snr_step)?,
    };
    let config = SweepConfig {
        snr_db,
        trials: args.trials,
        users: args.users.unwrap_or(defaults.users),
        mode: args.mode,
        seed: args.seed,
    };
    config.validate()?;
    Ok(config)
}

pub fn sweep_table_for(args: &SweepArgs) -> Result<Table, CliError> {
    Ok(sweep_table(&run_sweep(&sweep_config(args)?)?))
}

fn emit(table: &Table, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    table
        .write(format, out)
        .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
}

/// Runs a parsed command, writing tables to `out` unless a file is requested.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Alloc(a) => emit(&alloc_table(a)?, a.format, out),
        Command::Pair(p) => emit(&pair_table(p)?, p.format, out),
        Command::Sweep(s) => {
            let table = sweep_table_for(s)?;
            match &s.output {
                Some(path) => table
                    .write_file(s.format, path)
                    .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
                None => emit(&table, s.format, out),
            }
        }
    }
}

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<String> = args
        .into_iter()
        .map(|a| a.into().to_string_lossy().into_owned())
        .collect();
    let result = expand_config(args).and_then(|args| match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out),
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            Ok(())
        }
        Err(e) => Err(CliError::Usage(e.to_string())),
    });
    match result {
        Ok(()) => {
            let _ = out.flush();
            0
        }
        Err(e) => {
            let _ = writeln!(
                err,
                "error: {}",
                e.to_string().trim_start_matches("error: ").trim_end()
            );
            e.exit_code()
        }
    }
}

/// Convenience wrapper over the process's real arguments and streams.
pub fn main() -> i32 {
    main_with_args(
        std::env::args_os(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}
