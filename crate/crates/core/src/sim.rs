//! Monte Carlo SNR sweeps over Rayleigh fading.
//!
//! Every sweep point averages per-draw rates (ergodic rates, not rates of
//! the average channel) and reports the standard error of each mean. Trials
//! run in parallel; each trial draws from its own counter-based stream and
//! the reduction runs in trial order, so results are bit-identical for a
//! given configuration regardless of thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channel::{sample_rayleigh_gains, SeedSpec};
use crate::error::{NomaError, Result};
use crate::model::{noma_rates, noma_sum_rate, oma_rates, TransmitSnr};
use crate::pairing::four_user_cases;
use crate::power::{optimal_m_user, optimal_two_user};

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRIALS: u32 = 10_000;
pub const DEFAULT_SNR_START_DB: f64 = -10.0;
pub const DEFAULT_SNR_STOP_DB: f64 = 30.0;
pub const DEFAULT_SNR_STEP_DB: f64 = 5.0;

/// Which figure a sweep reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Per-user NOMA and OMA rates of a two-user pair.
    TwoUserRates,
    /// NOMA against OMA sum rate of a two-user pair.
    TwoUserSum,
    /// Sum rates of the three four-user matchings.
    FourUserCases,
    /// NOMA against OMA sum rate with `M` users on one resource.
    MUserGroup,
}

impl SweepMode {
    pub const ALL: [SweepMode; 4] = [
        SweepMode::TwoUserRates,
        SweepMode::TwoUserSum,
        SweepMode::FourUserCases,
        SweepMode::MUserGroup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepMode::TwoUserRates => "two-user-rates",
            SweepMode::TwoUserSum => "two-user-sum",
            SweepMode::FourUserCases => "four-user-cases",
            SweepMode::MUserGroup => "m-user-group",
        }
    }

    /// Column labels of the averaged series, in output order.
    pub fn series(self) -> &'static [&'static str] {
        match self {
            SweepMode::TwoUserRates => &["R1_noma", "R2_noma", "R1_oma", "R2_oma"],
            SweepMode::TwoUserSum | SweepMode::MUserGroup => &["sum_noma", "sum_oma"],
            SweepMode::FourUserCases => &["case1", "case2", "case3"],
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepMode {
    type Err = NomaError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| NomaError::InvalidConfig(format!("unknown sweep mode `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Strictly ascending transmit SNR values in dB.
    pub snr_db: Vec<f64>,
    pub trials: u32,
    pub users: usize,
    pub mode: SweepMode,
    pub seed: u64,
}

impl SweepConfig {
    /// Default grid and trial count for `mode`, with the matching user count.
    pub fn new(mode: SweepMode) -> Self {
        let users = match mode {
            SweepMode::TwoUserRates | SweepMode::TwoUserSum => 2,
            SweepMode::FourUserCases => 4,
            SweepMode::MUserGroup => 12,
        };
        Self {
            snr_db: snr_grid(
                DEFAULT_SNR_START_DB,
                DEFAULT_SNR_STOP_DB,
                DEFAULT_SNR_STEP_DB,
            )
            .expect("default grid is valid"),
            trials: DEFAULT_TRIALS,
            users,
            mode,
            seed: DEFAULT_SEED,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(NomaError::InvalidConfig("trials must be at least 1".into()));
        }
        if self.snr_db.is_empty() {
            return Err(NomaError::InvalidConfig("SNR grid is empty".into()));
        }
        if self.snr_db.len() > u32::MAX as usize {
            return Err(NomaError::InvalidConfig("SNR grid is too long".into()));
        }
        if let Some(v) = self.snr_db.iter().find(|v| !v.is_finite()) {
            return Err(NomaError::InvalidConfig(format!(
                "SNR value {v} is not finite"
            )));
        }
        if self.snr_db.windows(2).any(|w| w[1] <= w[0]) {
            return Err(NomaError::InvalidConfig(
                "SNR grid must be strictly ascending".into(),
            ));
        }
        let users_ok = match self.mode {
            SweepMode::TwoUserRates | SweepMode::TwoUserSum => self.users == 2,
            SweepMode::FourUserCases => self.users == 4,
            SweepMode::MUserGroup => self.users >= 2,
        };
        if !users_ok {
            return Err(NomaError::InvalidConfig(format!(
                "mode {} does not support {} users",
                self.mode, self.users
            )));
        }
        Ok(())
    }
}

/// Inclusive grid `start, start + step, …` up to `stop`.
pub fn snr_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite() && start.is_finite() && stop.is_finite()) || stop < start {
        return Err(NomaError::InvalidConfig(format!(
            "bad SNR grid {start}:{step}:{stop}"
        )));
    }
    // Slack absorbs rounding at the endpoint.
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| start + step * k as f64).collect())
}

/// Averages at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub snr_db: f64,
    pub means: Vec<f64>,
    pub std_errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub mode: SweepMode,
    pub users: usize,
    pub series: Vec<String>,
    pub rows: Vec<SweepRow>,
    pub trials: u32,
    pub seed: u64,
}

impl SweepResult {
    /// Index of the series called `label`.
    pub fn series_index(&self, label: &str) -> Option<usize> {
        self.series.iter().position(|s| s == label)
    }

    /// Means of one series across all SNR points.
    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let i = self.series_index(label)?;
        Some(self.rows.iter().map(|r| r.means[i]).collect())
    }

    pub fn std_error_column(&self, label: &str) -> Option<Vec<f64>> {
        let i = self.series_index(label)?;
        Some(self.rows.iter().map(|r| r.std_errors[i]).collect())
    }
}

fn mean_and_std_error(samples: &[Vec<f64>], width: usize) -> (Vec<f64>, Vec<f64>) {
    let n = samples.len() as f64;
    let mut means = vec![0.0; width];
    for s in samples {
        for (m, v) in means.iter_mut().zip(s) {
            *m += v;
        }
    }
    means.iter_mut().for_each(|m| *m /= n);

    let mut errs = vec![0.0; width];
    if samples.len() > 1 {
        for s in samples {
            for ((e, v), m) in errs.iter_mut().zip(s).zip(&means) {
                *e += (v - m) * (v - m);
            }
        }
        errs.iter_mut()
            .for_each(|e| *e = (*e / (n - 1.0) / n).sqrt());
    }
    (means, errs)
}

/// Runs `draw` for every (point, trial) and reduces per point in trial order.
fn run<F>(config: &SweepConfig, draw: F) -> Result<SweepResult>
where
    F: Fn(TransmitSnr, SeedSpec) -> Result<Vec<f64>> + Sync,
{
    config.validate()?;
    let width = config.mode.series().len();
    let rows = config
        .snr_db
        .iter()
        .enumerate()
        .map(|(point, &db)| {
            let snr = TransmitSnr::from_db(db)?;
            let samples = (0..config.trials)
                .into_par_iter()
                .map(|trial| draw(snr, SeedSpec::new(config.seed, point as u32, trial)))
                .collect::<Result<Vec<_>>>()?;
            let (means, std_errors) = mean_and_std_error(&samples, width);
            Ok(SweepRow {
                snr_db: db,
                means,
                std_errors,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        mode: config.mode,
        users: config.users,
        series: config.mode.series().iter().map(|s| s.to_string()).collect(),
        rows,
        trials: config.trials,
        seed: config.seed,
    })
}

fn require_mode(config: &SweepConfig, allowed: &[SweepMode]) -> Result<()> {
    if allowed.contains(&config.mode) {
        Ok(())
    } else {
        Err(NomaError::InvalidConfig(format!(
            "mode {} is not handled by this sweep",
            config.mode
        )))
    }
}

/// Two-user pair under the optimal allocation: per-user rates or sum rates.
pub fn sweep_two_user(config: &SweepConfig) -> Result<SweepResult> {
    require_mode(config, &[SweepMode::TwoUserRates, SweepMode::TwoUserSum])?;
    let per_user = config.mode == SweepMode::TwoUserRates;
    run(config, |snr, spec| {
        let gains = sample_rayleigh_gains(2, spec)?;
        let alloc = optimal_two_user(snr, gains.weakest())?;
        let oma = oma_rates(&gains, snr);
        if per_user {
            let noma = noma_rates(&gains, &alloc, snr)?;
            Ok(vec![noma[0], noma[1], oma[0], oma[1]])
        } else {
            Ok(vec![noma_sum_rate(&gains, &alloc, snr)?, oma.iter().sum()])
        }
    })
}

/// Sum rates of the three four-user matchings.
pub fn sweep_four_user_cases(config: &SweepConfig) -> Result<SweepResult> {
    require_mode(config, &[SweepMode::FourUserCases])?;
    run(config, |snr, spec| {
        let gains = sample_rayleigh_gains(4, spec)?;
        Ok(four_user_cases(&gains, snr)?.as_array().to_vec())
    })
}

/// `M` users on one resource with the recursive optimal allocation.
pub fn sweep_m_user(config: &SweepConfig) -> Result<SweepResult> {
    require_mode(config, &[SweepMode::MUserGroup])?;
    let m = config.users;
    run(config, |snr, spec| {
        let gains = sample_rayleigh_gains(m, spec)?;
        let alloc = optimal_m_user(snr, gains.weakest(), m)?;
        Ok(vec![
            noma_sum_rate(&gains, &alloc, snr)?,
            oma_rates(&gains, snr).iter().sum(),
        ])
    })
}

/// Dispatches on `config.mode`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    match config.mode {
        SweepMode::TwoUserRates | SweepMode::TwoUserSum => sweep_two_user(config),
        SweepMode::FourUserCases => sweep_four_user_cases(config),
        SweepMode::MUserGroup => sweep_m_user(config),
    }
}
