//! Domain types and the uplink rate formulas.
//!
//! Users are always indexed weakest first: `gains[0]` is the smallest
//! channel gain. The uplink receiver runs successive interference
//! cancellation from the strongest user down, so user `i` sees the
//! not-yet-cancelled signals of users `0..i` as interference and the weakest
//! user is decoded last, free of interference.

use std::f64::consts::LN_2;
use std::fmt;

use crate::error::{NomaError, Result};

/// Tolerance on `|Σα − 1|` accepted by [`PowerAllocation`].
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Linear-scale transmit SNR `ρ = P_max / σ²`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TransmitSnr(f64);

impl TransmitSnr {
    pub fn new(rho: f64) -> Result<Self> {
        if rho.is_finite() && rho > 0.0 {
            Ok(Self(rho))
        } else {
            Err(NomaError::InvalidSnr(rho))
        }
    }

    /// Converts a value in decibels, `ρ = 10^(dB/10)`.
    pub fn from_db(db: f64) -> Result<Self> {
        Self::new(10f64.powf(db / 10.0))
    }

    pub fn linear(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        10.0 * self.0.log10()
    }
}

/// Squared channel magnitudes `|h_i|²`, sorted ascending.
///
/// Ties are accepted: Monte Carlo draws can land arbitrarily close to each
/// other and every formula stays finite when they do.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelGains(Vec<f64>);

impl ChannelGains {
    /// Validates an already ascending gain vector of at least two users.
    pub fn new(gains: Vec<f64>) -> Result<Self> {
        if gains.len() < 2 {
            return Err(NomaError::TooFewUsers {
                min: 2,
                found: gains.len(),
            });
        }
        for (index, &value) in gains.iter().enumerate() {
            if !(value.is_finite() && value > 0.0) {
                return Err(NomaError::InvalidGain { index, value });
            }
        }
        if let Some(index) = (1..gains.len()).find(|&i| gains[i] < gains[i - 1]) {
            return Err(NomaError::UnsortedGains { index });
        }
        Ok(Self(gains))
    }

    /// Sorts the gains ascending before validating them.
    pub fn from_unsorted(mut gains: Vec<f64>) -> Result<Self> {
        // NaN is rejected by `new`; total_cmp only has to give a stable order.
        gains.sort_by(f64::total_cmp);
        Self::new(gains)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Gain of the weakest user.
    pub fn weakest(&self) -> f64 {
        self.0[0]
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Per-user power coefficients, each in `(0, 1)`, summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerAllocation(Vec<f64>);

impl PowerAllocation {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(NomaError::TooFewUsers {
                min: 2,
                found: alphas.len(),
            });
        }
        for (index, &value) in alphas.iter().enumerate() {
            if !(value > 0.0 && value < 1.0) {
                return Err(NomaError::InvalidCoefficient { index, value });
            }
        }
        let total: f64 = alphas.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(NomaError::SumNotOne(total));
        }
        Ok(Self(alphas))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Returns the coefficients in reverse user order.
    pub(crate) fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl fmt::Display for PowerAllocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

/// Per-user NOMA and OMA rates for one configuration, in bits/s/Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub noma_rates: Vec<f64>,
    pub oma_rates: Vec<f64>,
    pub noma_sum: f64,
    pub oma_sum: f64,
}

impl RateReport {
    /// Builds a report whose sums are taken over the per-user vectors.
    pub fn from_rates(noma_rates: Vec<f64>, oma_rates: Vec<f64>) -> Self {
        let noma_sum = noma_rates.iter().sum();
        let oma_sum = oma_rates.iter().sum();
        Self {
            noma_rates,
            oma_rates,
            noma_sum,
            oma_sum,
        }
    }

    /// NOMA sum rate minus OMA sum rate.
    pub fn gain(&self) -> f64 {
        self.noma_sum - self.oma_sum
    }
}

/// `log₂(1 + x)`, accurate for small `x`.
#[inline]
pub(crate) fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / LN_2
}

pub(crate) fn noma_rates_raw(gains: &[f64], alphas: &[f64], rho: f64) -> Vec<f64> {
    let mut interference = 0.0;
    gains
        .iter()
        .zip(alphas)
        .map(|(&g, &a)| {
            let received = rho * a * g;
            let rate = log2_1p(received / (1.0 + interference));
            interference += received;
            rate
        })
        .collect()
}

pub(crate) fn noma_sum_rate_raw(gains: &[f64], alphas: &[f64], rho: f64) -> f64 {
    let received: f64 = gains.iter().zip(alphas).map(|(&g, &a)| rho * a * g).sum();
    log2_1p(received)
}

pub(crate) fn oma_rates_raw(gains: &[f64], rho: f64, share: f64) -> Vec<f64> {
    gains.iter().map(|&g| share * log2_1p(rho * g)).collect()
}

fn check_dims(gains: &ChannelGains, alloc: &PowerAllocation) -> Result<()> {
    if gains.len() != alloc.len() {
        return Err(NomaError::DimensionMismatch {
            expected: gains.len(),
            found: alloc.len(),
        });
    }
    Ok(())
}

/// Uplink NOMA rates under SIC, weakest user first:
/// `R_i = log₂(1 + ρα_i g_i / (1 + Σ_{j<i} ρα_j g_j))`.
pub fn noma_rates(
    gains: &ChannelGains,
    alloc: &PowerAllocation,
    snr: TransmitSnr,
) -> Result<Vec<f64>> {
    check_dims(gains, alloc)?;
    Ok(noma_rates_raw(
        gains.as_slice(),
        alloc.as_slice(),
        snr.linear(),
    ))
}

/// OMA rates with the resource split evenly over the `M` users:
/// `R̃_i = (1/M) log₂(1 + ρ g_i)`.
pub fn oma_rates(gains: &ChannelGains, snr: TransmitSnr) -> Vec<f64> {
    let share = 1.0 / gains.len() as f64;
    oma_rates_raw(gains.as_slice(), snr.linear(), share)
}

/// Closed-form NOMA sum rate `log₂(1 + Σ ρ α_i g_i)`.
///
/// The per-user rates telescope to this value, so it always agrees with the
/// sum of [`noma_rates`] up to rounding.
pub fn noma_sum_rate(
    gains: &ChannelGains,
    alloc: &PowerAllocation,
    snr: TransmitSnr,
) -> Result<f64> {
    check_dims(gains, alloc)?;
    Ok(noma_sum_rate_raw(
        gains.as_slice(),
        alloc.as_slice(),
        snr.linear(),
    ))
}

/// NOMA and OMA rates of one group sharing a single resource.
pub fn rate_report(
    gains: &ChannelGains,
    alloc: &PowerAllocation,
    snr: TransmitSnr,
) -> Result<RateReport> {
    let noma = noma_rates(gains, alloc, snr)?;
    Ok(RateReport::from_rates(noma, oma_rates(gains, snr)))
}
