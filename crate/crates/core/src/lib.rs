//! Optimal power allocation and user pairing for uplink NOMA.
//!
//! Users are ordered weakest first. The uplink receiver cancels the
//! strongest user first, so the weakest one is decoded free of
//! interference. The crate covers:
//!
//! - [`model`]: SNR, gains and allocations, plus the NOMA/OMA rate formulas.
//! - [`power`]: the closed-form two-user optimum, its feasible interval, the
//!   downlink mirror and the recursive `M`-user allocation.
//! - [`pairing`]: near-far pairing, exhaustive matching enumeration and the
//!   four-user case comparison.
//! - [`channel`]: reproducible Rayleigh-fading gain draws.
//! - [`sim`]: Monte Carlo SNR sweeps.
//! - [`output`] and [`cli`]: CSV/JSON tables and the `noma` command.
//!
//! ```
//! use noma::{optimal_two_user, TransmitSnr};
//!
//! let snr = TransmitSnr::new(10.0).unwrap();
//! let alloc = optimal_two_user(snr, 0.3).unwrap();
//! assert!((alloc.as_slice()[1] - 2.0 / 3.0).abs() < 1e-12);
//! ```

pub mod channel;
pub mod cli;
pub mod error;
pub mod model;
pub mod output;
pub mod pairing;
pub mod power;
pub mod sim;

pub use channel::{sample_rayleigh_gains, SeedSpec};
pub use error::{NomaError, Result};
pub use model::{
    noma_rates, noma_sum_rate, oma_rates, rate_report, ChannelGains, PowerAllocation, RateReport,
    TransmitSnr,
};
pub use pairing::{
    case_gap_monotonicity, enumerate_matchings, four_user_cases, near_far_policy, pairing_sum_rate,
    rank_matchings, CaseGapReport, FourUserCases, OmaBaseline, PairingPolicy,
};
pub use power::{
    alpha2_bounds, downlink_two_user, optimal_m_user, optimal_two_user, FeasibleInterval,
};
pub use sim::{
    run_sweep, sweep_four_user_cases, sweep_m_user, sweep_two_user, SweepConfig, SweepMode,
    SweepResult,
};
