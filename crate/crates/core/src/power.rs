//! Closed-form power coefficients.
//!
//! Two users: the sum rate grows with the strong user's share `α₂`, so the
//! optimum sits on the upper edge of the interval where both users still
//! reach their OMA rate. That edge is set by the weak user alone and depends
//! only on `x = ρ g₁`:
//!
//! ```text
//! α₁ = (√(1 + x) − 1) / x,   α₂ = 1 − α₁
//! ```
//!
//! Larger groups are built by adding one user at a time on top of the
//! previous optimum, which gives `α₁⁽ᴹ⁾ = ((1 + x)^{1/M} − 1) / x`.

use log::warn;

use crate::error::{NomaError, Result};
use crate::model::{PowerAllocation, TransmitSnr, SUM_TOLERANCE};

/// Range of strong-user coefficients `α₂` that keeps both users at or above
/// their OMA rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleInterval {
    pub lower: f64,
    pub upper: f64,
}

impl FeasibleInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, alpha2: f64) -> bool {
        alpha2 >= self.lower && alpha2 <= self.upper
    }
}

/// Relative amount by which the lower bound may exceed the upper one before
/// the interval counts as empty.
const BOUND_SLACK: f64 = 1e-12;

fn check_gain(value: f64, index: usize) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(NomaError::InvalidGain { index, value })
    }
}

/// `(√(1 + x) − 1) / x` without cancellation for small `x`.
fn weak_share(x: f64) -> f64 {
    1.0 / ((1.0 + x).sqrt() + 1.0)
}

/// `(1 + x)^{1/m} − 1`, accurate for small `x`.
fn root_minus_one(x: f64, m: usize) -> f64 {
    (x.ln_1p() / m as f64).exp_m1()
}

/// Bounds on `α₂` from the two OMA-floor constraints.
///
/// The weak user's floor caps `α₂` from above; the strong user's floor
/// bounds it from below. An empty interval is reported as
/// [`NomaError::Infeasible`] instead of being clamped.
pub fn alpha2_bounds(snr: TransmitSnr, g1: f64, g2: f64) -> Result<FeasibleInterval> {
    check_gain(g1, 0)?;
    check_gain(g2, 1)?;
    if g2 < g1 {
        return Err(NomaError::UnsortedGains { index: 1 });
    }
    let rho = snr.linear();
    let x1 = rho * g1;
    let x2 = rho * g2;
    let s1 = (1.0 + x1).sqrt();
    // √(1 + x₂) − 1 written as x₂ / (√(1 + x₂) + 1).
    let d2 = x2 / ((1.0 + x2).sqrt() + 1.0);

    let upper = s1 * weak_share(x1);
    let lower = (1.0 + x1) * d2 / (x2 + x1 * d2);
    // With g₁ = g₂ the bounds coincide exactly and rounding may order them
    // either way.
    if lower > upper * (1.0 + BOUND_SLACK) {
        return Err(NomaError::Infeasible { lower, upper });
    }
    Ok(FeasibleInterval {
        lower: lower.min(upper),
        upper,
    })
}

/// Sum-rate optimal uplink allocation for two users, weak user first.
///
/// Only the weak user's gain matters; the strong user's gain never enters.
pub fn optimal_two_user(snr: TransmitSnr, g1: f64) -> Result<PowerAllocation> {
    check_gain(g1, 0)?;
    let alpha1 = weak_share(snr.linear() * g1);
    PowerAllocation::new(vec![alpha1, 1.0 - alpha1])
}

/// Downlink counterpart of [`optimal_two_user`]: same pair of numbers, with
/// the roles of the weak and strong user swapped.
pub fn downlink_two_user(snr: TransmitSnr, g1: f64) -> Result<PowerAllocation> {
    Ok(optimal_two_user(snr, g1)?.reversed())
}

/// Strong-user coefficient `α₂` of the two-user optimum for a weak user with
/// gain `g`.
pub fn strong_coefficient(snr: TransmitSnr, g: f64) -> Result<f64> {
    check_gain(g, 0)?;
    Ok(1.0 - weak_share(snr.linear() * g))
}

/// Optimal coefficients for `m` users sharing one resource, weakest first.
///
/// Starting from the two-user optimum, each new (strongest) user `k` takes
///
/// ```text
/// α_k = ((1 + x α₁) − (1 + x)^{1/k}) / (x α₁)
/// ```
///
/// of the budget and everyone already present is scaled by `1 − α_k`.
/// The result depends only on `x = ρ g₁`.
pub fn optimal_m_user(snr: TransmitSnr, g1: f64, m: usize) -> Result<PowerAllocation> {
    check_gain(g1, 0)?;
    if m < 2 {
        return Err(NomaError::TooFewUsers { min: 2, found: m });
    }
    let x = snr.linear() * g1;
    let mut alphas = Vec::with_capacity(m);
    let a1 = weak_share(x);
    alphas.push(a1);
    alphas.push(1.0 - a1);

    for k in 3..=m {
        let weak_received = x * alphas[0];
        let target = root_minus_one(x, k);
        // 1 − α_k, written so that α₁ lands on target / x directly.
        let keep = target / weak_received;
        let newcomer = (weak_received - target) / weak_received;
        for a in alphas.iter_mut() {
            *a *= keep;
        }
        alphas.push(newcomer);

        let total: f64 = alphas.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            warn!("renormalizing {k}-user allocation: coefficients summed to {total}");
            for a in alphas.iter_mut() {
                *a /= total;
            }
        }
    }
    PowerAllocation::new(alphas)
}

/// Closed form of the weakest user's coefficient in an `m`-user group.
pub fn weakest_coefficient(snr: TransmitSnr, g1: f64, m: usize) -> Result<f64> {
    check_gain(g1, 0)?;
    if m < 2 {
        return Err(NomaError::TooFewUsers { min: 2, found: m });
    }
    let x = snr.linear() * g1;
    Ok(root_minus_one(x, m) / x)
}
