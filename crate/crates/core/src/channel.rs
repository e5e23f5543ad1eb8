//! Rayleigh block fading.
//!
//! Channel coefficients are unit-variance circularly-symmetric complex
//! Gaussians, so every squared magnitude `|h|²` is exponential with mean 1.
//! A different fading variance only rescales the SNR axis.
//!
//! Draws are counter-based: the random stream for a trial is fixed by the
//! triple `(seed, sweep point, trial)`, independent of which thread asks for
//! it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};

use crate::error::{NomaError, Result};
use crate::model::ChannelGains;

/// Identifies one independent random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub seed: u64,
    pub point: u32,
    pub trial: u32,
}

impl SeedSpec {
    pub fn new(seed: u64, point: u32, trial: u32) -> Self {
        Self { seed, point, trial }
    }

    /// Generator positioned at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((u64::from(self.point) << 32) | u64::from(self.trial));
        rng
    }
}

/// `m` unsorted exponential(1) gains from the stream of `spec`.
pub fn sample_unsorted_gains(m: usize, spec: SeedSpec) -> Vec<f64> {
    let mut rng = spec.rng();
    (0..m)
        .map(|_| {
            let g: f64 = Exp1.sample(&mut rng);
            // Exp1 can return exactly zero; zero gains are not valid channels.
            if g > 0.0 {
                g
            } else {
                f64::MIN_POSITIVE
            }
        })
        .collect()
}

/// `m` Rayleigh-fading channel gains, sorted ascending.
pub fn sample_rayleigh_gains(m: usize, spec: SeedSpec) -> Result<ChannelGains> {
    if m < 2 {
        return Err(NomaError::TooFewUsers { min: 2, found: m });
    }
    ChannelGains::from_unsorted(sample_unsorted_gains(m, spec))
}
