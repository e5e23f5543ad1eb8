//! Recursive allocation for M users on one resource.
//!
//! Prints the coefficients, each user's NOMA rate and its 1/M OMA share.
//! The weakest user lands exactly on its share. The others are not
//! guaranteed to: the slack column goes negative for some gain profiles.
//!
//! cargo run --example m_user_grouping -- [m] [snr_db]

use noma::{noma_rates, oma_rates, optimal_m_user, ChannelGains, TransmitSnr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(4);
    let snr_db: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(20.0);

    let snr = TransmitSnr::from_db(snr_db)?;
    // Gains spread geometrically between 0.1 and 10.
    let gains: Vec<f64> = (0..m)
        .map(|i| 0.1 * 100f64.powf(i as f64 / (m - 1).max(1) as f64))
        .collect();
    let gains = ChannelGains::new(gains)?;
    let alloc = optimal_m_user(snr, gains.weakest(), m)?;
    let noma = noma_rates(&gains, &alloc, snr)?;
    let oma = oma_rates(&gains, snr);

    println!("M = {m}, ρ = {snr_db} dB");
    println!(
        "{:>5} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "user", "gain", "alpha", "noma", "oma", "slack"
    );
    for i in 0..m {
        println!(
            "{:>5} {:>10.4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}",
            i + 1,
            gains.as_slice()[i],
            alloc.as_slice()[i],
            noma[i],
            oma[i],
            noma[i] - oma[i]
        );
    }
    println!(
        "sum: NOMA {:.6}  OMA {:.6}",
        noma.iter().sum::<f64>(),
        oma.iter().sum::<f64>()
    );
    Ok(())
}
