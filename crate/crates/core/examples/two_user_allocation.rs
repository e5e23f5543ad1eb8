//! Optimal uplink power split for one weak/strong pair and the rates it
//! produces next to OMA.
//!
//! cargo run --example two_user_allocation -- [snr_db] [g1] [g2]

use noma::{alpha2_bounds, optimal_two_user, rate_report, ChannelGains, TransmitSnr};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let snr_db = args.first().copied().unwrap_or(10.0);
    let g1 = args.get(1).copied().unwrap_or(0.3);
    let g2 = args.get(2).copied().unwrap_or(2.0);

    let snr = TransmitSnr::from_db(snr_db)?;
    let bounds = alpha2_bounds(snr, g1, g2)?;
    let alloc = optimal_two_user(snr, g1)?;
    let report = rate_report(&ChannelGains::new(vec![g1, g2])?, &alloc, snr)?;

    println!(
        "ρ = {:.4} ({snr_db} dB), g₁ = {g1}, g₂ = {g2}",
        snr.linear()
    );
    println!("feasible α₂ ∈ [{:.6}, {:.6}]", bounds.lower, bounds.upper);
    println!(
        "optimal (α₁, α₂) = ({:.6}, {:.6})",
        alloc.as_slice()[0],
        alloc.as_slice()[1]
    );
    for (i, (n, o)) in report.noma_rates.iter().zip(&report.oma_rates).enumerate() {
        println!("user {}: NOMA {n:.6}  OMA {o:.6}  bits/s/Hz", i + 1);
    }
    println!(
        "sum: NOMA {:.6}  OMA {:.6}  gain {:.6}",
        report.noma_sum,
        report.oma_sum,
        report.gain()
    );
    Ok(())
}
