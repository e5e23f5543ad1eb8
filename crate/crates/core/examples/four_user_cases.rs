//! The three four-user matchings across SNR, and how the gap between the
//! first two approaches log₂(g₃/g₂).

use noma::{case_gap_monotonicity, four_user_cases, ChannelGains, TransmitSnr};

fn main() -> noma::Result<()> {
    let gains = ChannelGains::new(vec![0.3, 0.8, 2.0, 5.0])?;
    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "snr_db", "case1", "case2", "case3"
    );
    for db in (-10..=30).step_by(5) {
        let c = four_user_cases(&gains, TransmitSnr::from_db(db as f64)?)?;
        println!(
            "{db:>8} {:>10.6} {:>10.6} {:>10.6}",
            c.case1, c.case2, c.case3
        );
    }

    let grid: Vec<f64> = (0..13).map(|k| 10f64.powi(k - 6)).collect();
    let report = case_gap_monotonicity(&gains, &grid)?;
    println!("\ncase2 − case1:");
    for (rho, gap) in grid.iter().zip(&report.gaps) {
        println!("  ρ = {rho:>8.0e}  {gap:.6}");
    }
    println!(
        "limit log₂(g₃/g₂) = {:.6}, monotone = {}",
        report.high_snr_limit, report.monotone
    );
    Ok(())
}
