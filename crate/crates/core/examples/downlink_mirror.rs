//! Uplink and downlink optima side by side: the same two numbers with the
//! weak and strong user swapped.

use noma::{downlink_two_user, optimal_two_user, TransmitSnr};

fn main() -> noma::Result<()> {
    let g1 = 0.3;
    println!(
        "{:>8} {:>12} {:>12} {:>12} {:>12}",
        "snr_db", "up weak", "up strong", "down weak", "down strong"
    );
    for db in (-10..=30).step_by(5) {
        let snr = TransmitSnr::from_db(db as f64)?;
        let up = optimal_two_user(snr, g1)?;
        let down = downlink_two_user(snr, g1)?;
        println!(
            "{db:>8} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            up.as_slice()[0],
            up.as_slice()[1],
            down.as_slice()[0],
            down.as_slice()[1]
        );
    }
    Ok(())
}
