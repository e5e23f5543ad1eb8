//! Near-far pairing against every other perfect matching of six users.

use noma::{near_far_policy, rank_matchings, ChannelGains, OmaBaseline, TransmitSnr};

fn main() -> noma::Result<()> {
    let gains = ChannelGains::new(vec![0.12, 0.4, 0.75, 1.3, 2.2, 4.0])?;
    let snr = TransmitSnr::from_db(15.0)?;
    println!("near-far policy: {}", near_far_policy(3)?);

    let ranked = rank_matchings(&gains, snr, OmaBaseline::PerPair, 1e-9)?;
    println!(
        "{:>4}  {:<20} {:>10} {:>10}",
        "rank", "policy", "noma_sum", "oma_sum"
    );
    for (k, m) in ranked.iter().enumerate() {
        println!(
            "{:>4}  {:<20} {:>10.6} {:>10.6}",
            k + 1,
            m.policy.to_string(),
            m.report.noma_sum,
            m.report.oma_sum
        );
    }
    Ok(())
}
