use noma::channel::{sample_unsorted_gains, SeedSpec};
use noma::sample_rayleigh_gains;

/// One-sample Kolmogorov–Smirnov statistic against exponential(1).
fn ks_exponential(mut samples: Vec<f64>) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = 1.0 - (-x).exp();
            let above = (i as f64 + 1.0) / n - cdf;
            let below = cdf - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

#[test]
fn mean_of_a_million_draws_is_one() {
    let draws = sample_unsorted_gains(1_000_000, SeedSpec::new(2024, 0, 0));
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    assert!((mean - 1.0).abs() < 0.01, "mean {mean}");
}

#[test]
fn kolmogorov_smirnov_within_one_percent_critical_value() {
    let n = 100_000;
    let critical = 1.628 / (n as f64).sqrt();

    let single_stream = sample_unsorted_gains(n, SeedSpec::new(9, 0, 0));
    let d = ks_exponential(single_stream);
    assert!(d < critical, "single stream D = {d}, critical {critical}");

    // First draw of many independent trial streams.
    let across_streams: Vec<f64> = (0..n as u32)
        .map(|t| sample_unsorted_gains(1, SeedSpec::new(9, 1, t))[0])
        .collect();
    let d = ks_exponential(across_streams);
    assert!(d < critical, "cross-stream D = {d}, critical {critical}");
}

#[test]
fn sorted_output_is_a_permutation_of_the_raw_draw() {
    let spec = SeedSpec::new(5, 2, 11);
    let mut raw = sample_unsorted_gains(8, spec);
    raw.sort_by(f64::total_cmp);
    assert_eq!(
        sample_rayleigh_gains(8, spec).unwrap().as_slice(),
        raw.as_slice()
    );
}
