//! Invariants of the rate formulas and the closed-form allocations.

use noma::{
    alpha2_bounds, downlink_two_user, noma_rates, noma_sum_rate, oma_rates, optimal_m_user,
    optimal_two_user, ChannelGains, PowerAllocation, TransmitSnr,
};
use proptest::prelude::*;

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.log10()..hi.log10()).prop_map(|e| 10f64.powf(e))
}

fn ascending_gains(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(log_uniform(1e-3, 1e2), 2..=max_len).prop_map(|mut v| {
        v.sort_by(f64::total_cmp);
        v
    })
}

fn simplex(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..1.0, len).prop_map(|w| {
        let total: f64 = w.iter().sum();
        let mut a: Vec<f64> = w.iter().map(|x| x / total).collect();
        // Push the rounding residue into the last entry.
        let head: f64 = a[..a.len() - 1].iter().sum();
        *a.last_mut().unwrap() = 1.0 - head;
        a
    })
}

fn gains_and_alloc() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    ascending_gains(12).prop_flat_map(|g| {
        let n = g.len();
        (Just(g), simplex(n))
    })
}

proptest! {
    #[test]
    fn rates_telescope_to_sum_rate((g, a) in gains_and_alloc(), rho in log_uniform(1e-2, 1e4)) {
        let gains = ChannelGains::new(g).unwrap();
        let alloc = PowerAllocation::new(a).unwrap();
        let snr = TransmitSnr::new(rho).unwrap();
        let rates = noma_rates(&gains, &alloc, snr).unwrap();
        let total: f64 = rates.iter().sum();
        let closed = noma_sum_rate(&gains, &alloc, snr).unwrap();
        prop_assert!((total - closed).abs() <= 1e-9 * closed);
        prop_assert!(rates.iter().all(|&r| r >= 0.0));
        prop_assert!(oma_rates(&gains, snr).iter().all(|&r| r >= 0.0));
    }

    #[test]
    fn two_user_optimum_on_upper_bound(
        rho in log_uniform(1e-2, 1e4),
        g1 in log_uniform(1e-3, 1e2),
        ratio in 1.0f64..1e3,
    ) {
        let snr = TransmitSnr::new(rho).unwrap();
        let alloc = optimal_two_user(snr, g1).unwrap();
        let a2 = alloc.as_slice()[1];
        prop_assert!(a2 > 0.0 && a2 < 1.0);
        let bounds = alpha2_bounds(snr, g1, g1 * ratio).unwrap();
        prop_assert!(bounds.lower <= bounds.upper);
        prop_assert!((a2 - bounds.upper).abs() <= 1e-12 * bounds.upper);
    }

    #[test]
    fn two_user_floors(
        rho in log_uniform(1e-2, 1e4),
        g1 in log_uniform(1e-3, 1e2),
        ratio in 1.0f64..1e3,
    ) {
        let snr = TransmitSnr::new(rho).unwrap();
        let gains = ChannelGains::new(vec![g1, g1 * ratio]).unwrap();
        let alloc = optimal_two_user(snr, g1).unwrap();
        let noma = noma_rates(&gains, &alloc, snr).unwrap();
        let oma = oma_rates(&gains, snr);
        prop_assert!((noma[0] - oma[0]).abs() <= 1e-9 * oma[0]);
        prop_assert!(noma[1] >= oma[1] - 1e-9);
    }

    #[test]
    fn downlink_is_component_swap(rho in log_uniform(1e-2, 1e4), g1 in log_uniform(1e-3, 1e2)) {
        let snr = TransmitSnr::new(rho).unwrap();
        let up = optimal_two_user(snr, g1).unwrap();
        let down = downlink_two_user(snr, g1).unwrap();
        prop_assert_eq!(up.as_slice()[0], down.as_slice()[1]);
        prop_assert_eq!(up.as_slice()[1], down.as_slice()[0]);
    }

    #[test]
    fn m_user_sum_and_weak_user(
        rho in log_uniform(1e-2, 1e4),
        g in ascending_gains(32),
    ) {
        let m = g.len();
        let snr = TransmitSnr::new(rho).unwrap();
        let alloc = optimal_m_user(snr, g[0], m).unwrap();
        let total: f64 = alloc.as_slice().iter().sum();
        prop_assert!((total - 1.0).abs() <= 1e-12);
        let gains = ChannelGains::new(g).unwrap();
        let noma = noma_rates(&gains, &alloc, snr).unwrap();
        let oma = oma_rates(&gains, snr);
        prop_assert!((noma[0] - oma[0]).abs() <= 1e-9 * oma[0]);
    }
}

#[test]
fn alpha2_strictly_inside_unit_interval_on_grid() {
    for i in 0..60 {
        let rho = 10f64.powf(-2.0 + 6.0 * i as f64 / 59.0);
        for j in 0..60 {
            let g1 = 10f64.powf(-3.0 + 5.0 * j as f64 / 59.0);
            let a2 = optimal_two_user(TransmitSnr::new(rho).unwrap(), g1)
                .unwrap()
                .as_slice()[1];
            assert!(a2 > 0.0 && a2 < 1.0, "ρ={rho} g₁={g1}: α₂={a2}");
        }
    }
}

#[test]
fn feasible_interval_nonempty_on_wide_grid() {
    let ratios = [1.0, 1.0001, 1.5, 2.0, 10.0, 1e3, 1e6];
    for i in 0..40 {
        let rho = 10f64.powf(-3.0 + 9.0 * i as f64 / 39.0);
        for j in 0..40 {
            let g1 = 10f64.powf(-4.0 + 7.0 * j as f64 / 39.0);
            for r in ratios {
                let snr = TransmitSnr::new(rho).unwrap();
                let b = alpha2_bounds(snr, g1, g1 * r)
                    .unwrap_or_else(|e| panic!("ρ={rho} g₁={g1} ratio={r}: {e}"));
                assert!(b.lower > 0.0 && b.upper < 1.0);
            }
        }
    }
}

#[test]
fn sum_to_one_up_to_32_users() {
    for m in 2..=32 {
        for &x in &[1e-5, 1e-2, 1.0, 42.0, 1e4, 1e6] {
            let a = optimal_m_user(TransmitSnr::new(x).unwrap(), 1.0, m).unwrap();
            let total: f64 = a.as_slice().iter().sum();
            assert!((total - 1.0).abs() <= 1e-12, "m={m} x={x}: Σα={total}");
        }
    }
}
